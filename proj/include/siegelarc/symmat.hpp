#pragma once
#include <array>
#include <cmath>
#include <complex>

#include "siegelarc/errors.hpp"
#include "siegelarc/tol.hpp"

namespace arc {

// ---------------------------------------------------------------- 2x2 kernel

struct Mat2 {
    // row-major [[a, b], [c, d]]
    double a = 0, b = 0, c = 0, d = 0;

    static Mat2 identity() { return {1, 0, 0, 1}; }
    static Mat2 diag(double x, double y) { return {x, 0, 0, y}; }

    double det() const { return a * d - b * c; }
    double tr() const { return a + d; }
    Mat2 transpose() const { return {a, c, b, d}; }
    Mat2 inverse() const;
    double norm() const { return std::sqrt(a * a + b * b + c * c + d * d); }

    Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat2 operator*(double s) const { return {a * s, b * s, c * s, d * s}; }
    Mat2 operator-() const { return {-a, -b, -c, -d}; }
};

struct Sym2 {
    double m11 = 0, m12 = 0, m22 = 0;

    static Sym2 identity() { return {1, 0, 1}; }
    static Sym2 diag(double x, double y) { return {x, 0, y}; }
    static Sym2 scalar(double x) { return {x, 0, x}; }
    // Nearest symmetric part of a general matrix.
    static Sym2 fromMat(const Mat2& m) { return {m.a, 0.5 * (m.b + m.c), m.d}; }

    Mat2 mat() const { return {m11, m12, m12, m22}; }
    double det() const { return m11 * m22 - m12 * m12; }
    double tr() const { return m11 + m22; }
    double norm() const { return std::sqrt(m11 * m11 + 2 * m12 * m12 + m22 * m22); }
    Sym2 inverse() const;
    double eigMin() const;
    double eigMax() const;
    // smallest eigenvalue > tol.pd * max(1, |largest eigenvalue|)
    bool isPD() const;
    bool isND() const { return (-*this).isPD(); }

    Sym2 operator+(const Sym2& o) const { return {m11 + o.m11, m12 + o.m12, m22 + o.m22}; }
    Sym2 operator-(const Sym2& o) const { return {m11 - o.m11, m12 - o.m12, m22 - o.m22}; }
    Sym2 operator*(double s) const { return {m11 * s, m12 * s, m22 * s}; }
    Mat2 operator*(const Sym2& o) const { return mat() * o.mat(); }
    Sym2 operator-() const { return {-m11, -m12, -m22}; }
};

// g M g^T, symmetrized (exact in theory, symmetrize to kill roundoff skew).
Sym2 congruence(const Mat2& g, const Sym2& m);

struct PosDef2 {
    Sym2 m;
    PosDef2() : m(Sym2::identity()) {}
    explicit PosDef2(const Sym2& s); // throws NotPositiveDefinite
};

// Principal square root of a PD matrix (Cayley-Hamilton closed form).
PosDef2 sqrtPD(const PosDef2& p);
Sym2 sqrtPD(const Sym2& s);   // validates, then as above
Sym2 invSqrtPD(const Sym2& s);
// Geometric mean G of PD matrices: the unique PD solution of G P^{-1} G = Q.
Sym2 geoMeanPD(const Sym2& p, const Sym2& q);

// ------------------------------------------------------------- rotations

// Projective rotation class: theta in [0, pi) labels [[cos t, -sin t], [sin t, cos t]]
// modulo sign (t and t + pi give the same projective element).
struct Rotation2 {
    double theta = 0;
    explicit Rotation2(double t = 0);
    Mat2 mat() const {
        const double c = std::cos(theta), s = std::sin(theta);
        return {c, -s, s, c};
    }
};

// Angle class alpha in [0, 2pi) <-> rotation class via alpha = 2 theta.
Rotation2 rotationOfAngleClass(double alpha);
double angleClassOf(const Rotation2& s, bool reflectedBranch = false);
double normalizeAngle2Pi(double alpha); // reduce into [0, 2pi)

// ------------------------------------------------------------ eigensystem

struct EigSym2 {
    double lambda1 = 0, lambda2 = 0; // descending
    Rotation2 S;                     // S m S^T = diag(lambda1, lambda2); rows of S are eigenvectors
    bool degenerate = false;         // spectral gap below tolerance
};

// Never throws; on a (near-)degenerate spectrum S falls back to the identity class.
EigSym2 eigSym2Any(const Sym2& m);
// Contract variant: requires a unique rotation, throws DegenerateSpectrum otherwise.
EigSym2 eigSym2(const Sym2& m);

// ---------------------------------------------------------------- 4x4 kernel

struct Mat4 {
    std::array<double, 16> m{}; // row-major

    double& at(int r, int c) { return m[4 * r + c]; }
    double at(int r, int c) const { return m[4 * r + c]; }

    static Mat4 identity();
    static Mat4 zero() { return Mat4{}; }
    // [[A, B], [C, D]] from 2x2 blocks
    static Mat4 fromBlocks(const Mat2& A, const Mat2& B, const Mat2& C, const Mat2& D);
    // The standard symplectic form [[0, Id], [-Id, 0]].
    static Mat4 Jmat();
    // diag(A, A^{-T}) (chart action Z -> A Z A^T)
    static Mat4 blockDiagSp(const Mat2& A);
    // [[Id, S], [0, Id]] (chart action Z -> Z + S)
    static Mat4 translation(const Sym2& S);
    // diag(S, S) for orthogonal S (chart action Z -> S Z S^T)
    static Mat4 rotationConj(const Mat2& S);

    Mat2 block(int br, int bc) const; // 2x2 block (br, bc in {0,1})
    Mat4 transpose() const;
    Mat4 inverse() const;             // Gauss-Jordan with partial pivoting
    double norm() const;
    double det() const;

    Mat4 operator*(const Mat4& o) const;
    Mat4 operator*(double s) const;
    Mat4 operator+(const Mat4& o) const;
    Mat4 operator-(const Mat4& o) const;
    Mat4 operator-() const { return *this * -1.0; }
};

// Symplectic inverse M^{-1} = -J M^T J, valid when M^T J M = +/- J.
Mat4 symplecticInverse(const Mat4& m);

// ------------------------------------------------------------- Weyl vectors

// Sorted pair x1 >= x2; values of vectorial distances and side lengths.
struct WeylVector {
    double x1 = 0, x2 = 0;
    static WeylVector sorted(double a, double b) {
        return a >= b ? WeylVector{a, b} : WeylVector{b, a};
    }
    bool inChamber() const { return x2 >= 0; }
    // membership in the diagonal ray {x1 = x2}
    bool inDiagonal() const {
        return std::abs(x1 - x2) < Tol::get().reg * std::max(1.0, std::abs(x1));
    }
    bool regular() const { return !inDiagonal() && x2 > Tol::get().reg; }
    WeylVector operator-() const { return {-x2, -x1}; }
};

// Eigenvalues of a general real 2x2 matrix; clamps tiny imaginary parts.
std::array<std::complex<double>, 2> eigMat2(const Mat2& m);
// Descending real eigenvalues; throws Error if genuinely complex beyond tolerance.
std::array<double, 2> eigMat2Real(const Mat2& m);

} // namespace arc
