#include "siegelarc/symmat.hpp"

#include <algorithm>

namespace arc {

Tol& Tol::get() {
    static Tol t;
    return t;
}

// ---------------------------------------------------------------- Mat2/Sym2

Mat2 Mat2::inverse() const {
    const double dt = det();
    if (dt == 0.0) throw Error("Mat2::inverse: singular matrix");
    const double s = 1.0 / dt;
    return {d * s, -b * s, -c * s, a * s};
}

Sym2 Sym2::inverse() const {
    const double dt = det();
    if (dt == 0.0) throw Error("Sym2::inverse: singular matrix");
    const double s = 1.0 / dt;
    return {m22 * s, -m12 * s, m11 * s};
}

double Sym2::eigMin() const {
    const double h = 0.5 * (m11 + m22);
    const double r = std::sqrt(0.25 * (m11 - m22) * (m11 - m22) + m12 * m12);
    return h - r;
}

double Sym2::eigMax() const {
    const double h = 0.5 * (m11 + m22);
    const double r = std::sqrt(0.25 * (m11 - m22) * (m11 - m22) + m12 * m12);
    return h + r;
}

bool Sym2::isPD() const {
    const double lo = eigMin(), hi = eigMax();
    return lo > Tol::get().pd * std::max(1.0, std::abs(hi));
}

Sym2 congruence(const Mat2& g, const Sym2& m) {
    return Sym2::fromMat(g * m.mat() * g.transpose());
}

PosDef2::PosDef2(const Sym2& s) : m(s) {
    if (!s.isPD()) throw NotPositiveDefinite();
}

PosDef2 sqrtPD(const PosDef2& p) {
    // Cayley-Hamilton: sqrt(M) = (M + sqrt(det) Id) / sqrt(tr + 2 sqrt(det)).
    const double sd = std::sqrt(p.m.det());
    const double s = 1.0 / std::sqrt(p.m.tr() + 2.0 * sd);
    PosDef2 r;
    r.m = Sym2{(p.m.m11 + sd) * s, p.m.m12 * s, (p.m.m22 + sd) * s};
    return r;
}

Sym2 sqrtPD(const Sym2& s) { return sqrtPD(PosDef2(s)).m; }

Sym2 invSqrtPD(const Sym2& s) { return sqrtPD(PosDef2(s)).m.inverse(); }

Sym2 geoMeanPD(const Sym2& p, const Sym2& q) {
    const Sym2 rp = sqrtPD(p);
    const Sym2 ri = rp.inverse();
    const Sym2 inner = congruence(ri.mat(), q);
    const Sym2 rinner = sqrtPD(inner);
    return congruence(rp.mat(), rinner);
}

// ------------------------------------------------------------- rotations

Rotation2::Rotation2(double t) {
    const double pi = std::acos(-1.0);
    theta = std::fmod(t, pi);
    if (theta < 0) theta += pi;
    if (theta >= pi) theta = 0; // guard fmod boundary
}

double normalizeAngle2Pi(double alpha) {
    const double twoPi = 2.0 * std::acos(-1.0);
    double a = std::fmod(alpha, twoPi);
    if (a < 0) a += twoPi;
    if (a >= twoPi) a = 0;
    return a;
}

Rotation2 rotationOfAngleClass(double alpha) { return Rotation2(normalizeAngle2Pi(alpha) / 2.0); }

double angleClassOf(const Rotation2& s, bool reflectedBranch) {
    const double a = 2.0 * s.theta;
    return reflectedBranch ? normalizeAngle2Pi(-a) : normalizeAngle2Pi(a);
}

// ------------------------------------------------------------ eigensystem

EigSym2 eigSym2Any(const Sym2& m) {
    EigSym2 e;
    const double h = 0.5 * (m.m11 + m.m22);
    const double r = std::sqrt(0.25 * (m.m11 - m.m22) * (m.m11 - m.m22) + m.m12 * m.m12);
    e.lambda1 = h + r;
    e.lambda2 = h - r;
    e.degenerate = (e.lambda1 - e.lambda2) <= Tol::get().reg * std::max(1.0, std::abs(e.lambda1));
    // Eigenvector of lambda1 sits at angle t = atan2(2 m12, m11 - m22) / 2; rows of S
    // must be (v1; v2), i.e. S is the rotation by -t.
    const double t = (e.degenerate && m.m12 == 0.0 && m.m11 == m.m22)
                         ? 0.0
                         : 0.5 * std::atan2(2.0 * m.m12, m.m11 - m.m22);
    e.S = Rotation2(-t);
    return e;
}

EigSym2 eigSym2(const Sym2& m) {
    EigSym2 e = eigSym2Any(m);
    if (e.degenerate) throw DegenerateSpectrum();
    return e;
}

// ---------------------------------------------------------------- Mat4

Mat4 Mat4::identity() {
    Mat4 r;
    r.at(0, 0) = r.at(1, 1) = r.at(2, 2) = r.at(3, 3) = 1;
    return r;
}

Mat4 Mat4::fromBlocks(const Mat2& A, const Mat2& B, const Mat2& C, const Mat2& D) {
    Mat4 r;
    r.at(0, 0) = A.a; r.at(0, 1) = A.b; r.at(1, 0) = A.c; r.at(1, 1) = A.d;
    r.at(0, 2) = B.a; r.at(0, 3) = B.b; r.at(1, 2) = B.c; r.at(1, 3) = B.d;
    r.at(2, 0) = C.a; r.at(2, 1) = C.b; r.at(3, 0) = C.c; r.at(3, 1) = C.d;
    r.at(2, 2) = D.a; r.at(2, 3) = D.b; r.at(3, 2) = D.c; r.at(3, 3) = D.d;
    return r;
}

Mat4 Mat4::Jmat() {
    return fromBlocks(Mat2{}, Mat2::identity(), -Mat2::identity(), Mat2{});
}

Mat4 Mat4::blockDiagSp(const Mat2& A) {
    return fromBlocks(A, Mat2{}, Mat2{}, A.inverse().transpose());
}

Mat4 Mat4::translation(const Sym2& S) {
    return fromBlocks(Mat2::identity(), S.mat(), Mat2{}, Mat2::identity());
}

Mat4 Mat4::rotationConj(const Mat2& S) { return fromBlocks(S, Mat2{}, Mat2{}, S); }

Mat2 Mat4::block(int br, int bc) const {
    return {at(2 * br, 2 * bc), at(2 * br, 2 * bc + 1), at(2 * br + 1, 2 * bc), at(2 * br + 1, 2 * bc + 1)};
}

Mat4 Mat4::transpose() const {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.at(i, j) = at(j, i);
    return r;
}

Mat4 Mat4::operator*(const Mat4& o) const {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0;
            for (int k = 0; k < 4; ++k) s += at(i, k) * o.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

Mat4 Mat4::operator*(double s) const {
    Mat4 r;
    for (int i = 0; i < 16; ++i) r.m[i] = m[i] * s;
    return r;
}

Mat4 Mat4::operator+(const Mat4& o) const {
    Mat4 r;
    for (int i = 0; i < 16; ++i) r.m[i] = m[i] + o.m[i];
    return r;
}

Mat4 Mat4::operator-(const Mat4& o) const {
    Mat4 r;
    for (int i = 0; i < 16; ++i) r.m[i] = m[i] - o.m[i];
    return r;
}

double Mat4::norm() const {
    double s = 0;
    for (double v : m) s += v * v;
    return std::sqrt(s);
}

namespace {

// LU decomposition with partial pivoting; returns false on (numerical) singularity.
bool luDecompose(std::array<double, 16>& a, std::array<int, 4>& piv, double& detSign) {
    detSign = 1.0;
    for (int i = 0; i < 4; ++i) piv[i] = i;
    for (int col = 0; col < 4; ++col) {
        int best = col;
        double bestAbs = std::abs(a[4 * col + col]);
        for (int r = col + 1; r < 4; ++r) {
            const double v = std::abs(a[4 * r + col]);
            if (v > bestAbs) { bestAbs = v; best = r; }
        }
        if (bestAbs == 0.0) return false;
        if (best != col) {
            for (int c = 0; c < 4; ++c) std::swap(a[4 * best + c], a[4 * col + c]);
            std::swap(piv[best], piv[col]);
            detSign = -detSign;
        }
        const double inv = 1.0 / a[4 * col + col];
        for (int r = col + 1; r < 4; ++r) {
            const double f = a[4 * r + col] * inv;
            a[4 * r + col] = f;
            for (int c = col + 1; c < 4; ++c) a[4 * r + c] -= f * a[4 * col + c];
        }
    }
    return true;
}

} // namespace

double Mat4::det() const {
    std::array<double, 16> a = m;
    std::array<int, 4> piv;
    double sign;
    if (!luDecompose(a, piv, sign)) return 0.0;
    double d = sign;
    for (int i = 0; i < 4; ++i) d *= a[4 * i + i];
    return d;
}

Mat4 Mat4::inverse() const {
    std::array<double, 16> a = m;
    std::array<int, 4> piv;
    double sign;
    if (!luDecompose(a, piv, sign)) throw Error("Mat4::inverse: singular matrix");
    Mat4 inv;
    for (int col = 0; col < 4; ++col) {
        // Solve L U x = P e_col.
        std::array<double, 4> x{};
        for (int i = 0; i < 4; ++i) x[i] = (piv[i] == col) ? 1.0 : 0.0;
        for (int i = 1; i < 4; ++i)
            for (int j = 0; j < i; ++j) x[i] -= a[4 * i + j] * x[j];
        for (int i = 3; i >= 0; --i) {
            for (int j = i + 1; j < 4; ++j) x[i] -= a[4 * i + j] * x[j];
            x[i] /= a[4 * i + i];
        }
        for (int i = 0; i < 4; ++i) inv.at(i, col) = x[i];
    }
    return inv;
}

Mat4 symplecticInverse(const Mat4& m) {
    const Mat4 J = Mat4::Jmat();
    return (-J) * m.transpose() * J;
}

std::array<std::complex<double>, 2> eigMat2(const Mat2& m) {
    const double t = m.tr(), d = m.det();
    const double disc = t * t - 4.0 * d;
    if (disc >= 0) {
        const double r = std::sqrt(disc);
        return {std::complex<double>(0.5 * (t + r), 0), std::complex<double>(0.5 * (t - r), 0)};
    }
    const double r = std::sqrt(-disc);
    return {std::complex<double>(0.5 * t, 0.5 * r), std::complex<double>(0.5 * t, -0.5 * r)};
}

std::array<double, 2> eigMat2Real(const Mat2& m) {
    const double t = m.tr(), d = m.det();
    double disc = t * t - 4.0 * d;
    const double scale = std::max(1.0, t * t + 4.0 * std::abs(d));
    if (disc < 0) {
        if (-disc > 1e-9 * scale) throw Error("eigMat2Real: complex eigenvalue pair");
        disc = 0;
    }
    const double r = std::sqrt(disc);
    return {0.5 * (t + r), 0.5 * (t - r)};
}

} // namespace arc
