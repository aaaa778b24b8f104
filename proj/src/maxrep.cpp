#include "siegelarc/maxrep.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <list>
#include <map>
#include <optional>
#include <utility>

#include "siegelarc/errors.hpp"

namespace arc {

namespace {

const double kPi = std::acos(-1.0);

using Vec4 = std::array<double, 4>;

double dot4(const Vec4& x, const Vec4& y) {
    return x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3];
}

double norm4(const Vec4& x) { return std::sqrt(dot4(x, x)); }

Vec4 matVec(const Mat4& m, const Vec4& v) {
    Vec4 out{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out[r] += m.at(r, c) * v[c];
    return out;
}

// Symplectic pairing w^T J v with J = [[0, Id], [-Id, 0]].
double omega(const Vec4& x, const Vec4& y) {
    return x[0] * y[2] + x[1] * y[3] - x[2] * y[0] - x[3] * y[1];
}

Lagrangian planeFromVectors(const Vec4& v1, const Vec4& v2) {
    std::array<double, 8> basis{};
    for (int r = 0; r < 4; ++r) {
        basis[2 * r] = v1[r];
        basis[2 * r + 1] = v2[r];
    }
    return Lagrangian::fromBasis(basis);
}

// ------------------------------------------------------------ spectrum

double trace4(const Mat4& m) {
    return m.at(0, 0) + m.at(1, 1) + m.at(2, 2) + m.at(3, 3);
}

// Eigenvalues of a symplectic matrix via the self-reciprocal quartic
// l^4 - a l^3 + b l^2 - a l + 1 and the substitution u = l + 1/l, which
// satisfies u^2 - a u + (b - 2) = 0.
struct SymplecticSpectrum {
    std::array<std::complex<double>, 2> u;
    std::array<std::complex<double>, 4> lambda;
};

SymplecticSpectrum symplecticSpectrum(const Mat4& m) {
    using C = std::complex<double>;
    const double a = trace4(m);
    const double b = 0.5 * (a * a - trace4(m * m));
    SymplecticSpectrum s;
    const C root = std::sqrt(C(0.25 * a * a - (b - 2.0), 0.0));
    s.u[0] = 0.5 * a + root;
    s.u[1] = 0.5 * a - root;
    for (int i = 0; i < 2; ++i) {
        const C half = 0.5 * s.u[i];
        const C disc = std::sqrt(half * half - 1.0);
        s.lambda[2 * i] = half + disc;
        s.lambda[2 * i + 1] = half - disc;
    }
    return s;
}

double marginOf(const Mat4& m) {
    const SymplecticSpectrum s = symplecticSpectrum(m);
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& l : s.lambda) margin = std::min(margin, std::abs(std::abs(l) - 1.0));
    return margin;
}

// ------------------------------------------- dominant invariant plane

std::optional<std::array<Vec4, 2>> kernelPlane(const Mat4& n);

// Span of the two generalized eigendirections with the largest moduli.
// Powers of the matrix itself collapse onto the single top eigendirection
// whenever the two expanding moduli differ, so the plane is read off the
// second exterior power instead: its dominant eigendirection is the
// decomposable 2-vector b1 ^ b2 of the sought plane, and it is simple in
// modulus exactly when |lambda_2| > |lambda_3|.
Lagrangian dominantPlane(const Mat4& m) {
    const double n0 = m.norm();
    if (!(n0 > 0)) throw Error("dominant plane of a zero matrix");

    using Mat6 = std::array<std::array<double, 6>, 6>;
    // Wedge basis e0^e1, e0^e2, e0^e3, e1^e2, e1^e3, e2^e3.
    constexpr int wi[6] = {0, 0, 0, 1, 1, 2};
    constexpr int wj[6] = {1, 2, 3, 2, 3, 3};
    Mat6 w{};
    for (int c = 0; c < 6; ++c) {
        Vec4 a{}, b{};
        for (int r = 0; r < 4; ++r) {
            a[r] = m.at(r, wi[c]);
            b[r] = m.at(r, wj[c]);
        }
        for (int k = 0; k < 6; ++k) w[k][c] = a[wi[k]] * b[wj[k]] - a[wj[k]] * b[wi[k]];
    }
    auto frob = [](const Mat6& x) {
        double s = 0;
        for (const auto& row : x)
            for (const double v : row) s += v * v;
        return std::sqrt(s);
    };
    auto scale = [](Mat6& x, double f) {
        for (auto& row : x)
            for (double& v : row) v *= f;
    };
    auto mul = [](const Mat6& x, const Mat6& y) {
        Mat6 out{};
        for (int r = 0; r < 6; ++r)
            for (int k = 0; k < 6; ++k) {
                const double f = x[r][k];
                if (f == 0) continue;
                for (int c = 0; c < 6; ++c) out[r][c] += f * y[k][c];
            }
        return out;
    };
    scale(w, 1.0 / frob(w));
    // Renormalized repeated squaring converges to the rank-1 projector onto
    // the dominant eigendirection of the exterior power.
    for (int k = 0; k < 64; ++k) {
        w = mul(w, w);
        const double n = frob(w);
        if (!(n > 0) || !std::isfinite(n)) throw Error("power iteration collapsed");
        scale(w, 1.0 / n);
    }
    int pivot = 0;
    double bestNorm = -1.0;
    for (int c = 0; c < 6; ++c) {
        double s = 0;
        for (int r = 0; r < 6; ++r) s += w[r][c] * w[r][c];
        if (s > bestNorm) {
            bestNorm = s;
            pivot = c;
        }
    }
    if (!(bestNorm > 0)) throw Error("power iteration produced a rank-0 matrix");
    std::array<double, 6> v{};
    const double inv = 1.0 / std::sqrt(bestNorm);
    for (int r = 0; r < 6; ++r) v[r] = w[r][pivot] * inv;
    // Decomposability (Pluecker relation) of the dominant 2-vector.
    if (std::abs(v[0] * v[5] - v[1] * v[4] + v[2] * v[3]) > 1e-6)
        throw Error("dominant two-direction is not decomposable");
    // The plane is the kernel of x -> v ^ x (rows: Lambda^3 coordinates).
    Mat4 n{};
    const double rows[4][4] = {{v[3], -v[1], v[0], 0.0},
                               {v[4], -v[2], 0.0, v[0]},
                               {v[5], 0.0, -v[2], v[1]},
                               {0.0, v[5], -v[4], v[3]}};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) n.at(r, c) = rows[r][c];
    const auto ker = kernelPlane(n);
    if (!ker) throw Error("dominant plane is not two-dimensional");
    return planeFromVectors((*ker)[0], (*ker)[1]);
}

// -------------------------------------------------- small linear algebra

// Orthonormal basis of the kernel of a 4x4 matrix of expected rank 2,
// by Gauss elimination with full pivoting.
std::optional<std::array<Vec4, 2>> kernelPlane(const Mat4& n) {
    std::array<std::array<double, 4>, 4> a;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) a[r][c] = n.at(r, c);
    std::array<int, 4> colPerm{0, 1, 2, 3};
    const double scale = std::max(1.0, n.norm());
    int rank = 0;
    for (int step = 0; step < 4; ++step) {
        int pr = step, pc = step;
        double best = 0;
        for (int r = step; r < 4; ++r)
            for (int c = step; c < 4; ++c)
                if (std::abs(a[r][c]) > best) {
                    best = std::abs(a[r][c]);
                    pr = r;
                    pc = c;
                }
        if (best <= 1e-7 * scale) break;
        std::swap(a[step], a[pr]);
        for (int r = 0; r < 4; ++r) std::swap(a[r][step], a[r][pc]);
        std::swap(colPerm[step], colPerm[pc]);
        for (int r = step + 1; r < 4; ++r) {
            const double f = a[r][step] / a[step][step];
            for (int c = step; c < 4; ++c) a[r][c] -= f * a[step][c];
        }
        ++rank;
    }
    if (rank != 2) return std::nullopt;
    std::array<Vec4, 2> out{};
    for (int f = 0; f < 2; ++f) {
        std::array<double, 4> xp{};  // solution in permuted coordinates
        xp[2 + f] = 1.0;
        for (int r = 1; r >= 0; --r) {
            double s = 0;
            for (int c = r + 1; c < 4; ++c) s += a[r][c] * xp[c];
            xp[r] = -s / a[r][r];
        }
        for (int c = 0; c < 4; ++c) out[f][colPerm[c]] = xp[c];
    }
    // orthonormalize
    double n1 = norm4(out[0]);
    for (auto& x : out[0]) x /= n1;
    const double pr = dot4(out[0], out[1]);
    for (int r = 0; r < 4; ++r) out[1][r] -= pr * out[0][r];
    const double n2 = norm4(out[1]);
    if (n2 < 1e-10) return std::nullopt;
    for (auto& x : out[1]) x /= n2;
    return out;
}

// Restriction of m to the invariant plane span(b1, b2) in that orthonormal
// basis; *residual reports how far the plane is from being invariant.
Mat2 restrictTo(const Mat4& m, const Vec4& b1, const Vec4& b2, double* residual) {
    const Vec4 m1 = matVec(m, b1), m2 = matVec(m, b2);
    Mat2 r{dot4(b1, m1), dot4(b1, m2), dot4(b2, m1), dot4(b2, m2)};
    double res = 0;
    for (int i = 0; i < 4; ++i) {
        const double d1 = m1[i] - r.a * b1[i] - r.c * b2[i];
        const double d2 = m2[i] - r.b * b1[i] - r.d * b2[i];
        res += d1 * d1 + d2 * d2;
    }
    if (residual) *residual = std::sqrt(res);
    return r;
}

// Invariant lines of m inside the invariant plane span(b1, b2): two
// eigenlines, "all lines" when the restriction is scalar (then the basis
// vectors are returned), or none (elliptic / parabolic restriction).
std::vector<Vec4> invariantLinesInPlane(const Mat4& m, const Vec4& b1, const Vec4& b2) {
    double res = 0;
    const Mat2 r = restrictTo(m, b1, b2, &res);
    const double scale = std::max(1.0, r.norm());
    if (res > 1e-6 * scale) return {};
    const Mat2 dev = r - Mat2::identity() * (0.5 * r.tr());
    if (dev.norm() <= 1e-7 * scale) return {b1, b2};  // scalar restriction
    const double disc = r.tr() * r.tr() - 4.0 * r.det();
    if (disc <= 1e-12 * scale * scale) return {};
    std::vector<Vec4> lines;
    const double sq = std::sqrt(disc);
    for (const double lam : {0.5 * (r.tr() + sq), 0.5 * (r.tr() - sq)}) {
        // eigenvector of the 2x2 restriction from the better-conditioned row
        const double r1x = r.a - lam, r1y = r.b;
        const double r2x = r.c, r2y = r.d - lam;
        double cx, cy;
        if (r1x * r1x + r1y * r1y >= r2x * r2x + r2y * r2y) {
            cx = -r1y;
            cy = r1x;
        } else {
            cx = -r2y;
            cy = r2x;
        }
        Vec4 v{};
        for (int i = 0; i < 4; ++i) v[i] = cx * b1[i] + cy * b2[i];
        const double nv = norm4(v);
        for (auto& x : v) x /= nv;
        lines.push_back(v);
    }
    return lines;
}

// Eigendecomposition of a symmetric 4x4 matrix by cyclic Jacobi sweeps.
void jacobiSym4(std::array<std::array<double, 4>, 4>& a,
                std::array<std::array<double, 4>, 4>& v) {
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) v[r][c] = (r == c) ? 1.0 : 0.0;
    for (int sweep = 0; sweep < 32; ++sweep) {
        double off = 0;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-30) break;
        for (int p = 0; p < 4; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = 0.5 * std::atan2(2.0 * a[p][q], a[q][q] - a[p][p]);
                const double c = std::cos(theta), s = std::sin(theta);
                for (int k = 0; k < 4; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 4; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < 4; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
}

// -------------------------------- invariant transverse Lagrangian pairs

// Finds some invariant transverse Lagrangian pair of a symplectic matrix
// whose modulus margin is inconclusive (some eigenvalue modulus ~ 1).
std::optional<std::pair<Lagrangian, Lagrangian>> invariantTransversePair(const Mat4& m) {
    const double scale = std::max(1.0, m.norm());
    // scalar matrix: every Lagrangian is invariant
    if ((m - Mat4::identity() * (0.25 * trace4(m))).norm() <= 1e-9 * scale)
        return std::make_pair(Lagrangian::zero(), Lagrangian::infinity());

    const SymplecticSpectrum s = symplecticSpectrum(m);
    const Mat4 n = m + symplecticInverse(m);  // omega-self-adjoint, eigenvalues u

    if (std::abs(s.u[0].imag()) > 1e-7) {
        // complex u: no unit-modulus eigenvalue; expanding/contracting planes
        try {
            Lagrangian ep = dominantPlane(m);
            Lagrangian em = dominantPlane(symplecticInverse(m));
            if (transverse(ep, em)) return std::make_pair(em, ep);
        } catch (const Error&) {
        }
        return std::nullopt;
    }

    const double u1 = s.u[0].real(), u2 = s.u[1].real();
    if (std::abs(u1 - u2) > 1e-7 * std::max(1.0, std::abs(u1))) {
        // distinct real u: the two restrictions are omega-orthogonal
        // symplectic planes; an invariant Lagrangian is a line in each.
        std::array<std::vector<Vec4>, 2> lines;
        for (int i = 0; i < 2; ++i) {
            const double u = (i == 0) ? u1 : u2;
            const auto ker = kernelPlane(n - Mat4::identity() * u);
            if (!ker) return std::nullopt;
            lines[i] = invariantLinesInPlane(m, (*ker)[0], (*ker)[1]);
            if (lines[i].size() < 2) return std::nullopt;
        }
        try {
            Lagrangian l1 = planeFromVectors(lines[0][0], lines[1][0]);
            Lagrangian l2 = planeFromVectors(lines[0][1], lines[1][1]);
            if (transverse(l1, l2)) return std::make_pair(l1, l2);
        } catch (const Error&) {
        }
        return std::nullopt;
    }

    // double u-root
    const double u0 = 0.5 * (u1 + u2);
    if ((n - Mat4::identity() * u0).norm() > 1e-6 * std::max(1.0, n.norm()))
        return std::nullopt;  // minimal polynomial of degree four: at most one
                              // invariant Lagrangian through the eigenline

    // m satisfies its quadratic: every vector v spans the invariant plane
    // (v, m v); the plane is isotropic iff q(v) = v^T sym(J m) v vanishes.
    const Mat4 jm = Mat4::Jmat() * m;
    std::array<std::array<double, 4>, 4> q{}, vecs{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) q[r][c] = 0.5 * (jm.at(r, c) + jm.at(c, r));
    jacobiSym4(q, vecs);
    std::array<double, 4> sig{};
    std::array<Vec4, 4> w{};
    for (int i = 0; i < 4; ++i) {
        sig[i] = q[i][i];
        for (int r = 0; r < 4; ++r) w[i][r] = vecs[r][i];
    }
    double sigMax = 0;
    for (const double x : sig) sigMax = std::max(sigMax, std::abs(x));
    const double sigTol = 1e-9 * std::max(1.0, sigMax);

    std::vector<Vec4> probes;
    for (int i = 0; i < 4; ++i)
        if (std::abs(sig[i]) <= sigTol) probes.push_back(w[i]);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (sig[i] > sigTol && sig[j] < -sigTol) {
                const double ci = std::sqrt(-sig[j]), cj = std::sqrt(sig[i]);
                for (const double sign : {1.0, -1.0}) {
                    Vec4 v{};
                    for (int r = 0; r < 4; ++r) v[r] = ci * w[i][r] + sign * cj * w[j][r];
                    probes.push_back(v);
                }
            }
        }
    }

    std::vector<Lagrangian> planes;
    std::vector<Vec4> fixedLines;
    auto addPlane = [&planes](const Lagrangian& l) {
        for (const auto& p : planes)
            if (sameSubspace(p, l)) return;
        planes.push_back(l);
    };
    for (auto& v : probes) {
        const double nv = norm4(v);
        if (nv < 1e-12) continue;
        for (auto& x : v) x /= nv;
        Vec4 mv = matVec(m, v);
        const double along = dot4(v, mv);
        Vec4 perp{};
        for (int r = 0; r < 4; ++r) perp[r] = mv[r] - along * v[r];
        if (norm4(perp) <= 1e-8 * std::max(1.0, norm4(mv))) {
            fixedLines.push_back(v);
            continue;
        }
        try {
            const Lagrangian l = planeFromVectors(v, mv);
            double res = 0;
            Vec4 c1{}, c2{};
            for (int r = 0; r < 4; ++r) {
                c1[r] = l.at(r, 0);
                c2[r] = l.at(r, 1);
            }
            restrictTo(m, c1, c2, &res);
            if (res <= 1e-6 * std::max(1.0, m.norm())) addPlane(l);
        } catch (const Error&) {
        }
    }
    for (size_t i = 0; i < fixedLines.size(); ++i) {
        for (size_t j = i + 1; j < fixedLines.size(); ++j) {
            if (std::abs(omega(fixedLines[i], fixedLines[j])) > 1e-9) continue;
            try {
                addPlane(planeFromVectors(fixedLines[i], fixedLines[j]));
            } catch (const Error&) {
            }
        }
    }
    for (size_t i = 0; i < planes.size(); ++i)
        for (size_t j = i + 1; j < planes.size(); ++j)
            if (transverse(planes[i], planes[j]))
                return std::make_pair(planes[i], planes[j]);
    return std::nullopt;
}

// (contracting, expanding) fixed pair of a symplectic map, or nullopt.
std::optional<std::pair<Lagrangian, Lagrangian>> findFixedPair(const SpMap& g) {
    if (g.kind != MapKind::Symplectic)
        throw Error("fixed Lagrangian pairs are computed for symplectic maps");
    if (marginOf(g.m) > Tol::get().shilovMargin) {
        Lagrangian ep = dominantPlane(g.m);
        Lagrangian em = dominantPlane(symplecticInverse(g.m));
        if (!transverse(ep, em)) return std::nullopt;
        if (subspaceGap(actLagrangian(g, ep), ep) > 1e-6) return std::nullopt;
        if (subspaceGap(actLagrangian(g, em), em) > 1e-6) return std::nullopt;
        return std::make_pair(em, ep);
    }
    return invariantTransversePair(g.m);
}

// Solves Y - A^{-1} Y A^{-T} = A^{-1} A^{-T} (equivalently A Y A^T = Y + Id)
// as a 3x3 linear system on (y11, y12, y22).
Sym2 steinSolve(const Mat2& a) {
    const Mat2 b = a.inverse();
    const Sym2 rhs = congruence(b, Sym2::identity());
    const std::array<Sym2, 3> basis{Sym2{1, 0, 0}, Sym2{0, 1, 0}, Sym2{0, 0, 1}};
    double mat[3][3];
    for (int j = 0; j < 3; ++j) {
        const Sym2 t = congruence(b, basis[j]);
        mat[0][j] = (j == 0 ? 1.0 : 0.0) - t.m11;
        mat[1][j] = (j == 1 ? 1.0 : 0.0) - t.m12;
        mat[2][j] = (j == 2 ? 1.0 : 0.0) - t.m22;
    }
    double x[3] = {rhs.m11, rhs.m12, rhs.m22};
    // Gaussian elimination with partial pivoting
    int perm[3] = {0, 1, 2};
    for (int s = 0; s < 3; ++s) {
        int p = s;
        for (int r = s + 1; r < 3; ++r)
            if (std::abs(mat[r][s]) > std::abs(mat[p][s])) p = r;
        std::swap(mat[s], mat[p]);
        std::swap(x[s], x[p]);
        std::swap(perm[s], perm[p]);
        if (std::abs(mat[s][s]) < 1e-14) throw Error("expansion witness system is singular");
        for (int r = s + 1; r < 3; ++r) {
            const double f = mat[r][s] / mat[s][s];
            for (int c = s; c < 3; ++c) mat[r][c] -= f * mat[s][c];
            x[r] -= f * x[s];
        }
    }
    double y[3];
    for (int r = 2; r >= 0; --r) {
        double sum = x[r];
        for (int c = r + 1; c < 3; ++c) sum -= mat[r][c] * y[c];
        y[r] = sum / mat[r][r];
    }
    return Sym2{y[0], y[1], y[2]};
}

// -------------------------------------------------- seed labels and words

enum SeedLabel { LX1 = 0, LX2, LY1, LY2, LZ1, LZ2 };
constexpr const char* kLabelName[6] = {"X1", "X2", "Y1", "Y2", "Z1", "Z2"};
// Boundary 12-tuple slots of the odd-side endpoints.
constexpr int kSeedSlot[6] = {0, 3, 4, 7, 8, 11};

// Action of the three generators on seed labels; -1 marks the pair a
// generator moves off the seed set.
constexpr int kLabelPerm[3][6] = {
    {LX2, LX1, -1, -1, LZ2, LZ1},  // letter 1: swaps the X- and Z-pairs
    {LX2, LX1, LY2, LY1, -1, -1},  // letter 2: swaps the X- and Y-pairs
    {-1, -1, LY2, LY1, LZ2, LZ1},  // letter 3: swaps the Y- and Z-pairs
};

// Canonical key of the point rho(word) * seed[label]: trailing letters that
// keep the label inside the seed set are absorbed into the label.
std::string canonicalKey(std::string word, int label) {
    while (!word.empty()) {
        const int letter = word.back() - '1';
        const int image = kLabelPerm[letter][label];
        if (image < 0) break;
        label = image;
        word.pop_back();
    }
    return word + "|" + kLabelName[label];
}

std::array<Lagrangian, 6> seedPoints(const OrderedHexagon& h) {
    std::array<Lagrangian, 6> out;
    for (int i = 0; i < 6; ++i) out[i] = h.twelveTuple[kSeedSlot[i]];
    return out;
}

bool standardOrExotic(const KElement& k) {
    if (k.idBranch) return true;
    return k.theta < 1e-9 || k.theta > kPi - 1e-9;
}

int signOfDetOnPair(const SpMap& g, const Lagrangian& p, const Lagrangian& q) {
    const SpMap sigma = mapPairToStandard(p, q);
    const Mat4 b = (sigma * g * sigma.inverse()).m;
    const double off = b.block(0, 1).norm() + b.block(1, 0).norm();
    if (off > 1e-6 * std::max(1.0, b.norm()))
        throw NoFixedPair("map is not block-diagonal on its fixed pair");
    const double det = b.block(0, 0).det();
    return det > 0 ? 1 : -1;
}

}  // namespace

// ----------------------------------------------------------------- Shilov

double shilovMargin(const SpMap& g) {
    if (g.kind != MapKind::Symplectic)
        throw Error("Shilov margin is defined for symplectic maps");
    return marginOf(g.m);
}

bool isShilovHyperbolic(const SpMap& g) {
    if (g.kind != MapKind::Symplectic)
        throw Error("Shilov hyperbolicity is defined for symplectic maps");
    const double margin = marginOf(g.m);
    if (margin <= Tol::get().shilovMargin) {
        if (invariantTransversePair(g.m)) return false;
        throw NoFixedPair("no invariant transverse Lagrangian pair");
    }
    const Lagrangian ep = dominantPlane(g.m);
    const Lagrangian em = dominantPlane(symplecticInverse(g.m));
    if (!transverse(ep, em)) throw NoFixedPair("expanding and contracting planes coincide");
    if (subspaceGap(actLagrangian(g, ep), ep) > 1e-6 ||
        subspaceGap(actLagrangian(g, em), em) > 1e-6)
        throw NoFixedPair("power-iteration planes are not invariant");
    // Cross-validation: in the standardized frame the map is diag(A, A^{-T})
    // with A expanding, and Y solving A Y A^T = Y + Id gives a maximal
    // quadruple (0, Y, A Y A^T, inf).
    const SpMap sigma = mapPairToStandard(em, ep);
    const SpMap b = sigma * g * sigma.inverse();
    const double off = b.m.block(0, 1).norm() + b.m.block(1, 0).norm();
    if (off > 1e-6 * std::max(1.0, b.m.norm()))
        throw Error("standardized map is not block-diagonal on its fixed pair");
    const Sym2 y = steinSolve(b.m.block(0, 0));
    if (!y.isPD()) throw Error("expansion witness is not positive definite");
    const Lagrangian ly = Lagrangian::fromChart(y);
    const std::array<Lagrangian, 4> quad{Lagrangian::zero(), ly, actLagrangian(b, ly),
                                         Lagrangian::infinity()};
    if (!isMaximalTuple(quad)) throw Error("expansion witness quadruple is not maximal");
    return true;
}

// ------------------------------------------------------------------ build

MaxRepReport validateMaxRep(const W3MaxRep& w) {
    MaxRepReport rep;
    const auto& t = w.baseHexagon.twelveTuple;
    const Reflection rhos[3] = {w.rho1, w.rho2, w.rho3};
    // fixed side endpoints and swapped neighbour pairs, per generator
    const int fixedSlots[3][2] = {{10, 1}, {2, 5}, {6, 9}};
    const int swapSlots[3][2][2] = {{{0, 3}, {8, 11}},   // rho1: X-pair, Z-pair
                                    {{0, 3}, {4, 7}},    // rho2: X-pair, Y-pair
                                    {{4, 7}, {8, 11}}};  // rho3: Y-pair, Z-pair
    for (int i = 0; i < 3; ++i) {
        const std::string tag = "rho" + std::to_string(i + 1);
        const Mat4& m = rhos[i].map.m;
        const Mat4 m2 = m * m;
        const double s = 0.25 * trace4(m2);
        const double invRes = (m2 - Mat4::identity() * s).norm() / std::max(1.0, std::abs(s));
        rep.checks.push_back({tag + ".involution", invRes, invRes < 1e-9});
        MapKind kind{};
        const double symRes = spResidual(m, kind);
        rep.checks.push_back({tag + ".antisymplectic", symRes,
                              kind == MapKind::Antisymplectic &&
                                  symRes < Tol::get().sympResidual});
        for (int e = 0; e < 2; ++e) {
            const Lagrangian& fix = t[fixedSlots[i][e]];
            const double gap = subspaceGap(actLagrangian(rhos[i].map, fix), fix);
            rep.checks.push_back({tag + ".fixes." + std::to_string(e), gap, gap < 1e-8});
        }
        for (int p = 0; p < 2; ++p) {
            const Lagrangian image = actLagrangian(rhos[i].map, t[swapSlots[i][p][0]]);
            const double gap = subspaceGap(image, t[swapSlots[i][p][1]]);
            rep.checks.push_back({tag + ".swaps." + std::to_string(p), gap, gap < 1e-8});
        }
    }
    const std::pair<int, int> prods[3] = {{0, 1}, {1, 2}, {2, 0}};
    for (const auto& [i, j] : prods) {
        const SpMap g = rhos[i].map * rhos[j].map;
        const std::string name =
            "product" + std::to_string(i + 1) + std::to_string(j + 1) + ".shilov";
        double margin = 0;
        bool pass = false;
        try {
            margin = shilovMargin(g);
            pass = isShilovHyperbolic(g);
        } catch (const Error&) {
            pass = false;
        }
        rep.checks.push_back({name, margin, pass});
    }
    return rep;
}

bool MaxRepReport::allPass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

W3MaxRep buildW3Rep(const SParameters& p) {
    const OrderedHexagon h = hexagonFromCoords(p.coords);
    const int sides[3] = {6, 2, 4};
    const KElement ks[3] = {p.r1, p.r2, p.r3};
    std::array<Reflection, 3> rhos;
    for (int i = 0; i < 3; ++i) {
        const ReflectionSetDescriptor d = reflectionSetForSide(h, sides[i]);
        if (d.family == ReflectionFamily::TwoElement && !standardOrExotic(ks[i]))
            throw ConstraintViolation(
                "side " + std::to_string(sides[i]) +
                " has a two-element reflection set: only the standard or exotic "
                "choice is admissible");
        rhos[i] = enumerateReflection(d, ks[i]);
    }
    W3MaxRep w{rhos[0], rhos[1], rhos[2], h};
    const MaxRepReport rep = validateMaxRep(w);
    if (!rep.allPass()) {
        for (const auto& c : rep.checks)
            if (!c.pass)
                throw InvalidRepresentation("validation failed at check " + c.name);
    }
    return w;
}

PopRep restrictToF2(const W3MaxRep& w) {
    const SpMap g = w.rho1.map * w.rho2.map;
    const SpMap h = w.rho2.map * w.rho3.map;
    if (g.kind != MapKind::Symplectic || h.kind != MapKind::Symplectic)
        throw InvalidRepresentation("generator products are not symplectic");
    if (!isShilovHyperbolic(g) || !isShilovHyperbolic(h) ||
        !isShilovHyperbolic((g * h).inverse()))
        throw InvalidRepresentation("generator products are not Shilov hyperbolic");
    return {g, h};
}

// ------------------------------------------------------------------ orbit

OrbitTuple orbitTuples(const W3MaxRep& w, int n) {
    if (n < 0 || n > 4) throw Error("orbit depth is capped at 4");
    const std::array<Lagrangian, 6> seed = seedPoints(w.baseHexagon);
    const SpMap rho[3] = {w.rho1.map, w.rho2.map, w.rho3.map};

    struct Entry {
        std::string key;
        Lagrangian value;
    };
    std::list<Entry> ring;
    std::map<std::string, std::list<Entry>::iterator> index;
    for (int i = 0; i < 6; ++i) {
        auto it = ring.insert(ring.end(), {canonicalKey("", i), seed[i]});
        index[it->key] = it;
    }
    auto nextOf = [&ring](std::list<Entry>::iterator it) {
        ++it;
        return it == ring.end() ? ring.begin() : it;
    };

    // Per letter: the two anchor labels whose rho(word)-images flank the
    // inserted pair, and the two new labels; the first new label lands next
    // to the first anchor, the second next to the second.
    const int anchorLabel[3][2] = {{LZ2, LX1}, {LX2, LY1}, {LY2, LZ1}};
    const int newLabel[3][2] = {{LY2, LY1}, {LZ2, LZ1}, {LX2, LX1}};

    struct Word {
        std::string text;
        SpMap map;
    };
    std::vector<Word> level{{"", SpMap::identity()}};
    for (int depth = 1; depth <= n; ++depth) {
        std::vector<Word> next;
        for (const Word& wd : level) {
            for (int letter = 0; letter < 3; ++letter) {
                if (!wd.text.empty() && wd.text.back() - '1' == letter) continue;
                const Word ext{wd.text + static_cast<char>('1' + letter),
                               wd.map * rho[letter]};
                const auto itA = index.find(canonicalKey(wd.text, anchorLabel[letter][0]));
                const auto itB = index.find(canonicalKey(wd.text, anchorLabel[letter][1]));
                if (itA == index.end() || itB == index.end())
                    throw Error("orbit anchor lookup failed");
                const Lagrangian imgA =
                    actLagrangian(ext.map, seed[newLabel[letter][0]]);
                const Lagrangian imgB =
                    actLagrangian(ext.map, seed[newLabel[letter][1]]);
                const std::string keyA = canonicalKey(ext.text, newLabel[letter][0]);
                const std::string keyB = canonicalKey(ext.text, newLabel[letter][1]);
                std::list<Entry>::iterator pos;
                if (nextOf(itA->second) == itB->second) {
                    pos = ring.insert(itB->second, {keyA, imgA});
                    index[keyA] = pos;
                    pos = ring.insert(itB->second, {keyB, imgB});
                    index[keyB] = pos;
                } else if (nextOf(itB->second) == itA->second) {
                    pos = ring.insert(itA->second, {keyB, imgB});
                    index[keyB] = pos;
                    pos = ring.insert(itA->second, {keyA, imgA});
                    index[keyA] = pos;
                } else {
                    throw Error("orbit anchors are not adjacent");
                }
                next.push_back(ext);
            }
        }
        level = std::move(next);
    }

    OrbitTuple out;
    const std::string start = (n == 0) ? canonicalKey("", LX1) : canonicalKey("", LZ2);
    auto it = index.at(start);
    for (size_t k = 0; k < ring.size(); ++k) {
        out.tuple.push_back(it->value);
        it = nextOf(it);
    }
    out.maximal = isMaximalTuple(out.tuple);
    return out;
}

// ------------------------------------------------------------------ signs

SignPair deltaSign(const PopRep& p) {
    SignPair out;
    for (int i = 0; i < 2; ++i) {
        const SpMap& g = (i == 0) ? p.g : p.h;
        const auto pair = findFixedPair(g);
        if (!pair) throw NoFixedPair("generator fixes no transverse Lagrangian pair");
        (i == 0 ? out.s1 : out.s2) = signOfDetOnPair(g, pair->first, pair->second);
    }
    return out;
}

bool equivalentInS0(const SParameters& p1, const SParameters& p2) {
    const ArcCoordinates c1 = canonicalizeCoords(p1.coords);
    const ArcCoordinates c2 = canonicalizeCoords(p2.coords);
    if (!coordsApproxEqual(c1, c2, Tol::get().hexRoundtrip)) return false;
    if (!inPolydisk(hexagonFromCoords(c1))) return false;
    auto productsAgree = [](const KElement& a1, const KElement& a2, const KElement& b1,
                            const KElement& b2) {
        const Mat2 p = kMatrix(a1) * kMatrix(a2);
        const Mat2 q = kMatrix(b1) * kMatrix(b2);
        return std::min((p - q).norm(), (p + q).norm()) < 1e-9;
    };
    return productsAgree(p1.r1, p1.r2, p2.r1, p2.r2) &&
           productsAgree(p1.r2, p1.r3, p2.r2, p2.r3);
}

bool popRepEqual(const PopRep& a, const PopRep& b, double tol) {
    const std::array<Lagrangian, 6> probes{
        Lagrangian::zero(),
        Lagrangian::infinity(),
        Lagrangian::fromChart(Sym2::identity()),
        Lagrangian::fromChart(Sym2::diag(2, -3)),
        Lagrangian::fromChart(Sym2{0, 1, 0}),
        Lagrangian::fromChart(Sym2{1, 1, -1}),
    };
    for (const auto& l : probes) {
        if (!sameSubspace(actLagrangian(a.g, l), actLagrangian(b.g, l), tol)) return false;
        if (!sameSubspace(actLagrangian(a.h, l), actLagrangian(b.h, l), tol)) return false;
    }
    return true;
}

// ------------------------------------------------------------- extraction

SParameters coordsFromRep(const W3MaxRep& w) {
    try {
        // The products of consecutive generators translate along the odd
        // sides, so their invariant pairs are the odd-side endpoints. The
        // generators' own eigenplanes would not do here: for a flip-branch
        // reflection they form the crossed boundary pair of the mirror tube,
        // not its endpoints.
        const auto xFix = findFixedPair(w.rho1.map * w.rho2.map);  // side 1
        const auto yFix = findFixedPair(w.rho2.map * w.rho3.map);  // side 3
        const auto zFix = findFixedPair(w.rho3.map * w.rho1.map);  // side 5
        if (!xFix || !yFix || !zFix)
            throw InvalidRepresentation(
                "generator products have no invariant transverse Lagrangian pairs");
        const RTube side1 = RTube::fromEndpoints(xFix->first, xFix->second);
        const RTube side3 = RTube::fromEndpoints(yFix->first, yFix->second);
        const RTube side5 = RTube::fromEndpoints(zFix->first, zFix->second);
        const RTube t2 = commonPerpendicular(side1, side3);
        const RTube t4 = commonPerpendicular(side3, side5);
        const RTube t6 = commonPerpendicular(side5, side1);

        // Orient the boundary 12-tuple: pick the member of each unordered
        // pair that keeps consecutive triples maximal, then confirm the full
        // cyclic order. Exactly one of the two start choices survives.
        auto pick = [](const Lagrangian& prev, const std::array<Lagrangian, 2>& pair,
                       const Lagrangian& next) -> std::optional<int> {
            const bool first = isMaximalTriple(prev, pair[0], next);
            const bool second = isMaximalTriple(prev, pair[1], next);
            if (first == second) return std::nullopt;
            return first ? 0 : 1;
        };
        const std::array<Lagrangian, 2> aPair{t6.a, t6.b};
        const std::array<Lagrangian, 2> bPair{t2.a, t2.b};
        const std::array<Lagrangian, 2> cPair{t4.a, t4.b};
        const std::array<Lagrangian, 2> yPair{side3.a, side3.b};
        const std::array<Lagrangian, 2> zPair{side5.a, side5.b};
        for (int flip = 0; flip < 2; ++flip) {
            const Lagrangian x1 = flip ? side1.b : side1.a;
            const Lagrangian x2 = flip ? side1.a : side1.b;
            const auto ia = pick(x1, aPair, x2);
            if (!ia) continue;
            const auto ib = pick(aPair[*ia], bPair, x2);
            if (!ib) continue;
            const auto iy = pick(x2, yPair, bPair[1 - *ib]);
            if (!iy) continue;
            const auto ic = pick(bPair[1 - *ib], cPair, yPair[1 - *iy]);
            if (!ic) continue;
            const auto iz = pick(yPair[1 - *iy], zPair, cPair[1 - *ic]);
            if (!iz) continue;
            const std::array<Lagrangian, 12> twelve{
                x1,           aPair[*ia],     bPair[*ib],     x2,
                yPair[*iy],   bPair[1 - *ib], cPair[*ic],     yPair[1 - *iy],
                zPair[*iz],   cPair[1 - *ic], aPair[1 - *ia], zPair[1 - *iz]};
            if (!isMaximalTuple(twelve)) continue;
            const std::array<Lagrangian, 6> mixed{twelve[3], twelve[5], twelve[7],
                                                  twelve[8], twelve[10], twelve[0]};
            const OrderedHexagon hex = hexagonFromSixTuple(mixed, SixTupleConvention::Mixed);
            SParameters out;
            out.coords = coordsFromHexagon(hex);
            const Reflection rhos[3] = {w.rho1, w.rho2, w.rho3};
            KElement* slots[3] = {&out.r1, &out.r2, &out.r3};
            const int sideOf[3] = {6, 2, 4};
            for (int i = 0; i < 3; ++i)
                *slots[i] = kElementOf(reflectionSetForSide(hex, sideOf[i]), rhos[i]);
            return out;
        }
        throw InvalidRepresentation("fixed sides do not assemble into an ordered hexagon");
    } catch (const InvalidRepresentation&) {
        throw;
    } catch (const Error& e) {
        throw InvalidRepresentation(std::string("coordinate extraction failed: ") + e.what());
    }
}

}  // namespace arc
