#include "siegelarc/lagrangian.hpp"

#include <algorithm>
#include <cmath>

#include "siegelarc/cmat2.hpp"

namespace arc {

namespace {

double omega(const double* u, const double* v) {
    // Standard symplectic form with J = [[0, Id], [-Id, 0]].
    return u[0] * v[2] + u[1] * v[3] - u[2] * v[0] - u[3] * v[1];
}

void getColumn(const std::array<double, 8>& b, int c, double* out) {
    for (int r = 0; r < 4; ++r) out[r] = b[2 * r + c];
}

void setColumn(std::array<double, 8>& b, int c, const double* in) {
    for (int r = 0; r < 4; ++r) b[2 * r + c] = in[r];
}

// Modified Gram-Schmidt with one re-orthogonalization pass.
void orthonormalize(std::array<double, 8>& b) {
    double c0[4], c1[4];
    getColumn(b, 0, c0);
    getColumn(b, 1, c1);
    auto dot = [](const double* x, const double* y) {
        return x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3];
    };
    const double n0 = std::sqrt(dot(c0, c0));
    if (!(n0 > 0)) throw Error("Lagrangian basis: zero column");
    for (double& v : c0) v /= n0;
    for (int pass = 0; pass < 2; ++pass) {
        const double p = dot(c0, c1);
        for (int r = 0; r < 4; ++r) c1[r] -= p * c0[r];
    }
    const double n1 = std::sqrt(dot(c1, c1));
    if (!(n1 > 1e-13)) throw Error("Lagrangian basis: rank deficient");
    for (double& v : c1) v /= n1;
    setColumn(b, 0, c0);
    setColumn(b, 1, c1);
}

} // namespace

Lagrangian Lagrangian::fromBasis(const std::array<double, 8>& basis) {
    Lagrangian l;
    l.b = basis;
    orthonormalize(l.b);
    double c0[4], c1[4];
    getColumn(l.b, 0, c0);
    getColumn(l.b, 1, c1);
    if (std::abs(omega(c0, c1)) > 1e-10)
        throw Error("Lagrangian basis: plane is not isotropic");
    return l;
}

Lagrangian Lagrangian::fromChart(const Sym2& z) {
    std::array<double, 8> b{};
    b[2 * 0 + 0] = z.m11; b[2 * 0 + 1] = z.m12;
    b[2 * 1 + 0] = z.m12; b[2 * 1 + 1] = z.m22;
    b[2 * 2 + 0] = 1;     b[2 * 3 + 1] = 1;
    Lagrangian l;
    l.b = b;
    orthonormalize(l.b);
    return l;
}

Lagrangian Lagrangian::zero() {
    std::array<double, 8> b{};
    b[2 * 2 + 0] = 1;
    b[2 * 3 + 1] = 1;
    Lagrangian l;
    l.b = b;
    return l;
}

Lagrangian Lagrangian::infinity() {
    std::array<double, 8> b{};
    b[2 * 0 + 0] = 1;
    b[2 * 1 + 1] = 1;
    Lagrangian l;
    l.b = b;
    return l;
}

std::array<double, 8> Lagrangian::canonicalBasis() const {
    std::array<double, 8> r = b;
    // Pivot rows are chosen from the projector diagonal (a subspace invariant), so
    // the reduced form depends only on the plane.
    double rowNorm[4];
    double maxNorm = 0;
    for (int i = 0; i < 4; ++i) {
        rowNorm[i] = std::hypot(r[2 * i], r[2 * i + 1]);
        maxNorm = std::max(maxNorm, rowNorm[i]);
    }
    int r1 = 0;
    for (int i = 0; i < 4; ++i)
        if (rowNorm[i] >= 0.5 * maxNorm) { r1 = i; break; }
    // Right Givens rotation: zero the second column at the pivot row.
    {
        const double x = r[2 * r1], y = r[2 * r1 + 1];
        const double h = std::hypot(x, y);
        const double gc = x / h, gs = y / h;
        for (int i = 0; i < 4; ++i) {
            const double a = r[2 * i], bb = r[2 * i + 1];
            r[2 * i] = gc * a + gs * bb;
            r[2 * i + 1] = -gs * a + gc * bb;
        }
    }
    const double p1 = r[2 * r1];
    for (int i = 0; i < 4; ++i) r[2 * i] /= p1;
    // Second pivot: dominant remaining entry of column 1.
    int r2 = -1;
    double best = -1;
    for (int i = 0; i < 4; ++i) {
        if (i == r1) continue;
        if (std::abs(r[2 * i + 1]) > best) { best = std::abs(r[2 * i + 1]); r2 = i; }
    }
    int r2First = -1;
    for (int i = 0; i < 4; ++i) {
        if (i == r1) continue;
        if (std::abs(r[2 * i + 1]) >= 0.5 * best) { r2First = i; break; }
    }
    r2 = r2First;
    const double p2 = r[2 * r2 + 1];
    for (int i = 0; i < 4; ++i) r[2 * i + 1] /= p2;
    const double f = r[2 * r2];
    for (int i = 0; i < 4; ++i) r[2 * i] -= f * r[2 * i + 1];
    // Flush denormal noise for stable serialization.
    for (double& v : r)
        if (std::abs(v) < 1e-300) v = 0.0;
    return r;
}

bool sameSubspace(const Lagrangian& l1, const Lagrangian& l2, double tol) {
    // Columns of l2 projected off span(l1); both residuals small <=> equal planes.
    double q0[4], q1[4], c[4];
    getColumn(l1.b, 0, q0);
    getColumn(l1.b, 1, q1);
    auto dot = [](const double* x, const double* y) {
        return x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3];
    };
    for (int col = 0; col < 2; ++col) {
        getColumn(l2.b, col, c);
        const double p0 = dot(q0, c), p1 = dot(q1, c);
        double res = 0;
        for (int r = 0; r < 4; ++r) {
            const double v = c[r] - p0 * q0[r] - p1 * q1[r];
            res += v * v;
        }
        if (std::sqrt(res) > tol) return false;
    }
    return true;
}

double subspaceGap(const Lagrangian& l1, const Lagrangian& l2) {
    // Bases are orthonormal, so B B^T is the orthogonal projector.
    double gap = 0;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            const double p1 = l1.at(r, 0) * l1.at(c, 0) + l1.at(r, 1) * l1.at(c, 1);
            const double p2 = l2.at(r, 0) * l2.at(c, 0) + l2.at(r, 1) * l2.at(c, 1);
            gap += (p1 - p2) * (p1 - p2);
        }
    }
    return std::sqrt(gap);
}

bool transverse(const Lagrangian& l1, const Lagrangian& l2) {
    Mat4 m;
    for (int r = 0; r < 4; ++r) {
        m.at(r, 0) = l1.at(r, 0);
        m.at(r, 1) = l1.at(r, 1);
        m.at(r, 2) = l2.at(r, 0);
        m.at(r, 3) = l2.at(r, 1);
    }
    return std::abs(m.det()) > Tol::get().transverse;
}

ChartPoint chart(const Lagrangian& l) {
    const Mat2 bottom{l.at(2, 0), l.at(2, 1), l.at(3, 0), l.at(3, 1)};
    const Mat2 top{l.at(0, 0), l.at(0, 1), l.at(1, 0), l.at(1, 1)};
    if (std::abs(bottom.det()) > Tol::get().transverse) {
        const Mat2 z = top * bottom.inverse();
        return {Sym2::fromMat(z), false};
    }
    if (sameSubspace(l, Lagrangian::infinity())) return {Sym2{}, true};
    throw ChartSingularity("Lagrangian is partially infinite: no chart value");
}

Sym2 chartValue(const Lagrangian& l) {
    const ChartPoint p = chart(l);
    if (p.atInfinity) throw ChartSingularity("chart value requested at infinity");
    return p.value;
}

// ------------------------------------------------------------ group elements

double spResidual(const Mat4& m, MapKind& kindOut) {
    const Mat4 J = Mat4::Jmat();
    const Mat4 w = m.transpose() * J * m;
    const double plus = (w - J).norm();
    const double minus = (w + J).norm();
    const double scale = std::max(1.0, m.norm() * m.norm());
    if (plus <= minus) {
        kindOut = MapKind::Symplectic;
        return plus / scale;
    }
    kindOut = MapKind::Antisymplectic;
    return minus / scale;
}

namespace {

Mat4 signNormalized(const Mat4& m) {
    int arg = 0;
    double best = -1;
    for (int i = 0; i < 16; ++i)
        if (std::abs(m.m[i]) > best) { best = std::abs(m.m[i]); arg = i; }
    if (m.m[arg] < 0) return m * -1.0;
    return m;
}

} // namespace

SpMap SpMap::fromMatrix(const Mat4& m) {
    MapKind kind;
    const double res = spResidual(m, kind);
    if (res > Tol::get().sympResidual)
        throw Error("matrix is neither symplectic nor antisymplectic");
    return SpMap{signNormalized(m), kind};
}

SpMap SpMap::identity() { return SpMap{Mat4::identity(), MapKind::Symplectic}; }

SpMap SpMap::inverse() const {
    // M^T J M = eps J  =>  M^{-1} = -eps J M^T J.
    const Mat4 J = Mat4::Jmat();
    const double eps = antisymplectic() ? -1.0 : 1.0;
    return SpMap{signNormalized(J * m.transpose() * J * -eps), kind};
}

SpMap SpMap::operator*(const SpMap& o) const {
    const MapKind k = (antisymplectic() != o.antisymplectic()) ? MapKind::Antisymplectic
                                                               : MapKind::Symplectic;
    return SpMap{signNormalized(m * o.m), k};
}

bool projEqual(const Mat4& a, const Mat4& b, double tol) {
    const double scale = std::max(1.0, std::max(a.norm(), b.norm()));
    return std::min((a - b).norm(), (a + b).norm()) <= tol * scale;
}

Lagrangian actLagrangian(const SpMap& g, const Lagrangian& l) {
    std::array<double, 8> out{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 2; ++c) {
            double s = 0;
            for (int k = 0; k < 4; ++k) s += g.m.at(r, k) * l.at(k, c);
            out[2 * r + c] = s;
        }
    Lagrangian res;
    res.b = out;
    orthonormalize(res.b);
    return res;
}

SiegelPoint actSiegel(const SpMap& g, const SiegelPoint& z) {
    // Antisymplectic maps act on the conjugate point so the image has Y > 0.
    const Sym2 yIn = g.antisymplectic() ? -z.Y : z.Y;
    const CMat2 Z = CMat2::fromParts(z.X, yIn);
    const CMat2 A = CMat2::fromReal(g.m.block(0, 0));
    const CMat2 B = CMat2::fromReal(g.m.block(0, 1));
    const CMat2 C = CMat2::fromReal(g.m.block(1, 0));
    const CMat2 D = CMat2::fromReal(g.m.block(1, 1));
    const CMat2 den = C * Z + D;
    const double dscale = den.norm();
    if (std::abs(den.det()) <= 1e-14 * std::max(1.0, dscale * dscale))
        throw ChartSingularity("fractional-linear image leaves the chart");
    const CMat2 W = (A * Z + B) * den.inverse();
    const Sym2 X{W.a.real(), 0.5 * (W.b.real() + W.c.real()), W.d.real()};
    const Sym2 Y{W.a.imag(), 0.5 * (W.b.imag() + W.c.imag()), W.d.imag()};
    if (!Y.isPD())
        throw ChartSingularity("fractional-linear image leaves the upper half-space");
    return {X, Y};
}

// ------------------------------------------------------------- cross-ratio

Mat2 crossRatio(const Lagrangian& l1, const Lagrangian& l2, const Lagrangian& l3,
                const Lagrangian& l4) {
    if (!transverse(l1, l2) || !transverse(l3, l4))
        throw NotTransverse("cross-ratio: inverted pairs must be transverse");
    // Choose a rotation exp(theta J) so all four planes sit in one affine chart;
    // the result is similarity-invariant under this choice.
    const Lagrangian* ls[4] = {&l1, &l2, &l3, &l4};
    const double thetas[8] = {0.0, 0.4, 0.8, 1.2, 1.6, 2.0, 2.4, 2.8};
    double bestScore = -1;
    int bestIdx = 0;
    SpMap bestMap = SpMap::identity();
    for (int i = 0; i < 8; ++i) {
        const double ct = std::cos(thetas[i]), st = std::sin(thetas[i]);
        const Mat4 rot = Mat4::fromBlocks(Mat2::identity() * ct, Mat2::identity() * st,
                                          Mat2::identity() * -st, Mat2::identity() * ct);
        const SpMap gm{rot, MapKind::Symplectic};
        double score = 2;
        for (const Lagrangian* l : ls) {
            const Lagrangian img = actLagrangian(gm, *l);
            const Mat2 bottom{img.at(2, 0), img.at(2, 1), img.at(3, 0), img.at(3, 1)};
            score = std::min(score, std::abs(bottom.det()));
        }
        if (score > bestScore) {
            bestScore = score;
            bestIdx = i;
            bestMap = gm;
        }
        if (score > 0.05) { bestIdx = i; bestMap = gm; bestScore = score; break; }
    }
    (void)bestIdx;
    // chartValue() below rejects |det bottom| <= 1e-10, so demand a safe margin here.
    if (bestScore < 1e-9) throw ChartSingularity("cross-ratio: no common chart found");
    Sym2 X[4];
    for (int i = 0; i < 4; ++i) X[i] = chartValue(actLagrangian(bestMap, *ls[i]));
    const Mat2 d12 = (X[0] - X[1]).mat();
    const Mat2 d43 = (X[3] - X[2]).mat();
    return d12.inverse() * (X[3] - X[1]).mat() * d43.inverse() * (X[0] - X[2]).mat();
}

// ------------------------------------------------------------- maximality

bool isMaximalTriple(const Lagrangian& a, const Lagrangian& b, const Lagrangian& c) {
    try {
        const SpMap g = mapPairToStandard(a, c);
        const ChartPoint p = chart(actLagrangian(g, b));
        if (p.atInfinity) return false;
        return p.value.isPD();
    } catch (const NotTransverse&) {
        return false;
    } catch (const ChartSingularity&) {
        return false;
    }
}

bool isMaximalTuple(std::span<const Lagrangian> tuple) {
    const int n = static_cast<int>(tuple.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                if (!isMaximalTriple(tuple[i], tuple[j], tuple[k])) return false;
    return true;
}

SpMap mapPairToStandard(const Lagrangian& P, const Lagrangian& Q) {
    // Symplectic basis (u1, u2, v1, v2) with span(u) = Q, span(v) = P and
    // omega(u_i, v_j) = delta_ij; then M = [u | v] maps (infinity, zero) to (Q, P).
    double u0[4], u1[4], w0[4], w1[4];
    getColumn(Q.b, 0, u0);
    getColumn(Q.b, 1, u1);
    getColumn(P.b, 0, w0);
    getColumn(P.b, 1, w1);
    const Mat2 G{omega(u0, w0), omega(u0, w1), omega(u1, w0), omega(u1, w1)};
    if (std::abs(G.det()) < Tol::get().transverse)
        throw NotTransverse("pair standardization requires transverse planes");
    const Mat2 Gi = G.inverse();
    double v0[4], v1[4];
    for (int r = 0; r < 4; ++r) {
        v0[r] = w0[r] * Gi.a + w1[r] * Gi.c;
        v1[r] = w0[r] * Gi.b + w1[r] * Gi.d;
    }
    Mat4 M;
    for (int r = 0; r < 4; ++r) {
        M.at(r, 0) = u0[r];
        M.at(r, 1) = u1[r];
        M.at(r, 2) = v0[r];
        M.at(r, 3) = v1[r];
    }
    return SpMap::fromMatrix(symplecticInverse(M));
}

StandardizedQuad mapQuadrupleToStandard(const Lagrangian& P1, const Lagrangian& P2,
                                        const Lagrangian& P3, const Lagrangian& P4) {
    SpMap g0 = SpMap::identity();
    try {
        g0 = mapPairToStandard(P1, P4);
    } catch (const NotTransverse&) {
        throw NotMaximal("quadruple standardization: outer pair not transverse");
    }
    Sym2 x2;
    try {
        x2 = chartValue(actLagrangian(g0, P2));
    } catch (const ChartSingularity&) {
        throw NotMaximal("quadruple standardization: second entry not in chart");
    }
    if (!x2.isPD()) throw NotMaximal("quadruple standardization: second entry not positive");
    const SpMap g1{Mat4::blockDiagSp(invSqrtPD(x2).mat()), MapKind::Symplectic};
    const SpMap g10 = g1 * g0;
    Sym2 y0;
    try {
        y0 = chartValue(actLagrangian(g10, P3));
    } catch (const ChartSingularity&) {
        throw NotMaximal("quadruple standardization: third entry not in chart");
    }
    if (!y0.isPD() || !(y0 - Sym2::identity()).isPD())
        throw NotMaximal("quadruple standardization: third entry out of order");
    const EigSym2 e = eigSym2Any(y0);
    const Mat2 S = e.S.mat();
    const Mat2 flip{-1, 0, 0, 1};
    StandardizedQuad out;
    out.g = SpMap{Mat4::rotationConj(S), MapKind::Symplectic} * g10;
    out.gFlipped = SpMap{Mat4::rotationConj(flip * S), MapKind::Symplectic} * g10;
    out.lambda = WeylVector{e.lambda1, e.lambda2};
    out.degenerate = e.degenerate;
    return out;
}

} // namespace arc
