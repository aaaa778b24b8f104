#include "siegelarc/tube.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "siegelarc/cmat2.hpp"

namespace arc {

namespace {

bool lexLess(const std::array<double, 8>& x, const std::array<double, 8>& y) {
    for (int i = 0; i < 8; ++i) {
        if (x[i] < y[i]) return true;
        if (x[i] > y[i]) return false;
    }
    return false;
}

} // namespace

RTube RTube::fromEndpoints(const Lagrangian& x, const Lagrangian& y) {
    if (!transverse(x, y)) throw NotTransverse("tube endpoints must be transverse");
    RTube t{x, y};
    if (lexLess(y.canonicalBasis(), x.canonicalBasis())) std::swap(t.a, t.b);
    return t;
}

RTube RTube::standard() {
    return fromEndpoints(Lagrangian::zero(), Lagrangian::infinity());
}

bool sameTube(const RTube& t1, const RTube& t2) {
    return (sameSubspace(t1.a, t2.a) && sameSubspace(t1.b, t2.b)) ||
           (sameSubspace(t1.a, t2.b) && sameSubspace(t1.b, t2.a));
}

// ----------------------------------------------------------------- distance

WeylVector weylDistance(const SiegelPoint& z1, const SiegelPoint& z2) {
    const CMat2 Z1 = CMat2::fromParts(z1.X, z1.Y);
    const CMat2 Z2 = CMat2::fromParts(z2.X, z2.Y);
    const CMat2 Z1c = Z1.conj();
    const CMat2 Z2c = Z2.conj();
    // Cross-ratio of (Z1, conj Z2, Z2, conj Z1); its eigenvalues r give the
    // distance through lambda = (1 + sqrt r)/(1 - sqrt r).
    const CMat2 R = (Z1 - Z2c).inverse() * (Z1c - Z2c) * (Z1c - Z2).inverse() * (Z1 - Z2);
    const auto ev = R.eig();
    double out[2];
    for (int i = 0; i < 2; ++i) {
        double r = std::max(0.0, ev[static_cast<size_t>(i)].real());
        r = std::min(r, 1.0 - 1e-16);
        const double s = std::sqrt(r);
        out[i] = std::log((1 + s) / (1 - s));
    }
    return WeylVector{out[0], out[1]};
}

WeylVector tubeVector(const Sym2& A, const Sym2& B) {
    const Mat2 ai = invSqrtPD(A).mat();
    const EigSym2 e = eigSym2Any(congruence(ai, B));
    if (!(e.lambda2 > 0)) throw NotPositiveDefinite("tube vector requires positive definite inputs");
    return WeylVector{std::log(e.lambda1), std::log(e.lambda2)};
}

// ------------------------------------------------------------- interleaving

namespace {

// Search for a maximal cyclic arrangement alternating endpoints of t1 and t2.
// Candidates starting with t1.a cover all alternating cyclic words up to
// rotation (reversals are rotations of the other candidate).
bool findInterleaving(const RTube& t1, const RTube& t2, std::array<Lagrangian, 4>& out) {
    const std::array<Lagrangian, 4> c1{t1.a, t2.a, t1.b, t2.b};
    const std::array<Lagrangian, 4> c2{t1.a, t2.b, t1.b, t2.a};
    if (isMaximalTuple(std::span<const Lagrangian>(c1.data(), 4))) {
        out = c1;
        return true;
    }
    if (isMaximalTuple(std::span<const Lagrangian>(c2.data(), 4))) {
        out = c2;
        return true;
    }
    return false;
}

} // namespace

bool tubesOrthogonal(const RTube& t1, const RTube& t2) {
    std::array<Lagrangian, 4> q;
    if (!findInterleaving(t1, t2, q))
        throw NotInterleaved("orthogonality is defined for interleaved tubes only");
    const Mat2 R = crossRatio(q[0], q[1], q[2], q[3]);
    return (R - Mat2::identity() * 2.0).norm() < Tol::get().orthogonality;
}

SiegelPoint intersectTubes(const RTube& t1, const RTube& t2) {
    std::array<Lagrangian, 4> q;
    if (!findInterleaving(t1, t2, q))
        throw EmptyIntersection("tubes with non-interleaving endpoints are disjoint");
    // q = (a, c, b, d) with {a, b} = t1. Standardize t1 to the tube over
    // (zero, infinity); then c has a positive chart W2, d a negative chart W1,
    // and the common point is i * geometricMean(-W1, W2).
    const SpMap g = mapPairToStandard(q[0], q[2]); // q[0] -> zero, q[2] -> infinity
    const Sym2 W2 = chartValue(actLagrangian(g, q[1]));
    const Sym2 W1 = chartValue(actLagrangian(g, q[3]));
    if (!W2.isPD() || !(-W1).isPD())
        throw EmptyIntersection("interleaving standardization failed");
    const Sym2 Y = geoMeanPD(-W1, W2);
    return actSiegel(g.inverse(), SiegelPoint::pure(Y));
}

// -------------------------------------------------------------- projections

SiegelPoint projectToTube(const RTube& t, const Lagrangian& x) {
    const SpMap g = mapPairToStandard(t.a, t.b);
    Sym2 A;
    try {
        A = chartValue(actLagrangian(g, x));
    } catch (const ChartSingularity&) {
        throw OutsideInterval("projection argument is not inside the tube interval");
    }
    if (!A.isPD())
        throw OutsideInterval("projection argument is not inside the tube interval");
    return actSiegel(g.inverse(), SiegelPoint::pure(A));
}

SiegelPoint projectToTube(const RTube& t, const SiegelPoint& z) {
    const SpMap g = mapPairToStandard(t.a, t.b);
    const SiegelPoint w = actSiegel(g, z);
    // Foot of the perpendicular from X + iY to the pure-imaginary locus:
    // i * geometricMean(Y, X Y^{-1} X + Y). Exact on diagonal (product of
    // hyperbolic planes) data and equivariant under the tube stabilizer.
    const Sym2 Y = w.Y;
    const Mat2 XYX = w.X.mat() * Y.inverse().mat() * w.X.mat();
    const Sym2 foot = geoMeanPD(Y, Sym2::fromMat(XYX) + Y);
    return actSiegel(g.inverse(), SiegelPoint::pure(foot));
}

// ------------------------------------------------------- common perpendicular

std::pair<Lagrangian, Lagrangian> commonPerpendicularOriented(const Lagrangian& P1,
                                                              const Lagrangian& P2,
                                                              const Lagrangian& P3,
                                                              const Lagrangian& P4) {
    const StandardizedQuad q = mapQuadrupleToStandard(P1, P2, P3, P4);
    const Sym2 sq = Sym2::diag(std::sqrt(q.lambda.x1), std::sqrt(q.lambda.x2));
    const SpMap gi = q.g.inverse();
    const Lagrangian z1 = actLagrangian(gi, Lagrangian::fromChart(-sq));
    const Lagrangian z2 = actLagrangian(gi, Lagrangian::fromChart(sq));
    return {z1, z2};
}

RTube commonPerpendicular(const RTube& t1, const RTube& t2) {
    const std::array<std::array<Lagrangian, 4>, 4> cands{{
        {t1.a, t2.a, t2.b, t1.b},
        {t1.a, t2.b, t2.a, t1.b},
        {t1.b, t2.a, t2.b, t1.a},
        {t1.b, t2.b, t2.a, t1.a},
    }};
    for (const auto& c : cands) {
        if (!isMaximalTuple(std::span<const Lagrangian>(c.data(), 4))) continue;
        const auto [z1, z2] = commonPerpendicularOriented(c[0], c[1], c[2], c[3]);
        return RTube::fromEndpoints(z1, z2);
    }
    throw NotMaximal("tubes admit no maximal endpoint assignment");
}

std::pair<RTube, RTube> perpThroughEndpoint(const PosDef2& p1, const PosDef2& p2) {
    if (!(p2.m - p1.m).isPD())
        throw NotMaximal("endpoint data must satisfy 0 < P1 < P2");
    const Mat2 a = p1.m.mat() * p2.m.inverse().mat() * p1.m.mat();
    const Mat2 b = p2.m.mat() * p1.m.inverse().mat() * p2.m.mat();
    const RTube first = RTube::fromEndpoints(Lagrangian::fromChart(Sym2::fromMat(a)),
                                             Lagrangian::fromChart(p2.m));
    const RTube second = RTube::fromEndpoints(Lagrangian::fromChart(p1.m),
                                              Lagrangian::fromChart(Sym2::fromMat(b)));
    return {first, second};
}

// ----------------------------------------------------------------- splitting

std::pair<double, H2Point> splitRH(const PosDef2& y) {
    const double det = y.m.det();
    const double level = std::log(det) / std::sqrt(2.0);
    const double s = std::sqrt(det);
    const double a = y.m.m11 / s, b = y.m.m12 / s, c = y.m.m22 / s;
    const double den = b * b + c * c;
    return {level, H2Point{b * (a + c) / den, 1.0 / den}};
}

PosDef2 splitRHInverse(double level, const H2Point& h2) {
    // Unimodular symmetric positive square root of g g^T, where g is the
    // upper-triangular element sending i to x + iy.
    const double x = h2.x, yy = h2.y;
    if (!(yy > 0)) throw NotPositiveDefinite("upper-half-plane point needs y > 0");
    const Sym2 ggt{yy + x * x / yy, x / yy, 1.0 / yy};
    const Sym2 B = sqrtPD(PosDef2(ggt)).m;
    const double scale = std::exp(level / std::sqrt(2.0));
    return PosDef2(B * scale);
}

// ------------------------------------------------------------------ criteria

RHVector rhVector(const WeylVector& d) {
    return RHVector{(d.x1 + d.x2) / std::sqrt(2.0), d.x1 - d.x2};
}

bool pdCriterion(const RHVector& v) { return v.r > v.h / std::sqrt(2.0); }

WeylVector bijectionF(const WeylVector& d) {
    if (!(d.x1 > 0) || !(d.x2 > 0))
        throw Error("component-reversing involution needs positive components");
    auto u = [](double x) {
        const double e = std::exp(x);
        return std::log((e + 1) / (e - 1));
    };
    return WeylVector{u(d.x2), u(d.x1)};
}

WeylVector bijectionT(const WeylVector& d) {
    auto t = [](double x) {
        const double e = std::exp(x);
        return std::log((e + 1) * (e + 1) / (4 * e));
    };
    return WeylVector{t(d.x1), t(d.x2)};
}

} // namespace arc
