#include "doctest.h"

#include <cmath>

#include "siegelarc/tube.hpp"
#include "helpers.hpp"

using namespace arc;
using testutil::near;

TEST_CASE("vector-valued distance, frozen sample") {
    const SiegelPoint p = SiegelPoint::pure(Sym2::identity());
    const SiegelPoint q = SiegelPoint::pure(Sym2::diag(std::exp(2.0), std::exp(1.0)));
    const WeylVector d = weylDistance(p, q);
    CHECK(near(d.x1, 2, 1e-10));
    CHECK(near(d.x2, 1, 1e-10));
    // symmetry
    const WeylVector d2 = weylDistance(q, p);
    CHECK(near(d2.x1, 2, 1e-10));
    CHECK(near(d2.x2, 1, 1e-10));
}

TEST_CASE("signed tube vector") {
    const WeylVector fwd = tubeVector(Sym2::identity(), Sym2::diag(std::exp(2.0), std::exp(3.0)));
    CHECK(near(fwd.x1, 3, 1e-12));
    CHECK(near(fwd.x2, 2, 1e-12));
    const WeylVector bwd = tubeVector(Sym2::diag(std::exp(2.0), std::exp(3.0)), Sym2::identity());
    CHECK(near(bwd.x1, -2, 1e-12));
    CHECK(near(bwd.x2, -3, 1e-12));
    // Both components positive iff the difference is positive definite.
    CHECK(fwd.x2 > 0);
    CHECK(bwd.x1 < 0);
}

TEST_CASE("splitting of the standard tube, frozen samples") {
    {
        const auto [level, h] = splitRH(PosDef2(Sym2::identity()));
        CHECK(near(level, 0, 1e-14));
        CHECK(near(h.x, 0, 1e-14));
        CHECK(near(h.y, 1, 1e-14));
    }
    {
        const auto [level, h] = splitRH(PosDef2(Sym2::scalar(std::exp(1.0))));
        CHECK(near(level, std::sqrt(2.0), 1e-12));
        CHECK(near(h.y, 1, 1e-12));
    }
    {
        const auto [level, h] = splitRH(PosDef2(Sym2::diag(std::exp(1.0), std::exp(-1.0))));
        CHECK(near(level, 0, 1e-12));
        CHECK(near(h.x, 0, 1e-12));
        CHECK(near(h.y, std::exp(2.0), 1e-12));
    }
    // Roundtrip through the inverse.
    testutil::Rng rng(31);
    for (int k = 0; k < 50; ++k) {
        const Sym2 y{rng.uniform(0.5, 3), rng.uniform(-0.3, 0.3), rng.uniform(0.5, 3)};
        if (!y.isPD()) continue;
        const auto [level, h] = splitRH(PosDef2(y));
        const PosDef2 back = splitRHInverse(level, h);
        CHECK(testutil::nearSym(back.m, y, 1e-10));
    }
}

TEST_CASE("splitting preserves distances") {
    // The (r, h) split is isometric once the plane factor carries the 1/2
    // metric weight: |d|^2 = r^2 + h^2/2.
    const Sym2 y1 = Sym2::diag(std::exp(1.4), std::exp(0.2));
    const Sym2 y2 = Sym2::diag(std::exp(-0.3), std::exp(0.9));
    const WeylVector d = weylDistance(SiegelPoint::pure(y1), SiegelPoint::pure(y2));
    const RHVector rh = rhVector(d);
    CHECK(near(d.x1 * d.x1 + d.x2 * d.x2, rh.r * rh.r + 0.5 * rh.h * rh.h, 1e-10));
}

TEST_CASE("tube orthogonality via cross-ratio") {
    const RTube std1 = RTube::standard();
    const RTube t2 = RTube::fromEndpoints(Lagrangian::fromChart(-Sym2::identity()),
                                          Lagrangian::fromChart(Sym2::identity()));
    CHECK(tubesOrthogonal(std1, t2));
    const RTube t3 = RTube::fromEndpoints(Lagrangian::fromChart(-Sym2::diag(2, 3)),
                                          Lagrangian::fromChart(Sym2::diag(2, 3)));
    CHECK(tubesOrthogonal(std1, t3));
    const RTube off = RTube::fromEndpoints(Lagrangian::fromChart(-Sym2::diag(2, 3)),
                                           Lagrangian::fromChart(Sym2::diag(3, 2)));
    CHECK_FALSE(tubesOrthogonal(std1, off));
    // Non-interleaved endpoints cannot be tested for orthogonality.
    const RTube disjoint = RTube::fromEndpoints(Lagrangian::fromChart(Sym2::identity()),
                                                Lagrangian::fromChart(Sym2::scalar(2)));
    CHECK_THROWS_AS(tubesOrthogonal(std1, disjoint), NotInterleaved);
}

TEST_CASE("tube intersections") {
    const RTube std1 = RTube::standard();
    const RTube t2 = RTube::fromEndpoints(Lagrangian::fromChart(-Sym2::identity()),
                                          Lagrangian::fromChart(Sym2::identity()));
    const SiegelPoint p = intersectTubes(std1, t2);
    CHECK(testutil::nearSym(p.X, Sym2{}, 1e-10));
    CHECK(testutil::nearSym(p.Y, Sym2::identity(), 1e-10));
    const RTube disjoint = RTube::fromEndpoints(Lagrangian::fromChart(Sym2::identity()),
                                                Lagrangian::fromChart(Sym2::scalar(2)));
    CHECK_THROWS_AS(intersectTubes(std1, disjoint), EmptyIntersection);
}

TEST_CASE("projection to the standard tube") {
    // Points of the standard tube are the purely imaginary ones; projecting a
    // point of the tube returns it unchanged.
    const SiegelPoint onTube = SiegelPoint::pure(Sym2::diag(2, 5));
    const SiegelPoint proj = projectToTube(RTube::standard(), onTube);
    CHECK(testutil::nearSym(proj.X, Sym2{}, 1e-10));
    CHECK(testutil::nearSym(proj.Y, Sym2::diag(2, 5), 1e-10));
    // Projection of a boundary point in the open interval (0, inf): the
    // projection of the chart point Y is the tube point iY for diagonal Y.
    const SiegelPoint bproj =
        projectToTube(RTube::standard(), Lagrangian::fromChart(Sym2::diag(3, 4)));
    CHECK(testutil::nearSym(bproj.X, Sym2{}, 1e-10));
    CHECK(testutil::nearSym(bproj.Y, Sym2::diag(3, 4), 1e-10));
    CHECK_THROWS_AS(projectToTube(RTube::standard(), Lagrangian::fromChart(Sym2::diag(-1, 2))),
                    OutsideInterval);
}

TEST_CASE("common perpendicular, frozen sample") {
    // Perpendicular of Y_{0,inf} and Y_{Id, diag(4,9)} is Y_{-G, G} with
    // G = geometric mean diag(2, 3).
    const RTube t1 = RTube::standard();
    const RTube t2 = RTube::fromEndpoints(Lagrangian::fromChart(Sym2::identity()),
                                          Lagrangian::fromChart(Sym2::diag(4, 9)));
    const RTube perp = commonPerpendicular(t1, t2);
    const RTube expected = RTube::fromEndpoints(Lagrangian::fromChart(-Sym2::diag(2, 3)),
                                                Lagrangian::fromChart(Sym2::diag(2, 3)));
    CHECK(sameTube(perp, expected));
    CHECK(tubesOrthogonal(perp, t1));
    CHECK(tubesOrthogonal(perp, t2));

    // Oriented variant puts the negative endpoint first for the maximal
    // arrangement (0, Id, diag(4,9), inf).
    const auto [z1, z2] = commonPerpendicularOriented(
        Lagrangian::zero(), Lagrangian::fromChart(Sym2::identity()),
        Lagrangian::fromChart(Sym2::diag(4, 9)), Lagrangian::infinity());
    CHECK(sameSubspace(z1, Lagrangian::fromChart(-Sym2::diag(2, 3))));
    CHECK(sameSubspace(z2, Lagrangian::fromChart(Sym2::diag(2, 3))));
}

TEST_CASE("perpendiculars at interval endpoints") {
    const PosDef2 p1(Sym2::diag(1, 2));
    const PosDef2 p2(Sym2::diag(3, 5));
    const auto [first, second] = perpThroughEndpoint(p1, p2);
    // first = tube {P1 P2^{-1} P1, P2}, orthogonal to {-P1, P1}
    const Sym2 p121 = Sym2::fromMat(p1.m.mat() * p2.m.inverse().mat() * p1.m.mat());
    CHECK(sameTube(first, RTube::fromEndpoints(Lagrangian::fromChart(p121),
                                               Lagrangian::fromChart(p2.m))));
    CHECK(tubesOrthogonal(first, RTube::fromEndpoints(Lagrangian::fromChart(-p1.m),
                                                      Lagrangian::fromChart(p1.m))));
    // second = tube {P1, P2 P1^{-1} P2}, orthogonal to {-P2, P2}
    const Sym2 p212 = Sym2::fromMat(p2.m.mat() * p1.m.inverse().mat() * p2.m.mat());
    CHECK(sameTube(second, RTube::fromEndpoints(Lagrangian::fromChart(p1.m),
                                                Lagrangian::fromChart(p212))));
    CHECK(tubesOrthogonal(second, RTube::fromEndpoints(Lagrangian::fromChart(-p2.m),
                                                       Lagrangian::fromChart(p2.m))));
}

TEST_CASE("rh coordinates and the positivity criterion") {
    // r = (d1+d2)/sqrt(2), h = d1-d2; the criterion r > h/sqrt(2) picks out
    // vectors with both components positive.
    const RHVector v = rhVector(WeylVector{3, 1});
    CHECK(near(v.r, 4 / std::sqrt(2.0), 1e-12));
    CHECK(near(v.h, 2, 1e-12));
    CHECK(pdCriterion(rhVector(WeylVector{3, 1})));
    CHECK(pdCriterion(rhVector(WeylVector{0.2, 0.1})));
    CHECK_FALSE(pdCriterion(rhVector(WeylVector{3, -1})));
    CHECK_FALSE(pdCriterion(rhVector(WeylVector{-1, -2})));
}

TEST_CASE("component-reversing involution") {
    // u(log 2) = log 3 and u(log 3) = log 2, so (log 3, log 2) is fixed.
    const WeylVector fixed = bijectionF(WeylVector{std::log(3.0), std::log(2.0)});
    CHECK(near(fixed.x1, std::log(3.0), 1e-14));
    CHECK(near(fixed.x2, std::log(2.0), 1e-14));
    testutil::Rng rng(32);
    for (int k = 0; k < 200; ++k) {
        double x1 = rng.uniform(0.05, 5), x2 = rng.uniform(0.05, 5);
        if (x1 < x2) std::swap(x1, x2);
        const WeylVector v{x1 + 0.01, x2};
        const WeylVector f = bijectionF(v);
        CHECK(f.x1 >= f.x2); // stays in the closed chamber
        const WeylVector ff = bijectionF(f);
        CHECK(near(ff.x1, v.x1, 1e-10));
        CHECK(near(ff.x2, v.x2, 1e-10));
    }
    // regular input stays regular
    const WeylVector reg = bijectionF(WeylVector{2.0, 1.0});
    CHECK(reg.x1 - reg.x2 > 1e-6);
}

TEST_CASE("componentwise quotient map on the log scale") {
    // x = 1 maps to y = 1: T(0) = 0.
    const WeylVector z = bijectionT(WeylVector{0, 0});
    CHECK(near(z.x1, 0, 1e-14));
    CHECK(near(z.x2, 0, 1e-14));
    // x = 3 maps to y = (3+1)^2/12 = 4/3.
    const WeylVector t3 = bijectionT(WeylVector{std::log(3.0), std::log(3.0)});
    CHECK(near(t3.x1, std::log(4.0 / 3.0), 1e-14));
    CHECK(near(t3.x2, std::log(4.0 / 3.0), 1e-14));
}
