#include "doctest.h"

#include <array>
#include <cmath>

#include "siegelarc/lagrangian.hpp"
#include "helpers.hpp"

using namespace arc;
using testutil::near;

TEST_CASE("chart construction roundtrips") {
    const Sym2 z{0.7, -0.3, 1.9};
    const Lagrangian l = Lagrangian::fromChart(z);
    const ChartPoint p = chart(l);
    CHECK_FALSE(p.atInfinity);
    CHECK(testutil::nearSym(p.value, z, 1e-12));
    CHECK(chart(Lagrangian::infinity()).atInfinity);
    CHECK(testutil::nearSym(chartValue(Lagrangian::zero()), Sym2{}, 1e-14));
    CHECK_THROWS_AS(chartValue(Lagrangian::infinity()), ChartSingularity);
}

TEST_CASE("fromBasis validates isotropy") {
    // span(e1, e3) is not isotropic: omega(e1, e3) = 1.
    std::array<double, 8> bad{};
    bad[2 * 0 + 0] = 1; // e1
    bad[2 * 2 + 1] = 1; // e3
    CHECK_THROWS_AS(Lagrangian::fromBasis(bad), Error);
    // span(e1, e2) is fine.
    std::array<double, 8> good{};
    good[2 * 0 + 0] = 1;
    good[2 * 1 + 1] = 1;
    const Lagrangian l = Lagrangian::fromBasis(good);
    CHECK(sameSubspace(l, Lagrangian::infinity()));
}

TEST_CASE("subspace comparison and gap") {
    const Lagrangian a = Lagrangian::fromChart(Sym2::diag(1, 2));
    CHECK(sameSubspace(a, Lagrangian::fromChart(Sym2::diag(1, 2))));
    CHECK_FALSE(sameSubspace(a, Lagrangian::zero()));
    CHECK(near(subspaceGap(a, a), 0, 1e-14));
    // zero and infinity are orthogonal planes: projector distance sqrt(4) = 2.
    CHECK(near(subspaceGap(Lagrangian::zero(), Lagrangian::infinity()), 2.0, 1e-14));
}

TEST_CASE("transversality in charts") {
    // Chart difference invertible <=> transverse.
    CHECK(transverse(Lagrangian::fromChart(Sym2::identity()),
                     Lagrangian::fromChart(Sym2::diag(2, 3))));
    CHECK_FALSE(transverse(Lagrangian::fromChart(Sym2::diag(1, 5)),
                           Lagrangian::fromChart(Sym2::diag(1, 7))));
    CHECK(transverse(Lagrangian::zero(), Lagrangian::infinity()));
    CHECK(transverse(Lagrangian::fromChart(Sym2::diag(1, 5)), Lagrangian::infinity()));
    CHECK_FALSE(transverse(Lagrangian::zero(), Lagrangian::zero()));
}

TEST_CASE("SpMap validation and action in charts") {
    CHECK(SpMap::fromMatrix(Mat4::Jmat()).kind == MapKind::Symplectic);
    Mat4 anti = Mat4::identity();
    anti.at(2, 2) = -1;
    anti.at(3, 3) = -1;
    CHECK(SpMap::fromMatrix(anti).kind == MapKind::Antisymplectic);
    Mat4 junk = Mat4::identity();
    junk.at(0, 1) = 0.3; // not symplectic
    junk.at(1, 0) = 0.3;
    CHECK_THROWS_AS(SpMap::fromMatrix(junk), Error);

    const Sym2 z{0.4, 0.1, 1.3};
    const Sym2 s{1.0, -0.5, 2.0};
    const SpMap tr = SpMap::fromMatrix(Mat4::translation(s));
    CHECK(testutil::nearSym(chartValue(actLagrangian(tr, Lagrangian::fromChart(z))), z + s,
                            1e-12));
    const Mat2 a{2, 1, 0, 1};
    const SpMap bd = SpMap::fromMatrix(Mat4::blockDiagSp(a));
    const Sym2 azat = Sym2::fromMat(a * z.mat() * a.transpose());
    CHECK(testutil::nearSym(chartValue(actLagrangian(bd, Lagrangian::fromChart(z))), azat,
                            1e-12));
}

TEST_CASE("Siegel action keeps the upper half-space") {
    // J fixes i Id; translations shift the real part.
    const SpMap J = SpMap::fromMatrix(Mat4::Jmat());
    const SiegelPoint zi = SiegelPoint::pure(Sym2::identity());
    const SiegelPoint im = actSiegel(J, zi);
    CHECK(testutil::nearSym(im.X, Sym2{}, 1e-12));
    CHECK(testutil::nearSym(im.Y, Sym2::identity(), 1e-12));

    testutil::Rng rng(21);
    for (int k = 0; k < 50; ++k) {
        const SpMap g = testutil::randomSp(rng);
        const SiegelPoint z{Sym2{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)},
                            Sym2::diag(rng.uniform(0.3, 3), rng.uniform(0.3, 3))};
        const SiegelPoint w = actSiegel(g, z);
        CHECK(w.Y.isPD());
        // action is a group action: g^{-1} (g z) = z
        const SiegelPoint back = actSiegel(g.inverse(), w);
        CHECK(testutil::nearSym(back.X, z.X, 1e-8));
        CHECK(testutil::nearSym(back.Y, z.Y, 1e-8));
    }
}

TEST_CASE("projective equality") {
    const Mat4 m = Mat4::blockDiagSp(Mat2{2, 1, 0, 1});
    CHECK(projEqual(m, m * -1.0));
    CHECK_FALSE(projEqual(m, Mat4::identity()));
}

TEST_CASE("cross-ratio of the standard quadruple") {
    // R(0, Id, X, inf) is similar to X.
    const Mat2 r = crossRatio(Lagrangian::zero(), Lagrangian::fromChart(Sym2::identity()),
                              Lagrangian::fromChart(Sym2::diag(3, 2)), Lagrangian::infinity());
    const auto eig = eigMat2Real(r);
    CHECK(near(eig[0], 3, 1e-10));
    CHECK(near(eig[1], 2, 1e-10));
    CHECK_THROWS_AS(crossRatio(Lagrangian::zero(), Lagrangian::zero(),
                               Lagrangian::fromChart(Sym2::identity()), Lagrangian::infinity()),
                    NotTransverse);
}

TEST_CASE("cross-ratio is invariant under symplectic maps") {
    testutil::Rng rng(22);
    const Lagrangian l1 = Lagrangian::zero();
    const Lagrangian l2 = Lagrangian::fromChart(Sym2::identity());
    const Lagrangian l3 = Lagrangian::fromChart(Sym2::diag(4, 2));
    const Lagrangian l4 = Lagrangian::infinity();
    const auto base = eigMat2Real(crossRatio(l1, l2, l3, l4));
    for (int k = 0; k < 20; ++k) {
        const SpMap g = testutil::randomSp(rng);
        const auto moved = eigMat2Real(crossRatio(actLagrangian(g, l1), actLagrangian(g, l2),
                                                  actLagrangian(g, l3), actLagrangian(g, l4)));
        CHECK(near(moved[0], base[0], 1e-8));
        CHECK(near(moved[1], base[1], 1e-8));
    }
}

TEST_CASE("maximality of triples and tuples") {
    const Lagrangian zero = Lagrangian::zero();
    const Lagrangian inf = Lagrangian::infinity();
    const Lagrangian id = Lagrangian::fromChart(Sym2::identity());
    const Lagrangian two = Lagrangian::fromChart(Sym2::scalar(2));
    CHECK(isMaximalTriple(zero, id, inf));
    CHECK_FALSE(isMaximalTriple(zero, Lagrangian::fromChart(Sym2::diag(-1, -2)), inf));
    const std::array<Lagrangian, 4> tup{zero, id, two, inf};
    CHECK(isMaximalTuple(tup));
    const std::array<Lagrangian, 4> bad{zero, two, id, inf};
    CHECK_FALSE(isMaximalTuple(bad));
}

TEST_CASE("pair standardization") {
    testutil::Rng rng(23);
    for (int k = 0; k < 30; ++k) {
        const SpMap g = testutil::randomSp(rng);
        const Lagrangian P = actLagrangian(g, Lagrangian::fromChart(Sym2{0.3, 0.2, 1.1}));
        const Lagrangian Q = actLagrangian(g, Lagrangian::fromChart(Sym2::diag(5, 4)));
        const SpMap s = mapPairToStandard(P, Q);
        CHECK(sameSubspace(actLagrangian(s, P), Lagrangian::zero()));
        CHECK(sameSubspace(actLagrangian(s, Q), Lagrangian::infinity()));
    }
    CHECK_THROWS_AS(mapPairToStandard(Lagrangian::zero(), Lagrangian::zero()), NotTransverse);
}

TEST_CASE("quadruple standardization") {
    const Lagrangian zero = Lagrangian::zero();
    const Lagrangian inf = Lagrangian::infinity();
    const Lagrangian id = Lagrangian::fromChart(Sym2::identity());
    const Lagrangian x = Lagrangian::fromChart(Sym2::diag(4, 2));
    const StandardizedQuad q = mapQuadrupleToStandard(zero, id, x, inf);
    CHECK(near(q.lambda.x1, 4, 1e-10));
    CHECK(near(q.lambda.x2, 2, 1e-10));
    CHECK(sameSubspace(actLagrangian(q.g, zero), zero));
    CHECK(sameSubspace(actLagrangian(q.g, id), id));
    CHECK(sameSubspace(actLagrangian(q.g, x), Lagrangian::fromChart(Sym2::diag(4, 2))));
    CHECK(sameSubspace(actLagrangian(q.g, inf), inf));

    // The spectrum is an isometry invariant.
    testutil::Rng rng(24);
    for (int k = 0; k < 20; ++k) {
        const SpMap g = testutil::randomSp(rng);
        const StandardizedQuad q2 = mapQuadrupleToStandard(
            actLagrangian(g, zero), actLagrangian(g, id), actLagrangian(g, x),
            actLagrangian(g, inf));
        CHECK(near(q2.lambda.x1, 4, 1e-8));
        CHECK(near(q2.lambda.x2, 2, 1e-8));
        // Both branches send the quadruple to the same standard form.
        CHECK(sameSubspace(actLagrangian(q2.gFlipped, actLagrangian(g, x)),
                           Lagrangian::fromChart(Sym2::diag(4, 2))));
    }
    CHECK_THROWS_AS(mapQuadrupleToStandard(zero, x, id, inf), NotMaximal);
}
