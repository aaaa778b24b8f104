#include "doctest.h"

#include <cmath>
#include <complex>
#include <set>
#include <utility>
#include <vector>

#include "siegelarc/maxrep.hpp"
#include "helpers.hpp"

using namespace arc;
using testutil::kPi;
using testutil::near;

namespace {

ArcCoordinates coords(double b1, double b2, double c1, double c2, double d1, double d2,
                      double a1, double a2) {
    ArcCoordinates a;
    a.b = {b1, b2};
    a.c = {c1, c2};
    a.d = {d1, d2};
    a.alpha1 = a1;
    a.alpha2 = a2;
    a.type = classifyVectors(a.b, a.c, a.d);
    return a;
}

ArcCoordinates diagonalCoords(double t, double s, double u) {
    ArcCoordinates a;
    a.b = {t, t};
    a.c = {s, s};
    a.d = {u, u};
    a.type = GenericityType::T3;
    return a;
}

// Translation length log(max |lambda| / min |lambda|) from the reciprocal
// characteristic polynomial l^4 - a l^3 + b l^2 - a l + 1 of a symplectic
// matrix, solved over the complex numbers.
double translationLength(const SpMap& g) {
    const Mat4& m = g.m;
    double a = 0, tr2 = 0;
    const Mat4 m2 = m * m;
    for (int i = 0; i < 4; ++i) {
        a += m.at(i, i);
        tr2 += m2.at(i, i);
    }
    const double b = 0.5 * (a * a - tr2);
    double lo = 1e300, hi = 0;
    for (const double sign : {1.0, -1.0}) {
        const std::complex<double> u =
            0.5 * a + sign * std::sqrt(std::complex<double>(0.25 * a * a - (b - 2.0)));
        for (const double s2 : {1.0, -1.0}) {
            const std::complex<double> lambda =
                0.5 * u + s2 * std::sqrt(0.25 * u * u - 1.0);
            const double mod = std::abs(lambda);
            lo = std::min(lo, mod);
            hi = std::max(hi, mod);
        }
    }
    return std::log(hi / lo);
}

// Expected translation lengths on a diagonal disc with scalar coordinates
// (t, s, u): twice the distances between consecutive reflection mirrors.
struct DiscLengths {
    double g, h, k; // rho1 rho2, rho2 rho3, rho3 rho1
};

DiscLengths discLengths(double t, double s, double u) {
    const double coshL2 = 1.0 / std::tanh(t), sinhL2 = 1.0 / std::sinh(t);
    const double coshL6 = 1.0 / std::tanh(u), sinhL6 = 1.0 / std::sinh(u);
    const double y = (std::exp(s + 2 * u) - 1) * (std::exp(2 * t + s) - 1) /
                     (std::exp(s) * (std::exp(2 * t) - 1) * (std::exp(2 * u) - 1));
    const double coshL4 = 2 * y - 1;
    const double sinhL4 = std::sqrt(coshL4 * coshL4 - 1);
    const double coshL3 = (coshL6 + coshL2 * coshL4) / (sinhL2 * sinhL4);
    const double coshL5 = (coshL2 + coshL4 * coshL6) / (sinhL4 * sinhL6);
    return {2 * (t + s + u), 2 * std::acosh(coshL3), 2 * std::acosh(coshL5)};
}

} // namespace

TEST_CASE("building and validating a flat representation") {
    SParameters p;
    p.coords = coords(1.4, 0.7, 1.1, 0.3, 2.1, 0.8, 0, 0);
    for (const bool exotic : {false, true}) {
        p.r1 = exotic ? KElement::flip(0.0) : KElement::id();
        p.r2 = KElement::id();
        p.r3 = exotic ? KElement::flip(0.0) : KElement::id();
        const W3MaxRep w = buildW3Rep(p);
        const MaxRepReport report = validateMaxRep(w);
        CHECK(report.allPass());
        CHECK(!report.checks.empty());
        for (const auto& c : report.checks) CHECK(c.pass);

        // Generators are involutions; the three pairwise products compose to
        // the identity up to projective sign.
        for (const Reflection* r : {&w.rho1, &w.rho2, &w.rho3})
            CHECK(projEqual((r->map * r->map).m, Mat4::identity(), 1e-9));
        const PopRep pop = restrictToF2(w);
        const SpMap k = w.rho3.map * w.rho1.map;
        CHECK(projEqual((pop.g * pop.h * k).m, Mat4::identity(), 1e-9));

        // rho2 fixes the side-2 endpoints and swaps the neighbouring odd
        // endpoints pairwise.
        const auto& t = w.baseHexagon.twelveTuple;
        CHECK(sameSubspace(actLagrangian(w.rho2.map, t[2]), t[2]));
        CHECK(sameSubspace(actLagrangian(w.rho2.map, t[5]), t[5]));
        CHECK(sameSubspace(actLagrangian(w.rho2.map, t[0]), t[3]));
        CHECK(sameSubspace(actLagrangian(w.rho2.map, t[4]), t[7]));
    }
}

TEST_CASE("genericity constraints on the K choices") {
    SParameters p;
    p.coords = coords(1.4, 0.7, 1.1, 0.3, 2.1, 0.8, 0, 0); // all sides generic
    p.r2 = KElement::flip(0.9);
    CHECK_THROWS_AS(buildW3Rep(p), ConstraintViolation);
    p.r2 = KElement::id();
    p.r1 = KElement::flip(2.0);
    CHECK_THROWS_AS(buildW3Rep(p), ConstraintViolation);

    // A diagonal b admits interior K-elements on side 2 (r2) only.
    SParameters q;
    q.coords = coords(1.4, 1.4, 1.1, 0.3, 2.1, 0.8, 0, 0);
    q.r2 = KElement::flip(0.9);
    CHECK(validateMaxRep(buildW3Rep(q)).allPass());
    q.r2 = KElement::id();
    q.r1 = KElement::flip(0.9);
    CHECK_THROWS_AS(buildW3Rep(q), ConstraintViolation);
}

TEST_CASE("tampered generators fail validation") {
    SParameters p;
    p.coords = coords(1.4, 0.7, 1.1, 0.3, 2.1, 0.8, 0, 0);
    const W3MaxRep w = buildW3Rep(p);
    SParameters other = p;
    other.coords = coords(0.9, 0.2, 1.6, 0.6, 1.3, 0.5, 0, 0);
    W3MaxRep tampered = w;
    tampered.rho1 = buildW3Rep(other).rho1;
    CHECK_FALSE(validateMaxRep(tampered).allPass());
}

TEST_CASE("Shilov hyperbolicity") {
    CHECK(isShilovHyperbolic(SpMap::fromMatrix(Mat4::blockDiagSp(Mat2::diag(2, 3)))));
    // Complex eigenvalues of modulus 2 are fine.
    const Mat2 twice = Mat2::diag(2, 2) * Rotation2(kPi / 3).mat();
    CHECK(isShilovHyperbolic(SpMap::fromMatrix(Mat4::blockDiagSp(twice))));
    // Mixed expansion: moduli {3, 1/2} and their inverses all avoid 1, and
    // the expanding plane (first and fourth axes) is Lagrangian.
    CHECK(isShilovHyperbolic(SpMap::fromMatrix(Mat4::blockDiagSp(Mat2::diag(3, 0.5)))));
    // Unit-modulus eigenvalues disqualify.
    CHECK_FALSE(isShilovHyperbolic(SpMap::fromMatrix(Mat4::blockDiagSp(Mat2::diag(3, 1)))));
    CHECK_FALSE(isShilovHyperbolic(
        SpMap::fromMatrix(Mat4::rotationConj(Rotation2(0.8).mat()))));
    const Mat2 jordan{1, 1, 0, 1};
    CHECK_FALSE(isShilovHyperbolic(SpMap::fromMatrix(Mat4::blockDiagSp(jordan))));
    // No invariant transverse pair at all.
    CHECK_THROWS_AS(isShilovHyperbolic(SpMap::fromMatrix(Mat4::Jmat())), NoFixedPair);
    CHECK_THROWS_AS(
        isShilovHyperbolic(SpMap::fromMatrix(Mat4::translation(Sym2::identity()))),
        NoFixedPair);

    CHECK(near(shilovMargin(SpMap::fromMatrix(Mat4::blockDiagSp(Mat2::diag(2, 3)))), 0.5,
               1e-12));
    CHECK(near(shilovMargin(SpMap::fromMatrix(Mat4::rotationConj(Rotation2(0.8).mat()))), 0,
               1e-12));
}

TEST_CASE("products of a valid representation are Shilov hyperbolic") {
    testutil::Rng rng(61);
    for (int rep = 0; rep < 5; ++rep) {
        SParameters p;
        p.coords = testutil::randomCoords(rng, GenericityType::GEN, 0.3, 2.0);
        p.coords.alpha1 = (rep % 2) ? kPi : 0.0;
        p.coords.alpha2 = (rep % 3) ? 0.0 : kPi;
        const W3MaxRep w = buildW3Rep(p);
        const PopRep pop = restrictToF2(w);
        CHECK(isShilovHyperbolic(pop.g));
        CHECK(isShilovHyperbolic(pop.h));
        CHECK(isShilovHyperbolic(SpMap::fromMatrix((w.rho3.map * w.rho1.map).m)));
        CHECK(shilovMargin(pop.g) > 1e-6);
        CHECK(shilovMargin(pop.h) > 1e-6);
    }
}

TEST_CASE("orbit tuples grow along the tree and stay maximal") {
    SParameters p;
    p.coords = coords(1.2, 0.5, 0.9, 0.4, 1.7, 0.6, 0, 0);
    const W3MaxRep w = buildW3Rep(p);

    const OrbitTuple o0 = orbitTuples(w, 0);
    REQUIRE(o0.tuple.size() == 6);
    CHECK(o0.maximal);
    const int slots[6] = {0, 3, 4, 7, 8, 11};
    for (int i = 0; i < 6; ++i)
        CHECK(sameSubspace(o0.tuple[static_cast<size_t>(i)],
                           w.baseHexagon.twelveTuple[static_cast<size_t>(slots[i])]));

    const OrbitTuple o1 = orbitTuples(w, 1);
    CHECK(o1.tuple.size() == 12);
    CHECK(o1.maximal);
    const OrbitTuple o2 = orbitTuples(w, 2);
    CHECK(o2.tuple.size() == 24);
    CHECK(o2.maximal);
    const OrbitTuple o3 = orbitTuples(w, 3);
    CHECK(o3.tuple.size() == 48);
    CHECK(o3.maximal);

    // Every seed keeps its place in the refined necklaces.
    for (const auto& s : o0.tuple) {
        int hits = 0;
        for (const auto& l : o2.tuple) hits += sameSubspace(s, l) ? 1 : 0;
        CHECK(hits == 1);
    }

    CHECK_THROWS_AS(orbitTuples(w, 5), Error);
    CHECK_THROWS_AS(orbitTuples(w, -1), Error);
}

TEST_CASE("connected-component signs split the eight reflection choices") {
    SParameters p;
    p.coords = coords(1.3, 0.6, 1.0, 0.4, 1.9, 0.7, 0, 0);
    std::vector<SignPair> seen;
    for (int mask = 0; mask < 8; ++mask) {
        p.r1 = (mask & 1) ? KElement::flip(0.0) : KElement::id();
        p.r2 = (mask & 2) ? KElement::flip(0.0) : KElement::id();
        p.r3 = (mask & 4) ? KElement::flip(0.0) : KElement::id();
        seen.push_back(deltaSign(restrictToF2(buildW3Rep(p))));
    }
    std::set<std::pair<int, int>> distinct;
    for (const auto& s : seen) {
        CHECK((s.s1 == 1 || s.s1 == -1));
        CHECK((s.s2 == 1 || s.s2 == -1));
        distinct.insert({s.s1, s.s2});
    }
    CHECK(distinct.size() == 4);
    for (const auto& d : distinct) {
        int count = 0;
        for (const auto& s : seen) count += (s.s1 == d.first && s.s2 == d.second) ? 1 : 0;
        CHECK(count == 2);
    }

    // The sign pair is a conjugation invariant.
    testutil::Rng rng(62);
    p.r1 = KElement::id();
    p.r2 = KElement::flip(0.0);
    p.r3 = KElement::id();
    const PopRep pop = restrictToF2(buildW3Rep(p));
    const SignPair base = deltaSign(pop);
    for (int k = 0; k < 5; ++k) {
        const SpMap s = testutil::randomSp(rng);
        const PopRep moved{s * pop.g * s.inverse(), s * pop.h * s.inverse()};
        CHECK(deltaSign(moved) == base);
    }
}

TEST_CASE("translation lengths on a diagonal disc") {
    // Independently derived mirror geometry: the products translate along the
    // odd sides by twice the inter-mirror distances.
    {
        const double t = 0.7, s = 1.1, u = 0.9;
        const DiscLengths expect = discLengths(t, s, u);
        CHECK(near(expect.g, 5.4, 1e-12));
        CHECK(near(expect.h, 1.7620549603055453, 1e-10));
        CHECK(near(expect.k, 2.2201660812325428, 1e-10));
    }
    testutil::Rng rng(63);
    for (int rep = 0; rep < 6; ++rep) {
        const double t = rng.uniform(0.4, 1.6);
        const double s = rng.uniform(0.4, 1.6);
        const double u = rng.uniform(0.4, 1.6);
        const DiscLengths expect = discLengths(t, s, u);

        SParameters p;
        p.coords = diagonalCoords(t, s, u);
        // All three sides are degenerate, so any K-elements are admissible;
        // the hyperbolic translation lengths do not depend on the choice.
        p.r1 = (rep % 2) ? KElement::flip(rng.uniform(0.0, kPi)) : KElement::id();
        p.r2 = (rep % 3) ? KElement::flip(rng.uniform(0.0, kPi)) : KElement::id();
        p.r3 = KElement::flip(rng.uniform(0.0, kPi));
        const W3MaxRep w = buildW3Rep(p);
        CHECK(validateMaxRep(w).allPass());
        const PopRep pop = restrictToF2(w);
        CHECK(near(translationLength(pop.g), expect.g, 1e-8));
        CHECK(near(translationLength(pop.h), expect.h, 1e-8));
        CHECK(near(translationLength(w.rho3.map * w.rho1.map), expect.k, 1e-8));
    }
}

TEST_CASE("polydisk parameter identifications") {
    SParameters p1, p2;
    p1.coords = coords(1.4, 0.7, 1.1, 0.3, 2.1, 0.8, 0, 0);
    p2.coords = p1.coords;
    // Swapping standard and exotic everywhere preserves both K-products.
    p1.r1 = KElement::id();
    p1.r2 = KElement::flip(0.0);
    p1.r3 = KElement::id();
    p2.r1 = KElement::flip(0.0);
    p2.r2 = KElement::id();
    p2.r3 = KElement::flip(0.0);
    CHECK(equivalentInS0(p1, p2));
    CHECK(equivalentInS0(p1, p1));
    // A single-branch change breaks one product.
    SParameters p3 = p1;
    p3.r3 = KElement::flip(0.0);
    CHECK_FALSE(equivalentInS0(p1, p3));
    // Different coordinates never identify.
    SParameters p4 = p2;
    p4.coords = coords(1.5, 0.7, 1.1, 0.3, 2.1, 0.8, 0, 0);
    CHECK_FALSE(equivalentInS0(p1, p4));
    // Identification is confined to the polydisk locus.
    SParameters p5 = p1, p6 = p2;
    p5.coords.alpha1 = 1.3;
    p6.coords.alpha1 = 1.3;
    CHECK_FALSE(equivalentInS0(p5, p6));

    // The identified parameters genuinely give the same restriction.
    const PopRep a = restrictToF2(buildW3Rep(p1));
    const PopRep b = restrictToF2(buildW3Rep(p2));
    CHECK(popRepEqual(a, b));
    const PopRep c = restrictToF2(buildW3Rep(p3));
    CHECK_FALSE(popRepEqual(a, c));
    // Projective sign is absorbed.
    Mat4 neg = a.g.m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) neg.at(i, j) = -neg.at(i, j);
    CHECK(popRepEqual(a, PopRep{SpMap::fromMatrix(neg), a.h}));
}

TEST_CASE("parameter recovery from the generators") {
    testutil::Rng rng(64);
    for (int rep = 0; rep < 6; ++rep) {
        SParameters p;
        p.coords = testutil::randomCoords(rng, GenericityType::GEN, 0.3, 2.0);
        p.coords.alpha1 = (rep % 2) ? kPi : 0.0;
        p.coords.alpha2 = (rep % 3 == 0) ? kPi : 0.0;
        p.r1 = (rep % 2) ? KElement::flip(0.0) : KElement::id();
        p.r2 = KElement::id();
        p.r3 = (rep % 3) ? KElement::flip(0.0) : KElement::id();
        const W3MaxRep w = buildW3Rep(p);
        const SParameters back = coordsFromRep(w);
        CHECK(coordsApproxEqual(back.coords, canonicalizeCoords(p.coords), 1e-7));
        CHECK(back.r1.idBranch == p.r1.idBranch);
        CHECK(back.r2.idBranch == p.r2.idBranch);
        CHECK(back.r3.idBranch == p.r3.idBranch);

        // Rebuilding from the recovered parameters reproduces the restriction
        // exactly (the base hexagon was already in standard position).
        const W3MaxRep w2 = buildW3Rep(back);
        CHECK(popRepEqual(restrictToF2(w), restrictToF2(w2)));
    }

    // Recovery fails on generators that do not assemble into a hexagon.
    SParameters p;
    p.coords = coords(1.2, 0.5, 0.9, 0.4, 1.7, 0.6, 0, 0);
    W3MaxRep w = buildW3Rep(p);
    W3MaxRep broken = w;
    broken.rho2 = w.rho1;
    CHECK_THROWS_AS(coordsFromRep(broken), InvalidRepresentation);
}
