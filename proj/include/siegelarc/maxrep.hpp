#pragma once

#include <string>
#include <vector>

#include "siegelarc/reflection.hpp"

namespace arc {

// Parameter point for a maximal reflection-group representation: arc
// coordinates of a right-angled hexagon plus one reflection choice per even
// side. r1 picks from the reflection set of the d-side (side 6), r2 from the
// b-side (side 2), r3 from the remaining even side (side 4). When a side's
// set is two-element, only the standard (KElement::id()) or exotic
// (KElement::flip(0)) choice is admissible.
struct SParameters {
    ArcCoordinates coords;
    KElement r1 = KElement::id();
    KElement r2 = KElement::id();
    KElement r3 = KElement::id();
};

// Representation of the free product of three order-two groups. Each
// generator is a reflection fixing the endpoints of one even side of the
// base hexagon and swapping the endpoints of the two neighbouring odd
// sides: rho1 <-> side 6, rho2 <-> side 2, rho3 <-> side 4.
struct W3MaxRep {
    Reflection rho1, rho2, rho3;
    OrderedHexagon baseHexagon;
};

// Restriction to the index-two free subgroup on two generators,
// g = rho1 rho2 and h = rho2 rho3. Both are symplectic with an expanding /
// contracting pair of transverse fixed Lagrangians.
struct PopRep {
    SpMap g, h;
};

struct SignPair {
    int s1 = 1;
    int s2 = 1;
    bool operator==(const SignPair&) const = default;
};

struct MaxRepCheck {
    std::string name;
    double residual = 0;
    bool pass = false;
};

struct MaxRepReport {
    std::vector<MaxRepCheck> checks;
    bool allPass() const;
};

struct OrbitTuple {
    std::vector<Lagrangian> tuple;
    bool maximal = false;
};

// Builds the three reflections of a parameter point and validates the
// result. Throws ConstraintViolation when a two-element side receives a
// K-element other than the standard or exotic one, and
// InvalidRepresentation when the assembled generators fail validation.
W3MaxRep buildW3Rep(const SParameters& p);

// Itemized validation report: per-generator involution and
// antisymplecticity residuals, fixed-side checks, neighbour endpoint-swap
// checks, and Shilov hyperbolicity of the three pairwise products.
MaxRepReport validateMaxRep(const W3MaxRep& w);

// Generators of the restriction: g = rho1 rho2, h = rho2 rho3.
PopRep restrictToF2(const W3MaxRep& w);

// True when every eigenvalue modulus is bounded away from 1 and the
// expanding generalized eigenplane is a Lagrangian transverse to the
// contracting one; cross-validated by an expansion witness in the
// standardized frame. Returns false when the moduli test fails but the map
// still has an invariant transverse Lagrangian pair; throws NoFixedPair
// when no such pair exists.
bool isShilovHyperbolic(const SpMap& g);

// min_i | |lambda_i| - 1 | over the four eigenvalues.
double shilovMargin(const SpMap& g);

// Orbit of the six odd-side endpoints under all reduced words of length at
// most n, in cyclic boundary order, with the maximality verdict. Sizes are
// 6, 12, 24, 48 for n = 0..3; n is capped at 4.
OrbitTuple orbitTuples(const W3MaxRep& w, int n);

// Connected-component signs of the restriction: for each generator, the
// sign of the determinant of the diagonal block after standardizing its
// fixed pair. Throws NoFixedPair when a generator fixes no transverse pair.
SignPair deltaSign(const PopRep& p);

// Parameter-level identification on the polydisk locus: equal coordinates
// lying inside the polydisk domain whose K-products r1 r2 and r2 r3 agree
// up to projective sign.
bool equivalentInS0(const SParameters& p1, const SParameters& p2);

// Compares two restrictions through their action on a fixed probe frame of
// six Lagrangians (absorbs the projective sign).
bool popRepEqual(const PopRep& a, const PopRep& b, double tol = 1e-8);

// Recovers the parameter point: the pairwise products of the generators
// translate along the odd sides, so their invariant pairs plus common
// perpendiculars reassemble the base hexagon; arc coordinates are extracted
// and each generator is decomposed against its side's reflection set. Throws
// InvalidRepresentation when the generators do not fit that shape.
SParameters coordsFromRep(const W3MaxRep& w);

}  // namespace arc
