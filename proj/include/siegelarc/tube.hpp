#pragma once

#include <utility>

#include "siegelarc/lagrangian.hpp"

namespace arc {

// Tube over a pair of transverse boundary Lagrangians: the maximal flat
// "interval" of Siegel points joining them. Endpoints are stored in a
// canonical order (lexicographic on their canonical bases) so the unordered
// pair compares cheaply.
struct RTube {
    Lagrangian a;
    Lagrangian b;

    static RTube fromEndpoints(const Lagrangian& x, const Lagrangian& y);
    static RTube standard(); // endpoints zero and infinity; points are iY.
};

bool sameTube(const RTube& t1, const RTube& t2);

// Splitting coordinates of the standard tube: a real shift plus a hyperbolic
// distance (r, h), and an upper-half-plane point for the hyperbolic factor.
struct RHVector {
    double r = 0;
    double h = 0;
};

struct H2Point {
    double x = 0;
    double y = 1;
};

// Vector-valued (Weyl-chamber) distance between two Siegel points, components
// descending and nonnegative.
WeylVector weylDistance(const SiegelPoint& z1, const SiegelPoint& z2);

// Signed translation vector between the points iA and iB of the standard
// tube: the sorted eigen-logarithms of A^{-1}B. Positive components iff B - A
// is positive definite.
WeylVector tubeVector(const Sym2& A, const Sym2& B);

// True when the tubes meet orthogonally (cross-ratio of the interleaved
// endpoints equals 2 Id). Throws NotInterleaved when no cyclic arrangement of
// the four endpoints is maximal.
bool tubesOrthogonal(const RTube& t1, const RTube& t2);

// Unique common point of two tubes with maximally interleaved endpoints.
// Throws EmptyIntersection otherwise.
SiegelPoint intersectTubes(const RTube& t1, const RTube& t2);

// Orthogonal projection to a tube. The Lagrangian overload requires the
// argument to lie in the open boundary interval of the tube (throws
// OutsideInterval otherwise).
SiegelPoint projectToTube(const RTube& t, const Lagrangian& x);
SiegelPoint projectToTube(const RTube& t, const SiegelPoint& z);

// Unique tube orthogonal to both inputs; the four endpoints must admit an
// assignment (P1, P2, P3, P4) maximal with t1 = {P1, P4}, t2 = {P2, P3}.
RTube commonPerpendicular(const RTube& t1, const RTube& t2);

// Oriented variant for callers that fix the maximal quadruple themselves:
// returns the endpoint pair (Z1, Z2) with Z1 on the negative side in the
// standardized frame.
std::pair<Lagrangian, Lagrangian> commonPerpendicularOriented(const Lagrangian& P1,
                                                              const Lagrangian& P2,
                                                              const Lagrangian& P3,
                                                              const Lagrangian& P4);

// Perpendiculars at the endpoints of the chart interval (0, P1, P2, infinity):
// first = tube through {P1 P2^{-1} P1, P2} (orthogonal to the tube {-P1, P1}),
// second = tube through {P1, P2 P1^{-1} P2} (orthogonal to {-P2, P2}).
std::pair<RTube, RTube> perpThroughEndpoint(const PosDef2& p1, const PosDef2& p2);

// Isometric splitting of the standard tube into a real line and a hyperbolic
// plane: level = log(det Y)/sqrt(2), and the upper-half-plane image of i
// under the unimodular part of Y.
std::pair<double, H2Point> splitRH(const PosDef2& y);
PosDef2 splitRHInverse(double level, const H2Point& h2);

// (r, h) coordinates of a translation vector and the positivity criterion
// r > h/sqrt(2) (equivalent, for signed tube vectors, to both components
// being positive).
RHVector rhVector(const WeylVector& d);
bool pdCriterion(const RHVector& v);

// Component-reversing involution f(d1, d2) = (u(d2), u(d1)) with
// u(x) = log((e^x + 1)/(e^x - 1)), defined for positive components.
WeylVector bijectionF(const WeylVector& d);

// Componentwise map y = (x+1)^2/(4x) acting on exponentials: input and output
// are on the logarithmic scale.
WeylVector bijectionT(const WeylVector& d);

} // namespace arc
