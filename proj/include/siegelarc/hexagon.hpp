#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "siegelarc/tube.hpp"

namespace arc {

// ----------------------------------------------------------- ordered hexagons

// A right-angled hexagon is a cyclic chain of six tubes, consecutive ones
// orthogonal; its combinatorics are carried by a maximal 12-tuple of boundary
// Lagrangians (P1,Q6,Q1,P2,P3,Q2,Q3,P4,P5,Q4,Q5,P6) in cyclic order, with
//   Y1 = {P1,P2}, Y2 = {Q1,Q2}, Y3 = {P3,P4},
//   Y4 = {Q3,Q4}, Y5 = {P5,P6}, Y6 = {Q5,Q6}.
// The ordered hexagon fixes Y1 as the distinguished side.
struct OrderedHexagon {
    // Working 6-tuple (P, A, B, C, D, Q) = (P2, Q2, P4, P5, Q5, P1); Y1 = Y_{P,Q}.
    std::array<Lagrangian, 6> sixTuple;
    // (P1, Q6, Q1, P2, P3, Q2, Q3, P4, P5, Q4, Q5, P6)
    std::array<Lagrangian, 12> twelveTuple;
    // Y1 ... Y6
    std::array<RTube, 6> tubes;
};

// The three determining 6-tuple shapes: the working mixed shape
// (P2,Q2,P4,P5,Q5,P1), the odd-side endpoints (P1..P6), or the even-side
// endpoints (Q1..Q6). The remaining boundary points are reconstructed from
// orthogonality via common perpendiculars.
enum class SixTupleConvention { Mixed, OuterP, OuterQ };

// Builds the full hexagon from a maximal 6-tuple. Throws NotMaximal when the
// input tuple is not maximal.
OrderedHexagon hexagonFromSixTuple(const std::array<Lagrangian, 6>& t,
                                   SixTupleConvention convention = SixTupleConvention::Mixed);

// -------------------------------------------------------------- genericity

// Stratum by which of the three side vectors (b, c, d) lie on the diagonal
// ray {x1 = x2}: GEN none; T1_1 b; T1_2 c; T1_3 d; T2_1 b,c; T2_2 b,d;
// T2_3 c,d; T3 all three.
enum class GenericityType { GEN, T1_1, T1_2, T1_3, T2_1, T2_2, T2_3, T3 };

GenericityType classifyVectors(const WeylVector& b, const WeylVector& c,
                               const WeylVector& d);
GenericityType classify(const OrderedHexagon& h);

const char* genericityTag(GenericityType t);
std::optional<GenericityType> genericityFromTag(const std::string& tag);

// ------------------------------------------------------------- coordinates

// Side vectors (b, c, d), components descending and positive, plus the angle
// class. Angle storage follows the stratum:
//   GEN    both angles present, canonical alpha1 in [0, pi] via the global
//          identification (a1, a2) ~ (2pi - a1, 2pi - a2); when alpha1 is 0 or
//          pi, alpha2 is folded into [0, pi].
//   T1_1   alpha1 collapsed (empty); alpha2 folded into [0, pi].
//   T1_2   only the combination alpha1 + alpha2 (mod 2pi) is an invariant;
//          the canonical pair stored is (a/2, a/2 + pi) where
//          a = alpha1 + alpha2 - pi folded into [0, pi].
//   T1_3   alpha2 collapsed; alpha1 folded into [0, pi].
//   T2_*,T3  both collapsed.
struct ArcCoordinates {
    WeylVector b{}, c{}, d{};
    std::optional<double> alpha1{}, alpha2{}; // in [0, 2pi); empty = collapsed
    GenericityType type = GenericityType::GEN;
};

// Reduces coordinates to the canonical representative described above; the
// stratum is (re)derived from b, c, d.
ArcCoordinates canonicalizeCoords(const ArcCoordinates& a);

// Class equality of canonical coordinate tuples: same stratum, side vectors
// within tol componentwise, angles within tol in the circular metric, allowing
// the global flip representative.
bool coordsApproxEqual(const ArcCoordinates& x, const ArcCoordinates& y, double tol);

// Standard-form endpoint charts (P, A, B, C, D, Q) = (0, A, Id, C, D, inf)
// realizing given coordinates.
struct StandardHexMatrices {
    Sym2 A, C, D;
};
StandardHexMatrices standardMatrices(const ArcCoordinates& a);

// Builds the standard-form hexagon (0, A, Id, C, D, inf) with C diagonal for
// any coordinate tuple (canonical or not; angles are read per stratum). Side
// vectors must have positive components. Throws Error otherwise.
OrderedHexagon hexagonFromCoords(const ArcCoordinates& a);

// Extracts canonical coordinates; isometry-invariant.
ArcCoordinates coordsFromHexagon(const OrderedHexagon& h);

// --------------------------------------------------------- polygonal chain

// Projection of the hexagon to the distinguished tube, split into level +
// upper-half-plane data: the four marked points iA, iB, iC, iD of the
// standard form, the hyperbolic lengths of the three connecting segments
// (differences of the side-vector components), and the corner angles present
// for the stratum.
struct ChainVertex {
    double level = 0;
    H2Point point{};
};
struct PolygonalChain {
    std::array<ChainVertex, 4> vertices;  // iA, iB, iC, iD
    std::array<double, 3> segmentLengths; // b1-b2, c1-c2, d1-d2
    std::vector<double> angles;           // corner angles present
};
PolygonalChain polygonalChain(const OrderedHexagon& h);

// ------------------------------------------------------ polydisk detection

// True when the hexagon is isometric to one with all standard-form endpoint
// charts diagonal (off-diagonals <= 1e-9 relative to the matrix scale, after
// fixing the residual rotation gauge when C is scalar).
bool inPolydisk(const OrderedHexagon& h);

enum class StabilizerClass { PO2, Z2, Trivial };

// PO2 for hexagons in a diagonal disc (all standard charts scalar), Z2 for
// non-scalar polydisk hexagons, trivial otherwise.
StabilizerClass stabilizerClass(const OrderedHexagon& h);

// -------------------------------------------------------------- malefic map

// For the hexagon with coordinates (b, c, d, [alpha1, alpha2]) in standard
// form (0, A, Id, C, D, inf), returns the descending eigen-logs of the
// cross-ratio R(A^2, Id, C, D C^{-1} D). The c components are read as given
// (extended domain: nonnegative, not both zero, in either order).
WeylVector maleficMap(const WeylVector& b, const WeylVector& d, double alpha1,
                      double alpha2, const WeylVector& c);

} // namespace arc
