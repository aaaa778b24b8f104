#pragma once
#include <utility>

#include "siegelarc/hexagon.hpp"

namespace arc {

// ------------------------------------------------------------- reflections

// Antisymplectic projective involution of the Siegel space. The stored map
// satisfies map.m * map.m = +/- Id and map.kind == Antisymplectic.
struct Reflection {
    SpMap map;

    static Reflection fromMatrix(const Mat4& m); // NotAntisymplectic / NotInvolution
};

bool isReflection(const Mat4& m);

// The +1 and -1 eigenplanes of the reflection matrix, both Lagrangian and
// mutually transverse. Requires map.m * map.m = +Id (the -Id case has no real
// eigenplanes).
std::pair<Lagrangian, Lagrangian> fixedLagrangians(const Reflection& r);

// -------------------------------------------------------- the parameter set

// Canonical parametrization of the orthogonal involution classes K with
// diag(-K, K) a reflection: either K = Id, or K = flip * rotation(theta) for a
// unique theta in [0, pi), flip = diag(-1, 1).
struct KElement {
    bool idBranch = true;
    double theta = 0.0;

    static KElement id() { return {true, 0.0}; }
    static KElement flip(double theta) { return {false, theta}; }
};

Mat2 kMatrix(const KElement& k);

// Attachment angle contributed by K: pi on the Id branch, pi + 2 theta
// (mod 2 pi) on the flip branch. The standard and exotic choices both give pi.
double beta(const KElement& k);

// ---------------------------------------------------------- reflection sets

enum class ReflectionFamily { TwoElement, FullK };

// The set of reflections fixing (P, Q) and sending X, Y to orthogonal
// positions, encoded by the standardizing conjugator g (g maps the defining
// quadruple to (0, Id, diag, infinity)) and the family: TwoElement holds the
// standard and exotic reflections only, FullK the whole K-parametrized circle.
struct ReflectionSetDescriptor {
    SpMap conjugator;
    ReflectionFamily family = ReflectionFamily::TwoElement;
};

ReflectionSetDescriptor reflectionSet(const Lagrangian& P, const Lagrangian& X,
                                      const Lagrangian& Y, const Lagrangian& Q);

// Reflection set of an even side of the hexagon (side index 2, 4 or 6):
// reflections fixing that side's endpoints and swapping the endpoints of the
// two neighbouring sides. Family dispatch: side 2 on b, side 6 on d, side 4 on
// the image of c under the first-return side map.
ReflectionSetDescriptor reflectionSetForSide(const OrderedHexagon& h, int side);

// Materialize g^{-1} diag(-K, K) g.
Reflection enumerateReflection(const ReflectionSetDescriptor& d, const KElement& k);

// Decompose a reflection against the descriptor, recovering its K-parameter.
// Throws ReflectionNotInSet when the conjugated matrix is not of the block
// form diag(-K, K) with K an orthogonal involution (or, for a TwoElement
// family, not one of the two members).
KElement kElementOf(const ReflectionSetDescriptor& d, const Reflection& r);

// ------------------------------------------------------ reflecting hexagons

// Image hexagon under a reflection of the given side's set: shares that side,
// lies on the mirror side of it, and is read in the orientation induced by the
// reflection (entry k of the new boundary 12-tuple is the image of entry
// (3 - k) mod 12). Validates membership of r first.
OrderedHexagon reflectHexagon(const OrderedHexagon& h, const Reflection& r, int side);

// Attachment angle between the polygonal chains of h and of its reflected
// image, from the K-decomposition of r within the side's reflection set.
double attachmentAngle(const OrderedHexagon& h, const Reflection& r, int side);

// The same angle measured on the chains themselves: both hexagons are put in
// the frame of h's distinguished side, the shared chain vertex is located, and
// the angle between the incoming and outgoing geodesic segments is computed.
// Supported for sides 2 and 6, whose image hexagons share the distinguished
// side of h.
double attachmentAngleGeometric(const OrderedHexagon& h, const Reflection& r, int side);

} // namespace arc
