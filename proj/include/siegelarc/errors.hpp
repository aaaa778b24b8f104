#pragma once
#include <stdexcept>
#include <string>

namespace arc {

// Error taxonomy for geometric preconditions. Each failure names the violated
// invariant; callers that can recover catch by type.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define ARC_DEFINE_ERROR(Name)                                            \
    struct Name : Error {                                                  \
        explicit Name(const std::string& what = #Name) : Error(what) {}    \
    }

ARC_DEFINE_ERROR(DegenerateSpectrum);   // eigenvalue gap below tolerance where a unique rotation is required
ARC_DEFINE_ERROR(NotPositiveDefinite);  // symmetric matrix fails the PD test
ARC_DEFINE_ERROR(ChartSingularity);     // Lagrangian not representable in the affine chart
ARC_DEFINE_ERROR(NotTransverse);        // two Lagrangians share a direction
ARC_DEFINE_ERROR(NotMaximal);           // tuple fails the cyclic maximality test
ARC_DEFINE_ERROR(NotInterleaved);       // tube endpoint quadruple admits no maximal interleaving
ARC_DEFINE_ERROR(EmptyIntersection);    // tubes do not meet
ARC_DEFINE_ERROR(OutsideInterval);      // projection argument not in the tube's boundary interval
ARC_DEFINE_ERROR(NotInvolution);        // square of the map is not +/- identity
ARC_DEFINE_ERROR(NotAntisymplectic);    // map does not negate the symplectic form
ARC_DEFINE_ERROR(ReflectionNotInSet);   // reflection does not belong to the side's reflection set
ARC_DEFINE_ERROR(ConstraintViolation);  // representation parameters violate a genericity constraint
ARC_DEFINE_ERROR(NoFixedPair);          // map has no transverse attracting/repelling Lagrangian pair
ARC_DEFINE_ERROR(InvalidRepresentation);// matrices do not assemble into a valid representation

#undef ARC_DEFINE_ERROR

} // namespace arc
