#pragma once

namespace arc {

// Pinned numerical tolerances. All geometric predicates route through this
// struct so the whole artifact agrees on one set of thresholds.
struct Tol {
    double pd            = 1e-10; // positive-definiteness: smallest eigenvalue > pd * max(1, scale)
    double reg           = 1e-9;  // spectral-gap / regularity threshold, also diagonal membership
    double transverse    = 1e-10; // |det [B1 B2]| > transverse * column-norm product
    double orthogonality = 1e-8;  // ||R - 2 Id||_F bound for orthogonal tubes
    double sqrtRoundtrip = 1e-12; // relative accuracy of sqrt(M)^2 = M
    double hexRoundtrip  = 1e-8;  // coordinate roundtrip accuracy for hexagons
    double repRoundtrip  = 1e-7;  // parameter roundtrip accuracy for representations
    double shilovMargin  = 1e-9;  // required |eigenvalue modulus - 1| margin
    double sympResidual  = 1e-10; // relative residual of M^T J M -/+ J
    double epsGap        = 0.05;  // image-gap radius for the non-surjectivity scan
    double epsCollision  = 1e-3;  // collision radius for the non-injectivity scan

    static Tol& get();            // mutable process-wide instance (CLI may override)
};

} // namespace arc
