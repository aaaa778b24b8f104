#pragma once
#include <array>
#include <optional>
#include <span>
#include <vector>

#include "siegelarc/symmat.hpp"

namespace arc {

// ------------------------------------------------------------- Lagrangians

// A Lagrangian plane of (R^4, omega), omega(x,y) = x^T J y with J = [[0,Id],[-Id,0]].
// Stored as an orthonormal 4x2 basis (column-major pair of R^4 vectors); the plane
// determines the basis up to right O(2) action, and all comparisons go through
// subspace residuals, never entrywise basis equality.
struct Lagrangian {
    std::array<double, 8> b{}; // row-major 4x2: b[2*r + c]

    double& at(int r, int c) { return b[2 * r + c]; }
    double at(int r, int c) const { return b[2 * r + c]; }

    // Validates isotropy (B^T J B = 0 within tolerance) and rank; orthonormalizes.
    static Lagrangian fromBasis(const std::array<double, 8>& basis);
    // Affine chart Z -> span of the columns of [Z; Id].
    static Lagrangian fromChart(const Sym2& z);
    static Lagrangian zero();      // span(e3, e4), chart value 0
    static Lagrangian infinity();  // span(e1, e2), the chart's point at infinity

    // Unique column-reduced representative of the plane (pivot entries 1, reduced),
    // used for serialization and canonical ordering.
    std::array<double, 8> canonicalBasis() const;
};

struct ChartPoint {
    Sym2 value{};
    bool atInfinity = false;
};

bool sameSubspace(const Lagrangian& l1, const Lagrangian& l2, double tol = 1e-8);
// Frobenius distance of the orthogonal projectors onto the two planes.
double subspaceGap(const Lagrangian& l1, const Lagrangian& l2);
bool transverse(const Lagrangian& l1, const Lagrangian& l2);

// Chart value of a Lagrangian transverse to the plane at infinity; the plane at
// infinity itself reports atInfinity. Throws ChartSingularity for planes that are
// neither (partially infinite).
ChartPoint chart(const Lagrangian& l);
// Chart value that must be finite.
Sym2 chartValue(const Lagrangian& l);

// ------------------------------------------------------------ group elements

enum class MapKind { Symplectic, Antisymplectic };

// Projective (anti)symplectic map: M^T J M = +J or -J, M identified with -M.
struct SpMap {
    Mat4 m;
    MapKind kind = MapKind::Symplectic;

    // Validates the defining relation (relative residual) and fixes the sign.
    static SpMap fromMatrix(const Mat4& m);
    static SpMap identity();
    SpMap inverse() const;
    SpMap operator*(const SpMap& o) const;
    bool antisymplectic() const { return kind == MapKind::Antisymplectic; }
};

// Relative residual min over sign of ||M^T J M -/+ J|| / max(1, ||M||^2), with the
// matched kind reported.
double spResidual(const Mat4& m, MapKind& kindOut);

// Projective equality of 4x4 matrices (equal up to global sign, relative tolerance).
bool projEqual(const Mat4& a, const Mat4& b, double tol = 1e-8);

// ------------------------------------------------------------- Siegel points

// Point X + iY of the upper half-space (Y positive definite).
struct SiegelPoint {
    Sym2 X{};
    Sym2 Y = Sym2::identity();

    static SiegelPoint pure(const Sym2& y) { return {Sym2{}, y}; }
};

Lagrangian actLagrangian(const SpMap& g, const Lagrangian& l);
// Fractional-linear action; antisymplectic maps act through the conjugate so the
// image stays in the upper half-space. Throws ChartSingularity when the chart
// denominator degenerates.
SiegelPoint actSiegel(const SpMap& g, const SiegelPoint& z);

// ------------------------------------------------------------- cross-ratio

// R(l1,l2,l3,l4) = (X1-X2)^{-1} (X4-X2) (X4-X3)^{-1} (X1-X3) in a common affine
// chart chosen internally; only the similarity class (eigenvalues, centrality) is
// well defined. Throws NotTransverse when (l1,l2) or (l3,l4) are not transverse.
Mat2 crossRatio(const Lagrangian& l1, const Lagrangian& l2, const Lagrangian& l3,
                const Lagrangian& l4);

// ------------------------------------------------------------- maximality

bool isMaximalTriple(const Lagrangian& a, const Lagrangian& b, const Lagrangian& c);
// Every ordered triple i < j < k of the tuple is maximal.
bool isMaximalTuple(std::span<const Lagrangian> tuple);

// Symplectic map with g(P) = chart 0, g(Q) = chart infinity. Throws NotTransverse.
SpMap mapPairToStandard(const Lagrangian& P, const Lagrangian& Q);

// Standardization of a maximal quadruple to (0, Id, diag(l1,l2), infinity) with
// l1 >= l2. `g` uses the rotation class in PSO(2); `gFlipped` is the companion
// differing by conjugation with diag(-1,1) (same diagonal image). Throws NotMaximal.
struct StandardizedQuad {
    SpMap g;
    SpMap gFlipped;
    WeylVector lambda;   // (l1, l2) of the diagonal image, descending
    bool degenerate = false; // spectral gap of the image below tolerance
};
StandardizedQuad mapQuadrupleToStandard(const Lagrangian& P1, const Lagrangian& P2,
                                        const Lagrangian& P3, const Lagrangian& P4);

} // namespace arc
