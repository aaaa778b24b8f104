#pragma once

// Shared helpers for the test suite: deterministic sampling of coordinates,
// random symplectic maps, and small numeric utilities.

#include <cmath>
#include <random>

#include "siegelarc/hexagon.hpp"

namespace testutil {

constexpr double kPi = 3.14159265358979323846;

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    double uniform() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
};

inline bool stratumHasDiagonalB(arc::GenericityType t) {
    return t == arc::GenericityType::T1_1 || t == arc::GenericityType::T2_1 ||
           t == arc::GenericityType::T2_2 || t == arc::GenericityType::T3;
}
inline bool stratumHasDiagonalC(arc::GenericityType t) {
    return t == arc::GenericityType::T1_2 || t == arc::GenericityType::T2_1 ||
           t == arc::GenericityType::T2_3 || t == arc::GenericityType::T3;
}
inline bool stratumHasDiagonalD(arc::GenericityType t) {
    return t == arc::GenericityType::T1_3 || t == arc::GenericityType::T2_2 ||
           t == arc::GenericityType::T2_3 || t == arc::GenericityType::T3;
}

// Random coordinate tuple in a given stratum; lengths within (lenLo, lenHi),
// angles uniform on [0, 2pi).
inline arc::ArcCoordinates randomCoords(Rng& rng, arc::GenericityType t,
                                        double lenLo = 0.05, double lenHi = 5.0) {
    auto len = [&](bool diagonal) {
        if (diagonal) {
            const double v = rng.uniform(lenLo, lenHi);
            return arc::WeylVector{v, v};
        }
        double x1 = rng.uniform(lenLo, lenHi), x2 = rng.uniform(lenLo, lenHi);
        if (x1 < x2) std::swap(x1, x2);
        if (x1 - x2 < 1e-2) x1 += 2e-2;
        return arc::WeylVector{x1, x2};
    };
    arc::ArcCoordinates a;
    a.b = len(stratumHasDiagonalB(t));
    a.c = len(stratumHasDiagonalC(t));
    a.d = len(stratumHasDiagonalD(t));
    a.alpha1 = rng.uniform(0.0, 2.0 * kPi);
    a.alpha2 = rng.uniform(0.0, 2.0 * kPi);
    a.type = t;
    return a;
}

// Random symplectic map assembled from shear, squeeze and rotation factors.
inline arc::SpMap randomSp(Rng& rng) {
    const arc::Sym2 s1{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    const arc::Mat2 a{1 + rng.uniform(0.2, 1.0), rng.uniform(-0.5, 0.5),
                      rng.uniform(-0.5, 0.5), 1 + rng.uniform(0.2, 1.0)};
    const double th = rng.uniform(0, kPi);
    const arc::Mat2 rot{std::cos(th), -std::sin(th), std::sin(th), std::cos(th)};
    const arc::Mat4 m = arc::Mat4::translation(s1) * arc::Mat4::blockDiagSp(a) *
                        arc::Mat4::rotationConj(rot);
    return arc::SpMap::fromMatrix(m);
}

inline bool near(double a, double b, double tol = 1e-9) { return std::fabs(a - b) < tol; }

inline bool nearVec(const arc::WeylVector& a, const arc::WeylVector& b, double tol = 1e-9) {
    return near(a.x1, b.x1, tol) && near(a.x2, b.x2, tol);
}

inline bool nearSym(const arc::Sym2& a, const arc::Sym2& b, double tol = 1e-9) {
    return (a - b).norm() <= tol * std::max(1.0, std::max(a.norm(), b.norm()));
}

// All eight genericity strata.
inline const arc::GenericityType kAllStrata[8] = {
    arc::GenericityType::GEN,  arc::GenericityType::T1_1, arc::GenericityType::T1_2,
    arc::GenericityType::T1_3, arc::GenericityType::T2_1, arc::GenericityType::T2_2,
    arc::GenericityType::T2_3, arc::GenericityType::T3};

} // namespace testutil
