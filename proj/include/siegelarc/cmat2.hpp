#pragma once
#include <complex>

#include "siegelarc/symmat.hpp"

namespace arc {

// Complex 2x2 matrix, used for fractional-linear action on the upper half-space
// and for cross-ratios of complexified chart points.
struct CMat2 {
    std::complex<double> a{0, 0}, b{0, 0}, c{0, 0}, d{0, 0};

    static CMat2 fromReal(const Mat2& m) { return {{m.a, 0}, {m.b, 0}, {m.c, 0}, {m.d, 0}}; }
    static CMat2 fromParts(const Sym2& re, const Sym2& im) {
        return {{re.m11, im.m11}, {re.m12, im.m12}, {re.m12, im.m12}, {re.m22, im.m22}};
    }
    static CMat2 identity() { return {{1, 0}, {0, 0}, {0, 0}, {1, 0}}; }

    std::complex<double> det() const { return a * d - b * c; }
    std::complex<double> tr() const { return a + d; }
    CMat2 conj() const { return {std::conj(a), std::conj(b), std::conj(c), std::conj(d)}; }
    double norm() const {
        return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
    }
    CMat2 inverse() const {
        const std::complex<double> dt = det();
        if (dt == std::complex<double>(0, 0)) throw Error("CMat2::inverse: singular matrix");
        const std::complex<double> s = 1.0 / dt;
        return {d * s, -b * s, -c * s, a * s};
    }

    CMat2 operator+(const CMat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    CMat2 operator-(const CMat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    CMat2 operator*(const CMat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }

    // Eigenvalues by the quadratic formula.
    std::array<std::complex<double>, 2> eig() const {
        const std::complex<double> t = tr(), dt = det();
        const std::complex<double> r = std::sqrt(t * t - 4.0 * dt);
        return {0.5 * (t + r), 0.5 * (t - r)};
    }
};

} // namespace arc
