#pragma once

// Small fixed-size complex linear algebra: everything in this library lives
// in C^2 (single polarization qubit) or C^4 (photon pair amplitudes).

#include <array>
#include <cmath>

#include "gphase/common.hpp"

namespace gphase {

struct Vec2 {
    cplx a{}, b{};

    double norm() const { return std::sqrt(std::norm(a) + std::norm(b)); }
};

inline Vec2 operator*(cplx s, const Vec2& v) { return {s * v.a, s * v.b}; }
inline Vec2 operator+(const Vec2& x, const Vec2& y) { return {x.a + y.a, x.b + y.b}; }
inline Vec2 operator-(const Vec2& x, const Vec2& y) { return {x.a - y.a, x.b - y.b}; }

inline cplx inner(const Vec2& x, const Vec2& y) {
    return std::conj(x.a) * y.a + std::conj(x.b) * y.b;
}

// Row-major 2x2 complex matrix.
struct Mat2 {
    cplx m00{}, m01{}, m10{}, m11{};

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 diag(cplx d0, cplx d1) { return {d0, 0.0, 0.0, d1}; }

    cplx trace() const { return m00 + m11; }
    cplx det() const { return m00 * m11 - m01 * m10; }
    Mat2 adjoint() const {
        return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
    }
};

inline Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.m00 * y.m00 + x.m01 * y.m10, x.m00 * y.m01 + x.m01 * y.m11,
            x.m10 * y.m00 + x.m11 * y.m10, x.m10 * y.m01 + x.m11 * y.m11};
}

inline Vec2 operator*(const Mat2& m, const Vec2& v) {
    return {m.m00 * v.a + m.m01 * v.b, m.m10 * v.a + m.m11 * v.b};
}

inline Mat2 operator*(cplx s, const Mat2& m) {
    return {s * m.m00, s * m.m01, s * m.m10, s * m.m11};
}

inline Mat2 operator+(const Mat2& x, const Mat2& y) {
    return {x.m00 + y.m00, x.m01 + y.m01, x.m10 + y.m10, x.m11 + y.m11};
}

inline Mat2 operator-(const Mat2& x, const Mat2& y) {
    return {x.m00 - y.m00, x.m01 - y.m01, x.m10 - y.m10, x.m11 - y.m11};
}

inline Mat2 outer(const Vec2& x, const Vec2& y) {
    return {x.a * std::conj(y.a), x.a * std::conj(y.b),
            x.b * std::conj(y.a), x.b * std::conj(y.b)};
}

inline double max_abs_diff(const Mat2& x, const Mat2& y) {
    double d = std::abs(x.m00 - y.m00);
    d = std::max(d, std::abs(x.m01 - y.m01));
    d = std::max(d, std::abs(x.m10 - y.m10));
    d = std::max(d, std::abs(x.m11 - y.m11));
    return d;
}

// Pauli matrices in the |H>,|V> basis.
inline Mat2 sigma_x() { return {0.0, 1.0, 1.0, 0.0}; }
inline Mat2 sigma_y() { return {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0}; }
inline Mat2 sigma_z() { return {1.0, 0.0, 0.0, -1.0}; }

}  // namespace gphase
