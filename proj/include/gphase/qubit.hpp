#pragma once

// Polarization qubit states on the Poincare sphere.
//
// Stokes convention used throughout: s1 = +1 is |H>, s2 = +1 is the +45 deg
// diagonal state, s3 = +1 is right circular |R> = (|H> - i|V>)/sqrt(2).
// In Pauli terms rho = (1 + s1*sz + s2*sx - s3*sy)/2.

#include <array>
#include <cmath>
#include <stdexcept>

#include "gphase/common.hpp"
#include "gphase/linalg.hpp"

namespace gphase {

struct BlochVector {
    double s1 = 0.0, s2 = 0.0, s3 = 0.0;

    double norm() const { return std::sqrt(s1 * s1 + s2 * s2 + s3 * s3); }
};

inline BlochVector operator-(const BlochVector& b) { return {-b.s1, -b.s2, -b.s3}; }

// Length of the Bloch vector; 1 = pure, 0 = maximally mixed.
struct Purity {
    double r = 0.0;
};

enum class Eigenvector { R, L };

inline Vec2 circular_ket(Eigenvector e) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    if (e == Eigenvector::R) return {inv_sqrt2, cplx(0.0, -inv_sqrt2)};
    return {inv_sqrt2, cplx(0.0, inv_sqrt2)};
}

inline Vec2 ket_h() { return {1.0, 0.0}; }
inline Vec2 ket_v() { return {0.0, 1.0}; }

struct DensityMatrix {
    Mat2 m;

    // Validates Hermiticity, unit trace and positivity (1e-12 tolerances).
    static DensityMatrix checked(const Mat2& candidate) {
        const double tol = 1e-12;
        if (std::abs(candidate.m01 - std::conj(candidate.m10)) > tol ||
            std::abs(candidate.m00.imag()) > tol || std::abs(candidate.m11.imag()) > tol)
            throw std::invalid_argument("density matrix is not Hermitian");
        if (std::abs(candidate.trace() - 1.0) > tol)
            throw std::invalid_argument("density matrix trace is not 1");
        const double pz = candidate.m00.real() - candidate.m11.real();
        const double r = std::sqrt(pz * pz + 4.0 * std::norm(candidate.m01));
        if (0.5 * (1.0 - r) < -tol)
            throw std::invalid_argument("density matrix has a negative eigenvalue");
        return DensityMatrix{candidate};
    }
};

inline DensityMatrix pure_state(const Vec2& ket) { return DensityMatrix{outer(ket, ket)}; }

// rho = (1 + b . sigma)/2 in the Stokes convention above.
// |b| may exceed 1 by at most 1e-9; such vectors are renormalized onto the
// sphere so the positivity invariant holds exactly.
inline DensityMatrix density_from_bloch(const BlochVector& b) {
    double n = b.norm();
    if (n > 1.0 + 1e-9)
        throw std::invalid_argument("Bloch vector longer than 1");
    double s1 = b.s1, s2 = b.s2, s3 = b.s3;
    if (n > 1.0) {
        s1 /= n;
        s2 /= n;
        s3 /= n;
    }
    return DensityMatrix{Mat2{0.5 * (1.0 + s1), 0.5 * cplx(s2, s3),
                              0.5 * cplx(s2, -s3), 0.5 * (1.0 - s1)}};
}

inline BlochVector bloch_from_density(const DensityMatrix& rho) {
    return {rho.m.m00.real() - rho.m.m11.real(),
            2.0 * rho.m.m01.real(),
            2.0 * rho.m.m01.imag()};
}

inline Purity purity(const DensityMatrix& rho) {
    double r = bloch_from_density(rho).norm();
    return Purity{r > 1.0 ? 1.0 : r};
}

struct EigenDecomposition {
    std::array<double, 2> values{};  // descending, (1 +/- r)/2
    std::array<Vec2, 2> kets{};
};

namespace detail {

// Unit ket whose Pauli Bloch vector is the given unit (px, py, pz).
// Phase convention: first nonzero component real and positive.
inline Vec2 pauli_bloch_ket(double px, double py, double pz) {
    if (pz >= 0.0) {
        double c = std::sqrt(0.5 * (1.0 + pz));
        return {c, cplx(px, py) / (2.0 * c)};
    }
    double s = std::sqrt(0.5 * (1.0 - pz));
    double st = std::hypot(px, py);
    if (st == 0.0) return {0.0, 1.0};
    return {st / (2.0 * s), s * cplx(px, py) / st};
}

}  // namespace detail

// Spectral decomposition with eigenvalues in descending order. The fully
// degenerate case r = 0 returns the canonical basis {|H>, |V>}.
inline EigenDecomposition eigendecompose(const DensityMatrix& rho) {
    const double px = 2.0 * rho.m.m01.real();
    const double py = -2.0 * rho.m.m01.imag();
    const double pz = rho.m.m00.real() - rho.m.m11.real();
    const double r = std::sqrt(px * px + py * py + pz * pz);
    if (r < 1e-12)
        return {{0.5, 0.5}, {ket_h(), ket_v()}};
    EigenDecomposition d;
    d.values = {0.5 * (1.0 + r), 0.5 * (1.0 - r)};
    d.kets[0] = detail::pauli_bloch_ket(px / r, py / r, pz / r);
    d.kets[1] = detail::pauli_bloch_ket(-px / r, -py / r, -pz / r);
    return d;
}

// Photon pair amplitudes ordered |HH>, |HV>, |VH>, |VV>; the first label is
// the trigger photon.
struct TwoQubitPureState {
    std::array<cplx, 4> amp{};

    static TwoQubitPureState checked(const std::array<cplx, 4>& a) {
        double n2 = 0.0;
        for (const auto& c : a) n2 += std::norm(c);
        if (std::abs(n2 - 1.0) > 1e-12)
            throw std::invalid_argument("two-qubit state is not normalized");
        return TwoQubitPureState{a};
    }
};

inline DensityMatrix partial_trace_over_trigger(const TwoQubitPureState& psi) {
    Mat2 m{};
    for (int t = 0; t < 2; ++t) {
        m.m00 += psi.amp[2 * t + 0] * std::conj(psi.amp[2 * t + 0]);
        m.m01 += psi.amp[2 * t + 0] * std::conj(psi.amp[2 * t + 1]);
        m.m10 += psi.amp[2 * t + 1] * std::conj(psi.amp[2 * t + 0]);
        m.m11 += psi.amp[2 * t + 1] * std::conj(psi.amp[2 * t + 1]);
    }
    return DensityMatrix{m};
}

}  // namespace gphase
