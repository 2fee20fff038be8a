#pragma once

// Mixed-state geometric phase for a polarization qubit cycled by a pair of
// half waveplates at angles theta1 (first) and theta2.
//
// The circular eigenvectors traverse two geodesics |R> -> |L> -> |R>
// enclosing Omega = 4(theta1 - theta2); the state acquires
//
//   v e^{i gamma} = cos(Omega/2) - i r sin(Omega/2)
//
// relative to the theta1 = theta2 = 0 reference, where r is the purity. The
// overall -1 shared by evolution and reference (two -i waveplate phases)
// drops out of the referenced phase.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gphase/common.hpp"
#include "gphase/optics.hpp"
#include "gphase/qubit.hpp"

namespace gphase {

struct SolidAngle {
    double omega = 0.0;  // radians, signed
};

struct PhaseVisibility {
    double gamma = 0.0;  // radians, (-pi, pi]
    double v = 0.0;      // [0, 1]
    bool defined = true; // false when v vanishes and gamma is meaningless
};

struct EigenmodeContribution {
    double p = 0.0;      // statistical weight
    double gamma = 0.0;  // eigenvector phase
    double v = 1.0;      // eigenvector visibility
};

namespace detail {

inline PhaseVisibility phase_visibility_from(cplx z) {
    double v = std::abs(z);
    if (v < 1e-12) return {0.0, v, false};
    return {wrap_pi(std::arg(z)), v > 1.0 ? 1.0 : v, true};
}

}  // namespace detail

inline SolidAngle solid_angle_from_waveplates(double theta1, double theta2) {
    return {4.0 * (theta1 - theta2)};
}

// Evolution unitary of the waveplate pair; theta1 acts first.
inline PolarizationUnitary two_hwp_unitary(double theta1, double theta2) {
    return hwp(theta2) * hwp(theta1);
}

inline PhaseVisibility mixed_phase_analytic(Purity r, SolidAngle omega) {
    double half = 0.5 * omega.omega;
    return detail::phase_visibility_from(cplx(std::cos(half), -r.r * std::sin(half)));
}

// Incoherent sum of eigenmode interference amplitudes p_k v_k e^{i gamma_k}.
inline PhaseVisibility weighted_average(const std::vector<EigenmodeContribution>& modes) {
    double total_p = 0.0;
    cplx z = 0.0;
    for (const auto& m : modes) {
        if (m.p < 0.0 || m.v < -1e-12 || m.v > 1.0 + 1e-12)
            throw std::invalid_argument("eigenmode weight or visibility out of range");
        total_p += m.p;
        z += m.p * m.v * std::polar(1.0, m.gamma);
    }
    if (total_p > 1.0 + 1e-9)
        throw std::invalid_argument("eigenmode weights exceed 1");
    return detail::phase_visibility_from(z);
}

// Pancharatnam phase of rho under u, referenced against u_ref. This is what
// the interferometer measures and serves as the ground truth for the
// analytic formula.
inline PhaseVisibility interferometric_oracle(const PolarizationUnitary& u,
                                              const PolarizationUnitary& u_ref,
                                              const DensityMatrix& rho) {
    cplx tr = (u.u * rho.m).trace();
    cplx tr_ref = (u_ref.u * rho.m).trace();
    if (std::abs(tr_ref) <= 1e-12)
        throw analysis_error("reference visibility is zero; phase is unreferenced");
    PhaseVisibility pv = detail::phase_visibility_from(tr);
    if (!pv.defined) return pv;
    pv.gamma = wrap_pi(pv.gamma - std::arg(tr_ref));
    return pv;
}

struct BlochPath {
    std::vector<BlochVector> samples;
};

// Bloch trajectory of a circular eigenvector around the waveplate cycle:
// leg 1 sweeps the theta1 retardance 0 -> pi, leg 2 closes the loop by
// sweeping the theta2 retardance pi -> 0 on the initial state. Both legs are
// geodesics; theta1 = theta2 retraces the same arc and encloses nothing.
inline BlochPath evolve_path(double theta1, double theta2, Eigenvector vec, int steps) {
    if (steps < 2) throw std::invalid_argument("need at least 2 steps per leg");
    Vec2 start = circular_ket(vec);
    BlochPath path;
    path.samples.reserve(2 * steps + 1);
    auto bloch_of = [](const Vec2& k) {
        cplx c = k.a * std::conj(k.b);
        return BlochVector{std::norm(k.a) - std::norm(k.b), 2.0 * c.real(), 2.0 * c.imag()};
    };
    for (int i = 0; i <= steps; ++i)
        path.samples.push_back(bloch_of(apply(waveplate(pi * i / steps, theta1), start)));
    for (int i = steps - 1; i >= 0; --i)
        path.samples.push_back(bloch_of(apply(waveplate(pi * i / steps, theta2), start)));
    return path;
}

// Signed enclosed area of a closed path of unit Bloch vectors, as summed
// spherical-triangle excesses about the normalized vertex-mean axis.
// Orientation follows the right-hand rule in Pauli (sx, sy, sz) axes; the
// Stokes component order (s1, s2, s3) = (sz, sx, -sy) is a reflection, so
// the excesses are evaluated on reordered components. An |R> eigenvector
// path from evolve_path yields +4(theta1 - theta2).
inline double solid_angle_from_path(const BlochPath& path) {
    const auto& s = path.samples;
    if (s.size() < 4) throw std::invalid_argument("path has too few samples");
    using V3 = std::array<double, 3>;
    std::vector<V3> p(s.size());
    V3 mean{0.0, 0.0, 0.0};
    for (size_t i = 0; i < s.size(); ++i) {
        if (std::abs(s[i].norm() - 1.0) > 1e-9)
            throw std::invalid_argument("path sample is not a unit Bloch vector");
        p[i] = {s[i].s2, -s[i].s3, s[i].s1};  // Stokes -> Pauli axes
        for (int k = 0; k < 3; ++k) mean[k] += p[i][k];
    }
    double dev = 0.0;
    for (int k = 0; k < 3; ++k) dev += (p.front()[k] - p.back()[k]) * (p.front()[k] - p.back()[k]);
    if (std::sqrt(dev) > 1e-6) throw std::invalid_argument("path is not closed");

    double mn = std::sqrt(mean[0] * mean[0] + mean[1] * mean[1] + mean[2] * mean[2]);
    V3 ref = p.front();
    if (mn > 1e-6) ref = {mean[0] / mn, mean[1] / mn, mean[2] / mn};

    auto dot = [](const V3& x, const V3& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; };
    double area = 0.0;
    for (size_t i = 0; i + 1 < p.size(); ++i) {
        const V3& a = p[i];
        const V3& b = p[i + 1];
        V3 axb{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
        double num = dot(ref, axb);
        double den = 1.0 + dot(ref, a) + dot(a, b) + dot(b, ref);
        area += 2.0 * std::atan2(num, den);
    }
    return area;
}

// Max |d/dt arg<psi(t)|psi(t+dt)>| along the cycle legs, by central
// differences within each leg (the leg junction is a corner of the path, not
// an evolution step). Vanishes for the symmetric retarder convention, sits
// near 1/2 for the asymmetric one.
inline double parallel_transport_residual(double theta1, double theta2, Eigenvector vec,
                                          int steps,
                                          RetarderConvention conv = RetarderConvention::Symmetric) {
    if (steps < 2) throw std::invalid_argument("need at least 2 steps per leg");
    Vec2 start = circular_ket(vec);
    const double h = pi / steps;
    double worst = 0.0;
    for (double theta : {theta1, theta2}) {
        std::vector<Vec2> leg(steps + 1);
        for (int i = 0; i <= steps; ++i) leg[i] = apply(waveplate(h * i, theta, conv), start);
        for (int i = 1; i < steps; ++i) {
            double rate = std::abs(std::arg(inner(leg[i - 1], leg[i + 1]))) / (2.0 * h);
            worst = std::max(worst, rate);
        }
    }
    return worst;
}

}  // namespace gphase
