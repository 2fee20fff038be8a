#pragma once

// Jones calculus for retarders plus the dephasing channel used by the
// state-preparation stage.
//
// Retarders use the symmetric convention diag(e^{-i delta/2}, e^{+i delta/2})
// in the rotated frame, so det U = 1 and a sweep of delta parallel transports
// the circular states. The overall phase of a unitary is physical here (it is
// what the interferometer measures) and is never normalized away.

#include <cmath>
#include <stdexcept>

#include "gphase/common.hpp"
#include "gphase/qubit.hpp"

namespace gphase {

struct WaveplateSetting {
    double retardance = 0.0;  // radians, [0, 2pi)
    double angle = 0.0;       // fast-axis angle from horizontal, radians
};

// Deliberately breakable convention switch; Asymmetric uses diag(1, e^{i
// delta}) whose retardance sweep is *not* phase transporting. It exists as a
// negative control for the transport diagnostics.
enum class RetarderConvention { Symmetric, Asymmetric };

struct PolarizationUnitary {
    Mat2 u = Mat2::identity();

    static PolarizationUnitary checked(const Mat2& candidate) {
        Mat2 g = candidate.adjoint() * candidate;
        if (max_abs_diff(g, Mat2::identity()) > 1e-12)
            throw std::invalid_argument("matrix is not unitary");
        return PolarizationUnitary{candidate};
    }
};

inline PolarizationUnitary operator*(const PolarizationUnitary& x, const PolarizationUnitary& y) {
    return {x.u * y.u};
}

inline Mat2 rotation(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c, -s, s, c};
}

inline PolarizationUnitary waveplate(double retardance, double angle,
                                     RetarderConvention conv = RetarderConvention::Symmetric) {
    Mat2 core = conv == RetarderConvention::Symmetric
                    ? Mat2::diag(std::polar(1.0, -0.5 * retardance), std::polar(1.0, 0.5 * retardance))
                    : Mat2::diag(1.0, std::polar(1.0, retardance));
    return {rotation(angle) * core * rotation(-angle)};
}

inline PolarizationUnitary hwp(double angle) { return waveplate(pi, angle); }
inline PolarizationUnitary qwp(double angle) { return waveplate(0.5 * pi, angle); }

inline DensityMatrix apply(const PolarizationUnitary& u, const DensityMatrix& rho) {
    return DensityMatrix{u.u * rho.m * u.u.adjoint()};
}

inline Vec2 apply(const PolarizationUnitary& u, const Vec2& ket) { return u.u * ket; }

// Scales the H/V off-diagonal coherences by d in [0, 1]. d = 1 is the
// identity, d = 0 kills the coherences entirely.
inline DensityMatrix dephase(const DensityMatrix& rho, double d) {
    if (!(d >= 0.0 && d <= 1.0))
        throw std::invalid_argument("coherence scale must lie in [0, 1]");
    Mat2 m = rho.m;
    m.m01 *= d;
    m.m10 *= d;
    return DensityMatrix{m};
}

// Gaussian spectral model for the residual coherence after a birefringent
// delay: d = exp(-(delay / coherence_length)^2).
struct CoherenceModel {
    double coherence_length_um = 90.0;  // lambda^2 / bandwidth for 670 nm, 5 nm filters
    double birefringence = 0.0091;      // quartz delta-n
};

inline double coherence_factor(const CoherenceModel& model, double delay_um) {
    if (model.coherence_length_um <= 0.0)
        throw std::invalid_argument("coherence length must be positive");
    double x = delay_um / model.coherence_length_um;
    return std::exp(-x * x);
}

inline double element_delay_um(const CoherenceModel& model, double thickness_cm) {
    return model.birefringence * thickness_cm * 1e4;
}

}  // namespace gphase
