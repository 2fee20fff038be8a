#pragma once

// Two ways of preparing a partially mixed polarization state that is
// diagonal in the circular basis:
//
//   Decoherer: |H> -> cos(theta)|H> + sin(theta)|V>, dephase the H/V
//   coherences by d, then rotate with a quarter waveplate at 45 deg.
//   Entangled: cos(theta)|HH> + sin(theta)|VV>, trace out the trigger
//   photon, same quarter waveplate.
//
// Both give purity r = |cos 2theta| at d = 0, with the dominant eigenvector
// |R> for theta < 45 deg and |L> beyond.

#include <cmath>
#include <stdexcept>

#include "gphase/common.hpp"
#include "gphase/optics.hpp"
#include "gphase/qubit.hpp"

namespace gphase {

enum class PrepMethod { Decoherer, Entangled };

struct PreparationRecipe {
    PrepMethod method = PrepMethod::Decoherer;
    double theta = 0.0;            // superposition angle, [0, pi/2]
    double d = 0.0;                // residual coherence, decoherer only
    double qwp_angle = 0.25 * pi;  // circular-basis rotation

    void validate() const {
        if (!(theta >= 0.0 && theta <= 0.5 * pi))
            throw std::invalid_argument("preparation angle must lie in [0, pi/2]");
        if (!(d >= 0.0 && d <= 1.0))
            throw std::invalid_argument("coherence scale must lie in [0, 1]");
    }
};

struct PreparedState {
    DensityMatrix rho;
    Purity r;
    Eigenvector dominant = Eigenvector::R;
};

namespace detail {

inline PreparedState finish_preparation(const DensityMatrix& rho_hv, double qwp_angle) {
    DensityMatrix rho = apply(qwp(qwp_angle), rho_hv);
    BlochVector b = bloch_from_density(rho);
    return {rho, purity(rho), b.s3 >= 0.0 ? Eigenvector::R : Eigenvector::L};
}

}  // namespace detail

inline PreparedState prepare_decoherer(double theta, double d, double qwp_angle = 0.25 * pi) {
    PreparationRecipe{PrepMethod::Decoherer, theta, d, qwp_angle}.validate();
    Vec2 ket = apply(hwp(0.5 * theta), ket_h());  // cos(theta)|H> + sin(theta)|V> up to phase
    return detail::finish_preparation(dephase(pure_state(ket), d), qwp_angle);
}

inline PreparedState prepare_entangled(double theta_p, double qwp_angle = 0.25 * pi) {
    PreparationRecipe{PrepMethod::Entangled, theta_p, 0.0, qwp_angle}.validate();
    auto pair = TwoQubitPureState::checked({std::cos(theta_p), 0.0, 0.0, std::sin(theta_p)});
    return detail::finish_preparation(partial_trace_over_trigger(pair), qwp_angle);
}

inline PreparedState prepare(const PreparationRecipe& recipe) {
    return recipe.method == PrepMethod::Decoherer
               ? prepare_decoherer(recipe.theta, recipe.d, recipe.qwp_angle)
               : prepare_entangled(recipe.theta, recipe.qwp_angle);
}

// Superposition angle that yields purity r (dominant |R>): theta = acos(r)/2.
// The mirrored angle (pi - acos r)/2 yields the same r with |L> dominant.
inline double angle_for_purity(double r, Eigenvector dominant = Eigenvector::R) {
    if (!(r >= 0.0 && r <= 1.0))
        throw std::invalid_argument("purity must lie in [0, 1]");
    double theta = 0.5 * std::acos(r);
    return dominant == Eigenvector::R ? theta : 0.5 * pi - theta;
}

}  // namespace gphase
