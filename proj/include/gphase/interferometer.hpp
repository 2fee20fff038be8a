#pragma once

// Monte Carlo model of the Mach-Zehnder fringe scans: one arm carries the
// waveplate pair, the path difference is swept with a PZT-mounted mirror,
// and photon counts are accumulated per voltage point.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "gphase/common.hpp"
#include "gphase/geometric_phase.hpp"
#include "gphase/rng.hpp"
#include "gphase/state_prep.hpp"

namespace gphase {

struct InterferometerConfig {
    double wavelength_nm = 670.0;
    double pzt_gain_nm_per_v = 17.5;   // one fringe period every ~38.3 V
    double pzt_offset_nm = 0.0;
    double baseline_visibility = 0.95; // v0, apparatus ceiling
    double mean_rate_cps = 500.0;
    double background_rate_cps = 0.0;
    double accumulation_s = 2.0;
    std::vector<double> voltages_v = {30, 35, 40, 45, 50, 55, 60, 65, 70};

    void validate() const {
        if (!(wavelength_nm > 0.0)) throw std::invalid_argument("wavelength must be positive");
        if (!(baseline_visibility >= 0.0 && baseline_visibility <= 1.0))
            throw std::invalid_argument("baseline visibility must lie in [0, 1]");
        if (!(mean_rate_cps >= 0.0) || !(background_rate_cps >= 0.0) ||
            !(accumulation_s > 0.0))
            throw std::invalid_argument("rates must be non-negative and accumulation positive");
        if (voltages_v.size() < 5)
            throw std::invalid_argument("need at least 5 voltage points");
    }
};

// Normalized detection probability at path difference delta_l.
inline double fringe_probability(double delta_l_nm, double wavelength_nm,
                                 const PhaseVisibility& pv, double v0) {
    double phase = 2.0 * pi * delta_l_nm / wavelength_nm - pv.gamma;
    return 0.5 * (1.0 + v0 * pv.v * std::cos(phase));
}

struct FringeScan {
    double theta1 = 0.0;  // radians; the reference scan records 0
    std::uint64_t seed = 0;
    std::vector<double> voltages_v;
    std::vector<double> expected_counts;
    std::vector<std::uint64_t> counts;

    std::vector<double> counts_real() const {
        return std::vector<double>(counts.begin(), counts.end());
    }
};

inline FringeScan simulate_scan(const InterferometerConfig& cfg, const PhaseVisibility& pv,
                                double theta1, std::uint64_t seed) {
    cfg.validate();
    FringeScan scan;
    scan.theta1 = theta1;
    scan.seed = seed;
    scan.voltages_v = cfg.voltages_v;
    scan.expected_counts.reserve(cfg.voltages_v.size());
    scan.counts.reserve(cfg.voltages_v.size());
    for (std::size_t i = 0; i < cfg.voltages_v.size(); ++i) {
        double delta_l = cfg.pzt_gain_nm_per_v * cfg.voltages_v[i] + cfg.pzt_offset_nm;
        double p = fringe_probability(delta_l, cfg.wavelength_nm, pv, cfg.baseline_visibility);
        double expected = (cfg.mean_rate_cps * p + cfg.background_rate_cps) * cfg.accumulation_s;
        scan.expected_counts.push_back(expected);
        std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(i)));
        scan.counts.push_back(sample_poisson(rng, expected));
    }
    return scan;
}

struct SettingPair {
    FringeScan scan;       // waveplates at (theta1, theta2)
    FringeScan reference;  // waveplates at (0, 0)
};

// Simulates the fringe at (theta1, theta2) together with its same-session
// reference; the fitted phase difference of the pair estimates gamma.
inline SettingPair simulate_setting_pair(const InterferometerConfig& cfg,
                                         const PreparedState& state, double theta1,
                                         double theta2, std::uint64_t seed) {
    PolarizationUnitary u_ref = two_hwp_unitary(0.0, 0.0);
    PhaseVisibility pv = interferometric_oracle(two_hwp_unitary(theta1, theta2), u_ref, state.rho);
    PhaseVisibility pv_ref{0.0, std::abs((u_ref.u * state.rho.m).trace()), true};
    return {simulate_scan(cfg, pv, theta1, mix_seed(seed, 0)),
            simulate_scan(cfg, pv_ref, 0.0, mix_seed(seed, 1))};
}

}  // namespace gphase
