#include "gphase/interferometer.hpp"

#include <gtest/gtest.h>

#include <numeric>

#include "gphase/rng.hpp"
#include "gphase/state_prep.hpp"

namespace gphase {
namespace {

TEST(Rng, SeedMixingIsStableAndSeparating) {
    EXPECT_EQ(mix_seed(1, 2), mix_seed(1, 2));
    EXPECT_NE(mix_seed(1, 2), mix_seed(1, 3));
    EXPECT_NE(mix_seed(1, 2), mix_seed(2, 1));
}

TEST(Rng, PoissonEdgeCases) {
    std::mt19937_64 rng(42);
    EXPECT_EQ(sample_poisson(rng, 0.0), 0u);
    EXPECT_EQ(sample_poisson(rng, -1.0), 0u);
}

TEST(Rng, PoissonMomentsMatch) {
    std::mt19937_64 rng(7);
    double mean = 7.3;
    int n = 20000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        double x = static_cast<double>(sample_poisson(rng, mean));
        sum += x;
        sumsq += x * x;
    }
    double m = sum / n;
    double var = sumsq / n - m * m;
    EXPECT_NEAR(m, mean, 0.1);
    EXPECT_NEAR(var / mean, 1.0, 0.08);
}

TEST(Rng, PoissonLargeMeanUsesGaussianTail) {
    std::mt19937_64 rng(9);
    double mean = 2.0e6;
    double sum = 0.0;
    for (int i = 0; i < 200; ++i) sum += static_cast<double>(sample_poisson(rng, mean));
    EXPECT_NEAR(sum / 200.0, mean, 5.0 * std::sqrt(mean) / std::sqrt(200.0));
}

TEST(FringeProbability, KnownValues) {
    PhaseVisibility flat{0.0, 0.0, false};
    for (double dl : {-100.0, 0.0, 333.0})
        EXPECT_DOUBLE_EQ(fringe_probability(dl, 670.0, flat, 1.0), 0.5);

    PhaseVisibility aligned{0.0, 1.0, true};
    EXPECT_DOUBLE_EQ(fringe_probability(0.0, 670.0, aligned, 1.0), 1.0);

    PhaseVisibility mixed{deg_to_rad(-16.10), 0.9014, true};
    EXPECT_NEAR(fringe_probability(0.0, 670.0, mixed, 0.95), 0.9113720065398863, 1e-12);
}

TEST(FringeProbability, StaysInUnitInterval) {
    PhaseVisibility pv{0.7, 1.0, true};
    for (int i = 0; i <= 200; ++i) {
        double p = fringe_probability(i * 12.5, 670.0, pv, 1.0);
        EXPECT_GE(p, 0.0);
        EXPECT_LE(p, 1.0);
    }
}

TEST(Config, Validation) {
    InterferometerConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.voltages_v = {1, 2, 3, 4};
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.baseline_visibility = 1.2;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.mean_rate_cps = -3.0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.wavelength_nm = 0.0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(SimulateScan, DeterministicInSeed) {
    InterferometerConfig cfg;
    PhaseVisibility pv{0.4, 0.9, true};
    FringeScan a = simulate_scan(cfg, pv, 0.1, 77);
    FringeScan b = simulate_scan(cfg, pv, 0.1, 77);
    FringeScan c = simulate_scan(cfg, pv, 0.1, 78);
    EXPECT_EQ(a.counts, b.counts);
    EXPECT_NE(a.counts, c.counts);
    EXPECT_EQ(a.counts.size(), cfg.voltages_v.size());
}

TEST(SimulateScan, ExpectedCountsFollowModel) {
    InterferometerConfig cfg;
    cfg.background_rate_cps = 25.0;
    PhaseVisibility pv{0.4, 0.9, true};
    FringeScan scan = simulate_scan(cfg, pv, 0.1, 5);
    for (std::size_t i = 0; i < scan.voltages_v.size(); ++i) {
        double dl = cfg.pzt_gain_nm_per_v * scan.voltages_v[i] + cfg.pzt_offset_nm;
        double p = fringe_probability(dl, cfg.wavelength_nm, pv, cfg.baseline_visibility);
        double expect = (cfg.mean_rate_cps * p + cfg.background_rate_cps) * cfg.accumulation_s;
        EXPECT_NEAR(scan.expected_counts[i], expect, 1e-12);
    }
}

TEST(SimulateScan, ZeroRateGivesZeroCounts) {
    InterferometerConfig cfg;
    cfg.mean_rate_cps = 0.0;
    FringeScan scan = simulate_scan(cfg, PhaseVisibility{0.0, 1.0, true}, 0.0, 3);
    for (auto c : scan.counts) EXPECT_EQ(c, 0u);
}

TEST(SimulateScan, CountsTrackExpectationStatistically) {
    InterferometerConfig cfg;
    cfg.mean_rate_cps = 2.0e5;
    PhaseVisibility pv{0.3, 0.8, true};
    FringeScan scan = simulate_scan(cfg, pv, 0.1, 21);
    for (std::size_t i = 0; i < scan.counts.size(); ++i) {
        double z = (scan.counts_real()[i] - scan.expected_counts[i]) /
                   std::sqrt(scan.expected_counts[i]);
        EXPECT_LT(std::abs(z), 5.0);
    }
}

TEST(SettingPair, ReferenceSharesStateAndSeedSplit) {
    InterferometerConfig cfg;
    PreparedState st = prepare_decoherer(angle_for_purity(0.81, Eigenvector::R), 0.0, 0.25 * pi);
    SettingPair pair = simulate_setting_pair(cfg, st, deg_to_rad(15.0), 0.0, 991);
    EXPECT_NEAR(pair.scan.theta1, deg_to_rad(15.0), 1e-15);
    EXPECT_NEAR(pair.reference.theta1, 0.0, 1e-15);
    EXPECT_NE(pair.scan.counts, pair.reference.counts);

    SettingPair again = simulate_setting_pair(cfg, st, deg_to_rad(15.0), 0.0, 991);
    EXPECT_EQ(pair.scan.counts, again.scan.counts);
    EXPECT_EQ(pair.reference.counts, again.reference.counts);
}

}  // namespace
}  // namespace gphase
