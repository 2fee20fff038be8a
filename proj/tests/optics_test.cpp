#include "gphase/optics.hpp"

#include <gtest/gtest.h>

#include "gphase/qubit.hpp"

namespace gphase {
namespace {

TEST(Waveplate, UnitaryWithUnitDeterminant) {
    for (double delta : {0.3, 0.5 * pi, pi, 2.7}) {
        for (double angle : {-0.7, 0.0, 0.42, 1.2}) {
            Mat2 u = waveplate(delta, angle).u;
            EXPECT_LT(max_abs_diff(u * u.adjoint(), Mat2::identity()), 1e-12);
            EXPECT_NEAR(std::abs(u.det() - cplx(1.0, 0.0)), 0.0, 1e-12);
        }
    }
}

TEST(Waveplate, AxisAlignedIsPureRetardance) {
    double delta = 1.234;
    Mat2 u = waveplate(delta, 0.0).u;
    Mat2 expect = Mat2::diag(std::polar(1.0, -0.5 * delta), std::polar(1.0, 0.5 * delta));
    EXPECT_LT(max_abs_diff(u, expect), 1e-12);
}

TEST(Waveplate, HalfWaveSquaresToMinusIdentity) {
    for (double angle : {0.0, 0.3, -1.1}) {
        Mat2 sq = (hwp(angle) * hwp(angle)).u;
        EXPECT_LT(max_abs_diff(sq, -1.0 * Mat2::identity()), 1e-12);
    }
}

TEST(Waveplate, QuarterWaveComposition) {
    for (double angle : {0.0, 0.9}) {
        EXPECT_LT(max_abs_diff((qwp(angle) * qwp(angle)).u, hwp(angle).u), 1e-12);
        Mat2 fourth = (qwp(angle) * qwp(angle) * qwp(angle) * qwp(angle)).u;
        EXPECT_LT(max_abs_diff(fourth, -1.0 * Mat2::identity()), 1e-12);
    }
}

TEST(Waveplate, QuarterWavePreparesCircular) {
    Vec2 out = apply(qwp(0.25 * pi), ket_h());
    Vec2 r = circular_ket(Eigenvector::R);
    EXPECT_NEAR(std::abs(out.a - r.a), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(out.b - r.b), 0.0, 1e-12);
}

TEST(Waveplate, HalfWaveRotatesLinearAndFlipsCircular) {
    // HWP at 22.5 deg takes H to D; HWP at any angle swaps R and L.
    BlochVector d = bloch_from_density(apply(hwp(0.125 * pi), pure_state(ket_h())));
    EXPECT_NEAR(d.s1, 0.0, 1e-12);
    EXPECT_NEAR(d.s2, 1.0, 1e-12);
    EXPECT_NEAR(d.s3, 0.0, 1e-12);

    BlochVector flipped =
        bloch_from_density(apply(hwp(0.6), pure_state(circular_ket(Eigenvector::R))));
    EXPECT_NEAR(flipped.s3, -1.0, 1e-12);
}

TEST(Waveplate, BrokenConventionIsTracked) {
    Mat2 asym = waveplate(pi, 0.0, RetarderConvention::Asymmetric).u;
    EXPECT_LT(max_abs_diff(asym, Mat2::diag(1.0, -1.0)), 1e-12);
    Mat2 sym = waveplate(pi, 0.0).u;
    EXPECT_LT(max_abs_diff(sym, Mat2::diag(cplx(0.0, -1.0), cplx(0.0, 1.0))), 1e-12);
}

TEST(Apply, PreservesDensityInvariants) {
    DensityMatrix rho = density_from_bloch({0.2, -0.4, 0.5});
    PolarizationUnitary u = qwp(0.3) * hwp(-0.8);
    DensityMatrix out = apply(u, rho);
    EXPECT_NEAR(std::real(out.m.trace()), 1.0, 1e-12);
    EXPECT_NEAR(purity(out).r, purity(rho).r, 1e-12);
}

TEST(Dephase, ScalesCoherencesOnly) {
    DensityMatrix rho = density_from_bloch({0.0, 0.8, 0.6});
    BlochVector b = bloch_from_density(dephase(rho, 0.5));
    EXPECT_NEAR(b.s1, 0.0, 1e-12);
    EXPECT_NEAR(b.s2, 0.4, 1e-12);
    EXPECT_NEAR(b.s3, 0.3, 1e-12);

    BlochVector dead = bloch_from_density(dephase(rho, 0.0));
    EXPECT_NEAR(dead.s2, 0.0, 1e-12);
    EXPECT_NEAR(dead.s3, 0.0, 1e-12);

    EXPECT_LT(max_abs_diff(dephase(rho, 1.0).m, rho.m), 1e-15);
    EXPECT_THROW(dephase(rho, -0.1), std::invalid_argument);
    EXPECT_THROW(dephase(rho, 1.1), std::invalid_argument);
}

TEST(Dephase, BasisIsHV) {
    // Populations in the H/V basis are untouched; s1 survives complete
    // dephasing.
    DensityMatrix rho = density_from_bloch({0.6, 0.3, 0.2});
    BlochVector b = bloch_from_density(dephase(rho, 0.0));
    EXPECT_NEAR(b.s1, 0.6, 1e-12);
}

TEST(CoherenceModel, QuartzElementDelay) {
    CoherenceModel model;
    EXPECT_NEAR(element_delay_um(model, 3.0), 273.0, 1e-9);
    EXPECT_NEAR(coherence_factor(model, 273.0), 1.0092719818195974e-4, 1e-12);
    EXPECT_DOUBLE_EQ(coherence_factor(model, 0.0), 1.0);
    EXPECT_GT(coherence_factor(model, 30.0), 0.8);
}

}  // namespace
}  // namespace gphase
