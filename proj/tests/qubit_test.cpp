#include "gphase/qubit.hpp"

#include <gtest/gtest.h>

#include <random>

#include "gphase/common.hpp"

namespace gphase {
namespace {

TEST(WrapPi, HalfOpenInterval) {
    EXPECT_DOUBLE_EQ(wrap_pi(0.0), 0.0);
    EXPECT_DOUBLE_EQ(wrap_pi(pi), pi);
    EXPECT_DOUBLE_EQ(wrap_pi(-pi), pi);
    EXPECT_DOUBLE_EQ(wrap_pi(3.0 * pi), pi);
    EXPECT_NEAR(wrap_pi(0.1 - 2.0 * pi), 0.1, 1e-12);
    EXPECT_NEAR(wrap_pi(-0.1), -0.1, 1e-15);
    EXPECT_NEAR(wrap_pi(deg_to_rad(340.0)), deg_to_rad(-20.0), 1e-12);
}

TEST(Kets, CircularStatesOrthonormal) {
    Vec2 r = circular_ket(Eigenvector::R);
    Vec2 l = circular_ket(Eigenvector::L);
    EXPECT_NEAR(r.norm(), 1.0, 1e-15);
    EXPECT_NEAR(l.norm(), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(inner(r, l)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(r.a - cplx(std::sqrt(0.5), 0.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(r.b - cplx(0.0, -std::sqrt(0.5))), 0.0, 1e-15);
}

TEST(StokesAxes, BasisStatesMapToUnitAxes) {
    BlochVector h = bloch_from_density(pure_state(ket_h()));
    EXPECT_NEAR(h.s1, 1.0, 1e-15);
    EXPECT_NEAR(h.s2, 0.0, 1e-15);
    EXPECT_NEAR(h.s3, 0.0, 1e-15);

    Vec2 d{std::sqrt(0.5), std::sqrt(0.5)};
    BlochVector bd = bloch_from_density(pure_state(d));
    EXPECT_NEAR(bd.s1, 0.0, 1e-15);
    EXPECT_NEAR(bd.s2, 1.0, 1e-15);
    EXPECT_NEAR(bd.s3, 0.0, 1e-15);

    BlochVector br = bloch_from_density(pure_state(circular_ket(Eigenvector::R)));
    EXPECT_NEAR(br.s1, 0.0, 1e-15);
    EXPECT_NEAR(br.s2, 0.0, 1e-15);
    EXPECT_NEAR(br.s3, 1.0, 1e-15);

    BlochVector bl = bloch_from_density(pure_state(circular_ket(Eigenvector::L)));
    EXPECT_NEAR(bl.s3, -1.0, 1e-15);
}

TEST(BlochRoundTrip, RandomInteriorPoints) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        BlochVector b{u(rng), u(rng), u(rng)};
        double n = b.norm();
        if (n > 1.0) {
            b.s1 /= n * 1.01;
            b.s2 /= n * 1.01;
            b.s3 /= n * 1.01;
        }
        DensityMatrix rho = density_from_bloch(b);
        BlochVector back = bloch_from_density(rho);
        EXPECT_NEAR(back.s1, b.s1, 1e-12);
        EXPECT_NEAR(back.s2, b.s2, 1e-12);
        EXPECT_NEAR(back.s3, b.s3, 1e-12);
        EXPECT_NEAR(purity(rho).r, b.norm(), 1e-12);
    }
}

TEST(BlochRoundTrip, OverlongVectorRejected) {
    EXPECT_THROW(density_from_bloch({1.5, 0.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(density_from_bloch({0.8, 0.8, 0.8}), std::invalid_argument);
    // A hair over unit length renormalizes onto the sphere instead.
    DensityMatrix rho = density_from_bloch({1.0 + 5e-10, 0.0, 0.0});
    EXPECT_LE(purity(rho).r, 1.0);
    EXPECT_NEAR(purity(rho).r, 1.0, 1e-9);
}

TEST(DensityChecks, InvalidMatricesThrow) {
    Mat2 bad_h{cplx(0.5, 0.0), cplx(0.1, 0.0), cplx(0.3, 0.0), cplx(0.5, 0.0)};
    EXPECT_THROW(DensityMatrix::checked(bad_h), std::invalid_argument);
    Mat2 bad_t{cplx(0.7, 0.0), 0.0, 0.0, cplx(0.7, 0.0)};
    EXPECT_THROW(DensityMatrix::checked(bad_t), std::invalid_argument);
    Mat2 bad_p{cplx(1.2, 0.0), 0.0, 0.0, cplx(-0.2, 0.0)};
    EXPECT_THROW(DensityMatrix::checked(bad_p), std::invalid_argument);
}

TEST(Eigendecompose, MixedStateAlongRandomAxis) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        BlochVector dir{u(rng), u(rng), u(rng)};
        double n = dir.norm();
        if (n < 1e-3) continue;
        double r = 0.6;
        DensityMatrix rho = density_from_bloch({r * dir.s1 / n, r * dir.s2 / n, r * dir.s3 / n});
        EigenDecomposition ed = eigendecompose(rho);
        EXPECT_NEAR(ed.values[0], 0.8, 1e-12);
        EXPECT_NEAR(ed.values[1], 0.2, 1e-12);
        EXPECT_NEAR(ed.kets[0].norm(), 1.0, 1e-12);
        EXPECT_NEAR(std::abs(inner(ed.kets[0], ed.kets[1])), 0.0, 1e-12);
        Mat2 rebuilt = ed.values[0] * outer(ed.kets[0], ed.kets[0]) +
                       ed.values[1] * outer(ed.kets[1], ed.kets[1]);
        EXPECT_LT(max_abs_diff(rebuilt, rho.m), 1e-12);
    }
}

TEST(Eigendecompose, DegenerateAndPureLimits) {
    EigenDecomposition mixed = eigendecompose(density_from_bloch({0.0, 0.0, 0.0}));
    EXPECT_DOUBLE_EQ(mixed.values[0], 0.5);
    EXPECT_DOUBLE_EQ(mixed.values[1], 0.5);

    EigenDecomposition pure = eigendecompose(pure_state(circular_ket(Eigenvector::R)));
    EXPECT_NEAR(pure.values[0], 1.0, 1e-12);
    EXPECT_NEAR(pure.values[1], 0.0, 1e-12);
    EXPECT_NEAR(std::abs(inner(pure.kets[0], circular_ket(Eigenvector::R))), 1.0, 1e-12);
}

TEST(PartialTrace, SchmidtStateGivesDiagonalMixture) {
    double theta = 0.3;
    TwoQubitPureState psi = TwoQubitPureState::checked(
        {cplx(std::cos(theta), 0.0), 0.0, 0.0, cplx(std::sin(theta), 0.0)});
    DensityMatrix rho = partial_trace_over_trigger(psi);
    EXPECT_NEAR(std::real(rho.m.m00), std::cos(theta) * std::cos(theta), 1e-12);
    EXPECT_NEAR(std::real(rho.m.m11), std::sin(theta) * std::sin(theta), 1e-12);
    EXPECT_NEAR(std::abs(rho.m.m01), 0.0, 1e-12);
    EXPECT_NEAR(purity(rho).r, std::abs(std::cos(2.0 * theta)), 1e-12);
}

TEST(PartialTrace, BellStateIsMaximallyMixed) {
    double s = std::sqrt(0.5);
    TwoQubitPureState psi = TwoQubitPureState::checked({cplx(s, 0.0), 0.0, 0.0, cplx(s, 0.0)});
    EXPECT_NEAR(purity(partial_trace_over_trigger(psi)).r, 0.0, 1e-12);
}

TEST(PartialTrace, ProductStateKeepsSystemFactor) {
    double s = std::sqrt(0.5);
    // trigger |H>, system |D>
    TwoQubitPureState psi = TwoQubitPureState::checked({cplx(s, 0.0), cplx(s, 0.0), 0.0, 0.0});
    BlochVector b = bloch_from_density(partial_trace_over_trigger(psi));
    EXPECT_NEAR(b.s1, 0.0, 1e-12);
    EXPECT_NEAR(b.s2, 1.0, 1e-12);
    EXPECT_NEAR(b.s3, 0.0, 1e-12);
}

TEST(PartialTrace, NonUnitNormRejected) {
    EXPECT_THROW(TwoQubitPureState::checked({cplx(1.0, 0.0), 0.0, 0.0, cplx(1.0, 0.0)}),
                 std::invalid_argument);
}

}  // namespace
}  // namespace gphase
