#include "gphase/state_prep.hpp"

#include <gtest/gtest.h>

namespace gphase {
namespace {

TEST(Decoherer, PureLimitIsRightCircular) {
    PreparedState st = prepare_decoherer(0.0, 0.0, 0.25 * pi);
    EXPECT_NEAR(st.r.r, 1.0, 1e-12);
    EXPECT_EQ(st.dominant, Eigenvector::R);
    BlochVector b = bloch_from_density(st.rho);
    EXPECT_NEAR(b.s3, 1.0, 1e-12);
}

TEST(Decoherer, PurityFollowsHalfWaveAngle) {
    double theta = 0.5 * std::acos(0.81);
    PreparedState st = prepare_decoherer(theta, 0.0, 0.25 * pi);
    EXPECT_NEAR(st.r.r, 0.81, 1e-12);
    EXPECT_EQ(st.dominant, Eigenvector::R);

    st = prepare_decoherer(0.5 * std::acos(0.57), 0.0, 0.25 * pi);
    EXPECT_NEAR(st.r.r, 0.57, 1e-12);
}

TEST(Decoherer, ResidualCoherenceRaisesPurity) {
    double theta = deg_to_rad(30.0);
    PreparedState st = prepare_decoherer(theta, 0.2, 0.25 * pi);
    EXPECT_NEAR(st.r.r, 0.5291502622129183, 1e-12);
    EXPECT_EQ(st.dominant, Eigenvector::R);
}

TEST(Decoherer, LargeAngleFlipsDominantEigenvector) {
    PreparedState st = prepare_decoherer(deg_to_rad(60.0), 0.0, 0.25 * pi);
    EXPECT_NEAR(st.r.r, 0.5, 1e-12);
    EXPECT_EQ(st.dominant, Eigenvector::L);
}

TEST(Decoherer, QuarterWaveAngleSelectsHandedness) {
    PreparedState st = prepare_decoherer(0.0, 0.0, -0.25 * pi);
    EXPECT_NEAR(st.r.r, 1.0, 1e-12);
    EXPECT_EQ(st.dominant, Eigenvector::L);
}

TEST(Entangled, MatchesDecohererChannel) {
    for (double theta : {0.1, 0.3133221058203703, 0.45, 1.2}) {
        PreparedState a = prepare_entangled(theta, 0.25 * pi);
        PreparedState b = prepare_decoherer(theta, 0.0, 0.25 * pi);
        EXPECT_LT(max_abs_diff(a.rho.m, b.rho.m), 1e-12);
        EXPECT_NEAR(a.r.r, b.r.r, 1e-12);
        EXPECT_EQ(a.dominant, b.dominant);
    }
}

TEST(Entangled, EqualAmplitudesGiveMaximalMixture) {
    PreparedState st = prepare_entangled(0.25 * pi, 0.25 * pi);
    EXPECT_NEAR(st.r.r, 0.0, 1e-12);
}

TEST(AngleForPurity, RoundTripsThroughPreparation) {
    for (double r : {0.0, 0.3, 0.57, 0.81, 1.0}) {
        PreparedState st = prepare_decoherer(angle_for_purity(r, Eigenvector::R), 0.0, 0.25 * pi);
        EXPECT_NEAR(st.r.r, r, 1e-12);
        if (r > 1e-9) EXPECT_EQ(st.dominant, Eigenvector::R);

        st = prepare_decoherer(angle_for_purity(r, Eigenvector::L), 0.0, 0.25 * pi);
        EXPECT_NEAR(st.r.r, r, 1e-12);
        if (r > 1e-9) EXPECT_EQ(st.dominant, Eigenvector::L);
    }
    EXPECT_THROW(angle_for_purity(1.2, Eigenvector::R), std::invalid_argument);
    EXPECT_THROW(angle_for_purity(-0.1, Eigenvector::R), std::invalid_argument);
}

TEST(Recipe, ValidatesParameterRanges) {
    PreparationRecipe recipe;
    recipe.method = PrepMethod::Decoherer;
    recipe.theta = 0.3;
    recipe.d = 0.0;
    EXPECT_NO_THROW(recipe.validate());

    recipe.theta = -0.1;
    EXPECT_THROW(recipe.validate(), std::invalid_argument);
    recipe.theta = 0.3;
    recipe.d = 1.5;
    EXPECT_THROW(recipe.validate(), std::invalid_argument);
}

TEST(Recipe, DispatchesByMethod) {
    PreparationRecipe recipe;
    recipe.method = PrepMethod::Entangled;
    recipe.theta = 0.3133221058203703;
    PreparedState st = prepare(recipe);
    EXPECT_NEAR(st.r.r, 0.81, 1e-12);
}

}  // namespace
}  // namespace gphase
