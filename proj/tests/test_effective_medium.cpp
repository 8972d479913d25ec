#include <gtest/gtest.h>

#include <cmath>

#include "resona/effective_medium.hpp"

using namespace resona;

namespace {

DimerMediumSpec sample_dimer()
{
    DimerMediumSpec s;
    s.C11 = 14.0;
    s.C12 = -5.0;
    s.P = 2.5;
    s.volume = 4.2;
    s.v_b = 1.0;
    s.mu = 0.03;
    s.gap = 0.01;
    s.V = 1.0;
    return s;
}

}  // namespace

TEST(DiluteMedium, CoefficientValue)
{
    DiluteMediumSpec s;
    s.Lambda = 2.0;
    s.beta0 = -0.5;
    s.V = 0.3;
    s.k = 1.5;
    auto c = effective_coefficient(s);
    EXPECT_NEAR(c.value, 1.5 * 1.5 - 2.0 * 4 * pi * 0.3 / -0.5, 1e-13);
}

TEST(DiluteMedium, Regimes)
{
    DiluteMediumSpec s;
    s.beta0 = 0.5;
    EXPECT_EQ(effective_coefficient(s).regime, MediumRegime::Dissipative);
    s.beta0 = -1e-3;
    EXPECT_EQ(effective_coefficient(s).regime, MediumRegime::HighIndex);
    s.beta0 = -1e5;
    EXPECT_EQ(effective_coefficient(s).regime, MediumRegime::Neutral);
    EXPECT_STREQ(to_string(MediumRegime::HighIndex), "high-index");
}

TEST(DiluteMedium, ResonantFrequencyRejected)
{
    DiluteMediumSpec s;
    s.beta0 = 0.0;
    EXPECT_THROW(effective_coefficient(s), InvalidArgument);
    DiluteMediumSpec t;
    t.omega = t.omega_M = 3.0;
    try {
        effective_coefficient(t);
        FAIL();
    } catch (const InvalidArgument& e) {
        EXPECT_NE(std::string(e.what()).find("cannot expect any effective medium theory"), std::string::npos);
    }
}

TEST(DiluteMedium, SignConsistencyWithFrequencies)
{
    DiluteMediumSpec s;
    s.omega = 2.0;
    s.omega_M = 1.0;  // above resonance: beta0 > 0
    s.beta0 = -1.0;
    EXPECT_THROW(effective_coefficient(s), InvalidArgument);
    s.beta0 = 1.0;
    EXPECT_NO_THROW(effective_coefficient(s));
}

TEST(DiluteMedium, ProfileOverload)
{
    DiluteMediumSpec s;
    s.beta0 = -0.1;
    std::vector<double> V{0.0, 0.5, 1.0};
    auto out = effective_coefficient(s, V);
    ASSERT_EQ(out.size(), 3u);
    EXPECT_NEAR(out[0].value, s.k * s.k, 1e-15);
    EXPECT_GT(out[2].value, out[1].value);
    EXPECT_NEAR(uniform_density_V(4.0), 0.25, 1e-16);
    EXPECT_THROW(uniform_density_V(0.0), InvalidArgument);
}

TEST(DimerMedium, Constants)
{
    auto s = sample_dimer();
    auto c = dimer_constants(s);
    EXPECT_NEAR(c.omega_M1, 0.03 * std::sqrt(9.0 / 4.2), 1e-15);
    EXPECT_NEAR(c.omega_M2, 0.03 * std::sqrt(19.0 / 4.2), 1e-15);
    const double q = c.omega_M1 / c.omega_M2;
    EXPECT_NEAR(c.g0, 2 * 9.0 / (1 - q * q), 1e-12);
    EXPECT_NEAR(c.g1, 0.03 * 0.03 * 2.5 * 2.5 / (2 * 4.2 * c.omega_M2 * 0.01), 1e-12);
    s.gap = -1;
    EXPECT_THROW(dimer_constants(s), InvalidArgument);
    s = sample_dimer();
    s.C12 = 1.0;
    EXPECT_THROW(dimer_constants(s), InvalidArgument);
}

TEST(DimerMedium, ThresholdExact)
{
    auto s = sample_dimer();
    const double k = 0.7;
    auto c = dimer_constants(s);
    auto w = double_negative_window(s, k);
    EXPECT_EQ(w.Lambda_star, k * k / (c.g0 * s.V));
    s.Lambda = w.Lambda_star;
    EXPECT_LE(std::abs(double_negative_window(s, k).M2), 1e-12 * k * k);
}

TEST(DimerMedium, FlagMonotoneInLambda)
{
    auto s = sample_dimer();
    const double k = 0.7;
    bool prev = false;
    int flips = 0;
    for (int i = 0; i <= 200; ++i) {
        s.Lambda = 0.05 * i;
        const bool f = double_negative_window(s, k).both_negative;
        if (f != prev) ++flips;
        EXPECT_FALSE(prev && !f);
        prev = f;
    }
    EXPECT_EQ(flips, 1);
}

TEST(DimerMedium, AnisotropicB)
{
    auto s = sample_dimer();
    s.B = Eigen::Vector3d(1.0, 0.0, 0.0).asDiagonal();
    s.Lambda = 1e6;
    auto w = double_negative_window(s, 0.5);
    // only the x1 direction turns negative
    EXPECT_LT(w.M1_eigmin, 0);
    EXPECT_NEAR(w.M1_eigmax, 1.0, 1e-12);
    EXPECT_FALSE(w.both_negative);
}

TEST(DimerMedium, BadInputs)
{
    auto s = sample_dimer();
    s.Lambda = -1;
    EXPECT_THROW(double_negative_window(s, 1.0), InvalidArgument);
    s = sample_dimer();
    s.V = 0;
    EXPECT_THROW(double_negative_window(s, 1.0), InvalidArgument);
}
