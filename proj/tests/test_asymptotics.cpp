#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qfpc/asymptotics.hpp"
#include "qfpc/forces.hpp"

using namespace qfpc;

namespace {
constexpr double pi = std::numbers::pi;

double gamma_of(double v) { return 1.0 / std::sqrt(1 - v * v); }
}  // namespace

TEST(SmallZ, XZExample) {
    const double want = 16 * std::pow(pi, 4) * 0.5 / (15 * (16.0 / 9.0) * 1e-4);
    EXPECT_NEAR(f_small_z(Channel::XZ, 0.5, 0.1) / want, 1.0, 1e-13);
    EXPECT_NEAR(f_small_z(Channel::XZ, 0.5, 0.1), 2.922e5, 0.001e5);
}

TEST(SmallZ, YYEqualsZZ) {
    for (double v : {0.01, 0.4, 0.95})
        for (double z : {0.02, 0.3, 4.0}) EXPECT_EQ(f_small_z(Channel::YY, v, z), f_small_z(Channel::ZZ, v, z));
}

TEST(SmallZ, LinearInVelocity) {
    for (auto c : kPolarizationChannels) {
        const double a = f_small_z(c, 1e-6, 0.3) / 1e-6, b = f_small_z(c, 2e-6, 0.3) / 2e-6;
        EXPECT_NEAR(a / b, 1.0, 1e-10) << to_string(c);
    }
}

TEST(SmallZ, PlanckEinsteinScaling) {
    for (double v : {0.1, 0.6, 0.9}) {
        const double g = gamma_of(v);
        for (double z : {0.01, 0.2, 3.0}) {
            const double s = f_small_z(Channel::XZ, v, z) * std::pow(g * z, 4);
            EXPECT_NEAR(s / (16 * std::pow(pi, 4) * v / 15), 1.0, 1e-13);
        }
    }
}

TEST(SmallZ, Signs) {
    EXPECT_LT(f_small_z(Channel::XX, 0.5, 0.1), 0.0);
    EXPECT_LT(f_small_z(Channel::ZZ, 0.5, 0.1), 0.0);
    EXPECT_GT(f_small_z(Channel::XZ, 0.5, 0.1), 0.0);
    EXPECT_THROW(f_small_z(Channel::ISO, 0.5, 0.1), std::invalid_argument);
    EXPECT_THROW(f_small_z(Channel::XX, 0.5, 0.0), std::domain_error);
}

TEST(LargeZ, ZZIsFourTimesSmallZ) {
    for (double v : {0.01, 0.5, 0.99})
        for (double z : {0.1, 10.0, 1e3})
            EXPECT_NEAR(f_large_z(Channel::ZZ, v, z) / f_small_z(Channel::ZZ, v, z), 4.0, 1e-14);
}

TEST(LargeZ, XZExample) { EXPECT_NEAR(f_large_z(Channel::XZ, 0.5, 10.0), 2.100e-5, 0.001e-5); }

TEST(LargeZ, YYDominatesXX) {
    for (double v = 0.01; v < 0.995; v += 0.01) {
        EXPECT_GT(std::fabs(f_large_z(Channel::YY, v, 20.0)), std::fabs(f_large_z(Channel::XX, v, 20.0))) << v;
    }
}

TEST(LargeZ, LinearInVelocity) {
    for (auto c : kPolarizationChannels) {
        const double a = f_large_z(c, 1e-6, 30.0) / 1e-6, b = f_large_z(c, 2e-6, 30.0) / 2e-6;
        EXPECT_NEAR(a / b, 1.0, 1e-10) << to_string(c);
    }
}

TEST(IClosedForm, SmallZLeadingTerm) {
    const double z = 1e-3;
    EXPECT_NEAR(I_closed_form(z) * std::pow(z, 4) / (8 * std::pow(pi, 4) / 15), 1.0, 1e-5);
    EXPECT_NEAR(8 * std::pow(pi, 4) / 15, 51.9515, 1e-4);
}

TEST(IClosedForm, LargeZLeadingTerm) {
    const double lead = 1024 * std::pow(pi, 10) / 1485;
    EXPECT_NEAR(lead, 64576.16, 0.01);
    EXPECT_NEAR(I_closed_form(1e6) * 1e60 / lead, 1.0, 1e-10);
}

TEST(IClosedForm, BranchesMeetAtTheSwitch) {
    const double z = asymptotics_detail::kISeriesThreshold;
    EXPECT_NEAR(I_closed_form(std::nextafter(z, 0.0)) / I_closed_form(std::nextafter(z, 100.0)), 1.0, 1e-9);
}

TEST(IClosedForm, PositiveAndDecreasing) {
    double prev = INFINITY;
    for (double z = 0.05; z < 500; z *= 1.3) {
        const double i = I_closed_form(z);
        EXPECT_GT(i, 0.0) << z;
        EXPECT_LT(i, prev) << z;
        prev = i;
    }
}

// Direct quadrature of z int dx [3x cos x + (x^2 - 3) sin x]^2 / sinh^2(x z / 2).
TEST(IClosedForm, AgreesWithQuadrature) {
    for (double z : {0.7, 1.0, 3.0}) {
        auto f = [z](double x) {
            const double b = 3 * x * std::cos(x) + (x * x - 3) * std::sin(x);
            const double s = std::sinh(0.5 * x * z);
            return z * b * b / (s * s);
        };
        const double q = integrate_x(f, z, QuadratureConfig{}).value;
        EXPECT_NEAR(I_closed_form(z) / q, 1.0, 1e-8) << z;
    }
}

TEST(FxzNR, Identities) {
    EXPECT_EQ(f_xz_nr(0.0, 2.0), 0.0);
    const double v = 0.01;
    EXPECT_NEAR(f_xz_nr(v, 1e-3) * 1e-12 / (16 * std::pow(pi, 4) * v / 15), 1.0, 1e-5);
    const double z = 1e7;
    const double scaled = f_xz_nr(v, z) * std::pow(z, 10);
    EXPECT_NEAR(scaled / (2048 * std::pow(pi, 10) * v / 1485), 1.0, 1e-12);
    // the same constant is the v -> 0 limit of the large-z XZ row
    const double row = f_large_z(Channel::XZ, 1e-9, 1.0) / 1e-9;
    EXPECT_NEAR(row / (2048 * std::pow(pi, 10) / 1485), 1.0, 1e-12);
}

TEST(GammaSeries, ConvergesToGammaPower) {
    for (double v : {0.1, 0.5, 0.8}) {
        const double g = gamma_of(v);
        EXPECT_NEAR(gamma_series(3, v, 400) / std::pow(g, 6), 1.0, 1e-13) << v;
        EXPECT_NEAR(gamma_series(2, v, 400) / std::pow(g, 4), 1.0, 1e-13) << v;
        EXPECT_LT(gamma_series(3, v, 3), std::pow(g, 6));
    }
    EXPECT_EQ(gamma_series(3, 0.0, 5), 1.0);
    EXPECT_THROW(gamma_series(0, 0.5, 5), std::domain_error);
}

TEST(PolylogNeg, ClosedForms) {
    for (double y : {0.01, 0.3, 0.7, 4.0}) {
        const double t = std::exp(-y);
        EXPECT_NEAR(polylog_neg(0, y) / (t / (1 - t)), 1.0, 1e-12);
        EXPECT_NEAR(polylog_neg(1, y) / (t / ((1 - t) * (1 - t))), 1.0, 1e-12);
        EXPECT_NEAR(polylog_neg(2, y) / (t * (1 + t) / std::pow(1 - t, 3)), 1.0, 1e-12);
    }
}

TEST(PolylogNeg, BranchesAgree) {
    for (int p = 1; p <= 25; p += 2) {
        const double a = polylog_neg(p, std::nextafter(0.5, 0.0)), b = polylog_neg(p, 0.5);
        EXPECT_NEAR(a / b, 1.0, 1e-12) << p;
    }
}

TEST(XzSeries, ZeroVelocity) {
    const auto s = f_xz_series(0.0, 2.0);
    EXPECT_EQ(s.value, 0.0);
    EXPECT_EQ(s.terms.size(), 9u);
}

TEST(XzSeries, SmallVelocityIsTheLeadingTerm) {
    const auto s = f_xz_series(1e-4, 2.0, 4);
    EXPECT_NEAR(s.value / s.terms[0], 1.0, 1e-7);
    EXPECT_NEAR(s.terms[0] / 1e-4 / f_xz_nr(1.0, 2.0), 1.0, 1e-6);
}

TEST(XzSeries, TermsShrinkForModerateVelocity) {
    const auto s = f_xz_series(0.3, 1.0, 6);
    EXPECT_FALSE(s.diverging);
    EXPECT_LT(s.last_ratio, 1.0);
    EXPECT_TRUE(s.warning.empty());
}

TEST(XzSeries, RejectsBadInput) {
    EXPECT_THROW(f_xz_series(0.5, 2.0, 13), std::domain_error);
    EXPECT_THROW(f_xz_series(1.0, 2.0), std::domain_error);
    EXPECT_THROW(f_xz_series(0.5, 0.0), std::domain_error);
}

// Cold-limit rows against the full quadrature.
TEST(RegimeMatching, LargeZ) {
    for (double v : {0.1, 0.5}) {
        const auto f = dimensionless_friction(Kinematics::from_velocity(v), 50.0).f;
        for (auto c : kPolarizationChannels) {
            const double a = f_large_z(c, v, 50.0);
            EXPECT_LT(std::fabs(f[c] - a) / std::fabs(a), 0.02) << to_string(c) << " v=" << v;
        }
    }
}

TEST(RegimeMatching, NonrelativisticSlope) {
    const double v = 1e-3;
    for (double z : {1.0, 7.1}) {
        const double f = dimensionless_friction(Channel::XZ, Kinematics::from_velocity(v), z);
        EXPECT_NEAR(f / v / (2 * I_closed_form(z)), 1.0, 0.005) << z;
    }
}
