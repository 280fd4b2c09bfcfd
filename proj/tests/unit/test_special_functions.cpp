#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>

#include "hsi/errors.hpp"
#include "hsi/special_functions.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

hsi::SmoothFunction exp_minus(int coefficients) {
    hsi::SmoothFunction f{[](double t) { return std::exp(-t); }, {}};
    double a = 1.0;
    for (int k = 0; k < coefficients; ++k) {
        f.taylor.push_back(a);
        a *= -1.0 / (k + 1);
    }
    return f;
}

TEST(Gamma, AgreesWithBoostAcrossTheRealLine) {
    for (double z = -4.95; z < 12.0; z += 0.0731) {
        if (hsi::near_gamma_pole(z)) continue;
        const double ref = boost::math::tgamma(z);
        EXPECT_NEAR(hsi::gamma(z), ref, 2e-14 * std::abs(ref)) << "z = " << z;
    }
}

TEST(Gamma, SpecialValues) {
    EXPECT_DOUBLE_EQ(hsi::gamma(1.0), 1.0);
    EXPECT_NEAR(hsi::gamma(0.5), std::sqrt(kPi), 1e-15);
    EXPECT_NEAR(hsi::gamma(-0.25), -4.0 * hsi::gamma(0.75), 1e-12 * hsi::gamma(0.75));
    EXPECT_NEAR(hsi::c1_constant(), -boost::math::tgamma(-0.25), 1e-14);
}

TEST(Gamma, RejectsPoles) {
    for (double z : {0.0, -1.0, -2.0, -7.0, -3.0 + 5e-10}) EXPECT_THROW(hsi::gamma(z), hsi::PoleError) << z;
    EXPECT_NO_THROW(hsi::gamma(-1.0 + 1e-6));
}

TEST(Gamma, Recurrence) {
    for (double z = 0.1; z <= 10.0; z += 0.037) {
        const double lhs = hsi::gamma(z + 1.0);
        EXPECT_NEAR(lhs, z * hsi::gamma(z), 1e-12 * std::abs(lhs)) << z;
    }
}

TEST(Gamma, Reflection) {
    for (double z = 0.013; z < 1.0; z += 0.0219) {
        const double rhs = kPi / std::sin(kPi * z);
        EXPECT_NEAR(hsi::gamma(z) * hsi::gamma(1.0 - z), rhs, 1e-10 * std::abs(rhs)) << z;
    }
}

TEST(Gamma, Duplication) {
    for (double z = 0.1; z <= 5.0; z += 0.0413) {
        const double lhs = std::pow(2.0, 2.0 * z - 1.0) * hsi::gamma(z) * hsi::gamma(z + 0.5);
        const double rhs = std::sqrt(kPi) * hsi::gamma(2.0 * z);
        EXPECT_NEAR(lhs, rhs, 1e-10 * std::abs(rhs)) << z;
    }
}

TEST(ReciprocalGamma, VanishesAtPolesAndMatchesOracle) {
    for (double z : {0.0, -1.0, -2.0, -5.0}) EXPECT_EQ(hsi::reciprocal_gamma(z), 0.0);
    EXPECT_DOUBLE_EQ(hsi::reciprocal_gamma(1.0), 1.0);
    EXPECT_NEAR(hsi::reciprocal_gamma(-0.25), 1.0 / boost::math::tgamma(-0.25), 1e-15);
    EXPECT_NEAR(hsi::reciprocal_gamma(-0.25), -0.2040122, 1e-7);
    // Entire function: continuous through the poles.
    EXPECT_NEAR(hsi::reciprocal_gamma(-2.0 + 1e-8), 1.0 / boost::math::tgamma(-2.0 + 1e-8), 1e-15);
}

TEST(Beta, ClosedFormsAndQuadratureOracle) {
    EXPECT_NEAR(hsi::beta(1.0, 1.0), 1.0, 4e-15);
    EXPECT_NEAR(hsi::beta(2.0, 3.0), 1.0 / 12.0, 1e-15);
    boost::math::quadrature::tanh_sinh<double> ts;
    for (auto [l, m] : {std::pair{0.5, 0.5}, {0.25, 1.5}, {2.5, 0.75}, {3.0, 4.0}}) {
        // Both halves integrated with the distance to the singular endpoint as variable.
        const auto half = [&ts](double a, double b) {
            return ts.integrate([a, b](double u) { return std::pow(u, a - 1) * std::pow(1 - u, b - 1); }, 0.0, 0.5);
        };
        const double ref = half(l, m) + half(m, l);
        EXPECT_NEAR(hsi::beta(l, m), ref, 1e-9 * ref) << l << "," << m;
        EXPECT_NEAR(hsi::beta(l, m), boost::math::beta(l, m), 1e-13 * ref);
        EXPECT_EQ(hsi::beta(l, m), hsi::beta(m, l));
    }
    EXPECT_NEAR(hsi::beta(0.5, 0.5), kPi, 1e-14);
    EXPECT_THROW(hsi::beta(-1.0, 0.5), hsi::PoleError);
}

TEST(RegularizedMoment, ClassicalCase) {
    const double v = hsi::regularized_moment(exp_minus(4), {0.5, 0, 1.0});
    EXPECT_NEAR(v, std::sqrt(kPi), 1e-10);
}

TEST(RegularizedMoment, ContinuesGammaBelowZero) {
    const double v = hsi::regularized_moment(exp_minus(4), {-0.25, 1, 1.0});
    EXPECT_NEAR(v, hsi::gamma(-0.25), 1e-8);
    EXPECT_NEAR(v, -4.9016668, 1e-7);
}

TEST(RegularizedMoment, VanishingAtOriginNeedsNoSubtraction) {
    hsi::SmoothFunction f{[](double t) { return t * std::exp(-t); }, {0.0, 1.0, -1.0, 0.5}};
    EXPECT_NEAR(hsi::regularized_moment(f, {-0.25, 0, 1.0}), hsi::gamma(0.75), 1e-9);
}

TEST(RegularizedMoment, IndependentOfDepthAndSplit) {
    for (double lambda : {-0.25, -1.5, -2.75, 0.3}) {
        const int n_min = hsi::minimal_subtraction_depth(lambda);
        const double ref = boost::math::tgamma(lambda);
        for (int n = n_min; n <= 8; ++n) {
            for (double split : {0.5, 1.0, 2.0}) {
                const double v = hsi::regularized_moment(exp_minus(26), {lambda, n, split});
                EXPECT_NEAR(v, ref, 1e-8) << "lambda " << lambda << " N " << n << " split " << split;
            }
        }
    }
}

TEST(RegularizedMoment, Contract) {
    EXPECT_THROW(hsi::regularized_moment(exp_minus(4), {-1.0, 2, 1.0}), hsi::PoleError);
    EXPECT_THROW(hsi::regularized_moment(exp_minus(4), {-1.5, 1, 1.0}), hsi::DomainError);
    EXPECT_THROW(hsi::regularized_moment(exp_minus(12), {-8.5, 9, 1.0}), hsi::DomainError);
    EXPECT_THROW(hsi::regularized_moment(exp_minus(1), {-0.25, 2, 1.0}), hsi::DomainError);
    EXPECT_EQ(hsi::minimal_subtraction_depth(0.5), 0);
    EXPECT_EQ(hsi::minimal_subtraction_depth(-0.25), 1);
    EXPECT_EQ(hsi::minimal_subtraction_depth(-2.75), 3);
}

}  // namespace
