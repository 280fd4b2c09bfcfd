#include <gtest/gtest.h>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

#include "hsi/errors.hpp"
#include "hsi/nsp_application.hpp"
#include "hsi/volterra_solver.hpp"

namespace {

constexpr double pi = std::numbers::pi;

TEST(InitialData, Validation) {
    EXPECT_NO_THROW(hsi::InitialData{}.validate());
    EXPECT_NO_THROW((hsi::InitialData{0.0, 1.0, 0.5}).validate());
    EXPECT_THROW((hsi::InitialData{-1.0, 1.0, 0.5}).validate(), hsi::ConfigError);
    EXPECT_THROW((hsi::InitialData{1.0, 0.0, 0.5}).validate(), hsi::ConfigError);
    EXPECT_THROW((hsi::InitialData{1.0, 1.0, 0.0}).validate(), hsi::ConfigError);
}

TEST(Spectrum, MatchesDirectFourierIntegral) {
    // Radial Fourier transform of a Gaussian: (2 pi)^{-3} 4 pi int r^2 sinc(xi r) v0(r) dr.
    const hsi::InitialData d{1.3, 0.8, 0.5};
    for (double xi : {0.1, 1.0, 3.0}) {
        const auto f = [&](double r) { return r * std::sin(xi * r) / xi * d.amplitude * std::exp(-r * r / (d.width * d.width)); };
        const double direct = 4 * pi * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 20.0) /
                              std::pow(2 * pi, 3);
        EXPECT_NEAR(hsi::heat_evolved_spectrum(d, xi, 0.0), direct, 1e-13);
        EXPECT_NEAR(hsi::heat_evolved_spectrum(d, xi, 0.7), direct * std::exp(-d.nu * xi * xi * 0.7), 1e-13);
    }
}

TEST(B0, QuadratureMatchesClosedForm) {
    for (const hsi::InitialData d : {hsi::InitialData{}, hsi::InitialData{2.0, 0.5, 0.1}, hsi::InitialData{0.5, 2.0, 3.0}}) {
        const auto g = hsi::graded_grid(20.0, 64);
        const auto b0 = hsi::b0_from_initial_data(d, g);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double exact = hsi::b0_closed_form(d, g[i]);
            EXPECT_NEAR(b0[i], exact, 1e-8 * exact) << g[i];
        }
    }
}

TEST(B0, FiniteAtZeroAndDecaysLikeMinusFiveQuarters) {
    const hsi::InitialData d{};
    EXPECT_TRUE(std::isfinite(hsi::b0_closed_form(d, 0.0)));
    EXPECT_GT(hsi::b0_closed_form(d, 0.0), 0.0);
    const double ratio = hsi::b0_closed_form(d, 1e6) / hsi::b0_closed_form(d, 2e6);
    EXPECT_NEAR(ratio, std::pow(2.0, 1.25), 1e-5);
    const auto zero = hsi::b0_from_initial_data({0.0, 1.0, 0.5}, hsi::graded_grid(1.0, 8));
    EXPECT_EQ(hsi::max_abs(zero), 0.0);
}

TEST(B0, ImageMatchesForwardQuadrature) {
    const hsi::InitialData d{};
    const auto img = hsi::b0_image(d);
    EXPECT_TRUE(img.continuable);
    for (double p : {0.3, 1.0, 4.0}) {
        const auto f = [&](double t) { return std::exp(-p * t) * hsi::b0_closed_form(d, t); };
        const double forward = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            f, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-14);
        EXPECT_NEAR(img.evaluate({p, 0.0}).real(), forward, 1e-10 * forward);
        EXPECT_NEAR(img.evaluate({p, 0.0}).imag(), 0.0, 1e-14);
    }
    const auto z = img.evaluate({1.0, 2.0});
    EXPECT_NEAR(std::conj(z).imag(), img.evaluate({1.0, -2.0}).imag(), 1e-12);
}

TEST(Kernel, NormMatchesConstant) {
    const double cstar = hsi::kernel_bound_constant(0.5);
    EXPECT_NEAR(cstar, 2.890067818451249, 1e-13);
    EXPECT_NEAR(cstar, std::sqrt(4 * pi * 3.0 / 8.0 * std::sqrt(pi)), 1e-13);
    for (double nu : {0.1, 0.5, 2.0})
        for (double t : {1e-2, 1.0, 4.0})
            EXPECT_NEAR(hsi::kernel_norm(nu, t), hsi::kernel_bound_constant(nu) * std::pow(t, -1.25),
                        1e-10 * hsi::kernel_norm(nu, t));
    EXPECT_NEAR(hsi::kernel_norm(0.5, 1.0) / hsi::kernel_norm(0.5, 2.0), std::pow(2.0, 1.25), 1e-12);
    EXPECT_THROW(hsi::kernel_bound_constant(0.0), hsi::DomainError);
}

TEST(GreenTensor, KnownEntries) {
    const double s = std::pow(2 * pi, 3);
    const auto g = hsi::green_tensor({1.0, 0.0, 0.0}, 0.0, 0.5);
    EXPECT_NEAR(g[0][0] * s, 0.0, 1e-15);
    EXPECT_NEAR(g[1][1] * s, 1.0, 1e-15);
    EXPECT_NEAR(g[0][1] * s, 0.0, 1e-15);
    const auto h = hsi::green_tensor({1.0, 1.0, 0.0}, 1.0, 0.5);
    EXPECT_NEAR(h[0][1] * s, -0.5 * std::exp(-1.0), 1e-15);
    EXPECT_NEAR(h[2][2] * s, std::exp(-1.0), 1e-15);
    EXPECT_EQ(h[0][1], h[1][0]);
    EXPECT_THROW(hsi::green_tensor({0.0, 0.0, 0.0}, 1.0, 0.5), hsi::DomainError);
}

TEST(GreenTensor, BoundHoldsOnSweep) {
    const double stat = hsi::green_tensor_random_sweep(10000, 0.5);
    EXPECT_LE(stat, 1.0 + 1e-12);
    EXPECT_GT(stat, 0.99);
    EXPECT_EQ(stat, hsi::green_tensor_random_sweep(10000, 0.5));
    const std::vector<hsi::Vec3> xis{{1e3, 0.0, 0.0}};
    const std::vector<double> ts{1e2};
    EXPECT_LE(hsi::green_tensor_bound_check(xis, ts, 0.5), 1.0);
}

TEST(HeatField, GaussianSpreading) {
    const hsi::InitialData d{1.5, 0.9, 0.3};
    for (double t : {0.01, 0.5, 2.0})
        for (double r : {0.0, 0.5, 2.0}) {
            const double s2 = d.width * d.width + 4 * d.nu * t;
            const double exact = d.amplitude * std::pow(d.width * d.width / s2, 1.5) * std::exp(-r * r / s2);
            EXPECT_NEAR(hsi::heat_evolved_field(d, r, t), exact, 1e-10 * exact + 1e-300);
            EXPECT_NEAR(hsi::heat_evolved_field(d, r, t, hsi::HeatNormalization::planar),
                        exact * std::sqrt(4 * pi * d.nu * t), 1e-10 * exact);
        }
    EXPECT_NEAR(hsi::heat_evolved_field(d, 0.4, 0.0), d.amplitude * std::exp(-0.16 / 0.81), 1e-14);
}

class Paradox : public ::testing::Test {
protected:
    static const hsi::ParadoxReport& report(double c) {
        static std::map<double, hsi::ParadoxReport> cache;
        auto it = cache.find(c);
        if (it == cache.end())
            it = cache.emplace(c, hsi::run_paradox({}, c, hsi::graded_grid(20.0, 2048), {})).first;
        return it->second;
    }
};

TEST_F(Paradox, QuarterLawAndBoundedness) {
    const auto& r = report(1.0);
    EXPECT_TRUE(r.pass);
    EXPECT_FALSE(r.trivial);
    EXPECT_GT(r.b0_at_zero, 0.0);
    EXPECT_EQ(r.beta[0], 0.0);
    EXPECT_GE(r.exponent, 0.22);
    EXPECT_LE(r.exponent, 0.28);
    EXPECT_LE(r.exponent_ci[0], r.exponent);
    EXPECT_GE(r.exponent_ci[1], r.exponent);
    EXPECT_LE(r.sup_beta, 10 * r.sup_b0);
    EXPECT_TRUE(std::isfinite(r.sup_beta));
    EXPECT_NEAR(r.kernel_bound_constant, 2.890067818451249, 1e-12);
    EXPECT_GE(r.denominator_inf, 1.0 - 1e-12);
    EXPECT_LE(r.route_discrepancy, 1e-3 * r.sup_beta);
    EXPECT_NEAR(r.quarter_prefactor, r.expected_prefactor, 0.1 * r.expected_prefactor);
}

TEST_F(Paradox, DoublingCouplingShrinksSolution) {
    EXPECT_LT(report(2.0).sup_beta, report(1.0).sup_beta);
}

TEST(ParadoxTrivial, ZeroAmplitude) {
    const auto r = hsi::run_paradox({0.0, 1.0, 0.5}, 1.0, hsi::graded_grid(20.0, 256), {});
    EXPECT_TRUE(r.trivial);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.sup_beta, 0.0);
}

}  // namespace
