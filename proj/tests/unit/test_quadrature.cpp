#include <gtest/gtest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <numbers>

#include "hsi/errors.hpp"
#include "hsi/grid.hpp"
#include "hsi/quadrature.hpp"
#include "hsi/special_functions.hpp"

namespace {

TEST(Grid, GradedGridShapeAndValidation) {
    const auto g = hsi::graded_grid(5.0, 11, 4.0);
    ASSERT_EQ(g.size(), 11u);
    EXPECT_EQ(g.front(), 0.0);
    EXPECT_DOUBLE_EQ(g.back(), 5.0);
    EXPECT_DOUBLE_EQ(g[5], 5.0 * std::pow(0.5, 4));
    EXPECT_NO_THROW(hsi::validate_grid(g));
    EXPECT_THROW(hsi::validate_grid(std::vector<double>{0.0, 1.0, 1.0}), hsi::DomainError);
    EXPECT_THROW(hsi::validate_grid(std::vector<double>{0.1, 1.0}), hsi::DomainError);
    EXPECT_THROW(hsi::GridFunction({0.0, 1.0}, {1.0, NAN}), hsi::DomainError);
    EXPECT_THROW(hsi::GridFunction({0.0, 1.0}, {1.0}), hsi::DomainError);
}

TEST(Grid, InterpolationIsPiecewiseLinear) {
    const hsi::GridFunction f({0.0, 1.0, 3.0}, {0.0, 2.0, 0.0});
    EXPECT_DOUBLE_EQ(f(0.5), 1.0);
    EXPECT_DOUBLE_EQ(f(2.0), 1.0);
    EXPECT_DOUBLE_EQ(f(10.0), 0.0);
    EXPECT_DOUBLE_EQ(hsi::max_abs(f), 2.0);
}

TEST(IntegrateAdaptive, SmoothAndEndpointSingular) {
    EXPECT_NEAR(hsi::integrate_adaptive([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-14).value, 2.0,
                1e-13);
    const auto r = hsi::integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10);
    EXPECT_NEAR(r.value, 2.0, 1e-9);
    EXPECT_THROW(hsi::integrate_adaptive([](double x) { return 1.0 / x; }, 0.0, 1.0, 1e-12, 0.0, 50),
                 hsi::ConvergenceError);
}

TEST(TailIntegral, ClosedForms) {
    EXPECT_NEAR(hsi::tail_integral([](double t) { return std::exp(-t); }, 1.0, 1e-12), std::exp(-1.0), 1e-12);
    EXPECT_NEAR(hsi::tail_integral([](double t) { return 1.0 / (t * t); }, 2.0, 1e-12), 0.5, 1e-12);
}

TEST(TailIntegral, SingularPowerAgainstBoost) {
    const auto f = [](double t) { return std::pow(t, -1.25) * std::exp(-t); };
    boost::math::quadrature::exp_sinh<double> es;
    const double ref = es.integrate(f, 1.0, std::numeric_limits<double>::infinity());
    EXPECT_NEAR(hsi::tail_integral(f, 1.0, 1e-12), ref, 1e-11);
    // Continuation split at 1: Gamma(-1/4) = tail + head + 1/(-1/4), with the
    // subtracted head int_0^1 t^{-5/4}(e^{-t} - 1) dt.
    boost::math::quadrature::tanh_sinh<double> th;
    const double head = th.integrate([](double t) { return t > 0.0 ? std::pow(t, -0.25) * (std::expm1(-t) / t) : 0.0; }, 0.0, 1.0);
    EXPECT_NEAR(hsi::tail_integral(f, 1.0, 1e-12), hsi::gamma(-0.25) - head + 4.0, 1e-10);
}

TEST(PowerMoments, StableForTinyCells) {
    const double a = 1.0, h = 1e-12, lam = 0.25;
    EXPECT_NEAR(hsi::power_moment0(lam, a, h), h, 1e-24);
    EXPECT_NEAR(hsi::power_moment1(lam, a, h), 0.5 * h * h, 1e-30);
    EXPECT_NEAR(hsi::power_moment0(0.5, 0.0, 4.0), 4.0, 1e-14);
    EXPECT_NEAR(hsi::power_moment1(0.75, 0.0, 2.0), std::pow(2.0, 1.75) / 1.75, 1e-14);
}

TEST(SingularWeights, LambdaOneIsTrapezoidal) {
    const auto g = hsi::uniform_grid(1.0, 11);
    const auto rule = hsi::singular_weights(1.0, g);
    const double h = 0.1;
    for (std::size_t i = 1; i < g.size(); ++i) {
        const auto row = rule.row(i);
        EXPECT_NEAR(row[0], h / 2, 1e-15);
        EXPECT_NEAR(row[i], h / 2, 1e-15);
        for (std::size_t j = 1; j < i; ++j) EXPECT_NEAR(row[j], h, 1e-15);
    }
}

TEST(SingularWeights, SingleCellMoments) {
    const double h = 0.37;
    const std::vector<double> g{0.0, h};
    const auto half = hsi::singular_weights(0.5, g);
    EXPECT_NEAR(half.weight(1, 0) + half.weight(1, 1), 2.0 * std::sqrt(h), 1e-15);
    const auto r = hsi::singular_weights(0.75, g);
    // b(s) = s picks the weight of the right node.
    EXPECT_NEAR(r.weight(1, 1) * h, std::pow(h, 1.75) * boost::math::beta(2.0, 0.75), 1e-15);
}

TEST(SingularWeights, PositiveOnUniformGrids) {
    for (double lam : {0.1, 0.25, 0.5, 0.75, 1.0}) {
        const auto rule = hsi::singular_weights(lam, hsi::uniform_grid(2.0, 64));
        for (std::size_t i = 1; i < rule.size(); ++i)
            for (double w : rule.row(i)) EXPECT_GT(w, 0.0) << lam;
    }
    EXPECT_THROW(hsi::singular_weights(0.0, hsi::uniform_grid(1.0, 4)), hsi::DomainError);
}

TEST(SingularWeights, SecondOrderConvergence) {
    // int_0^t (t-s)^{-1/2} e^{-s} ds against a high-accuracy reference.
    const double lam = 0.5, T = 2.0;
    const auto exact = [&](double t) {
        return hsi::integrate_adaptive([&](double u) { return 2.0 * std::exp(-(t - u * u)); }, 0.0, std::sqrt(t),
                                       1e-15)
            .value;
    };
    double prev = 0.0;
    for (std::size_t n : {33u, 65u, 129u, 257u}) {
        const auto g = hsi::uniform_grid(T, n);
        std::vector<double> v;
        for (double t : g) v.push_back(std::exp(-t));
        const auto out = hsi::singular_weights(lam, g).apply(v);
        double err = 0.0;
        for (std::size_t i = 1; i < n; i += (n - 1) / 8) err = std::max(err, std::abs(out[i] - exact(g[i])));
        if (prev > 0.0) EXPECT_GT(prev / err, 3.5) << n;
        prev = err;
    }
}

}  // namespace
