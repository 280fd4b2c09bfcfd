#include "hsi/kernel_algebra.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hsi/errors.hpp"
#include "hsi/special_functions.hpp"

namespace hsi {

PhiKernel::PhiKernel(double lambda)
    : lambda_(lambda), inv_gamma_(0.0), c1_(std::numeric_limits<double>::quiet_NaN()) {
    if (!std::isfinite(lambda)) throw DomainError("PhiKernel: order must be finite");
    if (lambda == 0.0) return;
    if (near_gamma_pole(lambda)) {
        throw PoleError("PhiKernel: order " + std::to_string(lambda) + " is a pole of Gamma");
    }
    inv_gamma_ = reciprocal_gamma(lambda);
    if (lambda == -0.25) c1_ = -gamma(-0.25);
}

double phi_eval(const PhiKernel& k, double t) {
    if (t <= 0.0) {
        if (k.lambda() >= 1.0) return 0.0;
        throw DomainError("phi_eval: kernel of order " + std::to_string(k.lambda()) +
                          " is singular at t <= 0");
    }
    return std::pow(t, k.lambda() - 1.0) * k.normalization();
}

PhiConvolution::PhiConvolution(double lambda, std::span<const double> grid)
    : lambda_(lambda), norm_(reciprocal_gamma(lambda)), rule_(singular_weights(lambda, grid)) {}

std::vector<double> PhiConvolution::apply(std::span<const double> values, double scale) const {
    return rule_.apply(values, scale * norm_);
}

GridFunction PhiConvolution::apply(const GridFunction& b) const {
    return b.with_values(apply(b.values()));
}

GridFunction conv_positive(const PhiKernel& k, const GridFunction& b) {
    if (!(k.lambda() > 0.0)) {
        throw DomainError("conv_positive: order must be positive, got " + std::to_string(k.lambda()));
    }
    return PhiConvolution(k.lambda(), b.grid()).apply(b);
}

GridFunction conv_hyper(const PhiKernel& k, const GridFunction& b) {
    const double lambda = k.lambda();
    if (!(lambda > -1.0 && lambda < 0.0)) {
        throw DomainError("conv_hyper: order must lie in (-1, 0), got " + std::to_string(lambda));
    }
    if (b.size() < kMinHyperPoints) {
        throw ResolutionError("conv_hyper: need at least " + std::to_string(kMinHyperPoints) +
                              " grid points, got " + std::to_string(b.size()));
    }
    const auto t = b.grid();
    const auto v = b.values();
    const std::size_t n = t.size();
    const double mollified = lambda + 1.0;
    const double norm = reciprocal_gamma(mollified);

    std::vector<double> slope(n, 0.0);
    for (std::size_t j = 1; j < n; ++j) slope[j] = (v[j] - v[j - 1]) / (t[j] - t[j - 1]);

    std::vector<double> out(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        double s = v[0] * std::pow(t[i], lambda);
        for (std::size_t j = 1; j <= i; ++j) {
            s += slope[j] * power_moment0(mollified, t[i] - t[j], t[j] - t[j - 1]);
        }
        out[i] = norm * s;
    }
    out[0] = out[1] + (out[1] - out[2]) * (t[1] - t[0]) / (t[2] - t[1]);
    return b.with_values(std::move(out));
}

GridFunction convolve(const PhiKernel& k, const GridFunction& b) {
    if (k.is_delta()) return b;
    if (k.lambda() > 0.0) return conv_positive(k, b);
    return conv_hyper(k, b);
}

double semigroup_check(double lam, double mu, const GridFunction& b, double t_from) {
    const PhiKernel outer(lam);
    const PhiKernel inner(mu);
    const PhiKernel sum(lam + mu);
    const GridFunction lhs = convolve(outer, convolve(inner, b));
    const GridFunction rhs = convolve(sum, b);
    if (t_from < 0.0) t_from = b.t(1);
    return max_abs_diff(lhs, rhs, t_from);
}

}  // namespace hsi
