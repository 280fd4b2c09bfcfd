#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hsi/grid.hpp"
#include "hsi/quadrature.hpp"

namespace hsi {

/// Fewest grid points accepted by conv_hyper.
inline constexpr std::size_t kMinHyperPoints = 64;

/// Member of the family Phi_lambda(t) = t_+^{lambda-1} / Gamma(lambda).
/// Order 0 is the distinguished delta element (Phi_0 * b = b).
class PhiKernel {
public:
    /// Throws PoleError for lambda near -1, -2, ...; lambda == 0 yields the delta.
    explicit PhiKernel(double lambda);

    static PhiKernel delta() { return PhiKernel(0.0); }

    double lambda() const noexcept { return lambda_; }
    bool is_delta() const noexcept { return lambda_ == 0.0; }
    /// 1 / Gamma(lambda), zero for the delta.
    double normalization() const noexcept { return inv_gamma_; }
    /// |Gamma(-1/4)|; only meaningful for lambda = -1/4, NaN otherwise.
    double c1() const noexcept { return c1_; }

private:
    double lambda_;
    double inv_gamma_;
    double c1_;
};

/// Phi_lambda(t) for t > 0; 0 for t <= 0 when lambda >= 1.
/// Throws DomainError for t <= 0 with lambda < 1.
double phi_eval(const PhiKernel& k, double t);

/// Reusable product-integration realization of b -> Phi_lambda * b on a
/// fixed grid, lambda > 0.
class PhiConvolution {
public:
    PhiConvolution(double lambda, std::span<const double> grid);

    double lambda() const noexcept { return lambda_; }
    std::span<const double> grid() const noexcept { return rule_.grid(); }
    const SingularRule& rule() const noexcept { return rule_; }

    std::vector<double> apply(std::span<const double> values, double scale = 1.0) const;
    GridFunction apply(const GridFunction& b) const;

private:
    double lambda_;
    double norm_;
    SingularRule rule_;
};

/// Phi_lambda * b for lambda > 0 by product integration against the
/// piecewise-linear interpolant of b. result(0) = 0.
GridFunction conv_positive(const PhiKernel& k, const GridFunction& b);

/// Phi_lambda * b for -1 < lambda < 0, realized as d/dt (Phi_{lambda+1} * b).
/// The derivative is taken exactly on the piecewise-linear interpolant:
///
///   d/dt (Phi_{lambda+1} * b)(t) = b(0) Phi_{lambda+1}(t) + (Phi_{lambda+1} * b')(t),
///
/// with b' piecewise constant. Values are normative from t_1 on; the t_0
/// sample is a linear extrapolation. Throws ResolutionError for fewer than
/// kMinHyperPoints samples.
GridFunction conv_hyper(const PhiKernel& k, const GridFunction& b);

/// Dispatch on the order: delta, conv_positive or conv_hyper.
/// Throws DomainError for lambda <= -1.
GridFunction convolve(const PhiKernel& k, const GridFunction& b);

/// max |Phi_lam * (Phi_mu * b) - Phi_{lam+mu} * b| over grid samples with
/// t >= t_from (default: from t_1). When lam + mu = 0 the right side is b.
double semigroup_check(double lam, double mu, const GridFunction& b, double t_from = -1.0);

}  // namespace hsi
