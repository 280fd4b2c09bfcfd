#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hsi {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;       ///< estimated absolute error
    std::size_t evaluations = 0;
};

/// Globally adaptive 15-point Gauss-Kronrod quadrature of f over [a, b].
/// Subdivides the interval with the largest error estimate until the total
/// estimate is below max(abs_tol, rel_tol |I|). Throws ConvergenceError when
/// max_intervals is exhausted first.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, double rel_tol = 0.0,
                                    std::size_t max_intervals = 4000);

/// int_a^inf f(t) dt with absolute error <= tol, via u = 1/t on [0, 1/a].
/// f must decay at least like t^{-2}. For a < 1 the piece [a, 1] is
/// integrated directly.
double tail_integral(const std::function<double(double)>& f, double a, double tol);

/// int_a^{a+h} u^{lambda-1} du for a >= 0, h > 0, lambda > 0, without
/// cancellation when h << a.
double power_moment0(double lambda, double a, double h);

/// int_a^{a+h} u^{lambda-1} (u - a) du, same conditions.
double power_moment1(double lambda, double a, double h);

/// Product-integration weights for the raw power kernel,
///
///   int_0^{t_i} (t_i - s)^{lambda-1} b(s) ds  ~=  sum_{j<=i} w_ij b_j,
///
/// exact when b is piecewise linear on the grid. Rows are stored packed
/// (lower triangle), so memory is O(n^2 / 2).
class SingularRule {
public:
    SingularRule() = default;
    SingularRule(double lambda, std::vector<double> grid, std::vector<double> packed);

    double lambda() const noexcept { return lambda_; }
    double exponent() const noexcept { return lambda_ - 1.0; }
    std::size_t size() const noexcept { return grid_.size(); }
    std::span<const double> grid() const noexcept { return grid_; }

    /// Weights w_i0 .. w_ii.
    std::span<const double> row(std::size_t i) const {
        return {weights_.data() + i * (i + 1) / 2, i + 1};
    }
    double weight(std::size_t i, std::size_t j) const { return weights_[i * (i + 1) / 2 + j]; }

    /// Output sample i of the discrete convolution; depends on values[0..i] only.
    double apply_row(std::size_t i, std::span<const double> values) const;

    /// scale * (discrete convolution) at every grid point.
    std::vector<double> apply(std::span<const double> values, double scale = 1.0) const;

private:
    double lambda_ = 1.0;
    std::vector<double> grid_;
    std::vector<double> weights_;
};

/// Throws DomainError for lambda <= 0 (hyper-singular orders are handled by
/// the kernel algebra) or an invalid grid.
SingularRule singular_weights(double lambda, std::span<const double> grid);

}  // namespace hsi
