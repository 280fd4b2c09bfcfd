#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hsi {

/// n points t_i = T (i / (n - 1))^gamma, i = 0..n-1. gamma = 1 is uniform;
/// gamma = 4 clusters points near the origin to resolve t^{1/4} behaviour.
std::vector<double> graded_grid(double T, std::size_t n, double gamma = 4.0);

inline std::vector<double> uniform_grid(double T, std::size_t n) { return graded_grid(T, n, 1.0); }

/// Throws DomainError unless the grid starts at 0, is strictly increasing,
/// finite and has at least two points.
void validate_grid(std::span<const double> grid);

/// Real samples on a time grid 0 = t_0 < ... < t_M = T, interpreted as a
/// piecewise-linear function.
class GridFunction {
public:
    GridFunction() = default;
    /// Throws DomainError on length mismatch, an invalid grid or non-finite samples.
    GridFunction(std::vector<double> grid, std::vector<double> values);

    static GridFunction sample(std::vector<double> grid, const std::function<double(double)>& f);
    static GridFunction zeros(std::vector<double> grid);

    std::span<const double> grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    const std::vector<double>& grid_vector() const noexcept { return grid_; }
    const std::vector<double>& value_vector() const noexcept { return values_; }

    std::size_t size() const noexcept { return grid_.size(); }
    double t(std::size_t i) const { return grid_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }
    double horizon() const { return grid_.back(); }

    /// Piecewise-linear interpolation; constant extrapolation outside [0, T].
    double operator()(double t) const;

    /// Same grid, new values.
    GridFunction with_values(std::vector<double> values) const;

private:
    std::vector<double> grid_;
    std::vector<double> values_;
};

/// max_i |f_i| over samples with t_i in [t_lo, t_hi].
double max_abs(const GridFunction& f, double t_lo = 0.0, double t_hi = 1e300);

/// max_i |a_i - b_i| over shared grid samples with t_i in [t_lo, t_hi].
/// Throws DomainError if the grids differ.
double max_abs_diff(const GridFunction& a, const GridFunction& b, double t_lo = 0.0,
                    double t_hi = 1e300);

}  // namespace hsi
