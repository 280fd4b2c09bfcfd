#include "hsi/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hsi/errors.hpp"

namespace hsi {

std::vector<double> graded_grid(double T, std::size_t n, double gamma) {
    if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("grid horizon must be positive");
    if (n < 2) throw DomainError("grid needs at least two points");
    if (!(gamma >= 1.0)) throw DomainError("grid grading exponent must be >= 1");
    std::vector<double> g(n);
    const double last = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = T * std::pow(static_cast<double>(i) / last, gamma);
    }
    g.back() = T;
    return g;
}

void validate_grid(std::span<const double> grid) {
    if (grid.size() < 2) throw DomainError("grid needs at least two points");
    if (grid.front() != 0.0) throw DomainError("grid must start at t = 0");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i])) throw DomainError("grid contains a non-finite time");
        if (!(grid[i] > grid[i - 1])) {
            throw DomainError("grid is not strictly increasing at index " + std::to_string(i));
        }
    }
}

GridFunction::GridFunction(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (grid_.size() != values_.size()) throw DomainError("grid and values differ in length");
    validate_grid(grid_);
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw DomainError("non-finite sample at t = " + std::to_string(grid_[i]));
        }
    }
}

GridFunction GridFunction::sample(std::vector<double> grid, const std::function<double(double)>& f) {
    std::vector<double> v(grid.size());
    std::transform(grid.begin(), grid.end(), v.begin(), f);
    return GridFunction(std::move(grid), std::move(v));
}

GridFunction GridFunction::zeros(std::vector<double> grid) {
    std::vector<double> v(grid.size(), 0.0);
    return GridFunction(std::move(grid), std::move(v));
}

double GridFunction::operator()(double t) const {
    if (t <= grid_.front()) return values_.front();
    if (t >= grid_.back()) return values_.back();
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - grid_.begin());
    const double w = (t - grid_[j - 1]) / (grid_[j] - grid_[j - 1]);
    return (1.0 - w) * values_[j - 1] + w * values_[j];
}

GridFunction GridFunction::with_values(std::vector<double> values) const {
    return GridFunction(grid_, std::move(values));
}

double max_abs(const GridFunction& f, double t_lo, double t_hi) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f.t(i) >= t_lo && f.t(i) <= t_hi) m = std::max(m, std::abs(f[i]));
    }
    return m;
}

double max_abs_diff(const GridFunction& a, const GridFunction& b, double t_lo, double t_hi) {
    if (a.size() != b.size() || !std::equal(a.grid().begin(), a.grid().end(), b.grid().begin())) {
        throw DomainError("grid functions live on different grids");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.t(i) >= t_lo && a.t(i) <= t_hi) m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

}  // namespace hsi
