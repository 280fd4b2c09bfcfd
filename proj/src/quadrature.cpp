#include "hsi/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "hsi/errors.hpp"
#include "hsi/grid.hpp"

namespace hsi {
namespace {

// Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double r = 0.5 * (b - a);
    const double fc = f(c);
    double kron = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int k = 0; k < 7; ++k) {
        const double dx = r * kXgk[k];
        const double s = f(c - dx) + f(c + dx);
        kron += kWgk[k] * s;
        if (k % 2 == 1) gauss += kWg[k / 2] * s;
    }
    kron *= r;
    gauss *= r;
    return {a, b, kron, std::abs(kron - gauss)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, double rel_tol, std::size_t max_intervals) {
    if (a == b) return {};
    if (!(std::isfinite(a) && std::isfinite(b))) throw DomainError("integration limits must be finite");

    std::priority_queue<Segment> heap;
    Segment first = gk15(f, a, b);
    if (!std::isfinite(first.value)) throw ConvergenceError("integrand is not finite on the interval");
    heap.push(first);
    double total = first.value;
    double err = first.error;
    std::size_t evals = 15;

    constexpr double eps = std::numeric_limits<double>::epsilon();
    while (true) {
        const double target = std::max({abs_tol, rel_tol * std::abs(total), 50.0 * eps * std::abs(total)});
        if (err <= target) break;
        if (heap.size() >= max_intervals) {
            throw ConvergenceError("adaptive quadrature stalled on [" + std::to_string(a) + ", " +
                                   std::to_string(b) + "], error estimate " + std::to_string(err));
        }
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Segment left = gk15(f, worst.a, mid);
        const Segment right = gk15(f, mid, worst.b);
        evals += 30;
        if (!std::isfinite(left.value) || !std::isfinite(right.value)) {
            throw ConvergenceError("integrand is not finite on the interval");
        }
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Recompute the sums to shed accumulated rounding from the running totals.
    double value = 0.0;
    double error = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    return {value, error, evals};
}

double tail_integral(const std::function<double(double)>& f, double a, double tol) {
    if (!(tol > 0.0)) throw DomainError("tail_integral: tolerance must be positive");
    double head = 0.0;
    double start = a;
    if (a < 1.0) {
        head = integrate_adaptive(f, a, 1.0, 0.5 * tol).value;
        start = 1.0;
        tol *= 0.5;
    }
    const auto mapped = [&f](double u) {
        if (u <= 0.0) return 0.0;
        return f(1.0 / u) / (u * u);
    };
    return head + integrate_adaptive(mapped, 0.0, 1.0 / start, tol).value;
}

double power_moment0(double lambda, double a, double h) {
    if (a == 0.0) return std::pow(h, lambda) / lambda;
    return std::pow(a, lambda) * std::expm1(lambda * std::log1p(h / a)) / lambda;
}

double power_moment1(double lambda, double a, double h) {
    if (a == 0.0) return std::pow(h, lambda + 1.0) / (lambda + 1.0);
    const double x = h / a;
    if (x < 0.25) {
        // (a+v)^{lambda-1} expanded in v/a and integrated against v term by term.
        double coef = 1.0;
        double xp = 1.0;
        double sum = 0.5;
        for (int k = 0; k < 60; ++k) {
            coef *= (lambda - 1.0 - k) / (k + 1.0);
            xp *= x;
            const double term = coef * xp / (k + 3.0);
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum)) break;
        }
        return std::pow(a, lambda - 1.0) * h * h * sum;
    }
    const double l1 = std::log1p(x);
    const double up = std::pow(a, lambda + 1.0) * std::expm1((lambda + 1.0) * l1) / (lambda + 1.0);
    const double m0 = std::pow(a, lambda) * std::expm1(lambda * l1) / lambda;
    return up - a * m0;
}

SingularRule::SingularRule(double lambda, std::vector<double> grid, std::vector<double> packed)
    : lambda_(lambda), grid_(std::move(grid)), weights_(std::move(packed)) {}

double SingularRule::apply_row(std::size_t i, std::span<const double> values) const {
    const auto w = row(i);
    double s = 0.0;
    for (std::size_t j = 0; j <= i; ++j) s += w[j] * values[j];
    return s;
}

std::vector<double> SingularRule::apply(std::span<const double> values, double scale) const {
    if (values.size() != grid_.size()) throw DomainError("sample count does not match the rule's grid");
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = scale * apply_row(i, values);
    return out;
}

SingularRule singular_weights(double lambda, std::span<const double> grid) {
    if (!(lambda > 0.0)) {
        throw DomainError("singular_weights: order must be positive, got " + std::to_string(lambda));
    }
    validate_grid(grid);
    const std::size_t n = grid.size();
    std::vector<double> packed(n * (n + 1) / 2, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        double* w = packed.data() + i * (i + 1) / 2;
        for (std::size_t j = 1; j <= i; ++j) {
            const double h = grid[j] - grid[j - 1];
            const double A = grid[i] - grid[j];
            const double m0 = power_moment0(lambda, A, h);
            const double m1 = power_moment1(lambda, A, h);
            w[j - 1] += m1 / h;
            w[j] += m0 - m1 / h;
        }
    }
    return SingularRule(lambda, std::vector<double>(grid.begin(), grid.end()), std::move(packed));
}

}  // namespace hsi
