#include "hsi/volterra_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hsi/errors.hpp"
#include "hsi/special_functions.hpp"

namespace hsi {

void VolterraProblem::validate() const {
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("VolterraProblem: c must be positive");
    if (lambda != -0.25) {
        throw DomainError("VolterraProblem: only lambda = -1/4 is supported, got " + std::to_string(lambda));
    }
    if (b0.size() < 2) throw DomainError("VolterraProblem: forcing needs at least two samples");
}

double VolterraProblem::coupling() const { return c * c1_constant(); }

PicardSolver::PicardSolver(std::span<const double> grid, double c)
    : c_(c), inv_coupling_(1.0 / (c * c1_constant())), phi_(0.25, grid) {
    if (!(c > 0.0)) throw DomainError("PicardSolver: c must be positive");
}

double PicardSolver::residual(const GridFunction& b, const GridFunction& b0) const {
    const auto lhs = phi_.apply(b.values(), -inv_coupling_);
    const auto rhs = phi_.apply(b0.values(), inv_coupling_);
    double r = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) r = std::max(r, std::abs(b[i] - lhs[i] - rhs[i]));
    return r;
}

PicardSolution PicardSolver::solve(const GridFunction& b0, double tol, std::size_t max_iter) const {
    if (!(tol > 0.0)) throw DomainError("PicardSolver: tolerance must be positive");
    if (b0.size() != grid().size() || !std::equal(b0.grid().begin(), b0.grid().end(), grid().begin())) {
        throw DomainError("PicardSolver: forcing lives on a different grid");
    }
    const std::size_t n = b0.size();
    const double T = b0.horizon();
    const std::vector<double> forcing = phi_.apply(b0.values(), inv_coupling_);
    std::vector<double> current = forcing;
    SolverCertificate cert;
    double first_increment = 0.0;

    for (std::size_t it = 1; it <= max_iter; ++it) {
        std::vector<double> next = phi_.apply(current, -inv_coupling_);
        double inc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            next[i] += forcing[i];
            inc = std::max(inc, std::abs(next[i] - current[i]));
        }
        cert.increments.push_back(inc);
        // Increments are (k Phi_{1/4} *)^{m} applied to the first one.
        const int m = static_cast<int>(it) - 1;
        if (m == 0) first_increment = inc;
        const double bound = std::pow(inv_coupling_ * std::pow(T, 0.25), m) *
                             reciprocal_gamma(0.25 * m + 1.0) * first_increment;
        cert.bound_check.push_back({m, inc, bound});
        if (m > 0 && first_increment > 0.0) {
            cert.root_sequence.push_back(std::pow(inc / first_increment, 1.0 / m));
        }
        current = std::move(next);
        if (inc <= tol) {
            GridFunction b = b0.with_values(current);
            const double res = residual(b, b0);
            if (res <= 10.0 * tol) {
                cert.iterations = it;
                cert.residual = res;
                return {std::move(b), std::move(cert)};
            }
        }
    }
    throw NonConvergence("Picard iteration did not converge in " + std::to_string(max_iter) +
                         " iterations (last increment " +
                         std::to_string(cert.increments.empty() ? 0.0 : cert.increments.back()) + ")");
}

PicardSolution solve_picard(const VolterraProblem& prob, double tol, std::size_t max_iter) {
    prob.validate();
    return PicardSolver(prob.b0.grid(), prob.c).solve(prob.b0, tol, max_iter);
}

LaplaceImage resolvent_image(const LaplaceImage& b0_image, double c) {
    const double k = c * c1_constant();
    LaplaceImage out = b0_image;
    out.evaluate = [f = b0_image.evaluate, k](cplx p) { return f(p) / (1.0 + k * principal_power(p, 0.25)); };
    out.abscissa = std::max(b0_image.abscissa, 0.0);
    return out;
}

namespace {

constexpr double kSampledRouteTol = 1e-5;

std::vector<double> pick_check_times(std::span<const double> times, std::size_t count) {
    std::vector<double> positive;
    for (double t : times)
        if (t > 0.0) positive.push_back(t);
    if (positive.empty() || count == 0) return {};
    const double hi = positive.back();
    const double lo = std::max(positive.front(), 1e-4 * hi);
    std::vector<double> out;
    for (std::size_t k = 0; k < count; ++k) {
        const double target =
            count == 1 ? hi : lo * std::pow(hi / lo, static_cast<double>(k) / static_cast<double>(count - 1));
        const auto it = std::lower_bound(positive.begin(), positive.end(), target);
        double t = it == positive.end() ? positive.back() : *it;
        if (it != positive.begin() && it != positive.end() && target - *(it - 1) < *it - target) t = *(it - 1);
        if (out.empty() || out.back() != t) out.push_back(t);
    }
    return out;
}

// Inverts the resolvent applied to the piecewise-linear interpolant of the
// samples: b0(t) = v0 + s1 t + sum_j ds_j (t - t_j)_+ on [0, T].
class KinkDecomposition {
public:
    KinkDecomposition(const GridFunction& b0, double c, const InversionConfig& cfg) : b0_(b0), cfg_(cfg) {
        const double k = c * c1_constant();
        const auto denom = [k](cplx p) { return 1.0 + k * principal_power(p, 0.25); };
        step_ = {[denom](cplx p) { return 1.0 / (p * denom(p)); }, true, 0.0};
        ramp_ = {[denom](cplx p) { return 1.0 / (p * p * denom(p)); }, true, 0.0};
        const auto t = b0.grid();
        const auto v = b0.values();
        slope_.resize(t.size(), 0.0);
        for (std::size_t j = 1; j < t.size(); ++j) slope_[j] = (v[j] - v[j - 1]) / (t[j] - t[j - 1]);
    }

    double operator()(double t) const {
        const auto grid = b0_.grid();
        double sum = b0_[0] == 0.0 ? 0.0 : b0_[0] * invert(step_, t, cfg_);
        if (slope_[1] != 0.0) sum += slope_[1] * invert(ramp_, t, cfg_);
        for (std::size_t j = 1; j + 1 < grid.size() && grid[j] < t; ++j) {
            const double kink = slope_[j + 1] - slope_[j];
            if (kink != 0.0) sum += kink * invert(ramp_, t - grid[j], cfg_);
        }
        return sum;
    }

private:
    const GridFunction& b0_;
    InversionConfig cfg_;
    LaplaceImage step_;
    LaplaceImage ramp_;
    std::vector<double> slope_;
};

}  // namespace

LaplaceSolution solve_laplace(const VolterraProblem& prob, const InversionConfig& cfg,
                              const LaplaceSolveOptions& opts) {
    prob.validate();
    cfg.validate();
    std::vector<double> times = opts.times.empty() ? prob.b0.grid_vector() : opts.times;
    if (times.empty() || times.front() != 0.0) times.insert(times.begin(), 0.0);

    LaplaceSolution out;
    std::vector<double> values(times.size(), 0.0);
    const auto checks = pick_check_times(times, opts.check_points);

    const bool zero = std::all_of(prob.b0.values().begin(), prob.b0.values().end(),
                                  [](double v) { return v == 0.0; });
    if (zero) {
        // b0 = 0 gives b = 0; nothing to invert.
    } else if (prob.b0_image) {
        const LaplaceImage image = resolvent_image(*prob.b0_image, prob.c);
        for (std::size_t i = 1; i < times.size(); ++i) values[i] = invert(image, times[i], cfg);
        if (!checks.empty() && image.continuable) out.crosscheck = inversion_crosscheck(image, checks, cfg);
    } else {
        // Causality: the tail beyond T does not influence t <= T.
        const LaplaceImage direct = resolvent_image(numeric_image(prob.b0, constant_tail(prob.b0)), prob.c);
        InversionConfig talbot = cfg;
        talbot.method = InversionMethod::talbot;
        const KinkDecomposition kinks(prob.b0, prob.c, talbot);
        for (std::size_t i = 1; i < times.size(); ++i) {
            values[i] = cfg.method == InversionMethod::talbot ? kinks(times[i])
                                                             : invert_bromwich(direct, times[i], cfg);
        }
        if (!checks.empty()) {
            for (double t : checks) {
                const double a = kinks(t);
                const double b = invert_bromwich(direct, t, cfg);
                out.crosscheck.times.push_back(t);
                out.crosscheck.talbot.push_back(a);
                out.crosscheck.bromwich.push_back(b);
                out.crosscheck.max_discrepancy = std::max(out.crosscheck.max_discrepancy, std::abs(a - b));
            }
            // Bromwich on sampled data sees every kink as an undamped
            // oscillation and only reaches ~1e-6 of the forcing scale.
            const double limit = std::max(20.0 * cfg.tol, kSampledRouteTol * max_abs(prob.b0));
            if (out.crosscheck.max_discrepancy > limit) {
                throw MethodDisagreement("Laplace routes differ by " +
                                         std::to_string(out.crosscheck.max_discrepancy));
            }
        }
    }
    out.solution = GridFunction(std::move(times), std::move(values));
    return out;
}

SolverCertificate spectral_bound_check(double p_exp, const GridFunction& f, int n_max) {
    if (!(p_exp > -1.0)) throw DomainError("spectral_bound_check: exponent must exceed -1");
    if (n_max < 1) throw DomainError("spectral_bound_check: n_max must be >= 1");
    const double order = p_exp + 1.0;
    const double T = f.horizon();
    const double fnorm = max_abs(f);
    const double g = gamma(order);

    SolverCertificate cert;
    const SingularRule raw = singular_weights(order, f.grid());
    std::vector<double> iterate(f.values().begin(), f.values().end());
    for (int n = 1; n <= n_max; ++n) {
        const double collapsed_order = n * order;
        // A^n f = Gamma(p+1)^n Phi_{n(p+1)} * f
        const auto collapsed = PhiConvolution(collapsed_order, f.grid()).apply(f.values(), std::pow(g, n));
        double measured = 0.0;
        for (double v : collapsed) measured = std::max(measured, std::abs(v));
        const double bound =
            std::pow(T, collapsed_order) * std::pow(g, n) * reciprocal_gamma(collapsed_order + 1.0) * fnorm;

        iterate = raw.apply(iterate);
        double iterated = 0.0;
        for (double v : iterate) iterated = std::max(iterated, std::abs(v));

        cert.bound_check.push_back({n, measured, bound});
        cert.iterated_norms.push_back(iterated);
        cert.root_sequence.push_back(std::pow(measured, 1.0 / n));
        if (measured > bound * (1.0 + 1e-12) + 1e-300) {
            throw BoundViolation("||A^" + std::to_string(n) + " f|| = " + std::to_string(measured) +
                                 " exceeds bound " + std::to_string(bound));
        }
    }
    cert.iterations = static_cast<std::size_t>(n_max);
    return cert;
}

ExponentFit small_time_exponent(const GridFunction& b, double t_lo, double t_hi) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double t = b.t(i);
        if (t < t_lo || t > t_hi) continue;
        if (!(b[i] > 0.0)) throw FitError("non-positive sample at t = " + std::to_string(t));
        xs.push_back(std::log(t));
        ys.push_back(std::log(b[i]));
    }
    const std::size_t n = xs.size();
    if (n < 3) {
        throw FitError("only " + std::to_string(n) + " samples in the fit window [" + std::to_string(t_lo) +
                       ", " + std::to_string(t_hi) + "]");
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    ExponentFit fit;
    fit.points = n;
    fit.exponent = sxy / sxx;
    const double intercept = my - fit.exponent * mx;
    fit.prefactor = std::exp(intercept);
    fit.quarter_prefactor = std::exp(my - 0.25 * mx);
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (intercept + fit.exponent * xs[i]);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    fit.std_error = std::sqrt(ss / static_cast<double>(n - 2) / sxx);
    if (fit.residual > 0.05) {
        throw FitError("log-log residual " + std::to_string(fit.residual) + " exceeds 0.05");
    }
    return fit;
}

double tauberian_prefactor(double b0_at_zero, double c) {
    return b0_at_zero / (c * c1_constant() * gamma(1.25));
}

bool is_nonnegative(const GridFunction& b, double tol) {
    return std::all_of(b.values().begin(), b.values().end(), [tol](double v) { return v >= -tol; });
}

}  // namespace hsi
