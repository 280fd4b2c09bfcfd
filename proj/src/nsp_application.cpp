#include "hsi/nsp_application.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "hsi/errors.hpp"
#include "hsi/quadrature.hpp"
#include "hsi/special_functions.hpp"
#include "hsi/volterra_solver.hpp"

namespace hsi {
namespace {

constexpr double kPi = std::numbers::pi;

// (4 pi int_0^inf r^4 e^{-a r^2} dr)^{1/2} = (4 pi (3/8) sqrt(pi))^{1/2} a^{-5/4}
const double kMomentFactor = std::sqrt(4.0 * kPi * 0.375 * std::sqrt(kPi));

double spectrum_scale(const InitialData& d) { return d.amplitude * std::pow(d.width * d.width / (4.0 * kPi), 1.5); }

// 4 pi int_0^inf r^4 e^{-a r^2} dr by quadrature; e^{-60} truncates the range.
double radial_moment(double a) {
    const double R = std::sqrt(60.0 / a);
    const auto f = [a](double r) { return r * r * r * r * std::exp(-a * r * r); };
    return 4.0 * kPi * integrate_adaptive(f, 0.0, R, 0.0, 1e-13).value;
}

double projection_ratio(const Vec3& xi, double t, double nu) {
    const double x2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    const double heat = std::exp(-nu * x2 * t);
    const Mat3 G = green_tensor(xi, t, nu);
    const double scale = std::pow(2.0 * kPi, 3);
    double worst = 0.0;
    for (int p = 0; p < 3; ++p) {
        for (int m = 0; m < 3; ++m) {
            const double ratio = heat > std::numeric_limits<double>::min()
                                     ? std::abs(scale * G[p][m]) / heat
                                     : std::abs((p == m ? 1.0 : 0.0) - xi[p] * xi[m] / x2);
            worst = std::max(worst, ratio);
        }
    }
    return worst;
}

}  // namespace

void InitialData::validate() const {
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) throw ConfigError("amplitude", "must be >= 0");
    if (!(width > 0.0) || !std::isfinite(width)) throw ConfigError("width", "must be positive");
    if (!(nu > 0.0) || !std::isfinite(nu)) throw ConfigError("nu", "must be positive");
}

double heat_evolved_spectrum(const InitialData& data, double xi, double t) {
    const double w2 = data.width * data.width;
    return std::abs(spectrum_scale(data)) * std::exp(-(w2 / 4.0 + data.nu * t) * xi * xi);
}

GridFunction b0_from_initial_data(const InitialData& data, std::vector<double> grid) {
    data.validate();
    const double w2 = data.width * data.width;
    const double scale = spectrum_scale(data);
    return GridFunction::sample(std::move(grid), [&](double t) {
        if (scale == 0.0) return 0.0;
        // |F~|^2 = scale^2 e^{-(w^2/2 + 2 nu t) r^2}
        return scale * std::sqrt(radial_moment(w2 / 2.0 + 2.0 * data.nu * t));
    });
}

double b0_closed_form(const InitialData& data, double t) {
    const double a = data.width * data.width / 2.0 + 2.0 * data.nu * t;
    return spectrum_scale(data) * kMomentFactor * std::pow(a, -1.25);
}

LaplaceImage b0_image(const InitialData& data) {
    data.validate();
    const double K = spectrum_scale(data) * kMomentFactor;
    const double s = data.width * data.width / 2.0;
    const double two_nu = 2.0 * data.nu;
    // L(b0)(p) = K/(2 nu) int_0^inf e^{-q u} (s + u)^{-5/4} du with q = p/(2 nu);
    // u = r e^{-i arg q} keeps the exponential real.
    auto eval = [K, s, two_nu](cplx p) -> cplx {
        if (K == 0.0) return 0.0;
        const cplx q = p / two_nu;
        const double mod = std::abs(q);
        const cplx rot = std::polar(1.0, -std::arg(q));
        const auto g = [&](double r) { return std::exp(-mod * r) * std::pow(s + r * rot, -1.25) * rot; };
        const double R = mod > 0.0 ? 45.0 / mod : 0.0;
        cplx sum;
        if (mod == 0.0 || R > 1e6) {
            // Weak damping: fold the far range through 1/r.
            const auto re = [&](double r) { return g(r).real(); };
            const auto im = [&](double r) { return g(r).imag(); };
            sum = cplx(integrate_adaptive(re, 0.0, 1.0, 1e-14, 1e-12).value + tail_integral(re, 1.0, 1e-13),
                       integrate_adaptive(im, 0.0, 1.0, 1e-14, 1e-12).value + tail_integral(im, 1.0, 1e-13));
        } else {
            const auto re = [&](double r) { return g(r).real(); };
            const auto im = [&](double r) { return g(r).imag(); };
            const double scale = std::pow(s, -1.25) * std::min(R, s);
            sum = cplx(integrate_adaptive(re, 0.0, R, 1e-14 * scale, 1e-12).value,
                       integrate_adaptive(im, 0.0, R, 1e-14 * scale, 1e-12).value);
        }
        return K / two_nu * sum;
    };
    return {eval, true, 0.0};
}

double kernel_norm(double nu, double t) {
    if (!(nu > 0.0) || !(t > 0.0)) throw DomainError("kernel_norm: nu and t must be positive");
    return std::sqrt(radial_moment(2.0 * nu * t));
}

double kernel_bound_constant(double nu) {
    if (!(nu > 0.0)) throw DomainError("kernel_bound_constant: nu must be positive");
    return kMomentFactor * std::pow(2.0 * nu, -1.25);
}

Mat3 green_tensor(const Vec3& xi, double t, double nu) {
    const double x2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    if (!(x2 > 0.0)) throw DomainError("green_tensor: xi must be nonzero");
    const double factor = std::exp(-nu * x2 * t) / std::pow(2.0 * kPi, 3);
    Mat3 G{};
    for (int p = 0; p < 3; ++p)
        for (int m = 0; m < 3; ++m) G[p][m] = ((p == m ? 1.0 : 0.0) - xi[p] * xi[m] / x2) * factor;
    return G;
}

double green_tensor_bound_check(std::span<const Vec3> xis, std::span<const double> ts, double nu) {
    if (xis.empty() || ts.empty()) throw DomainError("green_tensor_bound_check: empty sample grid");
    if (!(nu > 0.0)) throw DomainError("green_tensor_bound_check: nu must be positive");
    double worst = 0.0;
    for (const Vec3& xi : xis)
        for (double t : ts) worst = std::max(worst, projection_ratio(xi, t, nu));
    return worst;
}

double green_tensor_random_sweep(std::size_t samples, double nu, std::uint64_t seed) {
    if (!(nu > 0.0)) throw DomainError("green_tensor_random_sweep: nu must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit;
    double worst = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        Vec3 dir{normal(rng), normal(rng), normal(rng)};
        const double len = std::hypot(dir[0], dir[1], dir[2]);
        const double mag = std::pow(10.0, -3.0 + 6.0 * unit(rng));
        const double t = std::pow(10.0, -4.0 + 6.0 * unit(rng));
        for (double& x : dir) x *= mag / len;
        worst = std::max(worst, projection_ratio(dir, t, nu));
    }
    return worst;
}

double heat_evolved_field(const InitialData& data, double r, double t, HeatNormalization norm) {
    data.validate();
    if (t < 0.0) throw DomainError("heat_evolved_field: t must be >= 0");
    const double w2 = data.width * data.width;
    const double spread = w2 + 4.0 * data.nu * t;
    // Gaussian convolution with the standard kernel.
    const double standard = data.amplitude * std::pow(w2 / spread, 1.5) * std::exp(-r * r / spread);
    if (norm == HeatNormalization::standard || t == 0.0) return standard;
    return standard * std::sqrt(4.0 * kPi * data.nu * t);
}

ParadoxReport run_paradox(const InitialData& data, double c, std::vector<double> grid,
                          const InversionConfig& cfg, const ParadoxOptions& opts) {
    data.validate();
    if (!(c > 0.0)) throw ConfigError("c", "must be positive");
    cfg.validate();

    ParadoxReport report;
    report.kernel_bound_constant = kernel_bound_constant(data.nu);
    std::vector<double> taus(opts.tau_samples);
    for (std::size_t k = 0; k < taus.size(); ++k) {
        // Quartic spacing keeps tau = 0 and resolves the small-tau minimum.
        const double u = static_cast<double>(k) / static_cast<double>(taus.size() - 1);
        taus[k] = opts.tau_max * u * u * u * u;
    }
    report.denominator_inf = inf_denominator_bound(c, c1_constant(), taus);
    report.expected_prefactor = tauberian_prefactor(b0_closed_form(data, 0.0), c);

    report.b0 = b0_from_initial_data(data, std::move(grid));
    report.b0_at_zero = report.b0[0];
    report.sup_b0 = max_abs(report.b0);

    VolterraProblem prob{report.b0, c, -0.25, std::nullopt};
    report.beta = solve_picard(prob, opts.picard_tol).solution;
    report.sup_beta = max_abs(report.beta);

    if (data.amplitude == 0.0) {
        report.trivial = true;
        report.pass = report.sup_beta == 0.0;
        return report;
    }

    LaplaceSolveOptions lopts;
    const auto& t = report.b0.grid_vector();
    if (opts.laplace_samples == 0 || opts.laplace_samples >= t.size()) {
        lopts.times = t;
    } else {
        const std::size_t stride = t.size() / opts.laplace_samples;
        for (std::size_t i = 0; i < t.size(); i += stride) lopts.times.push_back(t[i]);
        if (lopts.times.back() != t.back()) lopts.times.push_back(t.back());
    }
    prob.b0_image = b0_image(data);
    const LaplaceSolution lap = solve_laplace(prob, cfg, lopts);
    report.inversion_discrepancy = lap.crosscheck.max_discrepancy;
    for (std::size_t i = 0; i < lap.solution.size(); ++i) {
        const double ti = lap.solution.t(i);
        if (ti < opts.fit_lo) continue;
        report.route_discrepancy =
            std::max(report.route_discrepancy, std::abs(report.beta(ti) - lap.solution[i]));
    }
    if (report.sup_beta > 0.0) report.route_discrepancy /= report.sup_beta;

    ExponentFit fit;
    try {
        fit = small_time_exponent(report.beta, opts.fit_lo, opts.fit_hi);
    } catch (const FitError& e) {
        throw ParadoxInconclusive(std::string("small-time fit failed: ") + e.what());
    }
    report.exponent = fit.exponent;
    report.exponent_std_error = fit.std_error;
    report.exponent_ci = {fit.exponent - 1.96 * fit.std_error, fit.exponent + 1.96 * fit.std_error};
    report.prefactor = fit.prefactor;
    report.quarter_prefactor = fit.quarter_prefactor;
    report.pass = report.b0_at_zero > 0.0 && std::isfinite(report.sup_beta) && fit.exponent >= opts.band_lo &&
                  fit.exponent <= opts.band_hi;
    return report;
}

}  // namespace hsi
