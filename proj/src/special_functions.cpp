#include "hsi/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "hsi/errors.hpp"
#include "hsi/quadrature.hpp"

namespace hsi {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Gamma(z) for z >= 0.5.
double lanczos_gamma(double z) {
    const double x = z - 1.0;
    double a = kLanczos[0];
    for (std::size_t k = 1; k < kLanczos.size(); ++k) a += kLanczos[k] / (x + static_cast<double>(k));
    const double t = x + kLanczosG + 0.5;
    // Split the power so that large z reaches the overflow threshold gracefully.
    const double half = std::pow(t, 0.5 * (x + 0.5));
    return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * a;
}

// sin(pi z) with the argument reduced to [-1/2, 1/2] first.
double sin_pi(double z) {
    const double n = std::round(z);
    const double f = z - n;
    const double s = std::sin(std::numbers::pi * f);
    return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

}  // namespace

bool near_gamma_pole(double z) noexcept {
    const double n = std::round(z);
    return n <= 0.0 && std::abs(z - n) < kPoleGuard;
}

double gamma(double z) {
    if (std::isnan(z)) throw DomainError("gamma: NaN argument");
    if (near_gamma_pole(z)) throw PoleError("gamma: argument " + std::to_string(z) + " is at a pole");
    if (z >= 0.5) return lanczos_gamma(z);
    return std::numbers::pi / (sin_pi(z) * lanczos_gamma(1.0 - z));
}

double reciprocal_gamma(double z) {
    if (std::isnan(z)) throw DomainError("reciprocal_gamma: NaN argument");
    if (z >= 0.5) return 1.0 / lanczos_gamma(z);
    if (z == std::round(z)) return 0.0;
    return sin_pi(z) * lanczos_gamma(1.0 - z) / std::numbers::pi;
}

double beta(double lam, double mu) {
    return gamma(lam) * gamma(mu) / gamma(lam + mu);
}

double c1_constant() { return 4.0 * gamma(0.75); }

int minimal_subtraction_depth(double lambda) {
    if (lambda > 0.0) return 0;
    return static_cast<int>(std::floor(-lambda)) + 1;
}

double regularized_moment(const SmoothFunction& phi, const RegularizationSpec& spec) {
    const double lambda = spec.lambda;
    const int n_sub = spec.subtraction_depth;
    const double s = spec.split_point;
    if (!phi.value) throw DomainError("regularized_moment: missing function");
    if (n_sub < 0 || n_sub > kMaxSubtractions) {
        throw DomainError("regularized_moment: subtraction depth must lie in [0, " +
                          std::to_string(kMaxSubtractions) + "]");
    }
    if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("regularized_moment: split point must be positive");
    if (phi.taylor.size() < static_cast<std::size_t>(n_sub)) {
        throw DomainError("regularized_moment: need " + std::to_string(n_sub) + " Taylor coefficients");
    }
    for (int k = 0; k < n_sub; ++k) {
        if (std::abs(lambda + k) < kPoleGuard) {
            throw PoleError("regularized_moment: lambda + " + std::to_string(k) + " = 0");
        }
    }
    const auto& a = phi.taylor;
    const std::size_t K = a.size();

    // Order of vanishing of the remainder phi - T_N, as far as the supplied
    // coefficients reveal it.
    std::size_t order = static_cast<std::size_t>(n_sub);
    while (order < K && a[order] == 0.0) ++order;
    if (!(lambda + static_cast<double>(order) > 0.0)) {
        throw DomainError("regularized_moment: lambda + N must be positive (lambda = " +
                          std::to_string(lambda) + ", N = " + std::to_string(n_sub) + ")");
    }

    // Below t_switch the remainder is summed from the spare Taylor terms; the
    // last supplied coefficient estimates the truncation error there.
    double t_switch = 0.0;
    if (order < K && K >= order + 4 && a[K - 1] != 0.0) {
        const double r = std::pow(1e-16 * std::abs(a[order]) / std::abs(a[K - 1]),
                                  1.0 / static_cast<double>(K - 1 - order));
        t_switch = std::min(s, r);
    }
    const auto taylor_part = [&](double t, std::size_t from, std::size_t to) {
        double sum = 0.0;
        double tp = std::pow(t, static_cast<double>(from));
        for (std::size_t k = from; k < to; ++k) {
            sum += a[k] * tp;
            tp *= t;
        }
        return sum;
    };
    const auto remainder = [&](double t) {
        if (t < t_switch) return taylor_part(t, static_cast<std::size_t>(n_sub), K);
        return phi.value(t) - taylor_part(t, 0, static_cast<std::size_t>(n_sub));
    };

    const auto tail_f = [&](double t) { return std::pow(t, lambda - 1.0) * phi.value(t); };
    const double tail = tail_integral(tail_f, s, 1e-13);

    // t = s u^q flattens the t^{lambda + order - 1} behaviour at the origin.
    const double q = std::clamp(2.0 / (lambda + static_cast<double>(order)), 1.0, 16.0);
    const auto head_f = [&](double u) {
        if (u <= 0.0) return 0.0;
        const double t = s * std::pow(u, q);
        if (t <= 0.0) return 0.0;
        return std::pow(t, lambda - 1.0) * remainder(t) * s * q * std::pow(u, q - 1.0);
    };
    const double head = integrate_adaptive(head_f, 0.0, 1.0, 1e-14, 1e-13).value;

    double analytic = 0.0;
    for (int k = 0; k < n_sub; ++k) analytic += a[k] * std::pow(s, lambda + k) / (lambda + k);
    return tail + head + analytic;
}

}  // namespace hsi
