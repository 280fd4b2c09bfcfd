#pragma once

#include <functional>
#include <vector>

namespace hsi {

/// Distance from a nonpositive integer below which Gamma is treated as singular.
inline constexpr double kPoleGuard = 1e-9;

/// Largest number of Taylor terms the moment regularization will subtract.
/// Orders lambda <= -kMaxSubtractions are rejected.
inline constexpr int kMaxSubtractions = 8;

/// True when z lies within kPoleGuard of 0, -1, -2, ...
bool near_gamma_pole(double z) noexcept;

/// Gamma(z) for real z. Lanczos approximation (g = 7) for z >= 0.5 and the
/// reflection formula Gamma(z) = pi / (sin(pi z) Gamma(1 - z)) below that.
/// Throws PoleError within kPoleGuard of a nonpositive integer.
double gamma(double z);

/// 1/Gamma(z); entire, exactly zero at z = 0, -1, -2, ...
double reciprocal_gamma(double z);

/// B(lam, mu) = Gamma(lam) Gamma(mu) / Gamma(lam + mu).
double beta(double lam, double mu);

/// c1 = |Gamma(-1/4)| = 4 Gamma(3/4).
double c1_constant();

/// A smooth function on [0, inf) given by a callable together with its Taylor
/// coefficients at the origin, taylor[k] = phi^(k)(0) / k!.
///
/// Extra coefficients beyond the subtraction depth are used to evaluate the
/// subtracted remainder near 0, where direct subtraction cancels.
struct SmoothFunction {
    std::function<double(double)> value;
    std::vector<double> taylor;
};

struct RegularizationSpec {
    double lambda = 0.5;
    int subtraction_depth = 0;
    double split_point = 1.0;
};

/// Smallest subtraction depth that makes t^{lambda-1}(phi - T_N) integrable at 0.
int minimal_subtraction_depth(double lambda);

/// Analytically continued value of int_0^inf t^{lambda-1} phi(t) dt:
///
///   int_s^inf t^{lambda-1} phi dt
///     + int_0^s t^{lambda-1} (phi(t) - sum_{k<N} a_k t^k) dt
///     + sum_{k<N} a_k s^{lambda+k} / (lambda + k)
///
/// with s = split_point and N = subtraction_depth. Throws PoleError when
/// lambda + k = 0 for a subtracted k, DomainError when lambda + N <= 0 or
/// too few Taylor coefficients are supplied, and ConvergenceError when the
/// tail or head quadrature misses its tolerance.
double regularized_moment(const SmoothFunction& phi, const RegularizationSpec& spec);

}  // namespace hsi
