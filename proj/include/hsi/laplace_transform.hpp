#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "hsi/grid.hpp"

namespace hsi {

using cplx = std::complex<double>;

/// A function of the Laplace variable p. Fractional powers inside the
/// evaluator use the principal branch, arg p in (-pi, pi].
struct LaplaceImage {
    std::function<cplx(cplx)> evaluate;
    /// Analytic off (-inf, 0] and decaying there, so deformed contours
    /// (Talbot) may be used. False for images of sampled data, whose
    /// continuation into Re p < 0 grows exponentially.
    bool continuable = true;
    /// Real part of the rightmost singularity.
    double abscissa = 0.0;

    cplx operator()(cplx p) const { return evaluate(p); }
};

enum class InversionMethod { bromwich, talbot };

std::string to_string(InversionMethod m);
/// "bromwich" or "talbot"; throws ConfigError otherwise.
InversionMethod parse_inversion_method(const std::string& name);

struct InversionConfig {
    InversionMethod method = InversionMethod::talbot;
    /// Bromwich: largest |w| integrated before giving up.
    double truncation = 1e7;
    /// Talbot: number of contour nodes.
    int talbot_nodes = 32;
    /// Target absolute error of one inversion.
    double tol = 1e-9;
    /// Bromwich line Re p = shift; NaN selects abscissa + 1/t.
    double shift = std::numeric_limits<double>::quiet_NaN();

    /// Throws ConfigError on non-positive truncation, node count or tolerance.
    void validate() const;
};

/// p^a on the principal branch, arg p in (-pi, pi]. p = 0 gives 0 for a > 0
/// and throws DomainError otherwise.
cplx principal_power(cplx p, double a);

/// L(Phi_lambda)(p) = p^{-lambda}. Throws DomainError at p = 0.
cplx phi_image(double lambda, cplx p);
LaplaceImage phi_image(double lambda);

/// Continuation of sampled data beyond its last grid point T.
struct TailModel {
    enum class Kind { fitted_exponential, constant, zero };
    Kind kind = Kind::zero;
    double rate = 0.0;       ///< decay rate a of b(T) e^{-a (t - T)}
    double value_at_T = 0.0;
    double horizon = 0.0;
};

/// Fits b(T) e^{-a (t - T)} to the last samples of b by least squares on
/// log|b|. All-zero trailing samples give Kind::zero. Throws TailModelError
/// when the fitted rate is not positive or the samples change sign.
TailModel fit_exponential_tail(const GridFunction& b, std::size_t samples = 8);

/// Holds b(T) constant beyond T.
TailModel constant_tail(const GridFunction& b);

/// int_0^inf e^{-pt} b(t) dt for the piecewise-linear interpolant on [0, T]
/// plus the closed-form transform of the tail. Requires Re p >= 0 (Re p > 0
/// for a constant tail).
cplx forward_laplace(const GridFunction& b, const TailModel& tail, cplx p);
/// Same with a fitted exponential tail.
cplx forward_laplace(const GridFunction& b, cplx p);

/// Image of sampled data; Bromwich-only (continuable = false).
LaplaceImage numeric_image(GridFunction b, TailModel tail);

/// Real inverse transform at t > 0 by the configured method.
/// Bromwich: f(t) = e^{sigma t}/pi int_0^inf Re[F(sigma + iw) e^{iwt}] dw,
/// folded by conjugate symmetry, integrated block by block between zeros of
/// the integrand and summed with Wynn's epsilon algorithm.
/// Talbot: midpoint rule on the cotangent contour wrapping (-inf, 0].
/// Throws DomainError for t <= 0 or a Talbot request on a non-continuable
/// image, ConvergenceError when Bromwich exceeds its truncation.
double invert(const LaplaceImage& image, double t, const InversionConfig& cfg);
double invert_bromwich(const LaplaceImage& image, double t, const InversionConfig& cfg);
double invert_talbot(const LaplaceImage& image, double t, int nodes);

struct CrosscheckResult {
    std::vector<double> times;
    std::vector<double> bromwich;
    std::vector<double> talbot;
    double max_discrepancy = 0.0;
};

/// Inverts with both methods at every t and reports max |bromwich - talbot|.
/// Throws MethodDisagreement above 10x the combined tolerance (2 cfg.tol).
CrosscheckResult inversion_crosscheck(const LaplaceImage& image, std::span<const double> ts,
                                      const InversionConfig& cfg);

/// |1 + C e^{i pi/8}| = sqrt(1 + C^2 + 2 C cos(pi/8)).
double denominator_modulus(double C);

/// min over tau of |1 + c c1 e^{i pi/8} tau^{1/4}|, the modulus of
/// 1 + c c1 p^{1/4} on p = i tau. Never below 1 for c, c1 > 0.
/// Throws DomainError for non-positive c or c1 or negative tau.
double inf_denominator_bound(double c, double c1, std::span<const double> taus);

}  // namespace hsi
