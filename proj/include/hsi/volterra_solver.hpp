#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hsi/grid.hpp"
#include "hsi/kernel_algebra.hpp"
#include "hsi/laplace_transform.hpp"

namespace hsi {

/// b = b0 - c c1 Phi_{-1/4} * b, with c1 = |Gamma(-1/4)|.
struct VolterraProblem {
    GridFunction b0;
    double c = 1.0;
    double lambda = -0.25;
    /// Closed-form L(b0) when available. Without it the Laplace route works
    /// from the piecewise-linear interpolant of the samples.
    std::optional<LaplaceImage> b0_image;

    /// Throws DomainError unless c > 0 and lambda = -1/4.
    void validate() const;
    /// c c1
    double coupling() const;
};

struct BoundEntry {
    int n = 0;
    double measured = 0.0;
    double bound = 0.0;
};

struct SolverCertificate {
    std::size_t iterations = 0;
    double residual = 0.0;
    /// ||b_{n+1} - b_n||_inf per iteration.
    std::vector<double> increments;
    /// Measured norms against the Volterra power-kernel bound.
    std::vector<BoundEntry> bound_check;
    /// ||A^n f||^{1/n}; tends to 0 because the spectral radius is 0.
    std::vector<double> root_sequence;
    /// spectral_bound_check only: norms of A^n f by n-fold product integration.
    std::vector<double> iterated_norms;
};

struct PicardSolution {
    GridFunction solution;
    SolverCertificate certificate;
};

/// Picard iteration for the mollified equation
///
///   b = -(c c1)^{-1} Phi_{1/4} * b + (c c1)^{-1} Phi_{1/4} * b0,
///
/// obtained by convolving the hyper-singular equation with Phi_{1/4}.
/// Keeps the product-integration weights of Phi_{1/4} on one grid so several
/// forcings can be solved cheaply.
class PicardSolver {
public:
    PicardSolver(std::span<const double> grid, double c);

    double c() const noexcept { return c_; }
    std::span<const double> grid() const noexcept { return phi_.grid(); }

    /// Starts from (c c1)^{-1} Phi_{1/4} * b0 and stops when the increment is
    /// <= tol and the mollified residual <= 10 tol. Throws NonConvergence
    /// after max_iter iterations.
    PicardSolution solve(const GridFunction& b0, double tol = 1e-12, std::size_t max_iter = 500) const;

    /// max |b - (-(c c1)^{-1} Phi_{1/4} * b + (c c1)^{-1} Phi_{1/4} * b0)|.
    double residual(const GridFunction& b, const GridFunction& b0) const;

private:
    double c_;
    double inv_coupling_;
    PhiConvolution phi_;
};

PicardSolution solve_picard(const VolterraProblem& prob, double tol = 1e-12, std::size_t max_iter = 500);

struct LaplaceSolveOptions {
    /// Times to sample; empty means the problem grid.
    std::vector<double> times;
    /// Cross-check the primary method against Bromwich at this many times
    /// (log-spaced over the sampled range); 0 disables.
    std::size_t check_points = 12;
};

struct LaplaceSolution {
    GridFunction solution;
    CrosscheckResult crosscheck;
};

/// b = L^{-1}[ L(b0) / (1 + c c1 p^{1/4}) ]. With a closed-form L(b0) the
/// configured method inverts the resolvent image directly. With sampled
/// forcing the piecewise-linear interpolant is decomposed into a ramp plus
/// shifted kinks, each inverted through the resolvent kernels
/// L^{-1}[1/(p D)] and L^{-1}[1/(p^2 D)], D = 1 + c c1 p^{1/4}; the
/// cross-check then inverts the forward transform of the samples by Bromwich.
/// At t = 0 the solution takes its limit value 0.
/// Throws MethodDisagreement when the routes disagree beyond tolerance.
LaplaceSolution solve_laplace(const VolterraProblem& prob, const InversionConfig& cfg,
                              const LaplaceSolveOptions& opts = {});

/// Resolvent image L(b0)(p) / (1 + c c1 p^{1/4}).
LaplaceImage resolvent_image(const LaplaceImage& b0_image, double c);

/// Volterra power-bound certificate for A f = int_0^t (t-s)^p f(s) ds, p > -1:
/// ||A^n f||_inf <= T^{n(p+1)} Gamma(p+1)^n / Gamma(n(p+1)+1) ||f||_inf.
/// A^n f is evaluated through its collapsed kernel
/// Gamma(p+1)^n Phi_{n(p+1)} (exact for piecewise-linear f) and, as a check,
/// by n-fold product integration. Throws BoundViolation if a measured norm
/// exceeds the bound beyond rounding.
SolverCertificate spectral_bound_check(double p_exp, const GridFunction& f, int n_max);

struct ExponentFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    /// exp(mean(log b - log t / 4)): coefficient of the t^{1/4} law, free of
    /// the extrapolation to t = 1 that the fitted prefactor carries.
    double quarter_prefactor = 0.0;
    double residual = 0.0;   ///< RMS of log residuals
    double std_error = 0.0;  ///< standard error of the slope
    std::size_t points = 0;
};

/// Least-squares fit log b = log P + e log t over samples in [t_lo, t_hi].
/// Throws FitError with fewer than 3 samples, non-positive samples or an RMS
/// residual above 0.05.
ExponentFit small_time_exponent(const GridFunction& b, double t_lo, double t_hi);

/// Leading small-time coefficient b0(0) / (c c1 Gamma(5/4)) of b ~ P t^{1/4}.
double tauberian_prefactor(double b0_at_zero, double c);

/// True when every sample is >= -tol.
bool is_nonnegative(const GridFunction& b, double tol = 0.0);

}  // namespace hsi
