#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "hsi/grid.hpp"
#include "hsi/laplace_transform.hpp"

namespace hsi {

/// Gaussian initial velocity magnitude v0(x) = amplitude exp(-|x|^2 / width^2).
/// Fourier convention: f~(xi) = (2 pi)^{-3} int f(x) e^{-i xi.x} dx.
struct InitialData {
    double amplitude = 1.0;
    double width = 1.0;
    double nu = 0.5;  ///< viscosity

    /// Throws ConfigError unless width, nu > 0 and amplitude >= 0
    /// (amplitude 0 is the trivial case).
    void validate() const;
};

/// |F~(xi, t)| = |v0~(xi)| e^{-nu xi^2 t}, with
/// v0~(xi) = amplitude (width^2 / (4 pi))^{3/2} e^{-width^2 xi^2 / 4}.
double heat_evolved_spectrum(const InitialData& data, double xi, double t);

/// b0(t) = (4 pi int_0^inf r^4 |F~(r, t)|^2 dr)^{1/2} by adaptive radial
/// quadrature at every grid time.
GridFunction b0_from_initial_data(const InitialData& data, std::vector<double> grid);

/// Closed form of the same norm:
/// amplitude (width^2/(4 pi))^{3/2} (4 pi (3/8) sqrt(pi))^{1/2} (width^2/2 + 2 nu t)^{-5/4}.
double b0_closed_form(const InitialData& data, double t);

/// L(b0)(p), evaluated by quadrature along the ray that makes e^{-pt} real.
/// Analytic off (-inf, 0], so Talbot applies.
LaplaceImage b0_image(const InitialData& data);

/// ||e^{-nu t xi^2} |xi| ||_{L2(R^3)} by radial quadrature.
double kernel_norm(double nu, double t);

/// c* with ||e^{-nu t xi^2} |xi| || = c* t^{-5/4}:
/// c* = (4 pi (3/8) sqrt(pi))^{1/2} (2 nu)^{-5/4}. Throws DomainError for nu <= 0.
double kernel_bound_constant(double nu);

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

/// Fourier image of the Oseen-type Green tensor,
/// (2 pi)^{-3} (delta_pm - xi_p xi_m / |xi|^2) e^{-nu |xi|^2 t}. xi must be nonzero.
Mat3 green_tensor(const Vec3& xi, double t, double nu);

/// max over samples and entries of |(2 pi)^3 G~_pm(xi, t)| / e^{-nu |xi|^2 t}.
/// Once the heat factor underflows the ratio is taken from the projection.
double green_tensor_bound_check(std::span<const Vec3> xis, std::span<const double> ts, double nu);

/// The same statistic over random (xi, t): directions uniform on the sphere,
/// |xi| and t log-uniform on [1e-3, 1e3] and [1e-4, 1e2]. Seeded, so
/// reproducible.
double green_tensor_random_sweep(std::size_t samples, double nu, std::uint64_t seed = 20240601);

enum class HeatNormalization {
    standard,  ///< (4 pi nu t)^{-3/2}, the three-dimensional heat kernel
    planar,    ///< (4 pi nu t)^{-1}
};

/// F(x, t) = int g(x - y, t) v0(y) dy with g = N(t) e^{-|x|^2/(4 nu t)}.
/// With the standard normalization F(x, 0) = v0(x).
double heat_evolved_field(const InitialData& data, double r, double t,
                          HeatNormalization norm = HeatNormalization::standard);

struct ParadoxOptions {
    double fit_lo = 1e-4;
    double fit_hi = 1e-2;
    double band_lo = 0.22;
    double band_hi = 0.28;
    double picard_tol = 1e-12;
    /// Largest tau of the denominator sweep |1 + c c1 e^{i pi/8} tau^{1/4}|.
    double tau_max = 1e4;
    std::size_t tau_samples = 4001;
    /// Laplace route sampled at this many grid times (0: every grid time).
    std::size_t laplace_samples = 0;
};

struct ParadoxReport {
    GridFunction beta;  ///< Picard route
    GridFunction b0;
    double b0_at_zero = 0.0;
    double sup_b0 = 0.0;
    double sup_beta = 0.0;
    double exponent = 0.0;
    double exponent_std_error = 0.0;
    std::array<double, 2> exponent_ci{0.0, 0.0};
    double prefactor = 0.0;
    double quarter_prefactor = 0.0;
    double expected_prefactor = 0.0;
    double kernel_bound_constant = 0.0;
    double denominator_inf = 0.0;
    /// max |beta_picard - beta_laplace| / sup beta over the Laplace samples
    /// with t >= fit_lo.
    double route_discrepancy = 0.0;
    double inversion_discrepancy = 0.0;
    bool trivial = false;
    bool pass = false;
};

/// Builds b0 from the data, solves beta = b0 - c c1 Phi_{-1/4} * beta by
/// Picard iteration and by Laplace inversion of L(b0)/(1 + c c1 p^{1/4}),
/// fits the small-time law beta ~ P t^e and checks b0(0) > 0 with e inside
/// the band. Zero amplitude is reported as the trivial case.
/// Throws ParadoxInconclusive when the small-time fit fails.
ParadoxReport run_paradox(const InitialData& data, double c, std::vector<double> grid,
                          const InversionConfig& cfg, const ParadoxOptions& opts = {});

}  // namespace hsi
