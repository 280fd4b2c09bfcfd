#include "hsi/laplace_transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hsi/errors.hpp"
#include "hsi/quadrature.hpp"

namespace hsi {
namespace {

constexpr double kPi = std::numbers::pi;

// Wynn's epsilon algorithm, one partial sum at a time (Weniger's EPSAL).
class WynnEpsilon {
public:
    double add(double partial_sum) {
        const std::size_t n = e_.size();
        e_.push_back(partial_sum);
        if (n == 0) return partial_sum;
        double aux2 = 0.0;
        for (std::size_t j = n; j >= 1; --j) {
            const double aux1 = aux2;
            aux2 = e_[j - 1];
            const double diff = e_[j] - aux2;
            e_[j - 1] = std::abs(diff) <= 1e-300 ? 1e300 : aux1 + 1.0 / diff;
        }
        const double est = (n % 2 == 0) ? e_[0] : e_[1];
        // A stagnating sequence drives the table to the 1e300 sentinel.
        return std::abs(est) < 1e100 ? est : partial_sum;
    }

private:
    std::vector<double> e_;
};

double wrap_phase(double x) {
    x = std::remainder(x, 2.0 * kPi);
    return x;
}

// E1(z) = (1 - e^{-z}) / z and E2(z) = (1 - e^{-z}(1 + z)) / z^2.
void exp_moments(cplx z, cplx& e1, cplx& e2) {
    if (std::abs(z) < 0.5) {
        cplx term1 = 1.0;  // (-z)^k / (k+1)!
        cplx term2 = 0.5;  // (-z)^k / (k! (k+2))
        cplx pw = 1.0;     // (-z)^k / k!
        e1 = 0.0;
        e2 = 0.0;
        for (int k = 0; k < 24; ++k) {
            term1 = pw / static_cast<double>(k + 1);
            term2 = pw / static_cast<double>(k + 2);
            e1 += term1;
            e2 += term2;
            pw *= -z / static_cast<double>(k + 1);
        }
        return;
    }
    const cplx ez = std::exp(-z);
    e1 = (1.0 - ez) / z;
    e2 = (1.0 - ez * (1.0 + z)) / (z * z);
}

}  // namespace

std::string to_string(InversionMethod m) {
    return m == InversionMethod::bromwich ? "bromwich" : "talbot";
}

InversionMethod parse_inversion_method(const std::string& name) {
    if (name == "bromwich") return InversionMethod::bromwich;
    if (name == "talbot") return InversionMethod::talbot;
    throw ConfigError("method", "unknown inversion method '" + name + "'");
}

void InversionConfig::validate() const {
    if (!(truncation > 0.0)) throw ConfigError("truncation", "must be positive");
    if (talbot_nodes < 4 || talbot_nodes % 2 != 0) {
        throw ConfigError("talbot_nodes", "must be an even number >= 4");
    }
    if (!(tol > 0.0)) throw ConfigError("tol", "must be positive");
}

cplx principal_power(cplx p, double a) {
    const double r = std::abs(p);
    if (r == 0.0) {
        if (a > 0.0) return 0.0;
        throw DomainError("principal_power: zero base with non-positive exponent");
    }
    double arg = std::atan2(p.imag(), p.real());
    if (arg == -kPi) arg = kPi;
    return std::polar(std::pow(r, a), a * arg);
}

cplx phi_image(double lambda, cplx p) {
    if (p == cplx(0.0)) throw DomainError("phi_image: p = 0");
    return principal_power(p, -lambda);
}

LaplaceImage phi_image(double lambda) {
    return {[lambda](cplx p) { return phi_image(lambda, p); }, true, 0.0};
}

TailModel fit_exponential_tail(const GridFunction& b, std::size_t samples) {
    const std::size_t n = b.size();
    const std::size_t m = std::min(samples, n);
    TailModel tail;
    tail.horizon = b.horizon();
    tail.value_at_T = b[n - 1];
    bool all_zero = true;
    for (std::size_t i = n - m; i < n; ++i) all_zero = all_zero && b[i] == 0.0;
    if (all_zero) {
        tail.kind = TailModel::Kind::zero;
        return tail;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double sign = b[n - 1] > 0 ? 1.0 : -1.0;
    for (std::size_t i = n - m; i < n; ++i) {
        if (!(sign * b[i] > 0.0)) throw TailModelError("tail samples change sign or vanish");
        const double x = b.t(i);
        const double y = std::log(sign * b[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double k = static_cast<double>(m);
    const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    if (!(-slope > 0.0)) {
        throw TailModelError("fitted tail decay rate " + std::to_string(-slope) + " is not positive");
    }
    tail.kind = TailModel::Kind::fitted_exponential;
    tail.rate = -slope;
    return tail;
}

TailModel constant_tail(const GridFunction& b) {
    TailModel tail;
    tail.kind = TailModel::Kind::constant;
    tail.horizon = b.horizon();
    tail.value_at_T = b[b.size() - 1];
    return tail;
}

cplx forward_laplace(const GridFunction& b, const TailModel& tail, cplx p) {
    if (p.real() < 0.0) throw DomainError("forward_laplace: Re p must be >= 0");
    const auto t = b.grid();
    const auto v = b.values();
    cplx sum = 0.0;
    cplx shift = 1.0;  // e^{-p t_{j-1}}
    for (std::size_t j = 1; j < t.size(); ++j) {
        const double h = t[j] - t[j - 1];
        const cplx z = p * h;
        cplx e1, e2;
        exp_moments(z, e1, e2);
        sum += shift * h * (v[j - 1] * e1 + (v[j] - v[j - 1]) * e2);
        shift = std::exp(-p * t[j]);
    }
    switch (tail.kind) {
        case TailModel::Kind::zero:
            break;
        case TailModel::Kind::constant:
            if (p.real() <= 0.0) throw DomainError("forward_laplace: constant tail needs Re p > 0");
            sum += tail.value_at_T * std::exp(-p * tail.horizon) / p;
            break;
        case TailModel::Kind::fitted_exponential:
            sum += tail.value_at_T * std::exp(-p * tail.horizon) / (p + tail.rate);
            break;
    }
    return sum;
}

cplx forward_laplace(const GridFunction& b, cplx p) {
    return forward_laplace(b, fit_exponential_tail(b), p);
}

LaplaceImage numeric_image(GridFunction b, TailModel tail) {
    const double abscissa = tail.kind == TailModel::Kind::fitted_exponential ? -tail.rate : 0.0;
    return {[b = std::move(b), tail](cplx p) { return forward_laplace(b, tail, p); }, false, abscissa};
}

double invert_bromwich(const LaplaceImage& image, double t, const InversionConfig& cfg) {
    if (!(t > 0.0)) throw DomainError("invert: t must be positive");
    const double sigma = std::isnan(cfg.shift) ? std::max(image.abscissa, 0.0) + 1.0 / t : cfg.shift;
    const double scale = std::exp(sigma * t) / kPi;
    // Tolerance on the raw integral; blocks get a small share each.
    const double int_tol = cfg.tol / scale;
    const double block_tol = 1e-3 * int_tol;

    const auto F = [&](double w) { return image(cplx(sigma, w)); };
    const auto integrand = [&](double w) { return (F(w) * std::polar(1.0, w * t)).real(); };
    const auto phase = [&](double w, double ref) {
        // arg F unwrapped relative to ref
        const double raw = std::arg(F(w));
        return ref + wrap_phase(raw - ref);
    };

    WynnEpsilon wynn;
    double partial = 0.0;
    double prev_est = 0.0, prev2_est = 0.0;
    double w = 0.0;
    double phi = std::arg(F(0.0));
    // Next zero of cos(w t + arg F) lies at total phase (m + 1/2) pi.
    double target = (std::floor((phi) / kPi - 0.5) + 1.5) * kPi;
    const double period = kPi / t;
    // At very small t a block is wider than the truncation itself.
    const double w_max = std::max(cfg.truncation, 2000.0 * period);
    int stable = 0;
    for (std::size_t k = 0;; ++k) {
        if (w > w_max) {
            throw ConvergenceError("Bromwich inversion at t = " + std::to_string(t) +
                                   " did not converge before |w| = " + std::to_string(w_max));
        }
        // Solve w t + phi(w) = target by a few fixed-point corrections.
        double w_next = w + (target - (w * t + phi)) / t;
        for (int it = 0; it < 4; ++it) {
            w_next = std::clamp(w_next, w + 0.25 * period, w + 2.0 * period);
            const double ph = phase(w_next, phi);
            w_next += (target - (w_next * t + ph)) / t;
        }
        w_next = std::clamp(w_next, w + 0.25 * period, w + 2.0 * period);
        const double phi_next = phase(w_next, phi);

        partial += integrate_adaptive(integrand, w, w_next, block_tol, 1e-13).value;
        const double est = wynn.add(partial);

        if (k >= 6 && std::abs(est - prev_est) <= int_tol && std::abs(prev_est - prev2_est) <= int_tol) {
            if (++stable >= 2) return scale * est;
        } else {
            stable = 0;
        }
        prev2_est = prev_est;
        prev_est = est;
        target = std::max(target + kPi, w_next * t + phi_next + 0.25 * kPi);
        w = w_next;
        phi = phi_next;
    }
}

double invert_talbot(const LaplaceImage& image, double t, int nodes) {
    if (!(t > 0.0)) throw DomainError("invert: t must be positive");
    if (!image.continuable) {
        throw DomainError("Talbot inversion needs an image analytic off the negative real axis");
    }
    // Optimized cotangent contour z(theta) = (N/t)(s + m theta cot(a theta) + i n theta).
    constexpr double s = -0.6122, m = 0.5017, a = 0.6407, nu = 0.2645;
    const double N = static_cast<double>(nodes);
    const double r = N / t;
    double sum = 0.0;
    for (int k = nodes / 2; k < nodes; ++k) {
        const double theta = -kPi + (2.0 * k + 1.0) * kPi / N;
        const double cot = 1.0 / std::tan(a * theta);
        const double csc2 = 1.0 + cot * cot;
        const cplx z = r * cplx(s + m * theta * cot, nu * theta);
        const cplx dz = r * cplx(m * (cot - a * theta * csc2), nu);
        sum += (std::exp(z * t) * image(z) * dz).imag();
    }
    return 2.0 * sum / N;
}

double invert(const LaplaceImage& image, double t, const InversionConfig& cfg) {
    cfg.validate();
    if (cfg.method == InversionMethod::bromwich) return invert_bromwich(image, t, cfg);
    return invert_talbot(image, t, cfg.talbot_nodes);
}

CrosscheckResult inversion_crosscheck(const LaplaceImage& image, std::span<const double> ts,
                                      const InversionConfig& cfg) {
    cfg.validate();
    CrosscheckResult out;
    for (const double t : ts) {
        const double b = invert_bromwich(image, t, cfg);
        const double tb = invert_talbot(image, t, cfg.talbot_nodes);
        out.times.push_back(t);
        out.bromwich.push_back(b);
        out.talbot.push_back(tb);
        out.max_discrepancy = std::max(out.max_discrepancy, std::abs(b - tb));
    }
    const double limit = 10.0 * 2.0 * cfg.tol;
    if (out.max_discrepancy > limit) {
        throw MethodDisagreement("Bromwich and Talbot differ by " + std::to_string(out.max_discrepancy) +
                                 " (limit " + std::to_string(limit) + ")");
    }
    return out;
}

double denominator_modulus(double C) {
    return std::sqrt(1.0 + C * C + 2.0 * C * std::cos(kPi / 8.0));
}

double inf_denominator_bound(double c, double c1, std::span<const double> taus) {
    if (!(c > 0.0) || !(c1 > 0.0)) throw DomainError("inf_denominator_bound: c and c1 must be positive");
    if (taus.empty()) throw DomainError("inf_denominator_bound: empty sample set");
    const cplx rot = std::polar(1.0, kPi / 8.0);
    double best = std::numeric_limits<double>::infinity();
    for (const double tau : taus) {
        if (tau < 0.0) throw DomainError("inf_denominator_bound: tau must be >= 0");
        best = std::min(best, std::abs(1.0 + c * c1 * rot * std::pow(tau, 0.25)));
    }
    return best;
}

}  // namespace hsi
