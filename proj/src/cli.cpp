#include "hsi/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "hsi/errors.hpp"
#include "hsi/grid.hpp"
#include "hsi/kernel_algebra.hpp"
#include "hsi/laplace_transform.hpp"
#include "hsi/quadrature.hpp"
#include "hsi/special_functions.hpp"
#include "hsi/volterra_solver.hpp"

namespace hsi::cli {
namespace {

using json = nlohmann::ordered_json;
constexpr double kPi = std::numbers::pi;

std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::vector<double> make_grid(const GridSpec& g) { return graded_grid(g.T, g.points, g.grading); }

json grid_json(const GridSpec& g) { return {{"T", g.T}, {"points", g.points}, {"grading", g.grading}}; }

InversionConfig inversion_config(const RunConfig& cfg) {
    InversionConfig inv;
    if (cfg.method == "bromwich") {
        inv.method = InversionMethod::bromwich;
    } else if (cfg.method == "talbot" || cfg.method == "both") {
        inv.method = InversionMethod::talbot;
    } else {
        throw ConfigError("method", "expected bromwich, talbot or both, got '" + cfg.method + "'");
    }
    inv.tol = cfg.inversion_tol;
    inv.talbot_nodes = cfg.talbot_nodes;
    inv.validate();
    return inv;
}

json inversion_json(const RunConfig& cfg) {
    return {{"method", cfg.method}, {"tol", cfg.inversion_tol}, {"talbot_nodes", cfg.talbot_nodes}};
}

void check_order(const char* field, double v) {
    if (!std::isfinite(v)) throw ConfigError(field, "must be finite");
    if (near_gamma_pole(v)) throw ConfigError(field, "order " + fmt(v) + " is a pole of Gamma");
    if (v <= -1.0) throw ConfigError(field, "order " + fmt(v) + " is below the supported range (-1, inf)");
}

// Independent quadrature value of B(l, m): split at 1/2 and substitute
// u = v^{1/l} (resp. 1 - u = v^{1/m}) to remove the endpoint singularities.
double beta_by_quadrature(double l, double m) {
    const auto half = [](double a, double b) {
        const double top = std::pow(0.5, a);
        const auto f = [a, b](double v) { return std::pow(1.0 - std::pow(v, 1.0 / a), b - 1.0) / a; };
        return integrate_adaptive(f, 0.0, top, 0.0, 1e-14).value;
    };
    return half(l, m) + half(m, l);
}

struct Check {
    std::string name;
    double error;
    double tolerance;
    std::string failure;
};

json check_json(const Check& c) {
    json j = {{"check", c.name},
              {"max_error", number_or_null(c.error)},
              {"tolerance", c.tolerance},
              {"pass", c.failure.empty() && std::isfinite(c.error) && c.error <= c.tolerance}};
    if (!c.failure.empty()) j["error"] = c.failure;
    return j;
}

// Computational failures are recorded as failed checks; bad configuration escapes.
Check run_check(const std::string& name, double tol, const std::function<double()>& f) {
    try {
        return {name, f(), tol, ""};
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        return {name, std::numeric_limits<double>::quiet_NaN(), tol, e.what()};
    }
}

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

GridFunction read_forcing_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("b0-file", "cannot open '" + path + "'");
    std::vector<double> t, v;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ConfigError("b0-file", "line " + std::to_string(lineno) + ": expected 't,value'");
        }
        char* end = nullptr;
        const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
        const double ta = std::strtod(a.c_str(), &end);
        const bool numeric = end != a.c_str();
        if (!numeric) {
            if (lineno == 1) continue;  // header
            throw ConfigError("b0-file", "line " + std::to_string(lineno) + ": not a number");
        }
        const double vb = std::strtod(b.c_str(), &end);
        if (end == b.c_str()) throw ConfigError("b0-file", "line " + std::to_string(lineno) + ": not a number");
        if (!t.empty() && !(ta > t.back())) {
            throw ConfigError("b0-file", "time column is not strictly increasing at line " + std::to_string(lineno));
        }
        t.push_back(ta);
        v.push_back(vb);
    }
    try {
        return GridFunction(std::move(t), std::move(v));
    } catch (const DomainError& e) {
        throw ConfigError("b0-file", e.what());
    }
}

struct Forcing {
    GridFunction b0;
    std::optional<LaplaceImage> image;
};

Forcing make_forcing(const RunConfig& cfg) {
    if (!cfg.b0_file.empty()) return {read_forcing_csv(cfg.b0_file), std::nullopt};
    cfg.grid.validate();
    const auto grid = make_grid(cfg.grid);
    if (cfg.b0 == "exp") {
        return {GridFunction::sample(grid, [](double t) { return std::exp(-t); }),
                LaplaceImage{[](cplx p) { return 1.0 / (p + 1.0); }, true, -1.0}};
    }
    if (cfg.b0 == "texp") {
        return {GridFunction::sample(grid, [](double t) { return t * std::exp(-t); }),
                LaplaceImage{[](cplx p) { return 1.0 / ((p + 1.0) * (p + 1.0)); }, true, -1.0}};
    }
    if (cfg.b0 == "gauss") {
        // L(e^{-t^2}) grows in the left half-plane: sampled route only.
        return {GridFunction::sample(grid, [](double t) { return std::exp(-t * t); }), std::nullopt};
    }
    if (cfg.b0 == "zero") return {GridFunction::zeros(grid), LaplaceImage{[](cplx) { return cplx(0.0); }}};
    throw ConfigError("b0", "expected exp, texp, gauss or zero, got '" + cfg.b0 + "'");
}

void write_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

}  // namespace

void GridSpec::validate() const {
    if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("T", "must be positive");
    if (points < 2) throw ConfigError("points", "must be at least 2");
    if (!(grading >= 1.0) || !std::isfinite(grading)) throw ConfigError("grading", "must be >= 1");
}

int cmd_verify_identities(const RunConfig& cfg, std::ostream& out) {
    cfg.grid.validate();
    std::vector<std::pair<double, double>> pairs = {{0.5, 0.5}, {0.75, 0.75}, {0.25, 1.5}};
    if (!cfg.lambda.empty()) {
        pairs.clear();
        for (double l : cfg.lambda) pairs.emplace_back(l, cfg.mu);
    }
    for (const auto& [l, m] : pairs) {
        check_order("lambda", l);
        check_order("mu", m);
        if (l + m != 0.0) check_order("lambda", l + m);
    }
    const double semigroup_tol = cfg.tol > 0.0 ? cfg.tol : 1e-6;
    const auto grid = make_grid(cfg.grid);
    const GridFunction b = GridFunction::sample(grid, [](double t) { return std::exp(-t); });

    std::vector<Check> checks;
    for (const auto& [l, m] : pairs) {
        checks.push_back(run_check("semigroup(" + fmt(l) + "," + fmt(m) + ")", semigroup_tol,
                                   [&, l = l, m = m] { return semigroup_check(l, m, b); }));
    }
    checks.push_back(run_check("delta", 1e-3, [&] {
        const GridFunction back = convolve(PhiKernel(0.25), convolve(PhiKernel(-0.25), b));
        return max_abs_diff(back, b, 0.05);
    }));
    checks.push_back(run_check("gamma_continuation", 1e-12, [] {
        return std::abs(gamma(-0.25) + 4.0 * gamma(0.75)) / gamma(0.75);
    }));
    checks.push_back(run_check("regularized_moment", 1e-8, [] {
        const SmoothFunction e{[](double t) { return std::exp(-t); }, {1.0, -1.0, 0.5, -1.0 / 6.0}};
        return std::abs(regularized_moment(e, {-0.25, 1, 1.0}) - gamma(-0.25));
    }));
    checks.push_back(run_check("beta", 1e-10, [] {
        double worst = 0.0;
        for (auto [l, m] : {std::pair{0.5, 0.5}, {0.25, 1.5}, {2.5, 0.75}, {1.0, 3.0}}) {
            worst = std::max(worst, rel_err(beta(l, m), beta_by_quadrature(l, m)));
        }
        return worst;
    }));
    checks.push_back(run_check("reflection", 1e-12, [] {
        double worst = 0.0;
        for (double z : {0.1, 0.25, 0.3, 0.7, 1.4, -0.25, -1.3, 2.6}) {
            worst = std::max(worst, rel_err(gamma(z) * gamma(1.0 - z), kPi / std::sin(kPi * z)));
        }
        return worst;
    }));
    checks.push_back(run_check("duplication", 1e-12, [] {
        double worst = 0.0;
        for (double z : {0.3, 0.75, 1.6, 3.2, 7.5, -0.35}) {
            const double rhs = std::pow(2.0, 1.0 - 2.0 * z) * std::sqrt(kPi) * gamma(2.0 * z);
            worst = std::max(worst, rel_err(gamma(z) * gamma(z + 0.5), rhs));
        }
        return worst;
    }));

    json report;
    report["command"] = "verify-identities";
    report["config"] = {{"grid", grid_json(cfg.grid)}, {"semigroup_tol", semigroup_tol}};
    json arr = json::array();
    bool all = true;
    for (const auto& c : checks) {
        arr.push_back(check_json(c));
        all = all && arr.back()["pass"].get<bool>();
    }
    report["checks"] = arr;
    report["pass"] = all;
    write_json(out, report);
    return all ? kOk : kFailed;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
    if (!(cfg.c > 0.0)) throw ConfigError("c", "must be positive");
    if (!(cfg.picard_tol > 0.0)) throw ConfigError("picard-tol", "must be positive");
    const InversionConfig inv = inversion_config(cfg);
    const double route_tol = cfg.tol > 0.0 ? cfg.tol : 1e-3;
    Forcing forcing = make_forcing(cfg);

    VolterraProblem prob{forcing.b0, cfg.c, -0.25, forcing.image};
    const PicardSolution pic = solve_picard(prob, cfg.picard_tol);
    LaplaceSolveOptions opts;
    if (cfg.method != "both") opts.check_points = 0;
    const LaplaceSolution lap = solve_laplace(prob, inv, opts);

    const double scale = std::max(max_abs(pic.solution), max_abs(lap.solution));
    double worst = 0.0;
    if (cfg.format == "json") {
        json series = json::array();
        for (std::size_t i = 0; i < pic.solution.size(); ++i) {
            const double d = std::abs(pic.solution[i] - lap.solution[i]);
            worst = std::max(worst, d);
            series.push_back({pic.solution.t(i), pic.solution[i], lap.solution[i], d});
        }
        const bool pass = worst <= route_tol * scale;
        json report;
        report["command"] = "solve";
        report["config"] = {{"b0", cfg.b0_file.empty() ? cfg.b0 : cfg.b0_file},
                            {"grid", grid_json(cfg.grid)},
                            {"c", cfg.c},
                            {"route_tol", route_tol},
                            {"picard_tol", cfg.picard_tol},
                            {"inversion", inversion_json(cfg)}};
        report["picard_iterations"] = pic.certificate.iterations;
        report["picard_residual"] = pic.certificate.residual;
        report["inversion_discrepancy"] = lap.crosscheck.max_discrepancy;
        report["max_abs_diff"] = worst;
        report["pass"] = pass;
        report["columns"] = {"t", "b_picard", "b_laplace", "abs_diff"};
        report["rows"] = series;
        write_json(out, report);
        return pass ? kOk : kFailed;
    }
    out << "t,b_picard,b_laplace,abs_diff\n";
    for (std::size_t i = 0; i < pic.solution.size(); ++i) {
        const double d = std::abs(pic.solution[i] - lap.solution[i]);
        worst = std::max(worst, d);
        out << fmt(pic.solution.t(i)) << ',' << fmt(pic.solution[i]) << ',' << fmt(lap.solution[i]) << ','
            << fmt(d) << '\n';
    }
    return worst <= route_tol * scale ? kOk : kFailed;
}

int cmd_invert(const RunConfig& cfg, std::ostream& out) {
    InversionConfig inv = inversion_config(cfg);
    const double lambda = cfg.lambda.empty() ? 0.5 : cfg.lambda.front();
    LaplaceImage image;
    std::function<double(double)> exact;
    if (cfg.image == "phi") {
        check_order("lambda", lambda);
        if (!(lambda > 0.0)) throw ConfigError("lambda", "p^{-lambda} is inverted for lambda > 0 only");
        image = phi_image(lambda);
        exact = [k = PhiKernel(lambda)](double t) { return phi_eval(k, t); };
    } else if (cfg.image == "exp") {
        image = {[](cplx p) { return 1.0 / (p + 1.0); }, true, -1.0};
        exact = [](double t) { return std::exp(-t); };
    } else if (cfg.image == "resolvent") {
        if (!(cfg.c > 0.0)) throw ConfigError("c", "must be positive");
        image = resolvent_image({[](cplx p) { return 1.0 / (p + 1.0); }, true, -1.0}, cfg.c);
    } else {
        throw ConfigError("image", "expected phi, exp or resolvent, got '" + cfg.image + "'");
    }
    std::vector<double> times = cfg.times.empty() ? std::vector<double>{0.1, 0.5, 1.0, 2.0, 5.0} : cfg.times;
    for (double t : times) {
        if (!(t > 0.0)) throw ConfigError("t", "inversion times must be positive");
    }
    const bool brom = cfg.method != "talbot";
    const bool tal = cfg.method != "bromwich";
    const double limit = 20.0 * inv.tol;
    bool pass = true;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    struct Row {
        double t, b, tb, ex, diff;
    };
    std::vector<Row> rows;
    for (double t : times) {
        Row r{t, nan, nan, exact ? exact(t) : nan, nan};
        if (brom) r.b = invert_bromwich(image, t, inv);
        if (tal) r.tb = invert_talbot(image, t, inv.talbot_nodes);
        if (brom && tal) {
            r.diff = std::abs(r.b - r.tb);
        } else if (exact) {
            r.diff = std::abs((brom ? r.b : r.tb) - r.ex);
        }
        if (std::isfinite(r.diff) && r.diff > limit * std::max(1.0, std::abs(brom ? r.b : r.tb))) pass = false;
        rows.push_back(r);
    }
    if (cfg.format == "json") {
        json report;
        report["command"] = "invert";
        report["config"] = {{"image", cfg.image}, {"lambda", lambda}, {"c", cfg.c}, {"inversion", inversion_json(cfg)}};
        json arr = json::array();
        for (const Row& r : rows) {
            arr.push_back({{"t", r.t},
                           {"bromwich", number_or_null(r.b)},
                           {"talbot", number_or_null(r.tb)},
                           {"exact", number_or_null(r.ex)},
                           {"abs_diff", number_or_null(r.diff)}});
        }
        report["rows"] = arr;
        report["pass"] = pass;
        write_json(out, report);
    } else {
        const auto cell = [](double x) { return std::isnan(x) ? std::string() : fmt(x); };
        out << "t,bromwich,talbot,exact,abs_diff\n";
        for (const Row& r : rows) {
            out << fmt(r.t) << ',' << cell(r.b) << ',' << cell(r.tb) << ',' << cell(r.ex) << ',' << cell(r.diff)
                << '\n';
        }
    }
    return pass ? kOk : kFailed;
}

int cmd_nsp_paradox(const RunConfig& cfg, std::ostream& out) {
    cfg.grid.validate();
    cfg.data.validate();
    if (!(cfg.c > 0.0)) throw ConfigError("c", "must be positive");
    if (!(cfg.fit_lo > 0.0 && cfg.fit_hi > cfg.fit_lo)) throw ConfigError("fit-lo", "need 0 < fit-lo < fit-hi");
    if (!(cfg.band_hi > cfg.band_lo)) throw ConfigError("band-lo", "need band-lo < band-hi");
    const InversionConfig inv = inversion_config(cfg);
    ParadoxOptions opts;
    opts.fit_lo = cfg.fit_lo;
    opts.fit_hi = cfg.fit_hi;
    opts.band_lo = cfg.band_lo;
    opts.band_hi = cfg.band_hi;
    opts.picard_tol = cfg.picard_tol;

    json config = {{"amplitude", cfg.data.amplitude},
                   {"width", cfg.data.width},
                   {"nu", cfg.data.nu},
                   {"c", cfg.c},
                   {"grid", grid_json(cfg.grid)},
                   {"fit_window", {cfg.fit_lo, cfg.fit_hi}},
                   {"exponent_band", {cfg.band_lo, cfg.band_hi}},
                   {"picard_tol", cfg.picard_tol},
                   {"inversion", inversion_json(cfg)}};
    ParadoxReport r;
    try {
        r = run_paradox(cfg.data, cfg.c, make_grid(cfg.grid), inv, opts);
    } catch (const ParadoxInconclusive& e) {
        json report;
        report["command"] = "nsp-paradox";
        report["config"] = config;
        report["pass"] = false;
        report["error"] = e.what();
        write_json(out, report);
        return kFailed;
    }
    if (cfg.format == "csv") {
        out << "t,b0,beta\n";
        for (std::size_t i = 0; i < r.beta.size(); ++i) {
            out << fmt(r.beta.t(i)) << ',' << fmt(r.b0[i]) << ',' << fmt(r.beta[i]) << '\n';
        }
        return r.pass ? kOk : kFailed;
    }
    json report;
    report["b0_at_zero"] = r.b0_at_zero;
    report["beta_sup"] = r.sup_beta;
    report["exponent"] = r.trivial ? json(nullptr) : json(r.exponent);
    report["exponent_ci"] = r.trivial ? json(nullptr) : json(r.exponent_ci);
    report["prefactor"] = r.trivial ? json(nullptr) : json(r.prefactor);
    report["kernel_bound_constant"] = r.kernel_bound_constant;
    report["denominator_inf"] = r.denominator_inf;
    report["pass"] = r.pass;
    report["trivial"] = r.trivial;
    report["quarter_prefactor"] = r.trivial ? json(nullptr) : json(r.quarter_prefactor);
    report["expected_prefactor"] = r.expected_prefactor;
    report["b0_sup"] = r.sup_b0;
    report["route_discrepancy"] = r.route_discrepancy;
    report["inversion_discrepancy"] = r.inversion_discrepancy;
    report["config"] = config;
    write_json(out, report);
    return r.pass ? kOk : kFailed;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out) {
    cfg.grid.validate();
    if (cfg.repeat < 1) throw ConfigError("repeat", "must be >= 1");
    const InversionConfig inv = inversion_config(cfg);
    const auto grid = make_grid(cfg.grid);
    const GridFunction b = GridFunction::sample(grid, [](double t) { return std::exp(-t); });
    const LaplaceImage exp_image{[](cplx p) { return 1.0 / (p + 1.0); }, true, -1.0};

    std::vector<std::pair<std::string, std::function<void()>>> cases = {
        {"product_weights", [&] { (void)singular_weights(0.25, grid); }},
        {"semigroup_check", [&] { (void)semigroup_check(0.5, 0.5, b); }},
        {"picard_solve", [&] { (void)solve_picard({b, cfg.c, -0.25, std::nullopt}); }},
        {"laplace_solve", [&] {
             LaplaceSolveOptions opts;
             opts.check_points = 0;
             (void)solve_laplace({b, cfg.c, -0.25, exp_image}, inv, opts);
         }},
        {"talbot_inversion", [&] { (void)invert_talbot(resolvent_image(exp_image, cfg.c), 1.0, inv.talbot_nodes); }},
        {"bromwich_inversion", [&] { (void)invert_bromwich(resolvent_image(exp_image, cfg.c), 1.0, inv); }},
    };
    json arr = json::array();
    for (const auto& [name, fn] : cases) {
        double best = std::numeric_limits<double>::infinity();
        for (int k = 0; k < cfg.repeat; ++k) {
            const auto t0 = std::chrono::steady_clock::now();
            fn();
            best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        }
        arr.push_back({{"name", name}, {"best_seconds", best}, {"repeat", cfg.repeat}});
    }
    if (cfg.format == "csv") {
        out << "name,best_seconds,repeat\n";
        for (const auto& row : arr) {
            out << row["name"].get<std::string>() << ',' << fmt(row["best_seconds"].get<double>()) << ','
                << cfg.repeat << '\n';
        }
        return kOk;
    }
    json report;
    report["command"] = "bench";
    report["config"] = {{"grid", grid_json(cfg.grid)}, {"c", cfg.c}, {"inversion", inversion_json(cfg)}};
    report["benchmarks"] = arr;
    write_json(out, report);
    return kOk;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hyper-singular Volterra equations: identities, solvers, inversion and the Navier-Stokes majorant"};
    app.require_subcommand(1);

    RunConfig verify, solve, invert, paradox, bench;
    solve.grid.points = 1024;
    bench.grid.points = 1024;
    paradox.grid.T = 20.0;
    verify.format = paradox.format = bench.format = "json";
    solve.format = invert.format = "csv";

    const auto add_common = [](CLI::App* sub, RunConfig& cfg) {
        sub->add_option("--T", cfg.grid.T, "Horizon of the time grid")->capture_default_str();
        sub->add_option("--points", cfg.grid.points, "Number of grid points")->capture_default_str();
        sub->add_option("--grading", cfg.grid.grading, "Grading exponent (1 = uniform)")->capture_default_str();
        sub->add_option("--c", cfg.c, "Equation constant c > 0")->capture_default_str();
        sub->add_option("--method", cfg.method, "Inversion method: bromwich, talbot or both")->capture_default_str();
        sub->add_option("--tol", cfg.tol, "Acceptance tolerance (0 = command default)")->capture_default_str();
        sub->add_option("--inversion-tol", cfg.inversion_tol, "Absolute tolerance of one inversion")
            ->capture_default_str();
        sub->add_option("--talbot-nodes", cfg.talbot_nodes, "Talbot contour nodes")->capture_default_str();
        sub->add_option("--picard-tol", cfg.picard_tol, "Picard increment tolerance")->capture_default_str();
        sub->add_option("--out", cfg.out, "Output file (default stdout)");
        sub->add_option("--format", cfg.format, "Output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
    };

    auto* v = app.add_subcommand("verify-identities", "Kernel-algebra and Gamma identity suite");
    add_common(v, verify);
    v->add_option("--lambda", verify.lambda, "Semigroup order lambda (replaces the default pairs)");
    v->add_option("--mu", verify.mu, "Semigroup partner order mu")->capture_default_str();

    auto* s = app.add_subcommand("solve", "Solve b = b0 - c c1 Phi_{-1/4} * b by both routes");
    add_common(s, solve);
    s->add_option("--b0", solve.b0, "Built-in forcing: exp, texp, gauss or zero")->capture_default_str();
    s->add_option("--b0-file", solve.b0_file, "CSV file of t,value rows starting at t = 0");
    s->add_option("--lambda", solve.lambda, "Kernel order (only -0.25 is supported)");

    auto* i = app.add_subcommand("invert", "Numerical inverse Laplace transform");
    add_common(i, invert);
    i->add_option("--image", invert.image, "Image: phi (p^-lambda), exp (1/(p+1)) or resolvent")
        ->capture_default_str();
    i->add_option("--lambda", invert.lambda, "Order of p^{-lambda}");
    i->add_option("--t", invert.times, "Inversion times");

    auto* n = app.add_subcommand("nsp-paradox", "Navier-Stokes majorant pipeline with Gaussian data");
    add_common(n, paradox);
    n->add_option("--amplitude", paradox.data.amplitude, "Gaussian amplitude")->capture_default_str();
    n->add_option("--width", paradox.data.width, "Gaussian width")->capture_default_str();
    n->add_option("--nu", paradox.data.nu, "Viscosity")->capture_default_str();
    n->add_option("--fit-lo", paradox.fit_lo, "Small-time fit window start")->capture_default_str();
    n->add_option("--fit-hi", paradox.fit_hi, "Small-time fit window end")->capture_default_str();
    n->add_option("--band-lo", paradox.band_lo, "Lower end of the accepted exponent band")->capture_default_str();
    n->add_option("--band-hi", paradox.band_hi, "Upper end of the accepted exponent band")->capture_default_str();

    auto* b = app.add_subcommand("bench", "Time the main kernels");
    add_common(b, bench);
    b->add_option("--repeat", bench.repeat, "Repetitions per case (best time is reported)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfig;
    }

    std::function<int(std::ostream&)> action;
    std::string out_path;
    if (v->parsed()) {
        action = [&](std::ostream& o) { return cmd_verify_identities(verify, o); };
        out_path = verify.out;
    } else if (s->parsed()) {
        action = [&](std::ostream& o) {
            for (double l : solve.lambda) {
                if (l != -0.25) throw ConfigError("lambda", "the solver supports lambda = -0.25 only");
            }
            return cmd_solve(solve, o);
        };
        out_path = solve.out;
    } else if (i->parsed()) {
        action = [&](std::ostream& o) { return cmd_invert(invert, o); };
        out_path = invert.out;
    } else if (n->parsed()) {
        action = [&](std::ostream& o) { return cmd_nsp_paradox(paradox, o); };
        out_path = paradox.out;
    } else {
        action = [&](std::ostream& o) { return cmd_bench(bench, o); };
        out_path = bench.out;
    }

    try {
        // Buffer so a failed run leaves no partial output file.
        std::ostringstream buffer;
        const int code = action(buffer);
        if (out_path.empty()) {
            out << buffer.str();
        } else {
            std::ofstream file(out_path, std::ios::binary);
            if (!file) throw ConfigError("out", "cannot open '" + out_path + "' for writing");
            file << buffer.str();
        }
        return code;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const PoleError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kFailed;
    }
}

}  // namespace hsi::cli
