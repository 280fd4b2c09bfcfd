#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hsi/nsp_application.hpp"

namespace hsi::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kConfig = 2 };

struct GridSpec {
    double T = 5.0;
    std::size_t points = 2048;
    double grading = 4.0;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

struct RunConfig {
    GridSpec grid;
    double c = 1.0;
    /// verify-identities: a single (lambda, mu) pair replaces the default
    /// semigroup pairs when lambda is set. invert: order of the image p^{-lambda}.
    std::vector<double> lambda;
    double mu = 0.5;
    std::string method = "both";
    /// Route / identity tolerance; 0 selects the per-command default.
    double tol = 0.0;
    double inversion_tol = 1e-9;
    int talbot_nodes = 32;
    double picard_tol = 1e-12;
    std::string out;
    std::string format;

    // solve
    std::string b0 = "exp";
    std::string b0_file;

    // invert
    std::string image = "phi";
    std::vector<double> times;

    // nsp-paradox
    InitialData data;
    double fit_lo = 1e-4;
    double fit_hi = 1e-2;
    double band_lo = 0.22;
    double band_hi = 0.28;

    // bench
    int repeat = 3;
};

/// Each command writes its report to `out` and returns the exit code.
/// Configuration errors are raised as ConfigError.
int cmd_verify_identities(const RunConfig& cfg, std::ostream& out);
int cmd_solve(const RunConfig& cfg, std::ostream& out);
int cmd_invert(const RunConfig& cfg, std::ostream& out);
int cmd_nsp_paradox(const RunConfig& cfg, std::ostream& out);
int cmd_bench(const RunConfig& cfg, std::ostream& out);

/// Parses argv, dispatches, writes to --out or `out`, diagnostics to `err`.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace hsi::cli
