#include <gtest/gtest.h>

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hsi/cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "hsi");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = hsi::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

TEST(Cli, SolveCsvHeaderAndExitCode) {
    const auto r = run({"solve", "--points", "128"});
    EXPECT_EQ(r.code, hsi::cli::kOk) << r.err;
    EXPECT_EQ(first_line(r.out), "t,b_picard,b_laplace,abs_diff");
}

TEST(Cli, SolveIsDeterministic) {
    const auto a = run({"solve", "--points", "128", "--b0", "texp", "--c", "5"});
    const auto b = run({"solve", "--points", "128", "--b0", "texp", "--c", "5"});
    EXPECT_EQ(a.code, hsi::cli::kOk);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, SolveJson) {
    const auto r = run({"solve", "--points", "128", "--format", "json"});
    ASSERT_EQ(r.code, hsi::cli::kOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j.at("pass").get<bool>());
}

TEST(Cli, ConfigErrorsExitTwo) {
    EXPECT_EQ(run({"solve", "--c", "-1"}).code, hsi::cli::kConfig);
    EXPECT_EQ(run({"solve", "--lambda", "-1"}).code, hsi::cli::kConfig);
    EXPECT_EQ(run({"solve", "--points", "1"}).code, hsi::cli::kConfig);
    EXPECT_EQ(run({"solve", "--format", "xml"}).code, hsi::cli::kConfig);
    EXPECT_EQ(run({"solve", "--b0", "nope"}).code, hsi::cli::kConfig);
    EXPECT_EQ(run({"no-such-command"}).code, hsi::cli::kConfig);
    const auto r = run({"nsp-paradox", "--nu", "0"});
    EXPECT_EQ(r.code, hsi::cli::kConfig);
    EXPECT_NE(r.err.find("config error"), std::string::npos);
}

TEST(Cli, NonMonotoneForcingFileRejected) {
    const auto path = std::filesystem::temp_directory_path() / "hsi_cli_bad.csv";
    std::ofstream(path) << "t,value\n0,1\n0.5,0.8\n0.4,0.7\n";
    EXPECT_EQ(run({"solve", "--b0-file", path.string()}).code, hsi::cli::kConfig);
    std::filesystem::remove(path);
}

TEST(Cli, ForcingFileSolves) {
    const auto path = std::filesystem::temp_directory_path() / "hsi_cli_good.csv";
    {
        std::ofstream f(path);
        f << "t,value\n";
        // Graded like the built-in grids: the solution starts like t^{1/4}.
        f.precision(17);
        for (int i = 0; i <= 400; ++i) {
            const double t = 5.0 * std::pow(i / 400.0, 4.0);
            f << t << ',' << std::exp(-t) << '\n';
        }
    }
    const auto r = run({"solve", "--b0-file", path.string()});
    EXPECT_EQ(r.code, hsi::cli::kOk) << r.err;
    std::filesystem::remove(path);
}

TEST(Cli, InvertPhi) {
    const auto r = run({"invert", "--lambda", "0.5", "--t", "0.5", "1", "2"});
    EXPECT_EQ(r.code, hsi::cli::kOk) << r.err;
    EXPECT_EQ(first_line(r.out), "t,bromwich,talbot,exact,abs_diff");
    EXPECT_EQ(run({"invert", "--image", "nope"}).code, hsi::cli::kConfig);
}

TEST(Cli, VerifyIdentitiesSinglePair) {
    const auto r = run({"verify-identities", "--lambda", "0.5", "--mu", "0.5"});
    EXPECT_EQ(r.code, hsi::cli::kOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j.at("pass").get<bool>());
}

TEST(Cli, ParadoxWritesOutputFile) {
    const auto path = std::filesystem::temp_directory_path() / "hsi_cli_paradox.json";
    const auto r = run({"nsp-paradox", "--points", "1024", "--out", path.string()});
    EXPECT_EQ(r.code, hsi::cli::kOk) << r.err;
    std::ifstream f(path);
    const auto j = nlohmann::json::parse(f);
    for (const char* key : {"b0_at_zero", "beta_sup", "exponent", "exponent_ci", "prefactor",
                            "kernel_bound_constant", "denominator_inf", "pass"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_TRUE(j.at("pass").get<bool>());
    std::filesystem::remove(path);
}

TEST(Cli, ParadoxTrivialAmplitude) {
    const auto r = run({"nsp-paradox", "--points", "256", "--amplitude", "0"});
    EXPECT_EQ(r.code, hsi::cli::kOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j.at("trivial").get<bool>());
    EXPECT_EQ(j.at("beta_sup").get<double>(), 0.0);
}

TEST(Cli, ParadoxFitFailureExitsOne) {
    const auto r = run({"nsp-paradox", "--points", "256", "--grading", "1"});
    EXPECT_EQ(r.code, hsi::cli::kFailed);
}

}  // namespace
