#include "hsi/comparison.hpp"

#include <algorithm>
#include <string>

#include "hsi/errors.hpp"

namespace hsi {
namespace {

bool same_grid(const GridFunction& a, const GridFunction& b) {
    return a.size() == b.size() && std::equal(a.grid().begin(), a.grid().end(), b.grid().begin());
}

}  // namespace

DominationReport verify_domination(const GridFunction& q, const VolterraProblem& prob, double tol) {
    if (!same_grid(q, prob.b0)) throw DomainError("verify_domination: q must share the forcing grid");
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] < -tol) throw DomainError("verify_domination: q is negative at t = " + std::to_string(q.t(i)));
    }
    const GridFunction b = solve_picard(prob).solution;
    DominationReport report;
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double excess = q[i] - b[i];
        report.max_violation = std::max(report.max_violation, excess);
        if (excess > tol) report.violation_locus.push_back(q.t(i));
    }
    return report;
}

GridFunction build_inequality_instance(const VolterraProblem& prob, const GridFunction& slack) {
    if (!same_grid(slack, prob.b0)) {
        throw DomainError("build_inequality_instance: slack must share the forcing grid");
    }
    std::vector<double> forcing(prob.b0.size());
    for (std::size_t i = 0; i < forcing.size(); ++i) {
        if (slack[i] < 0.0) {
            throw DomainError("build_inequality_instance: slack is negative at t = " + std::to_string(slack.t(i)));
        }
        forcing[i] = prob.b0[i] - slack[i];
    }
    VolterraProblem reduced = prob;
    reduced.b0 = prob.b0.with_values(std::move(forcing));
    reduced.b0_image.reset();
    return solve_picard(reduced).solution;
}

}  // namespace hsi
