#pragma once

#include <vector>

#include "hsi/grid.hpp"
#include "hsi/volterra_solver.hpp"

namespace hsi {

struct DominationReport {
    /// max(0, max_i (q_i - b_i))
    double max_violation = 0.0;
    /// Sample times where q > b + tol.
    std::vector<double> violation_locus;

    bool dominated() const noexcept { return violation_locus.empty(); }
};

/// Solves prob by Picard iteration and compares q against the solution b
/// sample by sample. q must live on the forcing grid and be non-negative.
DominationReport verify_domination(const GridFunction& q, const VolterraProblem& prob, double tol);

/// Generates a function satisfying the integral inequality: the solution of
/// the equation with forcing b0 - slack. Zero slack reproduces the solution
/// itself. Throws DomainError if slack is negative anywhere or lives on
/// another grid.
GridFunction build_inequality_instance(const VolterraProblem& prob, const GridFunction& slack);

}  // namespace hsi
