#pragma once

// Exact rational simplex, used where a yes/no feasibility answer must not
// depend on floating-point rounding. Dense two-phase tableau with Bland's
// rule; fine for the small systems produced by constraint specs.

#include <vector>

#include "scs/rational.hpp"

namespace scs {

/// minimize c.x  subject to  A x = b, x >= 0.
struct LinearProgram {
  std::vector<std::vector<Rat>> rows;  // A, one inner vector per equality
  std::vector<Rat> rhs;                // b
  std::vector<Rat> cost;               // c
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rat objective;
  std::vector<Rat> x;
};

LpResult solve_lp(const LinearProgram& lp);

}  // namespace scs
