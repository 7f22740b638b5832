#pragma once

// Capacity of a constraint spec: log2|Sigma| minus the minimum of the rate
// function over shift-invariant measures meeting every frequency cap. The
// minimization is a small convex program; feasibility and the all-caps-slack
// shortcut are decided exactly first.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "scs/measures.hpp"
#include "scs/rational.hpp"
#include "scs/words.hpp"

namespace scs {

struct CapacityResult {
  double capacity = 0.0;
  MeasureD optimizer;      // minimizing k-tuple measure, k = longest forbidden word
  double kkt_residual = 0.0;
  bool feasible = false;
  uint64_t iterations = 0;
};

/// Thrown when no shift-invariant measure satisfies the caps; carries the
/// smallest uniform cap relaxation that would restore feasibility.
struct InfeasibleSpec : std::runtime_error {
  double violation;
  explicit InfeasibleSpec(double v);
};

/// True iff every cap is at least the uniform-measure frequency of its word.
/// The uniform measure is then optimal and the capacity is exactly
/// log2(alphabet).
bool check_redundant(const ConstraintSpec& spec);

/// Exact optimum of the phase-1 program: the least t >= 0 such that some
/// shift-invariant probability measure satisfies every cap raised by t.
Rat feasibility_gap(const ConstraintSpec& spec);

/// True iff a shift-invariant measure meets every cap (feasibility_gap == 0).
bool feasible(const ConstraintSpec& spec);

/// tol bounds the objective accuracy, kkt_tol the reported first-order
/// residual (stationarity, cap violation, complementary slackness).
CapacityResult solve_capacity(const ConstraintSpec& spec, double tol = 1e-9,
                              double kkt_tol = 1e-7);

struct GrowthTable {
  struct Row {
    unsigned n = 0;
    uint64_t count = 0;
    double rate = 0.0;  // log2(count)/n, -inf when count == 0
  };
  double capacity = 0.0;
  std::vector<Row> rows;
};

/// Finite-length growth rates of the admissible-word count next to the solved
/// capacity, for convergence inspection. Lengths run from the longest
/// forbidden word up to n_max.
GrowthTable capacity_vs_enumeration(const ConstraintSpec& spec, unsigned n_max,
                                    Mode mode = Mode::strict);

}  // namespace scs
