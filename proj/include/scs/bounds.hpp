// bounds.hpp -- closed-form capacity bounds for the single-run-cap family
// {1^{k+1}} with cap p, in one dimension and on D-dimensional grids
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "scs/rational.hpp"

namespace scs {

/// Inputs of the dependent-events tail bound: lambda is the expected number
/// of forbidden-run occurrences in a uniformly random word, delta the
/// normalized sum of pairwise overlap correlations.
struct JansonParams {
  double lambda = 0;
  double delta = 0;
};

/// Parameters for random words of length n (side length n per axis when
/// dims > 1): lambda = dims * n^dims / 2^{k+1},
/// delta = 2 - 2^{1-k} + (dims-1)(k+1)^2 * 2^{-k}.
JansonParams janson_params(unsigned k, double n, unsigned dims = 1);

/// Upper bound on Pr[S <= eta] for a sum S of dependent indicators:
/// (sqrt(2*pi*(eta+1)) * lambda^eta * e^-lambda / eta!)^(1/(1+delta)),
/// evaluated in log space. Requires 0 <= eta <= lambda (the bound is
/// vacuous otherwise and the call throws std::invalid_argument).
double janson_tail(double lambda, double delta, uint64_t eta);

/// Closed-form capacity upper bound for {1^{k+1}} with cap p,
/// 0 < p <= 2^{-(k+1)}:
///   1 - (log2(e)/2^{k+1} + p(k+1) - p*log2(e/p)) / (3 - 2^{1-k}).
/// Equals 1 at the boundary p = 2^{-(k+1)}.
double upper_bound_capacity(unsigned k, double p);

/// D-dimensional version, 0 < p <= dims * 2^{-(k+1)}:
///   1 - (dims*log2(e)/2^{k+1} + p(k+1) - p*log2(dims*e/p))
///       / (3 - 2^{1-k} + 2^{-k}(dims-1)(k+1)^2).
/// Reduces exactly to upper_bound_capacity at dims = 1.
double upper_bound_capacity_ddim(unsigned k, double p, unsigned dims);

/// Exponential-decay transform of the overlap-count distribution around one
/// occurrence of 1^{k+1}: z(k,t) = sum_l Pr[l additional overlaps] e^{-tl}.
/// Closed form, stable for large k*t:
///   e^{-t} * (1 + 2^{-k} e^{-kt} - 2^{-k} e^{-(k+1)t})^2 / (e^{-t} - 2)^2.
/// z(k,0) = 1; strictly decreasing in t.
double z_function(unsigned k, double t);

/// Sharpest gap the integral bound certifies at finite k:
///   max over t in [0,20] of log2(e) * (int_0^t z(k,u) du / 2^{k+1} - t*p),
/// computed with adaptive quadrature (tol 1e-10) and golden-section search.
/// The capacity is at most 1 - refined_upper_gap(k, p). Zero when
/// p >= 2^{-(k+1)}.
double refined_upper_gap(unsigned k, double p);

/// Limit constant of the refined gap along p = c * 2^{-(k+1)}, scaled by
/// 2^{k+2}: for c > 0
///   ((3 - sqrt(1+8c))/2) * log2(e) - 2c * log2((1 + 4c + sqrt(1+8c))/(8c)),
/// and log2(e) at c = 0. Decreasing on [0,1], zero at c = 1.
double b_lo(double c);

/// Limit constant of the explicit-measure gap along p = c * 2^{-(k+1)},
/// scaled by 2^{k+1}: (1+c)(1 - H(1/(1+c))) with H the binary entropy.
/// b_up(0) = 1, b_up(1) = 0, decreasing on [0,1].
double b_up(double c);

/// Both limit constants at ratio c = p / 2^{-(k+1)}.
struct AsymptoticConstants {
  double c = 0;
  double b_lo = 0;
  double b_up = 0;
};
AsymptoticConstants asymptotic_constants(double c);

/// Capacity lower bound for {1^{k+1}} with cap p, 0 <= p <= 2^{-(k+1)}:
/// the rate of the product measure that puts weight p on the run 1^{k+1}
/// and spreads the rest uniformly,
///   1 - ((1-p)/(2^{k+1}-1)) * log2((2-2p)/(1+2p(2^k-1)))
///     - p * log2(2p(2^{k+1}-1)/(1+2p(2^k-1))),
/// with the p = 0 term read as 0. Equals 1 at p = 2^{-(k+1)}.
double lower_bound_capacity(unsigned k, double p);

/// D-dimensional lower bound by slicing: 1 + dims * (bound1(k, p/dims) - 1)
/// where bound1 supplies any one-dimensional lower bound. Requires
/// p/dims <= 2^{-(k+1)}.
double lower_bound_capacity_ddim(
    unsigned k, double p, unsigned dims,
    const std::function<double(unsigned, double)>& bound1);

/// Exhaustive verification that linear counts sandwich cyclic counts,
/// |B_{n-1}| <= |B^cyc_n| <= |B_{n+k}|, for the spec {1^{k+1}} with cap p
/// and every n in [k+2, n_max]. Throws when enumeration exceeds its budget.
struct CyclicEquivalenceRow {
  unsigned n = 0;
  uint64_t linear_prev = 0;   // |B_{n-1}|
  uint64_t cyclic = 0;        // |B^cyc_n|
  uint64_t linear_ext = 0;    // |B_{n+k}|
  bool ok = false;
};
struct CyclicEquivalenceReport {
  std::vector<CyclicEquivalenceRow> rows;
  bool ok = true;
};
CyclicEquivalenceReport cyclic_equivalence_check(unsigned k, const Rat& p,
                                                 unsigned n_max);

}  // namespace scs
