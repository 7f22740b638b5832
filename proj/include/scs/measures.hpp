// measures.hpp -- measures on k-tuples, marginals, the rate function, and the
// constraint matrix
#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "scs/words.hpp"

namespace scs {

size_t pow_size(unsigned alphabet, unsigned k);

/// Index of a k-tuple in lexicographic order, first symbol most significant.
size_t tuple_index(const Word& tuple, unsigned alphabet);
Word index_tuple(size_t index, unsigned alphabet, unsigned k);

/// Weights over Sigma^k stored flat in lexicographic order.
template <class S>
struct TupleMeasure {
  unsigned alphabet = 2;
  unsigned k = 1;
  std::vector<S> w;

  size_t size() const { return w.size(); }
};

using MeasureD = TupleMeasure<double>;
using MeasureQ = TupleMeasure<Rat>;

MeasureD to_double(const MeasureQ& m);
MeasureD uniform_measure(unsigned alphabet, unsigned k);

template <class S>
S measure_sum(const TupleMeasure<S>& m) {
  S s{};
  for (const S& x : m.w) s += x;
  return s;
}

/// Probability check: nonnegative weights, total 1 (exact for rationals,
/// within 1e-12 for doubles).
bool is_probability(const MeasureQ& m);
bool is_probability(const MeasureD& m);

/// Drop-last-symbol marginal, a measure on (k-1)-tuples. Requires k >= 2.
template <class S>
TupleMeasure<S> marginal_first(const TupleMeasure<S>& m) {
  if (m.k < 2) throw std::invalid_argument("marginal needs k >= 2");
  TupleMeasure<S> out;
  out.alphabet = m.alphabet;
  out.k = m.k - 1;
  out.w.assign(m.w.size() / m.alphabet, S{});
  for (size_t j = 0; j < out.w.size(); ++j)
    for (unsigned a = 0; a < m.alphabet; ++a) out.w[j] += m.w[j * m.alphabet + a];
  return out;
}

/// Drop-first-symbol marginal, a measure on (k-1)-tuples. Requires k >= 2.
template <class S>
TupleMeasure<S> marginal_last(const TupleMeasure<S>& m) {
  if (m.k < 2) throw std::invalid_argument("marginal needs k >= 2");
  TupleMeasure<S> out;
  out.alphabet = m.alphabet;
  out.k = m.k - 1;
  const size_t tail = m.w.size() / m.alphabet;
  out.w.assign(tail, S{});
  for (size_t i = 0; i < m.w.size(); ++i) out.w[i % tail] += m.w[i];
  return out;
}

/// max over (k-1)-tuples of |drop-last mass - drop-first mass|; 0 for k = 1.
Rat shift_invariance_defect(const MeasureQ& m);
double shift_invariance_defect(const MeasureD& m);

bool is_shift_invariant(const MeasureQ& m);
bool is_shift_invariant(const MeasureD& m, double tol = 1e-10);

/// (prefix measure on (k-1)-tuples) x (symbol distribution) -> k-tuple measure.
template <class S>
TupleMeasure<S> product_extend(const TupleMeasure<S>& prefix, const std::vector<S>& symbol) {
  if (symbol.size() != prefix.alphabet)
    throw std::invalid_argument("symbol distribution size must match the alphabet");
  TupleMeasure<S> out;
  out.alphabet = prefix.alphabet;
  out.k = prefix.k + 1;
  out.w.assign(prefix.w.size() * prefix.alphabet, S{});
  for (size_t j = 0; j < prefix.w.size(); ++j)
    for (unsigned a = 0; a < prefix.alphabet; ++a)
      out.w[j * prefix.alphabet + a] = prefix.w[j] * symbol[a];
  return out;
}

/// Large-deviations rate in bits: sum nu(s) log2(nu(s) / (nu1(prefix) q(last)))
/// for shift-invariant probability nu, +infinity otherwise. 0 log 0 = 0.
/// q defaults to uniform when empty.
double rate_function(const MeasureD& nu, std::vector<double> q = {});

struct EmpiricalDistribution {
  MeasureQ measure;
  size_t windows = 0;
};

/// k-tuple window frequencies of the sequence (n = |seq| - k + 1 linear
/// windows, or |seq| wraparound windows). Cyclic output is exactly
/// shift-invariant. Requires |seq| >= k (linear) or |seq| >= 1 (cyclic).
/// alphabet = 0 infers the smallest cover (at least binary).
EmpiricalDistribution empirical_k_distribution(const Word& seq, unsigned k, bool cyclic,
                                               unsigned alphabet = 0);

/// Rows indexed by the forbidden words (spec order), columns by Sigma^k with
/// k the longest forbidden length: entry [omega starts with phi]. Each row is
/// a contiguous column span.
struct ConstraintMatrix {
  unsigned alphabet = 2;
  unsigned k = 1;
  std::vector<Word> words;
  std::vector<std::pair<size_t, size_t>> spans;  // [begin, end) per row

  std::vector<std::vector<uint8_t>> dense() const;

  template <class S>
  std::vector<S> apply(const std::vector<S>& nu) const {
    std::vector<S> out(words.size(), S{});
    for (size_t r = 0; r < words.size(); ++r)
      for (size_t c = spans[r].first; c < spans[r].second; ++c) out[r] += nu[c];
    return out;
  }
};

/// Requires a nonempty forbidden set.
ConstraintMatrix build_constraint_matrix(const ConstraintSpec& spec);

template <class S>
std::vector<S> apply_f(const ConstraintMatrix& m, const TupleMeasure<S>& nu) {
  if (nu.alphabet != m.alphabet || nu.k != m.k)
    throw std::invalid_argument("measure shape does not match constraint matrix");
  return m.apply(nu.w);
}

}  // namespace scs
