#pragma once

// Brute-force reference implementations used only by the tests. Everything
// here favours obviousness over speed; library code must agree with these on
// small instances.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "scs/measures.hpp"
#include "scs/words.hpp"

namespace scs::oracle {

inline Word random_word(std::mt19937_64& rng, unsigned alphabet, size_t n) {
  std::uniform_int_distribution<unsigned> pick(0, alphabet - 1);
  Word w(n);
  for (auto& s : w) s = static_cast<Symbol>(pick(rng));
  return w;
}

// Cyclic empirical k-distributions are exactly shift invariant, which makes
// random words a cheap source of random rational points of the feasible set.
inline MeasureQ random_shift_invariant(std::mt19937_64& rng, unsigned alphabet, unsigned k,
                                       size_t n) {
  return empirical_k_distribution(random_word(rng, alphabet, n), k, /*cyclic=*/true, alphabet).measure;
}

// Frequency of phi among the first `windows` positions of omega (the window
// count of the enclosing k-block scan, not of phi itself).
inline Rat prefix_window_frequency(const Word& phi, const Word& omega, size_t windows) {
  size_t hits = 0;
  for (size_t i = 0; i < windows; ++i) {
    bool hit = true;
    for (size_t j = 0; j < phi.size(); ++j)
      if (omega[i + j] != phi[j]) {
        hit = false;
        break;
      }
    if (hit) ++hits;
  }
  return rat_of(static_cast<long>(hits), static_cast<long>(windows));
}

// Word count by explicit membership scan; the enumeration kernels must match.
inline uint64_t count_words(const ConstraintSpec& spec, unsigned n, Mode mode) {
  uint64_t total = 1;
  for (unsigned i = 0; i < n; ++i) total *= spec.alphabet;
  uint64_t count = 0;
  Word w(n);
  for (uint64_t idx = 0; idx < total; ++idx) {
    uint64_t v = idx;
    for (unsigned pos = n; pos-- > 0;) {
      w[pos] = static_cast<Symbol>(v % spec.alphabet);
      v /= spec.alphabet;
    }
    if (member(w, spec, mode)) ++count;
  }
  return count;
}

// Growth rate of the word count, estimated from an exact count at length n.
inline double counting_rate(const ConstraintSpec& spec, unsigned n, Mode mode) {
  return std::log2(static_cast<double>(count_words(spec, n, mode))) / n;
}

inline double binary_entropy(double p) {
  if (p <= 0 || p >= 1) return 0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

// log2 of the dominant root of x^{k+1} = x^k + ... + x + 1: the growth rate
// of binary words with no run of k+1 ones. Newton from x = 2.
inline double run_limited_capacity(unsigned k) {
  double x = 2.0;
  for (int it = 0; it < 200; ++it) {
    // f(x) = x^{k+1} - x^k - ... - 1 = (x^{k+2} - 2x^{k+1} + 1) / (x - 1)
    double f = -1, df = 0;
    double pw = 1;
    for (unsigned j = 1; j <= k; ++j) {
      pw *= x;  // x^j
      f -= pw;
      df -= j * pw / x;
    }
    double xk1 = pw * x;
    f += xk1;
    df += (k + 1) * pw;
    double step = f / df;
    x -= step;
    if (std::abs(step) < 1e-15) break;
  }
  return std::log2(x);
}

// Overlap-count distribution around one forbidden run 1^{k+1}, transformed
// by e^{-t l}: the finite sum the closed-form z must reproduce. Weights:
// l/2^{l+1} for 1 <= l <= k, (2k+4-l)/2^{l+1} for k < l <= 2k, and
// 4/2^{2k+2} at l = 2k+1.
inline long double z_sum(unsigned k, long double t) {
  long double total = 0;
  for (unsigned l = 1; l <= 2 * k + 1; ++l) {
    long double w;
    if (l <= k)
      w = static_cast<long double>(l) / std::pow(2.0L, l + 1);
    else if (l <= 2 * k)
      w = static_cast<long double>(2 * k + 4 - l) / std::pow(2.0L, l + 1);
    else
      w = 4.0L / std::pow(2.0L, 2 * k + 2);
    total += w * std::exp(-t * l);
  }
  return total;
}

// Direct long-double evaluation of the dependent-events tail bound
// (sqrt(2 pi (eta+1)) lambda^eta e^-lambda / eta!)^(1/(1+delta)), with the
// factorial multiplied out term by term.
inline long double janson_direct(long double lambda, long double delta,
                                 unsigned eta) {
  long double v = std::sqrt(2.0L * 3.14159265358979323846L * (eta + 1.0L));
  v *= std::exp(-lambda);
  for (unsigned j = 1; j <= eta; ++j) v *= lambda / j;
  return std::pow(v, 1.0L / (1.0L + delta));
}

}  // namespace scs::oracle
