#include "scs/measures.hpp"

#include <cmath>
#include <stdexcept>

namespace scs {

size_t pow_size(unsigned alphabet, unsigned k) {
  size_t s = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (s > (size_t{1} << 40) / alphabet) throw std::invalid_argument("tuple space too large");
    s *= alphabet;
  }
  return s;
}

size_t tuple_index(const Word& tuple, unsigned alphabet) {
  size_t idx = 0;
  for (Symbol s : tuple) {
    if (s >= alphabet) throw std::invalid_argument("tuple symbol out of range");
    idx = idx * alphabet + s;
  }
  return idx;
}

Word index_tuple(size_t index, unsigned alphabet, unsigned k) {
  Word w(k);
  for (unsigned pos = k; pos-- > 0;) {
    w[pos] = static_cast<Symbol>(index % alphabet);
    index /= alphabet;
  }
  return w;
}

MeasureD to_double(const MeasureQ& m) {
  MeasureD out;
  out.alphabet = m.alphabet;
  out.k = m.k;
  out.w.reserve(m.w.size());
  for (const Rat& x : m.w) out.w.push_back(rat_double(x));
  return out;
}

MeasureD uniform_measure(unsigned alphabet, unsigned k) {
  MeasureD out;
  out.alphabet = alphabet;
  out.k = k;
  size_t n = pow_size(alphabet, k);
  out.w.assign(n, 1.0 / static_cast<double>(n));
  return out;
}

bool is_probability(const MeasureQ& m) {
  for (const Rat& x : m.w)
    if (x < 0) return false;
  return measure_sum(m) == 1;
}

bool is_probability(const MeasureD& m) {
  for (double x : m.w)
    if (!(x >= 0)) return false;
  return std::abs(measure_sum(m) - 1.0) <= 1e-12;
}

Rat shift_invariance_defect(const MeasureQ& m) {
  if (m.k < 2) return Rat(0);
  auto lhs = marginal_first(m);
  auto rhs = marginal_last(m);
  Rat worst(0);
  for (size_t j = 0; j < lhs.w.size(); ++j) {
    Rat d = lhs.w[j] - rhs.w[j];
    if (d < 0) d = -d;
    if (d > worst) worst = d;
  }
  return worst;
}

double shift_invariance_defect(const MeasureD& m) {
  if (m.k < 2) return 0.0;
  auto lhs = marginal_first(m);
  auto rhs = marginal_last(m);
  double worst = 0.0;
  for (size_t j = 0; j < lhs.w.size(); ++j)
    worst = std::max(worst, std::abs(lhs.w[j] - rhs.w[j]));
  return worst;
}

bool is_shift_invariant(const MeasureQ& m) { return shift_invariance_defect(m) == 0; }

bool is_shift_invariant(const MeasureD& m, double tol) {
  return shift_invariance_defect(m) <= tol;
}

double rate_function(const MeasureD& nu, std::vector<double> q) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (q.empty()) q.assign(nu.alphabet, 1.0 / nu.alphabet);
  if (q.size() != nu.alphabet)
    throw std::invalid_argument("symbol distribution size must match the alphabet");
  if (!is_probability(nu) || !is_shift_invariant(nu)) return inf;
  std::vector<double> nu1;
  if (nu.k >= 2) {
    nu1 = marginal_first(nu).w;
  } else {
    nu1.assign(1, 1.0);
  }
  double total = 0.0;
  for (size_t i = 0; i < nu.w.size(); ++i) {
    double x = nu.w[i];
    if (x <= 0.0) continue;
    double denom = nu1[i / nu.alphabet] * q[i % nu.alphabet];
    if (denom <= 0.0) return inf;
    total += x * std::log2(x / denom);
  }
  return total;
}

EmpiricalDistribution empirical_k_distribution(const Word& seq, unsigned k, bool cyclic,
                                               unsigned alphabet) {
  if (k == 0) throw std::invalid_argument("tuple length must be >= 1");
  if (seq.empty() || (!cyclic && seq.size() < k))
    throw std::invalid_argument("sequence shorter than the tuple length");
  unsigned seen = 0;
  for (Symbol s : seq) seen = std::max<unsigned>(seen, s + 1u);
  if (alphabet == 0) alphabet = std::max(seen, 2u);
  if (seen > alphabet) throw std::invalid_argument("sequence symbol outside the alphabet");
  EmpiricalDistribution out;
  out.measure.alphabet = alphabet;
  out.measure.k = k;
  out.measure.w.assign(pow_size(alphabet, k), Rat(0));
  out.windows = cyclic ? seq.size() : seq.size() - k + 1;
  Rat unit = rat_of(1, static_cast<long long>(out.windows));
  for (size_t i = 0; i < out.windows; ++i) {
    size_t idx = 0;
    for (unsigned j = 0; j < k; ++j) {
      size_t pos = cyclic ? (i + j) % seq.size() : i + j;
      idx = idx * alphabet + seq[pos];
    }
    out.measure.w[idx] += unit;
  }
  return out;
}

std::vector<std::vector<uint8_t>> ConstraintMatrix::dense() const {
  size_t cols = pow_size(alphabet, k);
  std::vector<std::vector<uint8_t>> m(words.size(), std::vector<uint8_t>(cols, 0));
  for (size_t r = 0; r < words.size(); ++r)
    for (size_t c = spans[r].first; c < spans[r].second; ++c) m[r][c] = 1;
  return m;
}

ConstraintMatrix build_constraint_matrix(const ConstraintSpec& spec) {
  spec.validate();
  if (spec.forbidden.empty())
    throw std::invalid_argument("constraint matrix needs a nonempty forbidden set");
  ConstraintMatrix m;
  m.alphabet = spec.alphabet;
  m.k = spec.max_len();
  for (const auto& f : spec.forbidden) {
    size_t tail = pow_size(spec.alphabet, m.k - static_cast<unsigned>(f.word.size()));
    size_t base = tuple_index(f.word, spec.alphabet) * tail;
    m.words.push_back(f.word);
    m.spans.emplace_back(base, base + tail);
  }
  return m;
}

}  // namespace scs
