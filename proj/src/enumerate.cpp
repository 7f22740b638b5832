#include "scs/enumerate.hpp"

#include <cmath>
#include <stdexcept>

namespace scs {

bool enumeration_within_budget(unsigned alphabet, unsigned n) {
  return n * std::log2(static_cast<double>(alphabet)) <= 26.0 + 1e-9;
}

namespace {

uint64_t total_words(unsigned alphabet, unsigned n) {
  uint64_t t = 1;
  for (unsigned i = 0; i < n; ++i) t *= alphabet;
  return t;
}

void decode_word(uint64_t index, unsigned alphabet, unsigned n, Word& out) {
  for (unsigned pos = n; pos-- > 0;) {
    out[pos] = static_cast<Symbol>(index % alphabet);
    index /= alphabet;
  }
}

// Precomputed integer form of one membership constraint at fixed n:
// count matches of `word` over `windows` windows, admit iff count <= max_hits.
struct HitRule {
  Word word;
  size_t windows;
  uint64_t max_hits;
  bool cyclic;
};

bool within_tolerance_hits(uint64_t hits, size_t windows, const Rat& cap,
                           const Tolerance& tol, size_t n) {
  Rat t = rat_of(static_cast<long long>(hits), static_cast<long long>(windows));
  Rat slack = t - cap - tol.a / rat_of(static_cast<long long>(n));
  if (slack <= 0) return true;
  if (tol.b == 0) return false;
  return slack * slack * rat_of(static_cast<long long>(n)) <= tol.b * tol.b;
}

std::vector<HitRule> build_rules(const ConstraintSpec& spec, unsigned n, Mode mode) {
  std::vector<HitRule> rules;
  for (const auto& f : spec.forbidden) {
    if (mode != Mode::cyclic && f.word.size() > n) continue;  // T = 0 always
    HitRule r;
    r.word = f.word;
    r.cyclic = (mode == Mode::cyclic);
    r.windows = r.cyclic ? n : n - f.word.size() + 1;
    Rat bound = f.cap * rat_of(static_cast<long long>(r.windows));
    uint64_t h = mpz_get_ui(rat_floor(bound).get_num().get_mpz_t());
    if (mode == Mode::weak) {
      while (h < r.windows && within_tolerance_hits(h + 1, r.windows, f.cap, spec.tolerance, n))
        ++h;
    }
    r.max_hits = h;
    rules.push_back(std::move(r));
  }
  return rules;
}

bool admitted(const Word& w, const std::vector<HitRule>& rules) {
  for (const auto& r : rules) {
    const size_t n = w.size();
    const size_t len = r.word.size();
    uint64_t hits = 0;
    for (size_t i = 0; i < r.windows; ++i) {
      bool match = true;
      if (r.cyclic) {
        for (size_t j = 0; j < len; ++j)
          if (w[(i + j) % n] != r.word[j]) {
            match = false;
            break;
          }
      } else {
        for (size_t j = 0; j < len; ++j)
          if (w[i + j] != r.word[j]) {
            match = false;
            break;
          }
      }
      if (match && ++hits > r.max_hits) return false;
    }
  }
  return true;
}

uint64_t run_count(const ConstraintSpec& spec, unsigned n, Mode mode, bool parallel) {
  spec.validate();
  if (n == 0) throw std::invalid_argument("enumeration needs n >= 1");
  if (!enumeration_within_budget(spec.alphabet, n))
    throw std::invalid_argument("enumeration budget exceeded: n*log2(alphabet) > 26");
  const uint64_t total = total_words(spec.alphabet, n);
  const auto rules = build_rules(spec, n, mode);
  uint64_t count = 0;
  if (parallel) {
#pragma omp parallel reduction(+ : count)
    {
      Word w(n);
#pragma omp for schedule(static)
      for (int64_t i = 0; i < static_cast<int64_t>(total); ++i) {
        decode_word(static_cast<uint64_t>(i), spec.alphabet, n, w);
        if (admitted(w, rules)) ++count;
      }
    }
  } else {
    Word w(n);
    for (uint64_t i = 0; i < total; ++i) {
      decode_word(i, spec.alphabet, n, w);
      if (admitted(w, rules)) ++count;
    }
  }
  return count;
}

}  // namespace

uint64_t enumerate_count(const ConstraintSpec& spec, unsigned n, Mode mode) {
  return run_count(spec, n, mode, true);
}

uint64_t enumerate_count_serial(const ConstraintSpec& spec, unsigned n, Mode mode) {
  return run_count(spec, n, mode, false);
}

}  // namespace scs
