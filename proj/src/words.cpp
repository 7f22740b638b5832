#include "scs/words.hpp"

#include <algorithm>
#include <stdexcept>

namespace scs {

unsigned ConstraintSpec::max_len() const {
  size_t k = 0;
  for (const auto& f : forbidden) k = std::max(k, f.word.size());
  return static_cast<unsigned>(k);
}

Tolerance ConstraintSpec::default_tolerance() const {
  unsigned k = max_len();
  Rat a = 2;
  for (unsigned i = 0; i + 1 < k; ++i) a *= alphabet;
  return Tolerance{a, Rat(0)};
}

void ConstraintSpec::validate() const {
  if (alphabet < 2) throw std::invalid_argument("alphabet size must be at least 2");
  for (const auto& f : forbidden) {
    if (f.word.empty()) throw std::invalid_argument("empty forbidden word");
    for (Symbol s : f.word)
      if (s >= alphabet) throw std::invalid_argument("forbidden word symbol out of range");
    if (f.cap < 0 || f.cap > 1)
      throw std::invalid_argument("frequency cap outside [0, 1]");
  }
  if (tolerance.a < 0 || tolerance.b < 0)
    throw std::invalid_argument("tolerance factors must be nonnegative");
  std::vector<Word> ws;
  ws.reserve(forbidden.size());
  for (const auto& f : forbidden) ws.push_back(f.word);
  std::sort(ws.begin(), ws.end());
  if (std::adjacent_find(ws.begin(), ws.end()) != ws.end())
    throw std::invalid_argument("duplicate forbidden word");
}

ConstraintSpec make_spec(unsigned alphabet, std::vector<ForbiddenWord> forbidden) {
  ConstraintSpec spec;
  spec.alphabet = alphabet;
  spec.forbidden = std::move(forbidden);
  spec.tolerance = spec.default_tolerance();
  spec.validate();
  return spec;
}

Word parse_word(const std::string& text, unsigned alphabet) {
  if (alphabet > 10) throw std::invalid_argument("digit word form needs alphabet size <= 10");
  Word w;
  w.reserve(text.size());
  for (char c : text) {
    if (c < '0' || c > '9') throw std::invalid_argument("word must be decimal digits");
    unsigned s = static_cast<unsigned>(c - '0');
    if (s >= alphabet) throw std::invalid_argument("word symbol out of range");
    w.push_back(static_cast<Symbol>(s));
  }
  return w;
}

std::string word_str(const Word& word) {
  std::string s;
  s.reserve(word.size());
  for (Symbol x : word) s.push_back(static_cast<char>('0' + x));
  return s;
}

Rat subword_frequency(const Word& tau, const Word& omega) {
  if (tau.size() > omega.size()) return Rat(0);
  size_t windows = omega.size() - tau.size() + 1;
  size_t hits = 0;
  for (size_t i = 0; i < windows; ++i)
    if (std::equal(tau.begin(), tau.end(), omega.begin() + i)) ++hits;
  return rat_of(static_cast<long long>(hits), static_cast<long long>(windows));
}

Rat cyclic_subword_frequency(const Word& tau, const Word& omega) {
  if (omega.empty()) throw std::invalid_argument("cyclic frequency of an empty word");
  size_t n = omega.size();
  size_t hits = 0;
  for (size_t i = 0; i < n; ++i) {
    bool match = true;
    for (size_t j = 0; j < tau.size(); ++j) {
      if (omega[(i + j) % n] != tau[j]) {
        match = false;
        break;
      }
    }
    if (match) ++hits;
  }
  return rat_of(static_cast<long long>(hits), static_cast<long long>(n));
}

void Grid::validate() const {
  if (dim == 0 || side == 0) throw std::invalid_argument("grid needs dim >= 1 and side >= 1");
  size_t cells = 1;
  for (unsigned j = 0; j < dim; ++j) {
    if (cells > (size_t{1} << 40) / side)
      throw std::invalid_argument("grid too large");
    cells *= side;
  }
  if (data.size() != cells) throw std::invalid_argument("grid data size mismatch");
}

Rat cyclic_frequency_ddim(const Word& tau, const Grid& grid) {
  grid.validate();
  if (tau.empty()) throw std::invalid_argument("empty window word");
  size_t cells = grid.data.size();
  // stride[axis] = side^{dim-1-axis}; moving one step along an axis wraps
  // within that axis's block.
  std::vector<size_t> stride(grid.dim);
  size_t s = 1;
  for (unsigned axis = grid.dim; axis-- > 0;) {
    stride[axis] = s;
    s *= grid.side;
  }
  size_t hits = 0;
  for (unsigned axis = 0; axis < grid.dim; ++axis) {
    size_t st = stride[axis];
    size_t block = st * grid.side;  // index period of this axis
    for (size_t cell = 0; cell < cells; ++cell) {
      size_t base = cell - (cell % block);
      size_t offset = cell % block;
      bool match = true;
      for (size_t j = 0; j < tau.size(); ++j) {
        size_t pos = base + (offset + j * st) % block;
        if (grid.data[pos] != tau[j]) {
          match = false;
          break;
        }
      }
      if (match) ++hits;
    }
  }
  return rat_of(static_cast<long long>(hits), static_cast<long long>(cells));
}

bool is_reduced(const std::vector<Word>& words) {
  for (const Word& small : words)
    for (const Word& big : words) {
      if (small.size() >= big.size()) continue;
      size_t windows = big.size() - small.size() + 1;
      for (size_t i = 0; i < windows; ++i)
        if (std::equal(small.begin(), small.end(), big.begin() + i)) return false;
    }
  return true;
}

namespace {

bool within_tolerance(const Rat& freq, const Rat& cap, const Tolerance& tol, size_t n) {
  Rat slack = freq - cap - tol.a / rat_of(static_cast<long long>(n));
  if (slack <= 0) return true;
  if (tol.b == 0) return false;
  // slack <= b / sqrt(n), both sides positive: compare squares exactly.
  return slack * slack * rat_of(static_cast<long long>(n)) <= tol.b * tol.b;
}

}  // namespace

bool member(const Word& omega, const ConstraintSpec& spec, Mode mode) {
  if (omega.empty()) throw std::invalid_argument("membership of the empty word");
  for (Symbol s : omega)
    if (s >= spec.alphabet) throw std::invalid_argument("word symbol out of range");
  for (const auto& f : spec.forbidden) {
    switch (mode) {
      case Mode::strict: {
        if (subword_frequency(f.word, omega) > f.cap) return false;
        break;
      }
      case Mode::weak: {
        Rat t = subword_frequency(f.word, omega);
        if (!within_tolerance(t, f.cap, spec.tolerance, omega.size())) return false;
        break;
      }
      case Mode::cyclic: {
        if (cyclic_subword_frequency(f.word, omega) > f.cap) return false;
        break;
      }
    }
  }
  return true;
}

}  // namespace scs
