// words.hpp -- words over a finite alphabet, empirical frequencies, and
// constraint membership
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scs/rational.hpp"

namespace scs {

using Symbol = uint8_t;
using Word = std::vector<Symbol>;

enum class Mode { strict, weak, cyclic };

/// xi(n) = a/n + b*n^{-1/2}; both factors nonnegative.
struct Tolerance {
  Rat a{0};
  Rat b{0};
};

struct ForbiddenWord {
  Word word;
  Rat cap;  // admissible frequency in [0, 1]
};

/// A finite forbidden set with per-word frequency caps over Sigma = {0..alphabet-1}.
struct ConstraintSpec {
  unsigned alphabet = 2;
  std::vector<ForbiddenWord> forbidden;
  Tolerance tolerance;  // see default_tolerance()

  /// k: the longest forbidden-word length (0 when the set is empty).
  unsigned max_len() const;

  /// a = 2*|Sigma|^{k-1}, b = 0.
  Tolerance default_tolerance() const;

  void validate() const;  // throws std::invalid_argument on malformed data
};

ConstraintSpec make_spec(unsigned alphabet, std::vector<ForbiddenWord> forbidden);

Word parse_word(const std::string& text, unsigned alphabet);
std::string word_str(const Word& word);

/// Fraction of length-|tau| windows of omega equal to tau; 0 when |tau| > |omega|.
/// Exact, denominator |omega| - |tau| + 1.
Rat subword_frequency(const Word& tau, const Word& omega);

/// Wraparound windows at every start position of omega (denominator |omega|).
/// Requires |omega| >= 1.
Rat cyclic_subword_frequency(const Word& tau, const Word& omega);

/// D-dimensional hypercube grid with axis length `side`, stored flat with the
/// last axis fastest. Symbol at (c_0..c_{D-1}) sits at index
/// sum c_j side^{D-1-j}.
struct Grid {
  unsigned dim = 1;
  unsigned side = 1;
  std::vector<Symbol> data;

  void validate() const;
};

/// Axis-aligned wraparound windows along every axis, normalized by side^dim.
/// Values may exceed 1 (dim axes each contribute up to side^dim matches).
Rat cyclic_frequency_ddim(const Word& tau, const Grid& grid);

/// True iff no listed word is a proper subword of another listed word.
bool is_reduced(const std::vector<Word>& words);

/// Membership of omega in the system. strict: T(phi) <= cap(phi) for all phi.
/// weak: T(phi) <= cap(phi) + xi(|omega|). cyclic: strict with wraparound T.
/// Boundary T == cap is admitted. Comparisons are exact (the b*n^{-1/2} term
/// is handled by exact squaring).
bool member(const Word& omega, const ConstraintSpec& spec, Mode mode);

}  // namespace scs
