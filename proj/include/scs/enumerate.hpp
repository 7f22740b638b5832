// enumerate.hpp -- exhaustive ball counting over Sigma^n
#pragma once

#include <cstdint>

#include "scs/words.hpp"

namespace scs {

/// Hard budget: n * log2(alphabet) must stay <= 26 (at most ~6.7e7 words).
bool enumeration_within_budget(unsigned alphabet, unsigned n);

/// |B_n|: number of omega in Sigma^n admitted by member(omega, spec, mode).
/// Scans all alphabet^n words. Throws std::invalid_argument when the budget
/// guard fails. The parallel kernel and the serial reference return identical
/// counts.
uint64_t enumerate_count(const ConstraintSpec& spec, unsigned n, Mode mode);
uint64_t enumerate_count_serial(const ConstraintSpec& spec, unsigned n, Mode mode);

}  // namespace scs
