// rational.hpp -- exact rational scalar type and text conversions
#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace scs {

using Rat = mpq_class;

inline Rat rat_of(long long num, long long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Rat r(static_cast<long>(num), static_cast<unsigned long>(den));
  r.canonicalize();
  return r;
}

/// Parses "num/den", an integer, or a decimal literal such as "0.05"
/// (converted exactly over a power-of-ten denominator).
/// Throws std::invalid_argument on malformed input.
inline Rat rat_parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    mpz_class num, den;
    if (num.set_str(text.substr(0, slash), 10) != 0 ||
        den.set_str(text.substr(slash + 1), 10) != 0 || den == 0)
      throw std::invalid_argument("bad rational literal: " + text);
    Rat r(num);
    r /= Rat(den);
    return r;
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) {
    mpz_class num;
    if (num.set_str(text, 10) != 0)
      throw std::invalid_argument("bad rational literal: " + text);
    return Rat(num);
  }
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  size_t frac_len = text.size() - dot - 1;
  if (digits.empty() || digits == "-" || digits == "+")
    throw std::invalid_argument("bad rational literal: " + text);
  mpz_class num;
  if (num.set_str(digits, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + text);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
  Rat r(num);
  r /= Rat(den);
  return r;
}

/// Canonical "num/den" form; integral values render without the "/1".
inline std::string rat_str(const Rat& value) {
  Rat v(value);
  v.canonicalize();
  if (mpz_cmp_ui(v.get_den().get_mpz_t(), 1) == 0) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

inline Rat rat_floor(const Rat& value) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num().get_mpz_t(), value.get_den().get_mpz_t());
  return Rat(q);
}

inline Rat rat_ceil(const Rat& value) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num().get_mpz_t(), value.get_den().get_mpz_t());
  return Rat(q);
}

inline bool rat_is_integer(const Rat& value) {
  return mpz_cmp_ui(value.get_den().get_mpz_t(), 1) == 0;
}

inline double rat_double(const Rat& value) { return value.get_d(); }

}  // namespace scs
