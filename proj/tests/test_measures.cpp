#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "scs/measures.hpp"
#include "scs/words.hpp"

using namespace scs;

TEST_CASE("tuple indexing roundtrip") {
  CHECK(pow_size(2, 3) == 8);
  CHECK(tuple_index(parse_word("101", 2), 2) == 5);
  CHECK(index_tuple(5, 2, 3) == parse_word("101", 2));
  for (size_t i = 0; i < pow_size(3, 4); ++i) CHECK(tuple_index(index_tuple(i, 3, 4), 3) == i);
}

TEST_CASE("marginals of a pair measure") {
  MeasureD nu{2, 2, {0.2, 0.3, 0.4, 0.1}};
  auto first = marginal_first(nu);
  CHECK(first.w[0] == doctest::Approx(0.5));
  CHECK(first.w[1] == doctest::Approx(0.5));
  auto last = marginal_last(nu);
  CHECK(last.w[0] == doctest::Approx(0.6));
  CHECK(last.w[1] == doctest::Approx(0.4));
  CHECK(is_probability(nu));
}

TEST_CASE("product extension") {
  MeasureD prefix{2, 2, {0.2, 0.3, 0.4, 0.1}};
  std::vector<double> sym{0.75, 0.25};
  auto ext = product_extend(prefix, sym);
  CHECK(ext.k == 3);
  CHECK(ext.w[tuple_index(parse_word("010", 2), 2)] == doctest::Approx(0.3 * 0.75));
  CHECK(ext.w[tuple_index(parse_word("011", 2), 2)] == doctest::Approx(0.3 * 0.25));
  CHECK(is_probability(ext));
  auto back = marginal_first(ext);
  for (size_t i = 0; i < 4; ++i) CHECK(back.w[i] == doctest::Approx(prefix.w[i]));
}

TEST_CASE("shift invariance detection is exact") {
  // Cyclic empirical distributions are exactly shift invariant.
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    auto nu = oracle::random_shift_invariant(rng, 2, 3, 24);
    CHECK(is_shift_invariant(nu));
    CHECK(shift_invariance_defect(nu) == 0);
  }
  // A generic linear empirical distribution is not.
  auto lin = empirical_k_distribution(parse_word("110100", 2), 2, false, 2).measure;
  CHECK_FALSE(is_shift_invariant(lin));
  CHECK(shift_invariance_defect(lin) > 0);
}

TEST_CASE("rate function frozen values") {
  // Uniform measure has rate zero.
  auto unif = uniform_measure(2, 3);
  CHECK(rate_function(unif) == doctest::Approx(0.0).epsilon(1e-12));

  // Pair measure (1/3, 1/3, 1/3, 0): rate is exactly 1/3 bit.
  MeasureD nu{2, 2, {1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0}};
  CHECK(rate_function(nu) == doctest::Approx(1.0 / 3).epsilon(1e-9));

  // Not shift invariant: rate is +infinity.
  MeasureD skew{2, 2, {0.2, 0.3, 0.4, 0.1}};
  CHECK(std::isinf(rate_function(skew)));
}

TEST_CASE("rate function is nonnegative and bounded by log2 of the alphabet") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 200; ++rep) {
    auto nu = to_double(oracle::random_shift_invariant(rng, 2, 2, 16));
    double r = rate_function(nu);
    CHECK(r >= -1e-12);
    CHECK(r <= 1.0 + 1e-12);
  }
}

TEST_CASE("rate function is convex along random chords") {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 200; ++rep) {
    auto a = to_double(oracle::random_shift_invariant(rng, 2, 2, 18));
    auto b = to_double(oracle::random_shift_invariant(rng, 2, 2, 18));
    MeasureD mid = a;
    for (size_t i = 0; i < mid.w.size(); ++i) mid.w[i] = 0.5 * (a.w[i] + b.w[i]);
    double ra = rate_function(a), rb = rate_function(b), rm = rate_function(mid);
    if (std::isinf(ra) || std::isinf(rb)) continue;
    CHECK(rm <= 0.5 * ra + 0.5 * rb + 1e-9);
  }
}

TEST_CASE("constraint matrix spans and dense form") {
  auto spec = make_spec(2, {{parse_word("1", 2), rat_of(1, 2)}, {parse_word("100", 2), rat_of(0)}});
  auto M = build_constraint_matrix(spec);
  CHECK(M.k == 3);
  REQUIRE(M.spans.size() == 2);
  CHECK(M.spans[0] == std::pair<size_t, size_t>{4, 8});
  CHECK(M.spans[1] == std::pair<size_t, size_t>{4, 5});

  auto dense = M.dense();
  REQUIRE(dense.size() == 2);
  CHECK(dense[0] == std::vector<uint8_t>{0, 0, 0, 0, 1, 1, 1, 1});
  CHECK(dense[1] == std::vector<uint8_t>{0, 0, 0, 0, 1, 0, 0, 0});
}

TEST_CASE("constraint map reproduces window frequencies") {
  // Linear 3-window empirical distribution of a fixed word: the constraint
  // map applied to it must equal the per-word window frequencies.
  Word omega = parse_word("101001101000", 2);
  auto emp = empirical_k_distribution(omega, 3, false, 2);
  CHECK(emp.windows == 10);

  auto spec = make_spec(2, {{parse_word("1", 2), rat_of(1, 2)}, {parse_word("100", 2), rat_of(0)}});
  auto M = build_constraint_matrix(spec);
  auto vals = apply_f(M, emp.measure);
  CHECK(vals[0] == rat_of(5, 10));
  CHECK(vals[1] == rat_of(2, 10));
  CHECK(vals[0] == oracle::prefix_window_frequency(M.words[0], omega, emp.windows));
  CHECK(vals[1] == oracle::prefix_window_frequency(M.words[1], omega, emp.windows));
}

TEST_CASE("constraint map equals window frequencies on random words") {
  std::mt19937_64 rng(17);
  auto spec = make_spec(2, {{parse_word("1", 2), rat_of(1, 2)},
                            {parse_word("100", 2), rat_of(0)},
                            {parse_word("0011", 2), rat_of(1, 4)}});
  auto M = build_constraint_matrix(spec);
  const auto& words = M.words;
  REQUIRE(words.size() == 3);
  for (int rep = 0; rep < 300; ++rep) {
    Word omega = oracle::random_word(rng, 2, 4 + rep % 21);
    auto emp = empirical_k_distribution(omega, 4, false, 2);
    auto vals = apply_f(M, emp.measure);
    for (size_t j = 0; j < words.size(); ++j)
      CHECK(vals[j] == oracle::prefix_window_frequency(words[j], omega, emp.windows));
  }
}

TEST_CASE("empirical distributions are probabilities") {
  std::mt19937_64 rng(19);
  for (int rep = 0; rep < 50; ++rep) {
    Word omega = oracle::random_word(rng, 3, 12);
    for (bool cyclic : {false, true}) {
      auto emp = empirical_k_distribution(omega, 2, cyclic, 3);
      CHECK(is_probability(emp.measure));
      CHECK(emp.windows == (cyclic ? 12 : 11));
    }
  }
  CHECK_THROWS_AS(empirical_k_distribution(parse_word("012", 3), 2, false, 2),
                  std::invalid_argument);
}
