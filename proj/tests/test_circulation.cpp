#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "scs/circulation.hpp"
#include "scs/debruijn.hpp"
#include "scs/measures.hpp"

using namespace scs;

namespace {

void check_window(const Circulation& before, const Circulation& after) {
  REQUIRE(after.w.size() == before.w.size());
  CHECK(after.total == before.total);
  for (size_t e = 0; e < after.w.size(); ++e) {
    CHECK(rat_is_integer(after.w[e]));
    CHECK(after.w[e] >= rat_floor(before.w[e]));
    CHECK(after.w[e] <= rat_ceil(before.w[e]) + 1);
  }
}

}  // namespace

TEST_CASE("circulation construction") {
  const DeBruijnGraph g = build_debruijn(1, 2);
  const Circulation c = make_circulation(g, {rat_of(1), rat_of(2), rat_of(2), rat_of(3)});
  CHECK(c.total == 8);
  CHECK_THROWS_AS(make_circulation(g, {rat_of(1), rat_of(2), rat_of(1), rat_of(3)}),
                  std::invalid_argument);  // conservation fails
  CHECK_THROWS_AS(make_circulation(g, {rat_of(-1), rat_of(0), rat_of(0), rat_of(1)}),
                  std::invalid_argument);  // negative weight
  CHECK_THROWS_AS(make_circulation(g, {rat_of(1)}), std::invalid_argument);  // size
}

TEST_CASE("circulation from a measure") {
  const Circulation u = measure_circulation(
      MeasureQ{2, 2, {rat_of(1, 4), rat_of(1, 4), rat_of(1, 4), rat_of(1, 4)}}, rat_of(4));
  for (const Rat& w : u.w) CHECK(w == 1);
  CHECK(u.total == 4);
  CHECK(u.graph.order == 1);

  const Circulation s =
      measure_circulation(MeasureQ{2, 1, {rat_of(1, 3), rat_of(2, 3)}}, rat_of(3));
  CHECK(s.graph.vertices == 1);
  CHECK(s.w[0] == 1);
  CHECK(s.w[1] == 2);

  CHECK_THROWS_AS(
      measure_circulation(MeasureQ{2, 2, {rat_of(0), rat_of(1), rat_of(0), rat_of(0)}},
                          rat_of(1)),
      std::invalid_argument);  // not shift-invariant
  CHECK_THROWS_AS(
      measure_circulation(MeasureQ{2, 1, {rat_of(1, 2), rat_of(1, 2)}}, rat_of(-1)),
      std::invalid_argument);
}

TEST_CASE("effective length of closed walks") {
  const DeBruijnGraph g = build_debruijn(1, 2);
  CHECK(effective_length(g, {{0, true}}) == 1);                      // loop at 0
  CHECK(effective_length(g, {{1, true}, {1, false}}) == 0);          // there and back
  CHECK(effective_length(g, {{1, true}, {2, true}}) == 2);           // 0 -> 1 -> 0
  // out along the square and back against it
  CHECK(effective_length(g, {{1, true}, {2, true}, {2, false}, {1, false}}) == 0);
  CHECK(effective_length(g, {{0, false}}) == -1);
  CHECK_THROWS_AS(effective_length(g, {}), std::invalid_argument);
  CHECK_THROWS_AS(effective_length(g, {{1, true}, {3, true}}), std::invalid_argument);
  // a backward traversal starts at the edge target, so this pair cannot chain
  CHECK_THROWS_AS(effective_length(g, {{1, true}, {2, false}}), std::invalid_argument);
  CHECK_THROWS_AS(effective_length(g, {{9, true}}), std::invalid_argument);
}

TEST_CASE("cycle adjustment") {
  const DeBruijnGraph g = build_debruijn(1, 2);
  const Circulation c = make_circulation(g, {rat_of(1), rat_of(2), rat_of(2), rat_of(3)});
  const Cycle pair{{1, true}, {2, true}};

  const Circulation up = epsilon_adjust(c, pair, rat_of(1, 2));
  CHECK(up.w[1] == rat_of(5, 2));
  CHECK(up.w[2] == rat_of(5, 2));
  CHECK(up.total == 9);

  const Circulation down = epsilon_adjust(c, pair, rat_of(-2));
  CHECK(down.w[1] == 0);
  CHECK(down.total == 4);

  const Circulation same = epsilon_adjust(c, pair, rat_of(0));
  CHECK(same.w == c.w);

  try {
    epsilon_adjust(c, pair, rat_of(-5, 2));
    FAIL("expected a throw");
  } catch (const std::invalid_argument& err) {
    CHECK(std::string(err.what()).find("edge 1") != std::string::npos);
  }
  CHECK_THROWS_AS(epsilon_adjust(c, {{1, true}, {3, true}}, rat_of(1)),
                  std::invalid_argument);  // not a closed walk
}

TEST_CASE("directed cycle search") {
  const DeBruijnGraph g = build_debruijn(1, 2);
  const Cycle loop = find_directed_cycle(g, 1);
  REQUIRE(loop.size() == 1);
  CHECK(loop[0].edge == 0);
  CHECK(loop[0].forward);

  const Cycle two = find_directed_cycle(g, 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].edge == 1);
  CHECK(two[1].edge == 2);

  for (size_t len = 1; len <= 4; ++len) {
    const Cycle c = find_directed_cycle(g, len);
    CHECK(effective_length(g, c) == static_cast<long>(len));
    std::vector<uint8_t> used(g.edges, 0);
    for (const CycleEdge& t : c) {
      CHECK(t.forward);
      CHECK(!used[t.edge]);
      used[t.edge] = 1;
    }
  }
  const DeBruijnGraph g2 = build_debruijn(2, 2);
  for (size_t len = 1; len <= 8; ++len)
    CHECK(effective_length(g2, find_directed_cycle(g2, len)) == static_cast<long>(len));

  CHECK_THROWS_AS(find_directed_cycle(g, 0), std::invalid_argument);
  CHECK_THROWS_AS(find_directed_cycle(g, 5), std::invalid_argument);
}

TEST_CASE("integer rounding leaves integer circulations alone") {
  const DeBruijnGraph g = build_debruijn(1, 2);
  const Circulation c = make_circulation(g, {rat_of(1), rat_of(2), rat_of(2), rat_of(3)});
  const Circulation r = integer_round_circulation(c);
  CHECK(r.w == c.w);
}

TEST_CASE("integer rounding of the half-integer square") {
  const DeBruijnGraph g = build_debruijn(1, 2);
  const Circulation c = make_circulation(
      g, {rat_of(1, 2), rat_of(1, 2), rat_of(1, 2), rat_of(1, 2)});
  const Circulation r = integer_round_circulation(c);
  check_window(c, r);
  const Circulation again = integer_round_circulation(c);
  CHECK(again.w == r.w);  // deterministic
  CHECK_THROWS_AS(
      integer_round_circulation(make_circulation(
          g, {rat_of(1, 2), rat_of(0), rat_of(0), rat_of(0)})),
      std::invalid_argument);  // total is not an integer
}

TEST_CASE("integer rounding window and conservation properties") {
  std::mt19937_64 rng(505);
  std::uniform_int_distribution<int> word_len(5, 30);
  std::uniform_int_distribution<int> total(1, 40);
  for (int rep = 0; rep < 150; ++rep) {
    const unsigned k = 1 + static_cast<unsigned>(rep % 3);
    const MeasureQ q = oracle::random_shift_invariant(rng, 2, k, word_len(rng));
    const Circulation c = measure_circulation(q, rat_of(total(rng)));
    const Circulation r = integer_round_circulation(c);
    check_window(c, r);
  }
}

TEST_CASE("measure rounding onto the lattice") {
  std::mt19937_64 rng(909);
  // multiples of 1/n are fixed points
  const MeasureQ exact = oracle::random_shift_invariant(rng, 2, 2, 12);
  CHECK(round_measure_to_lattice(exact, 12).w == exact.w);
  const MeasureQ u{2, 2, {rat_of(1, 4), rat_of(1, 4), rat_of(1, 4), rat_of(1, 4)}};
  CHECK(round_measure_to_lattice(u, 4).w == u.w);

  std::uniform_int_distribution<int> word_len(5, 40);
  for (int rep = 0; rep < 100; ++rep) {
    const unsigned k = 1 + static_cast<unsigned>(rep % 3);
    const unsigned long n = (rep % 2) ? 50 : 10;
    const MeasureQ q = oracle::random_shift_invariant(rng, 2, k, word_len(rng));
    const MeasureQ w = round_measure_to_lattice(q, n);
    CHECK(measure_sum(w) == 1);
    CHECK(is_shift_invariant(w));
    Rat worst{0};
    for (size_t i = 0; i < q.w.size(); ++i) {
      Rat d = w.w[i] - q.w[i];
      if (d < 0) d = -d;
      if (d > worst) worst = d;
      CHECK(rat_is_integer(w.w[i] * static_cast<long>(n)));
    }
    CHECK(worst <= rat_of(2, static_cast<long>(n)));
  }

  CHECK_THROWS_AS(round_measure_to_lattice(u, 0), std::invalid_argument);
  CHECK_THROWS_AS(
      round_measure_to_lattice(MeasureQ{2, 1, {rat_of(1, 2), rat_of(1, 4)}}, 4),
      std::invalid_argument);  // not a probability
}

TEST_CASE("realizing a cyclic sequence from integer weights") {
  const DeBruijnGraph g = build_debruijn(1, 2);
  const Word w = realize_cyclic_sequence(
      make_circulation(g, {rat_of(1), rat_of(1), rat_of(1), rat_of(1)}));
  CHECK(w == Word{0, 1, 1, 0});

  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> word_len(4, 32);
  for (int rep = 0; rep < 60; ++rep) {
    const unsigned k = 1 + static_cast<unsigned>(rep % 3);
    const size_t n = static_cast<size_t>(word_len(rng));
    const MeasureQ q = oracle::random_shift_invariant(rng, 2, k, n);
    const Circulation c = measure_circulation(q, rat_of(static_cast<long>(n)));
    const Word realized = realize_cyclic_sequence(c);
    REQUIRE(realized.size() == n);
    // cyclic k-tuple statistics reproduce the weights
    const MeasureQ back = empirical_k_distribution(realized, k, /*cyclic=*/true, 2).measure;
    CHECK(back.w == q.w);
  }

  CHECK_THROWS_AS(realize_cyclic_sequence(make_circulation(
                      g, {rat_of(2), rat_of(0), rat_of(0), rat_of(3)})),
                  std::invalid_argument);  // support split between the loops
  CHECK_THROWS_AS(realize_cyclic_sequence(make_circulation(
                      g, {rat_of(0), rat_of(0), rat_of(0), rat_of(0)})),
                  std::invalid_argument);  // nothing to realize
  CHECK_THROWS_AS(realize_cyclic_sequence(make_circulation(
                      g, {rat_of(1, 2), rat_of(1, 2), rat_of(1, 2), rat_of(1, 2)})),
                  std::invalid_argument);  // fractional weights
}
