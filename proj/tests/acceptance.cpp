// acceptance.cpp -- release gate. Each clause prints one PASS/FAIL line with
// its runtime; the process exits nonzero when any clause fails. Clauses with
// a stated time budget fail when they exceed it.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "scs/bounds.hpp"
#include "scs/capacity.hpp"
#include "scs/circulation.hpp"
#include "scs/codec.hpp"
#include "scs/enumerate.hpp"
#include "scs/measures.hpp"
#include "scs/rational.hpp"
#include "scs/words.hpp"

namespace {

using namespace scs;
using Clock = std::chrono::steady_clock;

std::string fmt(const char* pattern, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

/// Collects the first failing condition of a clause.
struct Check {
  bool ok = true;
  std::string why;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why = what;
    }
  }
};

ConstraintSpec rll_spec(unsigned k, const Rat& p) {
  return make_spec(2, {{Word(k + 1, 1), p}});
}

// Window statistics of the reference word and the constraint map applied to
// them: all values are exact rationals.
void clause1(Check& c) {
  const Word omega = parse_word("101001101000", 2);
  const EmpiricalDistribution emp = empirical_k_distribution(omega, 3, false, 2);
  c.require(emp.windows == 10, "expected 10 length-3 windows");
  const std::vector<Rat> expected = {rat_of(1, 10), rat_of(1, 10), rat_of(2, 10),
                                     rat_of(1, 10), rat_of(2, 10), rat_of(2, 10),
                                     rat_of(1, 10), rat_of(0)};
  for (size_t i = 0; i < expected.size(); ++i)
    c.require(emp.measure.w[i] == expected[i],
              "window frequency of tuple " + std::to_string(i) + " is off");

  const ConstraintSpec spec = make_spec(
      2, {{parse_word("1", 2), rat_of(1, 2)}, {parse_word("100", 2), rat_of(0)}});
  const std::vector<Rat> vals = apply_f(build_constraint_matrix(spec), emp.measure);
  c.require(vals.size() == 2 && vals[0] == rat_of(5, 10) && vals[1] == rat_of(2, 10),
            "constraint map of the reference word is off");
}

// Zero-cap capacities against the run-length growth oracle (dominant root of
// the linear recurrence; golden ratio at k = 1, tribonacci constant at k = 2).
void clause2(Check& c) {
  const struct {
    unsigned k;
    double stated;
  } cases[] = {{1, 0.694242}, {2, 0.879146}};
  for (const auto& cs : cases) {
    const auto t0 = Clock::now();
    const double solved = solve_capacity(rll_spec(cs.k, rat_of(0))).capacity;
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const double want = oracle::run_limited_capacity(cs.k);
    c.require(std::fabs(want - cs.stated) <= 1e-5,
              fmt("growth oracle drifted from %.6f", cs.stated));
    c.require(std::fabs(solved - want) <= 1e-5,
              fmt("solved %.7f vs oracle %.7f", solved, want));
    c.require(secs < 10.0, fmt("solve took %.1fs (budget 10s)", secs));
  }
}

// At cap p = 2^-(k+1) the constraint is met by unbiased coin flips: solved
// capacity 1 within 1e-9 and the closed-form lower bound exactly 1.
void clause3(Check& c) {
  for (unsigned k : {1u, 2u, 3u}) {
    const Rat p = rat_of(1, 1L << (k + 1));
    const double solved = solve_capacity(rll_spec(k, p)).capacity;
    c.require(std::fabs(solved - 1.0) <= 1e-9,
              fmt("k=%.0f solved %.12f != 1", k, solved));
    c.require(lower_bound_capacity(k, rat_double(p)) == 1.0,
              fmt("k=%.0f lower bound not exactly 1", k));
  }
}

// Closed-form bounds sandwich the solved capacity on a 20-point cap grid per
// run length, with slack no worse than -1e-7.
void clause4(Check& c) {
  for (unsigned k = 1; k <= 4; ++k)
    for (int i = 1; i <= 20; ++i) {
      const Rat p = rat_of(i, 20L << (k + 1));
      const double pd = rat_double(p);
      const double lo = lower_bound_capacity(k, pd);
      const double up = upper_bound_capacity(k, pd);
      const double solved = solve_capacity(rll_spec(k, p)).capacity;
      c.require(lo <= solved + 1e-7,
                fmt("k=%.0f p=%.4f lower %.9f above solved", k, pd, lo) +
                    fmt(" %.9f", solved));
      c.require(solved <= up + 1e-7,
                fmt("k=%.0f p=%.4f solved %.9f above upper", k, pd, solved) +
                    fmt(" %.9f", up));
    }
}

// Limit constants of the redundancy gap: endpoint values, convergence of the
// scaled refined gap at k = 20, and the <= ~1.5 ratio between the scaled
// upper and lower constants over the whole range.
void clause5(Check& c) {
  c.require(std::fabs(b_lo(0.0) - std::numbers::log2e) <= 1e-12,
            "b_lo(0) != log2 e");
  c.require(b_up(1.0) == 0.0, "b_up(1) != 0");

  for (double cc : {0.0, 0.25, 0.5, 1.0}) {
    const double lim = b_lo(cc);
    const double v =
        std::ldexp(1.0, 22) * refined_upper_gap(20, cc * std::ldexp(1.0, -21));
    c.require(std::fabs(v - lim) <= 0.02 * lim + 1e-12,
              fmt("c=%.2f scaled gap %.6f vs limit %.6f", cc, v, lim));
  }

  double worst = 0.0, worst_inv = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double cc = i / 1000.0;
    const double lo = b_lo(cc), up = b_up(cc);
    if (up > 0) worst = std::max(worst, lo / (2.0 * up));
    if (i < 1000) worst_inv = std::max(worst_inv, 2.0 * up / lo);
  }
  c.require(worst <= 1.51, fmt("constant ratio %.4f exceeds 1.51", worst));
  c.require(worst_inv <= 1.51, fmt("inverse ratio %.4f exceeds 1.51", worst_inv));
}

// Overlap transform: closed form equals the brute-force weighted sum and is
// exactly 1 at t = 0.
void clause6(Check& c) {
  for (unsigned k : {1u, 2u, 3u, 5u}) {
    c.require(std::fabs(z_function(k, 0.0) - 1.0) <= 1e-15,
              fmt("z(%.0f, 0) != 1", k));
    for (double t : {0.0, 0.1, 1.0, 5.0}) {
      const double want = static_cast<double>(oracle::z_sum(k, t));
      c.require(std::fabs(z_function(k, t) - want) <=
                    1e-12 * (1.0 + std::fabs(want)),
                fmt("z(%.0f, %.1f) off", k, t));
    }
  }
}

// Integer rounding of 10^3 random rational circulations: integer weights,
// exact conservation and total, every edge inside its unit window.
void clause7(Check& c) {
  std::mt19937_64 rng(1003);
  std::uniform_int_distribution<int> word_len(5, 30);
  std::uniform_int_distribution<int> total(1, 40);
  for (int rep = 0; rep < 1000 && c.ok; ++rep) {
    const unsigned m = 1 + static_cast<unsigned>(rep % 3);  // graph order
    const MeasureQ q = oracle::random_shift_invariant(rng, 2, m + 1, word_len(rng));
    const Circulation before = measure_circulation(q, rat_of(total(rng)));
    const Circulation after = integer_round_circulation(before);
    c.require(after.total == before.total, "total changed");
    for (size_t e = 0; e < after.w.size(); ++e) {
      c.require(rat_is_integer(after.w[e]), "non-integer output weight");
      c.require(after.w[e] >= rat_floor(before.w[e]) &&
                    after.w[e] <= rat_ceil(before.w[e]) + 1,
                "edge left its rounding window");
    }
    try {
      make_circulation(after.graph, after.w);  // revalidates conservation
    } catch (const std::exception& e) {
      c.require(false, std::string("conservation lost: ") + e.what());
    }
  }
}

// Lattice rounding: 200 random shift-invariant measures land on the 1/n grid
// within max-norm 2/n, staying shift-invariant probability measures.
void clause8(Check& c) {
  std::mt19937_64 rng(808);
  std::uniform_int_distribution<int> word_len(5, 40);
  for (int rep = 0; rep < 200 && c.ok; ++rep) {
    const unsigned k = 1 + static_cast<unsigned>(rep % 3);
    const MeasureQ q = oracle::random_shift_invariant(rng, 2, k, word_len(rng));
    for (unsigned long n : {10ul, 50ul, 100ul}) {
      const MeasureQ w = round_measure_to_lattice(q, n);
      c.require(measure_sum(w) == 1, "rounded weights do not sum to 1");
      c.require(is_shift_invariant(w), "rounded measure not shift-invariant");
      for (size_t i = 0; i < w.w.size(); ++i) {
        c.require(rat_is_integer(w.w[i] * static_cast<long>(n)),
                  "weight off the 1/n lattice");
        Rat d = w.w[i] - q.w[i];
        if (d < 0) d = -d;
        c.require(d <= rat_of(2, static_cast<long>(n)),
                  fmt("distance above 2/%.0f", static_cast<double>(n)));
      }
    }
  }
}

// Codec end to end: seeded trials at three block lengths. Roundtrip identity
// on every success, success rate non-decreasing and >= 95% at the largest
// length, frequency cap respected (up to the tolerance) on >= 99% of
// successes, and the achieved rate within 5% of the solved capacity.
void clause9(Check& c) {
  ConstraintSpec spec = make_spec(2, {{Word{1, 1, 1}, rat_of(1, 20)}});
  spec.tolerance.b = rat_of(2);
  const double capacity = solve_capacity(spec).capacity;

  double prev_rate = -1.0;
  for (size_t n : {size_t(1) << 10, size_t(1) << 12, size_t(1) << 14}) {
    const SimulationReport rep = simulate(spec, n, 0.1, 200, 2026);
    c.require(rep.mismatches == 0,
              fmt("n=%.0f: decode mismatch on a successful trial",
                  static_cast<double>(n)));
    c.require(rep.success_rate >= prev_rate,
              fmt("success rate fell to %.3f", rep.success_rate));
    prev_rate = rep.success_rate;

    if (n == (size_t(1) << 14)) {
      c.require(rep.success_rate >= 0.95,
                fmt("final success rate %.3f < 0.95", rep.success_rate));
      c.require(rep.violations * 100 <= rep.successes,
                fmt("%.0f of %.0f successes exceed the cap tolerance",
                    static_cast<double>(rep.violations),
                    static_cast<double>(rep.successes)));
      c.require(std::fabs(rep.rate - capacity) <= 0.05,
                fmt("rate %.4f vs capacity %.4f", rep.rate, capacity));
    }
  }
}

// Property suites: rate-function nonnegativity/convexity, the constraint map
// against direct window counting, the cyclic/linear count sandwich at small
// lengths, and the biasing roundtrip.
void clause10(Check& c) {
  {
    std::mt19937_64 rng(101);
    MeasureD prev;
    double prev_rate = 0;
    for (int rep = 0; rep < 1000 && c.ok; ++rep) {
      const MeasureD nu = to_double(oracle::random_shift_invariant(rng, 2, 2, 16));
      const double r = rate_function(nu);
      c.require(r >= -1e-12 && r <= 1.0 + 1e-12, "rate outside [0, 1]");
      if (rep > 0 && std::isfinite(prev_rate) && std::isfinite(r)) {
        MeasureD mid = nu;
        for (size_t i = 0; i < mid.w.size(); ++i)
          mid.w[i] = 0.5 * (nu.w[i] + prev.w[i]);
        c.require(rate_function(mid) <= 0.5 * r + 0.5 * prev_rate + 1e-9,
                  "rate not midpoint-convex");
      }
      prev = nu;
      prev_rate = r;
    }
  }

  {
    std::mt19937_64 rng(202);
    const ConstraintSpec spec = make_spec(2, {{parse_word("1", 2), rat_of(1, 2)},
                                              {parse_word("100", 2), rat_of(0)},
                                              {parse_word("0011", 2), rat_of(1, 4)}});
    const ConstraintMatrix M = build_constraint_matrix(spec);
    for (int rep = 0; rep < 1000 && c.ok; ++rep) {
      const Word omega = oracle::random_word(rng, 2, 4 + rep % 27);
      const EmpiricalDistribution emp = empirical_k_distribution(omega, M.k, false, 2);
      const std::vector<Rat> vals = apply_f(M, emp.measure);
      for (size_t j = 0; j < M.words.size(); ++j)
        c.require(vals[j] == oracle::prefix_window_frequency(M.words[j], omega,
                                                             emp.windows),
                  "constraint map disagrees with direct window counting");
    }
  }

  for (unsigned k : {1u, 2u}) {
    const ConstraintSpec spec = rll_spec(k, rat_of(0));
    for (unsigned n = 3; n <= 12; ++n) {
      const uint64_t cyc = enumerate_count(spec, n, Mode::cyclic);
      c.require(enumerate_count(spec, n - 1, Mode::strict) <= cyc,
                fmt("cyclic count at n=%.0f below the linear count", n));
      c.require(cyc <= enumerate_count(spec, n + k, Mode::strict),
                fmt("cyclic count at n=%.0f above the extended count", n));
    }
  }

  {
    std::mt19937_64 rng(303);
    for (int rep = 0; rep < 1000 && c.ok; ++rep) {
      const size_t len = 1 + rng() % 2000;
      Bits src(len);
      for (auto& b : src) b = static_cast<uint8_t>(rng() & 1);
      const double q = std::uniform_real_distribution<>(0.05, 0.95)(rng);
      const double h = oracle::binary_entropy(q);
      const size_t target = static_cast<size_t>(
          (static_cast<double>(len) + 64 + 12 * std::sqrt(static_cast<double>(len))) /
              h +
          16);
      const BiasResult br = bias(src, q, target);
      c.require(!br.e1, fmt("biasing failed at len=%.0f q=%.3f",
                            static_cast<double>(len), q));
      if (br.e1) continue;
      c.require(unbias(br.symbols, q, len) == src,
                fmt("roundtrip broke at len=%.0f q=%.3f",
                    static_cast<double>(len), q));
    }
  }
}

struct Clause {
  const char* name;
  void (*run)(Check&);
  double budget_s;  // 0: no stated budget
};

}  // namespace

int main() {
  const Clause clauses[] = {
      {"reference word statistics and constraint map", clause1, 1.0},
      {"zero-cap capacities match growth oracles", clause2, 0.0},
      {"capacity one at the unbiased-coin cap", clause3, 0.0},
      {"closed-form bounds sandwich the solved capacity", clause4, 120.0},
      {"asymptotic gap constants and their ratio", clause5, 0.0},
      {"overlap transform closed form", clause6, 0.0},
      {"integer rounding of rational circulations", clause7, 60.0},
      {"lattice rounding of shift-invariant measures", clause8, 0.0},
      {"codec roundtrip, success trend, and rate", clause9, 300.0},
      {"property suites", clause10, 120.0},
  };

  int failures = 0;
  int idx = 0;
  for (const Clause& cl : clauses) {
    ++idx;
    Check check;
    const auto t0 = Clock::now();
    try {
      cl.run(check);
    } catch (const std::exception& e) {
      check.require(false, std::string("unexpected exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (cl.budget_s > 0)
      check.require(secs < cl.budget_s,
                    fmt("took %.1fs (budget %.0fs)", secs, cl.budget_s));
    std::printf("[%2d] %s  %-48s (%.2fs)%s%s\n", idx, check.ok ? "PASS" : "FAIL",
                cl.name, secs, check.ok ? "" : "  -- ",
                check.ok ? "" : check.why.c_str());
    if (!check.ok) ++failures;
  }
  if (failures) {
    std::printf("%d of 10 clauses failed\n", failures);
    return 1;
  }
  std::printf("all 10 clauses passed\n");
  return 0;
}
