#include "scs/codec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "scs/capacity.hpp"
#include "scs/rational.hpp"

namespace scs {

namespace {

constexpr int kRegisterBits = 63;
constexpr uint64_t kTop = (uint64_t(1) << kRegisterBits) - 1;
constexpr uint64_t kHalf = uint64_t(1) << (kRegisterBits - 1);
constexpr uint64_t kQuarter = uint64_t(1) << (kRegisterBits - 2);
constexpr uint64_t kThreeQuarter = kHalf + kQuarter;

// Treating q at or beyond these endpoints as a deterministic symbol absorbs
// solver noise on support-boundary edges.
constexpr double kForcedTol = 1e-9;

double binary_entropy(double p) {
  double h = 0;
  if (p > 0) h -= p * std::log2(p);
  if (p < 1) h -= (1 - p) * std::log2(1 - p);
  return h;
}

void check_bits(const Bits& bits, const char* what) {
  for (uint8_t b : bits)
    if (b > 1) throw std::invalid_argument(std::string(what) + " entries must be bits");
}

/// Interval split shared by both coder directions. The symbol-0 share of
/// [low, high] is width * c0 / 2^32, at least 1 because the renormalized
/// width exceeds a quarter of the register range and c0 >= 1.
struct Interval {
  uint64_t low = 0;
  uint64_t high = kTop;

  uint64_t split(uint32_t c0) const {
    const unsigned __int128 width = (unsigned __int128)(high - low) + 1;
    return low + (uint64_t)((width * c0) >> 32) - 1;
  }
  void apply(uint64_t sp, uint8_t symbol) {
    if (symbol == 0)
      high = sp;
    else
      low = sp + 1;
  }
  void require_wide() const {
    if (high - low < kQuarter) throw std::logic_error("coder interval collapsed");
  }
};

/// Carry-free bit output: a bit is emitted only once its value is settled;
/// straddles of the register midpoint are counted as pending bits that
/// resolve in one block with the next settled bit.
struct Emitter {
  Bits out;
  uint64_t pending = 0;

  void emit(uint8_t b) {
    out.push_back(b);
    for (; pending; --pending) out.push_back(b ^ 1);
  }
};

void encode_symbol(Interval& iv, Emitter& em, uint32_t c0, uint8_t symbol) {
  iv.apply(iv.split(c0), symbol);
  while (true) {
    if (iv.high < kHalf) {
      em.emit(0);
    } else if (iv.low >= kHalf) {
      em.emit(1);
      iv.low -= kHalf;
      iv.high -= kHalf;
    } else if (iv.low >= kQuarter && iv.high < kThreeQuarter) {
      ++em.pending;
      iv.low -= kQuarter;
      iv.high -= kQuarter;
    } else {
      break;
    }
    iv.low <<= 1;
    iv.high = (iv.high << 1) | 1;
  }
  iv.require_wide();
}

/// Mirror of encode_symbol that selects the symbol from a value register
/// tracking the source bits, and counts settled output bits (`pinned`)
/// without materializing them.
struct BiasDecoder {
  Interval iv;
  uint64_t value = 0;
  const Bits* src = nullptr;
  size_t cursor = 0;
  uint64_t pending = 0;
  size_t pinned = 0;

  // The source is tracked as source ++ 1 ++ 0^inf. The terminating one keeps
  // the tracked point off every dyadic midpoint of depth <= |source|, so the
  // narrowing interval settles all |source| bits instead of straddling the
  // point itself forever (which a bare zero tail does whenever the point
  // never becomes the interval's low endpoint exactly).
  uint8_t next_bit() {
    const size_t i = cursor++;
    if (i < src->size()) return (*src)[i];
    return i == src->size() ? 1 : 0;
  }

  void init(const Bits& bits) {
    src = &bits;
    for (int i = 0; i < kRegisterBits; ++i) value = (value << 1) | next_bit();
  }

  uint8_t step(uint32_t c0) {
    const uint64_t sp = iv.split(c0);
    const uint8_t symbol = value <= sp ? 0 : 1;
    iv.apply(sp, symbol);
    while (true) {
      if (iv.high < kHalf) {
        pinned += 1 + pending;
        pending = 0;
      } else if (iv.low >= kHalf) {
        pinned += 1 + pending;
        pending = 0;
        iv.low -= kHalf;
        iv.high -= kHalf;
        value -= kHalf;
      } else if (iv.low >= kQuarter && iv.high < kThreeQuarter) {
        ++pending;
        iv.low -= kQuarter;
        iv.high -= kQuarter;
        value -= kQuarter;
      } else {
        break;
      }
      iv.low <<= 1;
      iv.high = (iv.high << 1) | 1;
      value = (value << 1) | next_bit();
    }
    iv.require_wide();
    return symbol;
  }
};

uint64_t splitmix64(uint64_t& s) {
  s += 0x9e3779b97f4a7c15ull;
  uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Independent deterministic stream for (seed, lane, sub).
uint64_t derive_seed(uint64_t seed, uint64_t lane, uint64_t sub) {
  uint64_t s = seed ^ (0xd1342543de82ef95ull * (lane + 1)) ^
               (0xaf251af3b0f025b5ull * (sub + 1));
  return splitmix64(s);
}

}  // namespace

uint32_t quantize_probability(double q) {
  if (!(q > 0.0 && q < 1.0))
    throw std::invalid_argument("probability must lie strictly inside (0, 1)");
  const double scaled = std::round(q * 4294967296.0);
  if (scaled < 1.0) return 1;
  if (scaled > 4294967295.0) return 4294967295u;
  return static_cast<uint32_t>(scaled);
}

BiasResult bias(const Bits& source, double q, size_t target_len) {
  check_bits(source, "source");
  const uint32_t c0 = quantize_probability(q);
  BiasDecoder dec;
  dec.init(source);
  BiasResult res;
  res.symbols.reserve(target_len);
  res.need = dec.pinned >= source.size() ? 0 : target_len + 1;
  for (size_t t = 0; t < target_len; ++t) {
    res.symbols.push_back(dec.step(c0));
    if (res.need > target_len && dec.pinned >= source.size()) res.need = t + 1;
  }
  res.e1 = res.need > target_len;
  return res;
}

Bits unbias(const Bits& symbols, double q, size_t out_len) {
  check_bits(symbols, "symbol");
  const uint32_t c0 = quantize_probability(q);
  Interval iv;
  Emitter em;
  for (uint8_t s : symbols) {
    if (em.out.size() >= out_len) break;  // the prefix is append-only
    encode_symbol(iv, em, c0, s);
  }
  if (em.out.size() < out_len) {
    // flush: one settled bit plus the pending block names a point that
    // stays inside the final interval under the zero-tail convention
    ++em.pending;
    em.emit(iv.low < kQuarter ? 0 : 1);
  }
  em.out.resize(out_len, 0);
  return em.out;
}

EncoderPlan make_plan(const ConstraintSpec& spec, size_t n, double epsilon) {
  spec.validate();
  if (spec.alphabet != 2)
    throw std::invalid_argument("the codec works over the binary alphabet");
  if (!(epsilon > 0.0 && epsilon < 0.25))
    throw std::invalid_argument("epsilon must lie in (0, 1/4)");
  if (n == 0) throw std::invalid_argument("input length must be positive");

  EncoderPlan plan;
  plan.spec = spec;
  plan.n = n;
  plan.epsilon = epsilon;
  const CapacityResult cap = solve_capacity(spec);
  plan.capacity = cap.capacity;
  if (!(plan.capacity > 1e-9))
    throw std::invalid_argument("spec has zero capacity; nothing can be transmitted");
  plan.chain = chain_from_measure(cap.optimizer);
  if (!plan.chain.support[0])
    throw std::invalid_argument(
        "the all-zeros start state carries no stationary mass under this spec");

  const double nd = static_cast<double>(n);
  const double slack = std::pow(nd, 0.5 + epsilon);
  const double pad = std::pow(nd, 0.5 + 2 * epsilon);
  plan.pad_len = static_cast<size_t>(std::ceil(pad));
  plan.transmit_len = static_cast<size_t>(std::ceil(nd / plan.capacity + pad));

  const size_t S = plan.chain.graph.vertices;
  plan.states.resize(S);
  double prefix = 0;
  size_t assigned = 0;
  for (size_t i = 0; i < S; ++i) {
    StatePlan& st = plan.states[i];
    const double qi = plan.chain.edge_probs[i];
    if (qi <= kForcedTol || qi >= 1.0 - kForcedTol) {
      st.forced = true;
      st.forced_bit = qi < 0.5 ? 1 : 0;
      st.q = st.forced_bit ? 0.0 : 1.0;
      st.c0 = 0;
      st.n_tilde = 0;
    } else {
      st.q = qi;
      st.c0 = quantize_probability(qi);
      st.n_tilde = binary_entropy(qi) * plan.chain.stationary[i] * nd / plan.capacity;
    }
    // sum-preserving rounding: every prefix sum of n_bits stays within 1/2
    // of the corresponding real prefix, so the final sum lands on n
    prefix += st.n_tilde;
    const size_t target = static_cast<size_t>(std::floor(prefix + 0.5));
    st.n_bits = target - assigned;
    assigned = target;
    if (st.forced)
      st.biased_len = 0;
    else
      st.biased_len = static_cast<size_t>(
          std::ceil(static_cast<double>(st.n_bits) / binary_entropy(st.q) + slack));
  }
  if (assigned != n) throw std::logic_error("information shares do not sum to the input length");
  return plan;
}

std::vector<Bits> partition(const Bits& input, const EncoderPlan& plan) {
  if (input.size() != plan.n)
    throw std::invalid_argument("input length must equal the planned length");
  check_bits(input, "input");
  std::vector<Bits> slices(plan.states.size());
  size_t at = 0;
  for (size_t i = 0; i < plan.states.size(); ++i) {
    slices[i].assign(input.begin() + at, input.begin() + at + plan.states[i].n_bits);
    at += plan.states[i].n_bits;
  }
  return slices;
}

EncodeResult encode(const Bits& input, const EncoderPlan& plan, uint64_t pad_seed,
                    CodecMode mode) {
  const std::vector<Bits> slices = partition(input, plan);
  const size_t S = plan.states.size();

  struct Queue {
    Bits bits;
    size_t pos = 0;
    size_t need = 0;
    size_t pads = 0;
  };
  std::vector<Queue> queues(S);
  EncodeResult res;
  res.visits.assign(S, 0);
  for (size_t i = 0; i < S; ++i) {
    const StatePlan& st = plan.states[i];
    if (st.n_bits == 0) continue;
    BiasResult b = bias(slices[i], st.q, st.biased_len);
    if (b.e1) {
      res.error = {ErrorEvent::Kind::e1, i,
                   "state " + std::to_string(i) + " cannot pin its slice within " +
                       std::to_string(st.biased_len) + " biased symbols"};
      return res;
    }
    queues[i].bits = std::move(b.symbols);
    queues[i].need = b.need;
  }

  std::vector<uint64_t> pad_rng(S);
  for (size_t i = 0; i < S; ++i) pad_rng[i] = derive_seed(pad_seed, i, 0);
  auto pad_bit = [&](size_t i) -> uint8_t {
    const StatePlan& st = plan.states[i];
    if (st.forced) return st.forced_bit;
    return static_cast<uint32_t>(splitmix64(pad_rng[i]) >> 32) < st.c0 ? 0 : 1;
  };

  res.transmitted.reserve(plan.transmit_len);
  size_t u = 0;  // the all-zeros state
  for (size_t t = 0; t < plan.transmit_len; ++t) {
    const StatePlan& st = plan.states[u];
    Queue& queue = queues[u];
    ++res.visits[u];
    uint8_t bit;
    if (queue.pos < queue.bits.size()) {
      bit = queue.bits[queue.pos++];
    } else if (st.n_bits == 0 || queue.pads < plan.pad_len) {
      // informationless states pad indefinitely (their content is
      // discarded); carrying states have a pad_len budget
      bit = pad_bit(u);
      ++queue.pads;
    } else {
      res.error = {ErrorEvent::Kind::e2, u,
                   "queue of state " + std::to_string(u) + " exhausted mid-walk"};
      return res;
    }
    res.transmitted.push_back(bit);
    u = plan.chain.graph.target(plan.chain.graph.edge(u, bit));
  }

  for (size_t i = 0; i < S; ++i) {
    const StatePlan& st = plan.states[i];
    if (st.n_bits == 0) continue;
    const size_t consumed = queues[i].pos;
    if (mode == CodecMode::conservative ? consumed < st.biased_len
                                        : consumed < queues[i].need) {
      res.error = {ErrorEvent::Kind::e2, i,
                   mode == CodecMode::conservative
                       ? "state " + std::to_string(i) + " retains more than pad_len bits"
                       : "state " + std::to_string(i) +
                             " transmitted too little to pin its slice"};
      return res;
    }
  }
  return res;
}

Bits decode(const Bits& received, const EncoderPlan& plan) {
  if (received.size() != plan.transmit_len)
    throw std::invalid_argument("received length must equal the planned transmit length");
  check_bits(received, "received");
  const size_t S = plan.states.size();
  std::vector<Bits> arrived(S);
  size_t u = 0;
  for (uint8_t bit : received) {
    arrived[u].push_back(bit);
    u = plan.chain.graph.target(plan.chain.graph.edge(u, bit));
  }
  Bits out;
  out.reserve(plan.n);
  for (size_t i = 0; i < S; ++i) {
    const StatePlan& st = plan.states[i];
    if (st.n_bits == 0) continue;
    Bits symbols = std::move(arrived[i]);
    if (symbols.size() > st.biased_len) symbols.resize(st.biased_len);
    const Bits slice = unbias(symbols, st.q, st.n_bits);
    out.insert(out.end(), slice.begin(), slice.end());
  }
  return out;
}

namespace {

SimulationReport run_simulation(const ConstraintSpec& spec, size_t n, double epsilon,
                                size_t trials, uint64_t seed, CodecMode mode,
                                bool parallel) {
  const EncoderPlan plan = make_plan(spec, n, epsilon);
  SimulationReport rep;
  rep.trials = trials;
  rep.rate = static_cast<double>(n) / static_cast<double>(plan.transmit_len);
  rep.rows.resize(trials);

  const double N = static_cast<double>(plan.transmit_len);
  const double xi =
      rat_double(spec.tolerance.a) / N + rat_double(spec.tolerance.b) / std::sqrt(N);

  std::vector<uint8_t> mismatch(trials, 0);
  std::vector<double> freqs(trials * spec.forbidden.size(), 0.0);
  const long long count = static_cast<long long>(trials);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long long t = 0; t < count; ++t) {
    uint64_t input_rng = derive_seed(seed, static_cast<uint64_t>(t), 1);
    const uint64_t pad_seed = derive_seed(seed, static_cast<uint64_t>(t), 2);
    Bits input(n);
    for (auto& b : input) b = static_cast<uint8_t>(splitmix64(input_rng) >> 63);

    TrialRow row;
    row.trial = static_cast<size_t>(t);
    const EncodeResult enc = encode(input, plan, pad_seed, mode);
    row.e1 = enc.error.kind == ErrorEvent::Kind::e1;
    row.e2 = enc.error.kind == ErrorEvent::Kind::e2;
    for (size_t i = 0; i < plan.states.size() && !row.e3; ++i)
      if (plan.states[i].n_bits > 0 &&
          enc.visits[i] > plan.states[i].biased_len + plan.pad_len)
        row.e3 = true;
    if (!enc.error) {
      row.success = decode(enc.transmitted, plan) == input;
      if (!row.success) mismatch[static_cast<size_t>(t)] = 1;
      double worst = spec.forbidden.empty() ? 0.0 : -std::numeric_limits<double>::infinity();
      for (size_t f = 0; f < spec.forbidden.size(); ++f) {
        const ForbiddenWord& fw = spec.forbidden[f];
        const double freq = rat_double(subword_frequency(fw.word, enc.transmitted));
        freqs[static_cast<size_t>(t) * spec.forbidden.size() + f] = freq;
        worst = std::max(worst, freq - rat_double(fw.cap) - xi);
      }
      row.max_violation = worst;
    }
    rep.rows[static_cast<size_t>(t)] = row;
  }

  double worst_success = -std::numeric_limits<double>::infinity();
  for (size_t t = 0; t < trials; ++t) {
    const TrialRow& row = rep.rows[t];
    rep.successes += row.success;
    rep.e1_count += row.e1;
    rep.e2_count += row.e2;
    rep.e3_count += row.e3;
    rep.mismatches += mismatch[t];
    if (row.success && row.max_violation > 0) ++rep.violations;
    if (row.success) worst_success = std::max(worst_success, row.max_violation);
  }
  rep.max_violation = rep.successes ? worst_success : 0.0;
  rep.success_rate =
      trials ? static_cast<double>(rep.successes) / static_cast<double>(trials) : 0.0;
  rep.constraint_stats.resize(spec.forbidden.size());
  if (rep.successes > 0) {
    for (size_t f = 0; f < spec.forbidden.size(); ++f) {
      double sum = 0, sq = 0;
      for (size_t t = 0; t < trials; ++t)
        if (rep.rows[t].success) {
          const double x = freqs[t * spec.forbidden.size() + f];
          sum += x;
          sq += x * x;
        }
      const double m = sum / static_cast<double>(rep.successes);
      rep.constraint_stats[f].mean = m;
      rep.constraint_stats[f].stddev =
          rep.successes > 1
              ? std::sqrt(std::max(0.0, (sq - m * sum) /
                                            static_cast<double>(rep.successes - 1)))
              : 0.0;
    }
  }
  return rep;
}

}  // namespace

SimulationReport simulate(const ConstraintSpec& spec, size_t n, double epsilon,
                          size_t trials, uint64_t seed, CodecMode mode) {
  return run_simulation(spec, n, epsilon, trials, seed, mode, true);
}

SimulationReport simulate_serial(const ConstraintSpec& spec, size_t n, double epsilon,
                                 size_t trials, uint64_t seed, CodecMode mode) {
  return run_simulation(spec, n, epsilon, trials, seed, mode, false);
}

std::string simulation_csv(const SimulationReport& report) {
  std::string out = "trial,success,e1,e2,e3,max_violation\n";
  char line[128];
  for (const TrialRow& row : report.rows) {
    std::snprintf(line, sizeof(line), "%zu,%d,%d,%d,%d,%.9g\n", row.trial,
                  row.success ? 1 : 0, row.e1 ? 1 : 0, row.e2 ? 1 : 0, row.e3 ? 1 : 0,
                  row.max_violation);
    out += line;
  }
  return out;
}

}  // namespace scs
