// codec.hpp -- biased graph-walk encoder/decoder: an input bit string is
// partitioned across chain states, each slice is re-expressed as a
// Bernoulli(q_i) symbol stream by an arithmetic decoder, and a walk on the
// overlap-shift graph transmits the streams so the emitted word obeys the
// constraints up to the weak tolerance.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scs/markov.hpp"
#include "scs/words.hpp"

namespace scs {

using Bits = std::vector<uint8_t>;  // one 0/1 value per entry

/// Probability of symbol 0 as a 32-bit fixed-point count, clamped to
/// [1, 2^32 - 1] so both symbols keep nonzero coding range.
uint32_t quantize_probability(double q);

/// Result of re-expressing a bit slice as Bernoulli(q) symbols.
/// `need` is the shortest symbol prefix whose re-encoding settles every
/// source bit (the settled bits of an arithmetic encoder are append-only,
/// so anything following that prefix cannot disturb them); e1 flags that no
/// prefix of the requested length achieves this.
struct BiasResult {
  Bits symbols;
  size_t need = 0;
  bool e1 = false;
};

/// Arithmetic-decodes `source` (extended by an implicit terminator: a one
/// bit, then zeros) as if it were code for a Bernoulli(q) symbol source,
/// emitting exactly target_len symbols. q = P(symbol 0), quantized to
/// 32-bit fixed point.
BiasResult bias(const Bits& source, double q, size_t target_len);

/// Inverse stage: arithmetic-encodes `symbols` under the same quantized
/// Bernoulli(q) model and returns the first out_len code bits (zero-padded
/// when the symbols pin fewer than out_len bits). Throws on non-bit input.
Bits unbias(const Bits& symbols, double q, size_t out_len);

/// Failure taxonomy of one encode attempt. e1: some slice cannot be pinned
/// within its biased budget. e2: a state queue was exhausted mid-walk or
/// ended the walk short of its decodable prefix. e3 (reported by simulate):
/// a carrying state was visited more than biased_len + pad_len times.
struct ErrorEvent {
  enum class Kind { none, e1, e2, e3 };
  Kind kind = Kind::none;
  size_t state = 0;
  std::string detail;

  explicit operator bool() const { return kind != Kind::none; }
};

/// Success test applied at the end of the walk. `exact` accepts whenever
/// every carrying state transmitted its decodable prefix (the decoder can
/// reconstruct all n bits); `conservative` additionally requires every
/// queue to be drained down to padding, which is strictly stronger.
enum class CodecMode { exact, conservative };

/// Per-state walk budget. Carrying states (n_bits > 0) queue `biased_len`
/// biased symbols plus pad_len padding bits; informationless states
/// (n_bits = 0, including deterministic q in {0,1}) serve padding
/// indefinitely since the decoder discards their content.
struct StatePlan {
  double q = 0.5;           // probability of emitting 0
  uint32_t c0 = 0;          // fixed-point quantization of q (0 when forced)
  bool forced = false;      // q in {0,1}: the emitted bit is determined
  uint8_t forced_bit = 0;
  double n_tilde = 0;       // real-valued information share
  size_t n_bits = 0;        // rounded share; sums to n over the states
  size_t biased_len = 0;    // biased symbols queued (0 for forced states)
};

/// Deterministic function of (spec, n, epsilon): both sides derive the same
/// plan, so no plan data travels with the payload.
struct EncoderPlan {
  ConstraintSpec spec;
  size_t n = 0;
  double epsilon = 0.1;
  double capacity = 0;
  MarkovChain chain;
  std::vector<StatePlan> states;
  size_t pad_len = 0;
  size_t transmit_len = 0;
};

/// Splits n information bits across the chain states proportionally to
/// stationary_mass * entropy(q) / capacity, rounds the shares so they sum
/// to n with every intermediate sum less than 1 from its target, and sizes
/// the per-state budgets and the transmitted length. Throws on epsilon
/// outside (0, 1/4), a non-binary alphabet, or zero capacity.
EncoderPlan make_plan(const ConstraintSpec& spec, size_t n, double epsilon = 0.1);

/// Contiguous slices of the input in state order, slice i of length
/// n_bits(i). Throws when the input length differs from plan.n.
std::vector<Bits> partition(const Bits& input, const EncoderPlan& plan);

struct EncodeResult {
  ErrorEvent error;
  Bits transmitted;            // transmit_len bits when error is none
  std::vector<size_t> visits;  // per-state visit counts of the walk
};

/// Walks the graph from state 0^{k-1} for transmit_len steps, emitting the
/// front of the current state's queue and advancing by the emitted bit.
/// Queues hold the biased slices plus padding drawn from a generator seeded
/// by (pad_seed, state). The transmitted stream is a deterministic function
/// of (input, plan, pad_seed).
EncodeResult encode(const Bits& input, const EncoderPlan& plan, uint64_t pad_seed,
                    CodecMode mode = CodecMode::exact);

/// Replays the walk: routes each received bit to the queue of the state
/// that emitted it, truncates queue i to min(arrived, biased_len), unbiases
/// and concatenates in state order. Inverse of a successful encode. Throws
/// when the received length is not transmit_len or entries are not bits.
Bits decode(const Bits& received, const EncoderPlan& plan);

struct TrialRow {
  size_t trial = 0;
  bool success = false;
  bool e1 = false, e2 = false, e3 = false;
  double max_violation = 0;  // max over forbidden words of T - cap - xi(N)
};

/// Frequency statistics of one forbidden word over the successful trials.
struct ConstraintStat {
  double mean = 0;    // mean frequency of the word in transmitted streams
  double stddev = 0;  // sample standard deviation of that frequency
};

struct SimulationReport {
  size_t trials = 0;
  size_t successes = 0;
  size_t e1_count = 0, e2_count = 0, e3_count = 0;
  size_t mismatches = 0;   // roundtrip failures on accepted trials (must be 0)
  size_t violations = 0;   // successful trials whose word exceeds the tolerance
  double success_rate = 0;
  double rate = 0;         // n / transmit_len
  double max_violation = 0;  // worst over successful trials (0 when none)
  std::vector<ConstraintStat> constraint_stats;  // one per forbidden word
  std::vector<TrialRow> rows;
};

/// Runs seeded i.i.d. Bernoulli(1/2) inputs through encode/decode and
/// reports error events, roundtrip fidelity, and constraint statistics of
/// the transmitted words against spec.tolerance. Trials are independent;
/// the parallel and serial versions produce identical reports.
SimulationReport simulate(const ConstraintSpec& spec, size_t n, double epsilon,
                          size_t trials, uint64_t seed,
                          CodecMode mode = CodecMode::exact);
SimulationReport simulate_serial(const ConstraintSpec& spec, size_t n, double epsilon,
                                 size_t trials, uint64_t seed,
                                 CodecMode mode = CodecMode::exact);

/// CSV rows "trial,success,e1,e2,e3,max_violation" with a header line.
std::string simulation_csv(const SimulationReport& report);

}  // namespace scs
