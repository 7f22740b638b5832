// serialize.hpp -- text and binary interchange formats: constraint specs as
// JSON, measures/capacity results/chains as structured text, and the framed
// encoded-payload container
#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "scs/capacity.hpp"
#include "scs/codec.hpp"
#include "scs/markov.hpp"
#include "scs/measures.hpp"
#include "scs/words.hpp"

namespace scs {

/// JSON object {alphabet_size, forbidden: [{word, cap}], tolerance: {a, b}}.
/// Words are digit strings; rationals are "num/den", decimal, or integer
/// literals (strings keep them exact; floating JSON numbers are rejected).
/// A missing tolerance field selects the default family. The result is
/// validated before returning.
ConstraintSpec spec_from_json(const std::string& text);

/// Canonical form of the same schema: fixed key order, words as digit
/// strings, rationals as canonical "num/den" strings. Parses back to an
/// equal spec, and is the preimage of spec_sha256.
std::string spec_to_json(const ConstraintSpec& spec);

/// SHA-256 of the canonical JSON form; identifies the spec in encoded files.
std::array<uint8_t, 32> spec_sha256(const ConstraintSpec& spec);

/// Measure as structured text: {alphabet, k, weights: flat array in
/// lexicographic tuple order}. Doubles print with 17 significant digits;
/// exact weights print as "num/den" strings.
std::string measure_text(const MeasureD& m);
std::string measure_text(const MeasureQ& m);

/// Solver result record: capacity, optimizer array, iterations,
/// kkt_residual, feasible, as structured text.
std::string capacity_text(const CapacityResult& result);

/// Chain export: CSV edge list in lexicographic (edge id) order with the
/// conditional probability of each edge given its source state, 17
/// significant digits.
std::string chain_text(const MarkovChain& chain);

/// Encoder plan as structured text: lengths, capacity, and the per-state
/// schedule. Informational; both ends rederive the plan from (spec, n,
/// epsilon) rather than reading this record.
std::string plan_text(const EncoderPlan& plan);

/// Frame around an encoded payload. epsilon travels as an exact num/den
/// pair; spec_hash ties the payload to the spec both sides must share.
struct EncodedHeader {
  uint64_t n = 0;
  uint32_t eps_num = 1;
  uint32_t eps_den = 10;
  std::array<uint8_t, 32> spec_hash{};
  uint64_t pad_seed = 0;
};

/// Byte layout: magic "SCSC", version byte 1, then n (u64), eps_num (u32),
/// eps_den (u32), spec_hash (32 bytes), pad_seed (u64), all little-endian,
/// followed by the bits packed most-significant-bit first, zero-padded to a
/// whole byte.
std::string pack_encoded(const EncodedHeader& header, const Bits& bits);

/// Parses and validates the frame; bit_count says how many payload bits the
/// caller expects (derived from the shared plan). Throws
/// std::invalid_argument on a malformed frame or a short payload.
EncodedHeader unpack_encoded(const std::string& bytes, size_t bit_count, Bits& bits);

/// MSB-first bit packing used by the frame and by raw payload files.
std::string pack_bits(const Bits& bits);
Bits unpack_bits(const std::string& bytes, size_t count);

}  // namespace scs
