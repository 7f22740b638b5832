#include "scs/serialize.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <cstring>
#include <stdexcept>

#include "json.hpp"

namespace scs {

namespace {

using nlohmann::json;

std::string word_string(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (Symbol x : w) {
    if (x > 9) throw std::invalid_argument("words serialize as digit strings; symbol > 9");
    s.push_back(static_cast<char>('0' + x));
  }
  return s;
}

Rat rat_from_json(const json& j, const char* field) {
  if (j.is_string()) return rat_parse(j.get<std::string>());
  if (j.is_number_integer()) return rat_of(j.get<long long>());
  throw std::invalid_argument(std::string(field) +
                              " must be a rational string or an integer");
}

std::string g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  std::string s = buf;
  // whole numbers keep an explicit decimal point ("1.0", not "1")
  if (s.find_first_not_of("-0123456789") == std::string::npos) s += ".0";
  return s;
}

}  // namespace

ConstraintSpec spec_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (!j.is_object()) throw std::invalid_argument("spec must be a JSON object");
  ConstraintSpec spec;
  spec.alphabet = j.at("alphabet_size").get<unsigned>();
  spec.forbidden.clear();
  for (const json& f : j.at("forbidden")) {
    ForbiddenWord fw;
    fw.word = parse_word(f.at("word").get<std::string>(), spec.alphabet);
    fw.cap = rat_from_json(f.at("cap"), "cap");
    spec.forbidden.push_back(std::move(fw));
  }
  if (j.contains("tolerance")) {
    spec.tolerance.a = rat_from_json(j.at("tolerance").at("a"), "tolerance.a");
    spec.tolerance.b = rat_from_json(j.at("tolerance").at("b"), "tolerance.b");
  } else {
    spec.tolerance = spec.default_tolerance();
  }
  spec.validate();
  return spec;
}

std::string spec_to_json(const ConstraintSpec& spec) {
  json j;
  j["alphabet_size"] = spec.alphabet;
  json arr = json::array();
  for (const ForbiddenWord& fw : spec.forbidden)
    arr.push_back({{"word", word_string(fw.word)}, {"cap", rat_str(fw.cap)}});
  j["forbidden"] = std::move(arr);
  j["tolerance"] = {{"a", rat_str(spec.tolerance.a)}, {"b", rat_str(spec.tolerance.b)}};
  return j.dump();
}

std::array<uint8_t, 32> spec_sha256(const ConstraintSpec& spec) {
  const std::string text = spec_to_json(spec);
  std::array<uint8_t, 32> out{};
  unsigned len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, text.data(), text.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, out.data(), &len) != 1 || len != out.size()) {
    EVP_MD_CTX_free(ctx);
    throw std::runtime_error("sha-256 digest failed");
  }
  EVP_MD_CTX_free(ctx);
  return out;
}

std::string measure_text(const MeasureD& m) {
  json j;
  j["alphabet"] = m.alphabet;
  j["k"] = m.k;
  json arr = json::array();
  for (double x : m.w) arr.push_back(g17(x));
  j["weights"] = std::move(arr);
  return j.dump();
}

std::string measure_text(const MeasureQ& m) {
  json j;
  j["alphabet"] = m.alphabet;
  j["k"] = m.k;
  json arr = json::array();
  for (const Rat& x : m.w) arr.push_back(rat_str(x));
  j["weights"] = std::move(arr);
  return j.dump();
}

std::string capacity_text(const CapacityResult& result) {
  json j;
  j["capacity"] = g17(result.capacity);
  j["optimizer"] = json::parse(measure_text(result.optimizer));
  j["iterations"] = result.iterations;
  j["kkt_residual"] = g17(result.kkt_residual);
  j["feasible"] = result.feasible;
  return j.dump();
}

std::string plan_text(const EncoderPlan& plan) {
  json j;
  j["n"] = plan.n;
  j["epsilon"] = g17(plan.epsilon);
  j["capacity"] = g17(plan.capacity);
  j["transmit_len"] = plan.transmit_len;
  j["pad_len"] = plan.pad_len;
  json arr = json::array();
  for (const StatePlan& s : plan.states) {
    json st;
    st["q"] = g17(s.q);
    st["n_bits"] = s.n_bits;
    st["biased_len"] = s.biased_len;
    st["forced"] = s.forced;
    if (s.forced) st["forced_bit"] = s.forced_bit;
    arr.push_back(std::move(st));
  }
  j["states"] = std::move(arr);
  return j.dump();
}

std::string chain_text(const MarkovChain& chain) {
  std::string out = "edge,word,probability\n";
  const DeBruijnGraph& g = chain.graph;
  for (size_t e = 0; e < g.edges; ++e) {
    Word w = index_tuple(e, g.alphabet, g.order + 1);
    out += std::to_string(e);
    out += ',';
    out += word_string(w);
    out += ',';
    out += g17(chain.edge_prob[e]);
    out += '\n';
  }
  return out;
}

std::string pack_bits(const Bits& bits) {
  std::string bytes((bits.size() + 7) / 8, '\0');
  for (size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) throw std::invalid_argument("bit entries must be 0 or 1");
    if (bits[i]) bytes[i / 8] |= static_cast<char>(0x80u >> (i % 8));
  }
  return bytes;
}

Bits unpack_bits(const std::string& bytes, size_t count) {
  if (bytes.size() * 8 < count)
    throw std::invalid_argument("payload holds fewer bits than requested");
  Bits bits(count);
  for (size_t i = 0; i < count; ++i)
    bits[i] = (static_cast<uint8_t>(bytes[i / 8]) >> (7 - i % 8)) & 1;
  return bits;
}

namespace {

constexpr char kMagic[4] = {'S', 'C', 'S', 'C'};
constexpr uint8_t kVersion = 1;
constexpr size_t kHeaderSize = 4 + 1 + 8 + 4 + 4 + 32 + 8;

void put_u32(std::string& s, uint32_t v) {
  for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& s, uint64_t v) {
  for (int i = 0; i < 8; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

uint32_t get_u32(const std::string& s, size_t at) {
  uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<uint8_t>(s[at + i]);
  return v;
}

uint64_t get_u64(const std::string& s, size_t at) {
  uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<uint8_t>(s[at + i]);
  return v;
}

}  // namespace

std::string pack_encoded(const EncodedHeader& header, const Bits& bits) {
  std::string out(kMagic, 4);
  out.push_back(static_cast<char>(kVersion));
  put_u64(out, header.n);
  put_u32(out, header.eps_num);
  put_u32(out, header.eps_den);
  out.append(reinterpret_cast<const char*>(header.spec_hash.data()),
             header.spec_hash.size());
  put_u64(out, header.pad_seed);
  out += pack_bits(bits);
  return out;
}

EncodedHeader unpack_encoded(const std::string& bytes, size_t bit_count, Bits& bits) {
  if (bytes.size() < kHeaderSize || std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw std::invalid_argument("not an encoded-payload file");
  if (static_cast<uint8_t>(bytes[4]) != kVersion)
    throw std::invalid_argument("unsupported encoded-payload version");
  EncodedHeader h;
  h.n = get_u64(bytes, 5);
  h.eps_num = get_u32(bytes, 13);
  h.eps_den = get_u32(bytes, 17);
  std::memcpy(h.spec_hash.data(), bytes.data() + 21, 32);
  h.pad_seed = get_u64(bytes, 53);
  bits = unpack_bits(bytes.substr(kHeaderSize), bit_count);
  return h;
}

}  // namespace scs
