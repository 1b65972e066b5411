// Copyright 2026 The crclab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "crclab/errinject.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

#include "crclab/errors.hpp"
#include "crclab/json_io.hpp"
#include "crclab/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace crclab {

namespace {

constexpr int kMaxRetries = 64;
constexpr char kManifestMagic[] = "crclab-manifest";
constexpr char kCorpusMagic[8] = {'C', 'R', 'C', 'C', 'O', 'R', 'P', '1'};

std::uint64_t clamp_max(std::uint64_t configured, std::uint64_t packet_bits) {
  return configured == 0 ? packet_bits : std::min(configured, packet_bits);
}

}  // namespace

std::string to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kBurst:
      return "burst";
    case ErrorKind::kRandomFlips:
      return "random_flips";
    case ErrorKind::kInsertion:
      return "insertion";
    case ErrorKind::kDeletion:
      return "deletion";
    case ErrorKind::kReplacement:
      return "replacement";
  }
  return "?";
}

ErrorKind error_kind_from_string(const std::string& name) {
  for (int i = 0; i < kErrorKindCount; ++i) {
    const auto kind = static_cast<ErrorKind>(i);
    if (to_string(kind) == name) return kind;
  }
  throw ConfigError("unknown error kind \"" + name + "\"");
}

void CorpusConfig::validate() const {
  if (packet_bits == 0 || packet_bits % 8 != 0)
    throw ConfigError("packet_bits must be a positive multiple of 8");
  double sum = 0;
  for (double p : mix) {
    if (p < 0) throw ConfigError("mix proportions must be non-negative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw ConfigError("mix proportions must sum to 1");
  // Draw ranges only need to make sense for kinds the mix can produce.
  const auto check = [&](ErrorKind kind, std::uint64_t lo, std::uint64_t hi,
                         std::uint64_t cap) {
    if (mix[static_cast<std::size_t>(kind)] <= 0) return;
    const std::uint64_t eff_hi = std::min(hi == 0 ? cap : hi, cap);
    if (lo < 1 || lo > eff_hi)
      throw ConfigError("empty " + to_string(kind) + " draw range for " +
                        std::to_string(packet_bits) + "-bit packets");
  };
  check(ErrorKind::kBurst, params.burst_min, params.burst_max, packet_bits);
  check(ErrorKind::kRandomFlips, params.flips_min, params.flips_max,
        packet_bits);
  check(ErrorKind::kInsertion, params.insert_min, params.insert_max,
        UINT64_MAX);
  check(ErrorKind::kDeletion, params.delete_min, params.delete_max,
        packet_bits - 1);
  check(ErrorKind::kReplacement, params.replace_min, params.replace_max,
        packet_bits);
}

BitVec generate_clean(const CorpusConfig& config, std::uint64_t block_id) {
  if (config.payload_file.empty()) {
    SplitMix64 rng(
        role_seed(config.master_seed, StreamRole::kCleanPayload, block_id));
    return BitVec::random(config.packet_bits, rng);
  }
  std::ifstream in(config.payload_file, std::ios::binary);
  if (!in) throw ConfigError("cannot open payload file " + config.payload_file);
  const std::uint64_t bytes = config.packet_bits / 8;
  in.seekg(static_cast<std::streamoff>(block_id * bytes));
  std::vector<std::uint8_t> buf(bytes);
  in.read(reinterpret_cast<char*>(buf.data()),
          static_cast<std::streamsize>(bytes));
  if (static_cast<std::uint64_t>(in.gcount()) != bytes)
    throw ConfigError("payload file exhausted at block " +
                      std::to_string(block_id));
  return BitVec::from_bytes(buf, config.packet_bits);
}

HammingDistance hamming_distance(const BitVec& a, const BitVec& b) {
  const BitVec& longer = a.size() >= b.size() ? a : b;
  const BitVec& shorter = a.size() >= b.size() ? b : a;
  HammingDistance out;
  out.length_delta = longer.size() - shorter.size();
  const auto la = longer.bytes();
  const auto lb = shorter.bytes();
  for (std::size_t i = 0; i < la.size(); ++i) {
    const std::uint8_t x = la[i] ^ (i < lb.size() ? lb[i] : 0);
    out.hd += std::popcount(x);
  }
  return out;
}

std::uint64_t differing_bytes(const BitVec& a, const BitVec& b) {
  const auto ba = a.bytes();
  const auto bb = b.bytes();
  const std::size_t n = std::max(ba.size(), bb.size());
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t x = i < ba.size() ? ba[i] : 0;
    const std::uint8_t y = i < bb.size() ? bb[i] : 0;
    if (x != y) ++count;
  }
  return count;
}

namespace {

BitVec draw_burst_pattern(std::uint64_t span, SplitMix64& rng) {
  BitVec pattern = BitVec::random(span, rng);
  pattern.set(0, true);
  pattern.set(span - 1, true);
  return pattern;
}

// One corruption attempt; returns the corrupted block.
BitVec apply_spec(const BitVec& block, const ErrorSpec& spec,
                  SplitMix64& rng) {
  switch (spec.kind) {
    case ErrorKind::kBurst: {
      if (spec.length == 0 || spec.offset + spec.length > block.size())
        throw std::out_of_range("burst span outside the block");
      BitVec pattern;
      if (spec.pattern) {
        pattern = *spec.pattern;
        if (pattern.size() != spec.length)
          throw std::invalid_argument("burst pattern length != spec length");
        if (!pattern.get(0) || !pattern.get(pattern.size() - 1))
          throw std::invalid_argument(
              "burst pattern must have its first and last bits set");
      } else {
        pattern = draw_burst_pattern(spec.length, rng);
      }
      BitVec out = block;
      out.xor_at(spec.offset, pattern);
      return out;
    }
    case ErrorKind::kRandomFlips: {
      if (spec.length == 0 || spec.length > block.size())
        throw std::out_of_range("flip count outside the block");
      std::unordered_set<std::uint64_t> positions;
      while (positions.size() < spec.length)
        positions.insert(rng.next_below(block.size()));
      BitVec out = block;
      for (std::uint64_t p : positions) out.flip(p);
      return out;
    }
    case ErrorKind::kInsertion: {
      if (spec.offset > block.size())
        throw std::out_of_range("insertion offset outside the block");
      if (spec.length == 0) return block;  // zero-effect, rejected by caller
      BitVec bits = BitVec::random(spec.length, rng);
      BitVec out = block;
      out.insert(spec.offset, bits);
      return out;
    }
    case ErrorKind::kDeletion: {
      if (spec.length >= block.size())
        throw std::out_of_range("deletion must leave at least one bit");
      if (spec.offset + spec.length > block.size())
        throw std::out_of_range("deletion span outside the block");
      if (spec.length == 0) return block;
      BitVec out = block;
      out.erase(spec.offset, spec.length);
      return out;
    }
    case ErrorKind::kReplacement: {
      if (spec.length == 0 || spec.offset + spec.length > block.size())
        throw std::out_of_range("replacement span outside the block");
      BitVec bits = BitVec::random(spec.length, rng);
      BitVec out = block;
      out.overwrite(spec.offset, bits);
      return out;
    }
  }
  throw std::logic_error("unknown error kind");
}

}  // namespace

std::pair<BitVec, CorruptionRecord> corrupt(const BitVec& block,
                                            const ErrorSpec& spec,
                                            std::uint64_t seed,
                                            std::uint64_t block_id) {
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    const std::uint64_t attempt_seed =
        attempt == 0 ? seed : mix64(seed + static_cast<std::uint64_t>(attempt));
    SplitMix64 rng(attempt_seed);
    BitVec corrupted = apply_spec(block, spec, rng);
    if (corrupted == block) continue;
    CorruptionRecord rec;
    rec.block_id = block_id;
    rec.specs = {spec};
    rec.seed = attempt_seed;
    rec.resulting_length = corrupted.size();
    const HammingDistance h = hamming_distance(block, corrupted);
    rec.hd = h.hd;
    rec.length_delta = h.length_delta;
    rec.differing_bytes = differing_bytes(block, corrupted);
    return {std::move(corrupted), std::move(rec)};
  }
  throw ZeroEffectError("corruption of block " + std::to_string(block_id) +
                        " (" + to_string(spec.kind) +
                        ") left it unchanged after " +
                        std::to_string(kMaxRetries) + " attempts");
}

ErrorKind kind_for_block(const CorpusConfig& config, std::uint64_t block_id) {
  const std::uint64_t n = config.packet_count;
  assert(block_id < n);
  // Exact integer quotas from the cumulative proportions.
  std::array<std::uint64_t, kErrorKindCount> threshold{};
  double cum = 0;
  for (int k = 0; k < kErrorKindCount; ++k) {
    cum += config.mix[static_cast<std::size_t>(k)];
    threshold[static_cast<std::size_t>(k)] = static_cast<std::uint64_t>(
        std::llround(cum * static_cast<double>(n)));
  }
  threshold[kErrorKindCount - 1] = n;
  // Golden-ratio stride, adjusted until coprime, permutes the ids so the
  // kinds interleave instead of running in contiguous bands.
  std::uint64_t stride = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(0.6180339887498949 *
                                    static_cast<double>(n)));
  while (std::gcd(stride, n) != 1) ++stride;
  const std::uint64_t slot = static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(block_id) * stride) % n);
  for (int k = 0; k < kErrorKindCount; ++k)
    if (slot < threshold[static_cast<std::size_t>(k)])
      return static_cast<ErrorKind>(k);
  return ErrorKind::kReplacement;
}

std::pair<BitVec, CorruptionRecord> corrupt_block(const CorpusConfig& config,
                                                  std::uint64_t block_id,
                                                  const BitVec& clean) {
  SplitMix64 rng(
      role_seed(config.master_seed, StreamRole::kCorruption, block_id));
  const ErrorKind kind = kind_for_block(config, block_id);
  const ErrorModelParams& p = config.params;
  const std::uint64_t bits = config.packet_bits;
  ErrorSpec spec;
  spec.kind = kind;
  switch (kind) {
    case ErrorKind::kBurst: {
      const std::uint64_t hi = clamp_max(p.burst_max, bits);
      const std::uint64_t lo = std::min(std::max<std::uint64_t>(p.burst_min, 1), hi);
      spec.length = rng.next_in(lo, hi);
      spec.offset = rng.next_in(0, bits - spec.length);
      break;
    }
    case ErrorKind::kRandomFlips:
      spec.length = rng.next_in(std::max<std::uint64_t>(p.flips_min, 1),
                                std::min(p.flips_max, bits));
      spec.offset = 0;
      break;
    case ErrorKind::kInsertion:
      spec.length = rng.next_in(std::max<std::uint64_t>(p.insert_min, 1),
                                p.insert_max);
      spec.offset = rng.next_in(0, bits);
      break;
    case ErrorKind::kDeletion:
      spec.length = rng.next_in(std::max<std::uint64_t>(p.delete_min, 1),
                                std::min(p.delete_max, bits - 1));
      spec.offset = rng.next_in(0, bits - spec.length);
      break;
    case ErrorKind::kReplacement: {
      const std::uint64_t hi = clamp_max(p.replace_max, bits);
      const std::uint64_t lo =
          std::min(std::max<std::uint64_t>(p.replace_min, 1), hi);
      spec.length = rng.next_in(lo, hi);
      spec.offset = rng.next_in(0, bits - spec.length);
      break;
    }
  }
  const std::uint64_t corrupt_seed = rng.next();
  return corrupt(clean, spec, corrupt_seed, block_id);
}

Manifest build_corpus(const CorpusConfig& config, int workers) {
  config.validate();
  Manifest manifest;
  manifest.config = config;
  manifest.records.resize(config.packet_count);
  const std::int64_t n = static_cast<std::int64_t>(config.packet_count);
#ifdef _OPENMP
  const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
#endif
  for (std::int64_t i = 0; i < n; ++i) {
    const auto id = static_cast<std::uint64_t>(i);
    const BitVec clean = generate_clean(config, id);
    manifest.records[static_cast<std::size_t>(i)] =
        corrupt_block(config, id, clean).second;
  }
  return manifest;
}

BitVec replay_block(const CorpusConfig& config, const CorruptionRecord& rec) {
  BitVec block = generate_clean(config, rec.block_id);
  for (std::size_t i = 0; i < rec.specs.size(); ++i) {
    // Spec 0 uses the recorded seed; later specs chain off it.
    SplitMix64 rng(i == 0 ? rec.seed : mix64(rec.seed + i));
    block = apply_spec(block, rec.specs[i], rng);
  }
  if (block.size() != rec.resulting_length)
    throw IntegrityError("replayed block " + std::to_string(rec.block_id) +
                         " does not match its recorded length");
  return block;
}

// ---------------------------------------------------------------------------
// Serialization

void require_keys(const nlohmann::json& j,
                  std::initializer_list<const char*> allowed,
                  const std::string& context) {
  if (!j.is_object()) throw ConfigError(context + ": expected an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        known = true;
        break;
      }
    if (!known)
      throw ConfigError(context + ": unknown key \"" + item.key() + "\"");
  }
}

nlohmann::json to_json(const CorpusConfig& config) {
  nlohmann::json mix;
  for (int k = 0; k < kErrorKindCount; ++k)
    mix[to_string(static_cast<ErrorKind>(k))] =
        config.mix[static_cast<std::size_t>(k)];
  nlohmann::json j{
      {"packet_count", config.packet_count},
      {"packet_bits", config.packet_bits},
      {"master_seed", config.master_seed},
      {"payload_source",
       config.payload_file.empty() ? "seeded-random" : "file"},
      {"mix", mix},
      {"error_params",
       {{"burst_span", {config.params.burst_min, config.params.burst_max}},
        {"flip_count", {config.params.flips_min, config.params.flips_max}},
        {"insertion_bits",
         {config.params.insert_min, config.params.insert_max}},
        {"deletion_bits", {config.params.delete_min, config.params.delete_max}},
        {"replacement_span",
         {config.params.replace_min, config.params.replace_max}}}},
  };
  if (!config.payload_file.empty()) j["payload_file"] = config.payload_file;
  return j;
}

namespace {

void read_range(const nlohmann::json& j, const char* key, std::uint64_t& lo,
                std::uint64_t& hi) {
  if (!j.contains(key)) return;
  const auto& r = j.at(key);
  if (!r.is_array() || r.size() != 2)
    throw ConfigError(std::string("error_params.") + key +
                      " must be [min, max]");
  lo = r[0].get<std::uint64_t>();
  hi = r[1].get<std::uint64_t>();
}

}  // namespace

CorpusConfig corpus_config_from_json(const nlohmann::json& j) {
  require_keys(j,
               {"packet_count", "packet_bits", "master_seed", "payload_source",
                "payload_file", "mix", "error_params"},
               "corpus");
  CorpusConfig config;
  if (j.contains("packet_count"))
    config.packet_count = j.at("packet_count").get<std::uint64_t>();
  if (j.contains("packet_bits"))
    config.packet_bits = j.at("packet_bits").get<std::uint64_t>();
  if (j.contains("master_seed"))
    config.master_seed = j.at("master_seed").get<std::uint64_t>();
  std::string source = "seeded-random";
  if (j.contains("payload_source"))
    source = j.at("payload_source").get<std::string>();
  if (source == "file") {
    if (!j.contains("payload_file"))
      throw ConfigError("payload_source \"file\" needs payload_file");
    config.payload_file = j.at("payload_file").get<std::string>();
  } else if (source != "seeded-random") {
    throw ConfigError("payload_source must be seeded-random or file");
  }
  if (j.contains("mix")) {
    const auto& mix = j.at("mix");
    require_keys(mix,
                 {"burst", "random_flips", "insertion", "deletion",
                  "replacement"},
                 "mix");
    config.mix.fill(0.0);
    for (const auto& item : mix.items())
      config.mix[static_cast<std::size_t>(
          error_kind_from_string(item.key()))] = item.value().get<double>();
  }
  if (j.contains("error_params")) {
    const auto& p = j.at("error_params");
    require_keys(p,
                 {"burst_span", "flip_count", "insertion_bits",
                  "deletion_bits", "replacement_span"},
                 "error_params");
    read_range(p, "burst_span", config.params.burst_min,
               config.params.burst_max);
    read_range(p, "flip_count", config.params.flips_min,
               config.params.flips_max);
    read_range(p, "insertion_bits", config.params.insert_min,
               config.params.insert_max);
    read_range(p, "deletion_bits", config.params.delete_min,
               config.params.delete_max);
    read_range(p, "replacement_span", config.params.replace_min,
               config.params.replace_max);
  }
  config.validate();
  return config;
}

nlohmann::json to_json(const CorruptionRecord& rec) {
  nlohmann::json specs = nlohmann::json::array();
  for (const ErrorSpec& s : rec.specs) {
    nlohmann::json js{{"kind", to_string(s.kind)},
                      {"offset", s.offset},
                      {"length", s.length}};
    if (s.pattern) js["pattern"] = s.pattern->to_string();
    specs.push_back(std::move(js));
  }
  return nlohmann::json{{"block", rec.block_id},
                        {"seed", rec.seed},
                        {"specs", specs},
                        {"resulting_length", rec.resulting_length},
                        {"hd", rec.hd},
                        {"length_delta", rec.length_delta},
                        {"differing_bytes", rec.differing_bytes}};
}

CorruptionRecord record_from_json(const nlohmann::json& j) {
  require_keys(j,
               {"block", "seed", "specs", "resulting_length", "hd",
                "length_delta", "differing_bytes"},
               "record");
  CorruptionRecord rec;
  rec.block_id = j.at("block").get<std::uint64_t>();
  rec.seed = j.at("seed").get<std::uint64_t>();
  rec.resulting_length = j.at("resulting_length").get<std::uint64_t>();
  rec.hd = j.at("hd").get<std::uint64_t>();
  rec.length_delta = j.at("length_delta").get<std::uint64_t>();
  rec.differing_bytes = j.at("differing_bytes").get<std::uint64_t>();
  for (const auto& js : j.at("specs")) {
    require_keys(js, {"kind", "offset", "length", "pattern"}, "spec");
    ErrorSpec spec;
    spec.kind = error_kind_from_string(js.at("kind").get<std::string>());
    spec.offset = js.at("offset").get<std::uint64_t>();
    spec.length = js.at("length").get<std::uint64_t>();
    if (js.contains("pattern"))
      spec.pattern = BitVec::from_string(js.at("pattern").get<std::string>());
    rec.specs.push_back(std::move(spec));
  }
  return rec;
}

void write_manifest(std::ostream& out, const Manifest& manifest) {
  nlohmann::json header{{"magic", kManifestMagic},
                        {"version", 1},
                        {"config", to_json(manifest.config)}};
  out << header.dump() << '\n';
  for (const CorruptionRecord& rec : manifest.records)
    out << to_json(rec).dump() << '\n';
}

Manifest read_manifest(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw IntegrityError("manifest is empty");
  nlohmann::json header = nlohmann::json::parse(line);
  require_keys(header, {"magic", "version", "config"}, "manifest header");
  if (header.at("magic").get<std::string>() != kManifestMagic)
    throw IntegrityError("not a manifest file");
  if (header.at("version").get<int>() != 1)
    throw IntegrityError("unsupported manifest version");
  Manifest manifest;
  manifest.config = corpus_config_from_json(header.at("config"));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    manifest.records.push_back(record_from_json(nlohmann::json::parse(line)));
  }
  std::sort(manifest.records.begin(), manifest.records.end(),
            [](const CorruptionRecord& a, const CorruptionRecord& b) {
              return a.block_id < b.block_id;
            });
  return manifest;
}

void materialize_clean(const CorpusConfig& config, const std::string& path) {
  config.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open " + path + " for writing");
  out.write(kCorpusMagic, sizeof(kCorpusMagic));
  const std::uint64_t version = 1;
  const auto put_u64 = [&](std::uint64_t v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    out.write(buf, 8);
  };
  put_u64(version);
  put_u64(config.packet_bits);
  put_u64(config.packet_count);
  for (std::uint64_t i = 0; i < config.packet_count; ++i) {
    const BitVec block = generate_clean(config, i);
    const auto bytes = block.bytes();
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
  }
}

}  // namespace crclab
