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

#include "crclab/harness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "crclab/errors.hpp"
#include "crclab/json_io.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace crclab {

namespace {

int resolve_workers(int workers) {
#ifdef _OPENMP
  return workers > 0 ? workers : omp_get_max_threads();
#else
  (void)workers;
  return 1;
#endif
}

struct PreparedGenerator {
  CrcSpec spec;
  CrcTable table;
};

}  // namespace

void ExperimentConfig::validate() const {
  corpus.validate();
  if (generators.empty())
    throw ConfigError("experiment needs at least one generator");
  const auto width = generators.front().poly.degree();
  for (const GeneratorRecord& rec : generators) {
    const auto deg = rec.poly.degree();
    if (!deg || *deg < 8 || *deg > 64)
      throw ConfigError("experiment generators must have degree 8..64, got " +
                        rec.poly.to_hex());
    if (deg != width)
      throw ConfigError("experiment generators must share one width");
  }
}

double expected_undetected(std::uint64_t packet_count, unsigned width) {
  if (width < 1) throw std::invalid_argument("width must be >= 1");
  return static_cast<double>(packet_count) * std::ldexp(1.0, -static_cast<int>(width));
}

FiveNum tukey_five_number(std::vector<std::uint64_t> values) {
  FiveNum out;
  out.count = values.size();
  if (values.empty()) return out;
  std::sort(values.begin(), values.end());
  const auto median_of = [&](std::size_t lo, std::size_t hi) {  // [lo, hi)
    const std::size_t n = hi - lo;
    const std::size_t mid = lo + n / 2;
    if (n % 2 == 1) return static_cast<double>(values[mid]);
    return (static_cast<double>(values[mid - 1]) +
            static_cast<double>(values[mid])) /
           2.0;
  };
  const std::size_t n = values.size();
  out.min = static_cast<double>(values.front());
  out.max = static_cast<double>(values.back());
  out.median = median_of(0, n);
  // Hinges: each half includes the middle element when n is odd.
  const std::size_t half = (n + 1) / 2;
  out.q1 = median_of(0, half);
  out.q3 = median_of(n - half, n);
  return out;
}

ExperimentSummary aggregate(const std::vector<GeneratorOutcome>& outcomes,
                            std::uint64_t packet_count,
                            const std::vector<std::uint64_t>& missed_hd) {
  ExperimentSummary summary;
  if (outcomes.empty()) return summary;
  const unsigned width = outcomes.front().record.poly.degree().value_or(0);
  summary.expected = expected_undetected(packet_count, width);

  // Mean over distinct polynomials: a generator listed under two selection
  // methods is still one polynomial.
  std::set<std::string> seen;
  std::uint64_t total = 0;
  for (const GeneratorOutcome& o : outcomes) {
    if (seen.insert(o.record.hex()).second) total += o.undetected;
  }
  summary.mean_undetected =
      static_cast<double>(total) / static_cast<double>(seen.size());
  summary.absolute_deviation =
      std::abs(summary.mean_undetected - summary.expected);
  summary.relative_error =
      summary.expected == 0 ? 0
                            : summary.absolute_deviation / summary.expected;

  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> by_method;
  for (const GeneratorOutcome& o : outcomes) {
    auto& [sum, count] = by_method[to_string(o.record.method)];
    sum += o.undetected;
    ++count;
  }
  for (const auto& [method, sc] : by_method)
    summary.method_means[method] =
        static_cast<double>(sc.first) / static_cast<double>(sc.second);

  summary.hd = tukey_five_number(missed_hd);
  return summary;
}

std::vector<MissedBlock> elusive_blocks(const ExperimentReport& report,
                                        std::uint32_t k) {
  std::vector<MissedBlock> out;
  for (const MissedBlock& b : report.missed_blocks)
    if (b.multiplicity >= k) out.push_back(b);
  return out;
}

ExperimentReport run(const ExperimentConfig& config, int workers) {
  config.validate();
  ExperimentReport report;
  report.config = config;
  report.per_generator.resize(config.generators.size());
  for (std::size_t i = 0; i < config.generators.size(); ++i)
    report.per_generator[i].record = config.generators[i];

  // Distinct polynomials, first occurrence wins; every record maps into the
  // distinct slot that carries its counts.
  std::vector<PreparedGenerator> distinct;
  std::vector<std::size_t> record_to_distinct(config.generators.size());
  {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < config.generators.size(); ++i) {
      const std::string hex = config.generators[i].hex();
      auto it = index.find(hex);
      if (it == index.end()) {
        PreparedGenerator prep{
            CrcSpec::make(config.generators[i].poly, config.crc_init), {}};
        prep.table = build_table(prep.spec);
        index.emplace(hex, distinct.size());
        record_to_distinct[i] = distinct.size();
        distinct.push_back(std::move(prep));
      } else {
        record_to_distinct[i] = it->second;
      }
    }
  }

  const std::uint64_t n = config.corpus.packet_count;
  const int threads = resolve_workers(workers);
  std::map<std::uint64_t, std::uint32_t> multiplicity;
  std::vector<std::vector<std::uint64_t>> distinct_blocks(distinct.size());

  // Sweep in groups of up to 64 generators so one word per block carries the
  // whole group's undetected flags.
  for (std::size_t group = 0; group < distinct.size(); group += 64) {
    const std::size_t group_end = std::min(group + 64, distinct.size());
    std::vector<std::uint64_t> miss_mask(n, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
#endif
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(n); ++b) {
      const auto id = static_cast<std::uint64_t>(b);
      const BitVec clean = generate_clean(config.corpus, id);
      const BitVec corrupted = corrupt_block(config.corpus, id, clean).first;
      std::uint64_t mask = 0;
      for (std::size_t g = group; g < group_end; ++g) {
        const PreparedGenerator& prep = distinct[g];
        const std::uint64_t clean_crc =
            crc_table(clean.bytes(), prep.spec, prep.table);
        const std::uint64_t bad_crc =
            crc_bits(corrupted, prep.spec, prep.table);
        if (clean_crc == bad_crc) mask |= 1ULL << (g - group);
      }
      miss_mask[id] = mask;
    }
    for (std::uint64_t id = 0; id < n; ++id) {
      std::uint64_t mask = miss_mask[id];
      if (mask == 0) continue;
      multiplicity[id] += static_cast<std::uint32_t>(std::popcount(mask));
      while (mask != 0) {
        const int bit = std::countr_zero(mask);
        mask &= mask - 1;
        distinct_blocks[group + static_cast<std::size_t>(bit)].push_back(id);
      }
    }
  }
  (void)threads;

  for (std::size_t i = 0; i < config.generators.size(); ++i) {
    const auto& blocks = distinct_blocks[record_to_distinct[i]];
    report.per_generator[i].blocks = blocks;
    report.per_generator[i].undetected = blocks.size();
  }

  // Corruption details for the missed blocks only; everything else is
  // regenerable and not worth carrying around.
  std::vector<std::uint64_t> missed_hd;
  for (const auto& [id, mult] : multiplicity) {
    const BitVec clean = generate_clean(config.corpus, id);
    const CorruptionRecord rec = corrupt_block(config.corpus, id, clean).second;
    MissedBlock mb;
    mb.block_id = id;
    mb.multiplicity = mult;
    mb.hd = rec.hd;
    mb.differing_bytes = rec.differing_bytes;
    report.missed_blocks.push_back(mb);
    missed_hd.push_back(rec.hd);
  }
  std::sort(report.missed_blocks.begin(), report.missed_blocks.end(),
            [](const MissedBlock& a, const MissedBlock& b) {
              if (a.multiplicity != b.multiplicity)
                return a.multiplicity > b.multiplicity;
              return a.block_id < b.block_id;
            });

  report.summary = aggregate(report.per_generator, n, missed_hd);
  return report;
}

void check_manifest(const ExperimentConfig& config, const Manifest& manifest) {
  if (to_json(manifest.config) != to_json(config.corpus))
    throw IntegrityError("manifest corpus config differs from the run config");
  if (manifest.records.size() != config.corpus.packet_count)
    throw IntegrityError("manifest holds " +
                         std::to_string(manifest.records.size()) +
                         " records for " +
                         std::to_string(config.corpus.packet_count) +
                         " packets");
  for (const CorruptionRecord& rec : manifest.records) {
    const BitVec clean = generate_clean(config.corpus, rec.block_id);
    const BitVec corrupted = replay_block(config.corpus, rec);
    const HammingDistance h = hamming_distance(clean, corrupted);
    if (h.hd != rec.hd || h.length_delta != rec.length_delta ||
        differing_bytes(clean, corrupted) != rec.differing_bytes)
      throw IntegrityError("manifest record for block " +
                           std::to_string(rec.block_id) +
                           " does not replay to its recorded state");
  }
}

// ---------------------------------------------------------------------------
// Emission

namespace {

nlohmann::json to_json(const FiveNum& f) {
  if (f.count == 0) return nlohmann::json{{"count", 0}};
  return nlohmann::json{{"count", f.count}, {"min", f.min},    {"q1", f.q1},
                        {"median", f.median}, {"q3", f.q3},    {"max", f.max}};
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
  nlohmann::json gens = nlohmann::json::array();
  for (const GeneratorRecord& rec : config.generators)
    gens.push_back({{"hex", rec.hex()}, {"method", to_string(rec.method)}});
  return nlohmann::json{{"corpus", to_json(config.corpus)},
                        {"crc_init", config.crc_init},
                        {"generators", gens}};
}

}  // namespace

void write_report_json(const std::filesystem::path& path,
                       const ExperimentReport& report,
                       const std::string& timestamp) {
  nlohmann::json j;
  j["schema_version"] = 1;
  if (!timestamp.empty()) j["timestamp"] = timestamp;
  j["config"] = config_to_json(report.config);
  nlohmann::json gens = nlohmann::json::array();
  for (const GeneratorOutcome& o : report.per_generator) {
    gens.push_back({{"hex", o.record.hex()},
                    {"method", to_string(o.record.method)},
                    {"class", to_string(o.record.classification.kind)},
                    {"uncaught", o.undetected},
                    {"blocks", o.blocks}});
  }
  j["generators"] = gens;
  j["summary"] = {{"expected", report.summary.expected},
                  {"mean_undetected", report.summary.mean_undetected},
                  {"absolute_deviation", report.summary.absolute_deviation},
                  {"relative_error", report.summary.relative_error},
                  {"method_means", report.summary.method_means},
                  {"hd_box", to_json(report.summary.hd)}};
  nlohmann::json missed = nlohmann::json::array();
  for (const MissedBlock& b : report.missed_blocks)
    missed.push_back({{"block", b.block_id},
                      {"multiplicity", b.multiplicity},
                      {"hd", b.hd},
                      {"differing_bytes", b.differing_bytes}});
  j["missed_blocks"] = missed;
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
}

void write_report_csv(const std::filesystem::path& path,
                      const ExperimentReport& report) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  out << "hex,method,class,uncaught\n";
  for (const GeneratorOutcome& o : report.per_generator)
    out << o.record.hex() << ',' << to_string(o.record.method) << ','
        << to_string(o.record.classification.kind) << ',' << o.undetected
        << '\n';
}

void write_plot_data(const std::filesystem::path& dir,
                     const ExperimentReport& report) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "hd_box.csv");
    out << "count,min,q1,median,q3,max\n";
    const FiveNum& f = report.summary.hd;
    if (f.count == 0)
      out << "0,,,,,\n";
    else
      out << f.count << ',' << f.min << ',' << f.q1 << ',' << f.median << ','
          << f.q3 << ',' << f.max << '\n';
  }
  {
    std::ofstream out(dir / "hd_histogram.csv");
    out << "bin_lo,bin_hi,count\n";
    std::vector<std::uint64_t> hds;
    for (const MissedBlock& b : report.missed_blocks) hds.push_back(b.hd);
    if (!hds.empty()) {
      const auto [lo_it, hi_it] = std::minmax_element(hds.begin(), hds.end());
      const std::uint64_t lo = *lo_it, hi = *hi_it;
      const std::size_t bins =
          std::min<std::size_t>(16, std::max<std::size_t>(1, hds.size()));
      const double width =
          std::max(1.0, (static_cast<double>(hi - lo) + 1.0) /
                            static_cast<double>(bins));
      std::vector<std::uint64_t> counts(bins, 0);
      for (std::uint64_t h : hds) {
        auto idx = static_cast<std::size_t>(
            static_cast<double>(h - lo) / width);
        counts[std::min(idx, bins - 1)]++;
      }
      for (std::size_t i = 0; i < bins; ++i) {
        const double bin_lo = static_cast<double>(lo) + width * static_cast<double>(i);
        out << bin_lo << ',' << bin_lo + width << ',' << counts[i] << '\n';
      }
    }
  }
  {
    std::ofstream out(dir / "method_bars.csv");
    out << "method,mean_uncaught\n";
    for (const auto& [method, mean] : report.summary.method_means)
      out << method << ',' << mean << '\n';
  }
}

}  // namespace crclab
