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

// Experiment harness: sweep generators over a corrupted corpus and compile
// the undetected-error statistics.
//
// A block counts as UNDETECTED for a generator when the checksum of the
// corrupted block equals the checksum of the clean block. Comparing
// checksums (rather than re-verifying a framed codeword) stays well-defined
// when a corruption changed the block's length.
//
// Blocks are regenerated on the fly and never held in memory together.
// Workers only affect speed: per-block results land in a preallocated slot
// keyed by block id, so the report is identical for any worker count.

#ifndef CRCLAB_HARNESS_HPP_
#define CRCLAB_HARNESS_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crclab/crc.hpp"
#include "crclab/errinject.hpp"
#include "crclab/polygen.hpp"

namespace crclab {

struct ExperimentConfig {
  CorpusConfig corpus;
  std::vector<GeneratorRecord> generators;
  std::uint64_t crc_init = 0;

  void validate() const;
};

// Five-number summary with Tukey hinges: each half of the sorted data
// includes the median element when the count is odd, which is what produces
// half-integer quartiles.
struct FiveNum {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
  std::uint64_t count = 0;  // 0 marks an empty summary
};
FiveNum tukey_five_number(std::vector<std::uint64_t> values);

struct GeneratorOutcome {
  GeneratorRecord record;
  std::uint64_t undetected = 0;
  std::vector<std::uint64_t> blocks;  // ids of undetected blocks, ascending
};

struct MissedBlock {
  std::uint64_t block_id = 0;
  std::uint32_t multiplicity = 0;  // distinct generators that missed it
  std::uint64_t hd = 0;
  std::uint64_t differing_bytes = 0;
};

struct ExperimentSummary {
  double expected = 0;            // packet_count / 2^width
  double mean_undetected = 0;     // over distinct generators
  double absolute_deviation = 0;  // |mean - expected|
  double relative_error = 0;      // absolute_deviation / expected
  std::map<std::string, double> method_means;
  FiveNum hd;  // over distinct undetected blocks
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<GeneratorOutcome> per_generator;  // one per record, table order
  ExperimentSummary summary;
  std::vector<MissedBlock> missed_blocks;  // multiplicity desc, id asc
};

// packet_count * 2^-width.
double expected_undetected(std::uint64_t packet_count, unsigned width);

// Recomputes the summary from per-record outcomes. Records sharing a
// polynomial are counted once in the mean and once per method in the
// per-method averages. `hd` values, when absent, leave summary.hd empty.
ExperimentSummary aggregate(const std::vector<GeneratorOutcome>& outcomes,
                            std::uint64_t packet_count,
                            const std::vector<std::uint64_t>& missed_hd);

// Blocks missed by at least `k` distinct generators, multiplicity
// descending then block id ascending.
std::vector<MissedBlock> elusive_blocks(const ExperimentReport& report,
                                        std::uint32_t k);

ExperimentReport run(const ExperimentConfig& config, int workers = 1);

// Validates that a manifest matches the experiment's corpus config and that
// its records replay consistently; throws IntegrityError before any
// counting otherwise.
void check_manifest(const ExperimentConfig& config, const Manifest& manifest);

// Report emission. The JSON file embeds the resolved config; the CSV mirrors
// the per-generator table. Plot data: HD histogram bins, the five-number
// box summary, and the per-method bar values.
void write_report_json(const std::filesystem::path& path,
                       const ExperimentReport& report,
                       const std::string& timestamp);
void write_report_csv(const std::filesystem::path& path,
                      const ExperimentReport& report);
void write_plot_data(const std::filesystem::path& dir,
                     const ExperimentReport& report);

}  // namespace crclab

#endif  // CRCLAB_HARNESS_HPP_
