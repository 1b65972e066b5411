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

// Generator-polynomial selection and ranking.
//
// Five sources of candidates: a curated table of degree-16 generators with
// their selection methods, products of degree-15 primitives with (x+1),
// seeded random irreducibles, the ranked exhaustive two-bit-error search,
// and the two ubiquitous standards (CCITT 0x11021, CRC-16 0x18005).
//
// The two-bit search counts, for a candidate g and codeword length k, the
// pairs i > j with g dividing x^i + x^j. Two engines compute it: a naive
// pairwise enumeration (the oracle) and a closed form over the order of x
// modulo g, since for generators with constant term 1, g | x^i + x^j exactly
// when ord(x) divides i - j.

#ifndef CRCLAB_POLYGEN_HPP_
#define CRCLAB_POLYGEN_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "crclab/gf2poly.hpp"

namespace crclab {

enum class SelectionMethod {
  kCuratedPrimitive16,
  kPrimitive15TimesXPlus1,
  kRandomIrreducible,
  kAaswSearch,
  kStandard,
};

std::string to_string(SelectionMethod method);
SelectionMethod selection_method_from_string(const std::string& name);

struct GeneratorRecord {
  Gf2Poly poly;
  SelectionMethod method = SelectionMethod::kStandard;
  PolyClass classification;
  std::optional<std::uint64_t> aasw_uncaught;

  std::string hex() const { return poly.to_hex(); }
};

struct TableIssue {
  std::size_t row = 0;  // 1-based data row
  std::string message;
};

struct CuratedTable {
  std::vector<GeneratorRecord> records;
  std::vector<TableIssue> issues;      // renderings that disagree, bad rows
  std::vector<std::string> duplicates; // hex values appearing more than once
};

// Loads the CSV of curated generators (method, terms, binary, hex columns).
// Every row's three renderings are cross-checked; disagreements are reported
// in `issues` by row number, never silently repaired. Rows that cannot be
// trusted are excluded from `records`.
CuratedTable load_curated(const std::filesystem::path& csv_path);

// Throws IntegrityError if the table carries any issue.
std::vector<GeneratorRecord> load_curated_strict(
    const std::filesystem::path& csv_path);

// Path of the table shipped with the source tree.
std::filesystem::path default_table_path();

// (x+1) * p15 for a primitive polynomial of degree 15; the result is a
// degree-16 generator that is divisible by x+1 and therefore never primitive.
Gf2Poly primitive15_times_xplus1(const Gf2Poly& p15);

// Seeded rejection sampling: uniform random candidates of the given degree
// with constant term 1 until one passes the irreducibility test.
Gf2Poly random_irreducible(unsigned degree, std::uint64_t seed);

PolyClass classify(const Gf2Poly& poly);

struct AaswResult {
  Gf2Poly candidate;
  std::uint64_t uncaught_two_bit = 0;
  unsigned message_len = 0;
  unsigned codeword_len = 0;
};

enum class CandidateSet {
  kDegree16ConstantTerm1,  // 32768 candidates (the default convention)
  kDegree16All,            // 65536 candidates
  kExplicit,
};

struct AaswOptions {
  unsigned message_len = 64;
  CandidateSet set = CandidateSet::kDegree16ConstantTerm1;
  std::vector<Gf2Poly> explicit_candidates;
  // Early-exit threshold for the naive engine: stop counting a candidate
  // once it exceeds this many uncaught pairs. Off by default.
  std::optional<std::uint64_t> fail_threshold;
  int workers = 1;  // 0 = all hardware threads
  // Resumable runs: progress lands here every checkpoint_every candidates.
  std::filesystem::path checkpoint;
  std::size_t checkpoint_every = 8192;
};

// Naive engine: literally divides x^i + x^j by g for all pairs. Candidates
// with constant term 0 are only countable this way.
std::uint64_t aasw_count_naive(const Gf2Poly& g, unsigned message_len,
                               std::optional<std::uint64_t> threshold = {});

// Order engine: sum of (k - d) over multiples d of ord(x mod g) below k.
// Requires constant term 1.
std::uint64_t aasw_count_order(const Gf2Poly& g, unsigned message_len);

// Evaluates the candidate set and returns results sorted by ascending
// uncaught count, ties broken by ascending coefficient value.
std::vector<AaswResult> aasw_search(const AaswOptions& options);

void write_aasw_csv(const std::filesystem::path& path,
                    const std::vector<AaswResult>& results);

// Exhaustive classification sweep over all degree-16 polynomials with
// constant term 1.
struct Degree16Scan {
  std::uint32_t irreducible = 0;
  std::uint32_t primitive = 0;
};
Degree16Scan scan_degree16(int workers = 1);

}  // namespace crclab

#endif  // CRCLAB_POLYGEN_HPP_
