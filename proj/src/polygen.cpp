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

#include "crclab/polygen.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "crclab/errors.hpp"
#include "crclab/rng.hpp"

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

}  // namespace

std::string to_string(SelectionMethod method) {
  switch (method) {
    case SelectionMethod::kCuratedPrimitive16:
      return "curated-primitive-16";
    case SelectionMethod::kPrimitive15TimesXPlus1:
      return "primitive15-times-x+1";
    case SelectionMethod::kRandomIrreducible:
      return "random-irreducible";
    case SelectionMethod::kAaswSearch:
      return "aasw-search";
    case SelectionMethod::kStandard:
      return "standard";
  }
  return "?";
}

SelectionMethod selection_method_from_string(const std::string& name) {
  for (SelectionMethod m :
       {SelectionMethod::kCuratedPrimitive16,
        SelectionMethod::kPrimitive15TimesXPlus1,
        SelectionMethod::kRandomIrreducible, SelectionMethod::kAaswSearch,
        SelectionMethod::kStandard}) {
    if (to_string(m) == name) return m;
  }
  throw ParseError("unknown selection method \"" + name + "\"");
}

PolyClass classify(const Gf2Poly& poly) {
  PolyClass out;
  const auto deg = poly.degree();
  if (!deg || *deg < 1)
    throw std::domain_error("classify: degree must be >= 1");
  bool irreducible = false;
  bool primitive = false;
  irreducible = is_irreducible(poly);
  if (irreducible && *deg <= kPrimitivityDegreeLimit)
    primitive = is_primitive(poly);
  out.kind = primitive ? PolyKind::kPrimitive
             : irreducible ? PolyKind::kIrreducible
                           : PolyKind::kReducible;
  if (*deg <= kFactorDegreeLimit) {
    out.factors = factor(poly);
    out.factors_available = true;
  } else if (irreducible) {
    out.factors = {{poly, 1}};
    out.factors_available = true;
  }
  if (poly.constant_term()) {
    if (irreducible && *deg <= kPrimitivityDegreeLimit)
      out.order = order_of_x(poly);
    else if (*deg <= kFactorDegreeLimit)
      out.order = order_of_x(poly);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Curated table

std::filesystem::path default_table_path() {
#ifdef CRCLAB_DATA_DIR
  return std::filesystem::path(CRCLAB_DATA_DIR) / "crc16_generators.csv";
#else
  return std::filesystem::path("data") / "crc16_generators.csv";
#endif
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      out.push_back(field);
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  out.push_back(field);
  for (std::string& f : out) {
    const auto b = f.find_first_not_of(" \t");
    const auto e = f.find_last_not_of(" \t");
    f = b == std::string::npos ? "" : f.substr(b, e - b + 1);
  }
  return out;
}

}  // namespace

CuratedTable load_curated(const std::filesystem::path& csv_path) {
  std::ifstream in(csv_path);
  if (!in)
    throw ConfigError("cannot open generator table " + csv_path.string());
  CuratedTable table;
  std::string line;
  std::size_t row = 0;
  bool header_seen = false;
  std::map<std::string, int> seen;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;  // method,polynomial,binary,hex
      continue;
    }
    ++row;
    const auto fields = split_csv_line(line);
    if (fields.size() != 4) {
      table.issues.push_back({row, "expected 4 fields, found " +
                                       std::to_string(fields.size())});
      continue;
    }
    try {
      const SelectionMethod method = selection_method_from_string(fields[0]);
      const Gf2Poly from_terms = Gf2Poly::parse_terms(fields[1]);
      const Gf2Poly from_binary = Gf2Poly::parse_binary(fields[2]);
      const Gf2Poly from_hex = Gf2Poly::parse_hex(fields[3]);
      if (from_terms != from_hex || from_binary != from_hex) {
        table.issues.push_back(
            {row, "row " + std::to_string(row) + " renderings disagree: " +
                      fields[3] + " vs terms " + from_terms.to_hex() +
                      " vs binary " + from_binary.to_hex()});
        continue;
      }
      GeneratorRecord rec;
      rec.poly = from_hex;
      rec.method = method;
      rec.classification = classify(rec.poly);
      if (method == SelectionMethod::kPrimitive15TimesXPlus1 &&
          !(rec.poly % Gf2Poly::from_u64(3)).is_zero()) {
        table.issues.push_back(
            {row, "row " + std::to_string(row) + " (" + fields[3] +
                      ") is labelled primitive15-times-x+1 but x+1 does not "
                      "divide it"});
        continue;
      }
      if (method == SelectionMethod::kCuratedPrimitive16 &&
          rec.classification.kind != PolyKind::kPrimitive) {
        table.issues.push_back(
            {row, "row " + std::to_string(row) + " (" + fields[3] +
                      ") is labelled curated-primitive-16 but is " +
                      to_string(rec.classification.kind)});
        continue;
      }
      ++seen[rec.hex()];
      table.records.push_back(std::move(rec));
    } catch (const ParseError& e) {
      table.issues.push_back(
          {row, "row " + std::to_string(row) + ": " + e.what()});
    }
  }
  for (const auto& [hex, count] : seen)
    if (count > 1) table.duplicates.push_back(hex);
  return table;
}

std::vector<GeneratorRecord> load_curated_strict(
    const std::filesystem::path& csv_path) {
  CuratedTable table = load_curated(csv_path);
  if (!table.issues.empty()) {
    std::string msg = "generator table has inconsistent rows:";
    for (const TableIssue& issue : table.issues)
      msg += "\n  row " + std::to_string(issue.row) + ": " + issue.message;
    throw IntegrityError(msg);
  }
  return table.records;
}

// ---------------------------------------------------------------------------
// Selection methods

Gf2Poly primitive15_times_xplus1(const Gf2Poly& p15) {
  const auto deg = p15.degree();
  if (!deg || *deg != 15)
    throw std::invalid_argument("expected a polynomial of degree 15");
  if (!is_primitive(p15))
    throw std::invalid_argument("expected a primitive polynomial");
  return p15 * Gf2Poly::from_u64(3);
}

Gf2Poly random_irreducible(unsigned degree, std::uint64_t seed) {
  if (degree < 1 || degree > kPrimitivityDegreeLimit)
    throw UnsupportedDegreeError("random_irreducible supports degree 1.." +
                                 std::to_string(kPrimitivityDegreeLimit));
  SplitMix64 rng(seed);
  while (true) {
    // Top and constant bits forced; the rest uniform.
    Gf2Poly cand = Gf2Poly::monomial(degree) + Gf2Poly::one();
    for (unsigned i = 1; i < degree; ++i)
      if (rng.next_bit()) cand = cand + Gf2Poly::monomial(i);
    if (is_irreducible(cand)) return cand;
  }
}

// ---------------------------------------------------------------------------
// Two-bit-error search

std::uint64_t aasw_count_naive(const Gf2Poly& g, unsigned message_len,
                               std::optional<std::uint64_t> threshold) {
  const auto deg = g.degree();
  if (!deg || *deg < 1)
    throw std::domain_error("candidate must have degree >= 1");
  if (message_len < 1)
    throw std::invalid_argument("message_len must be >= 1");
  const unsigned k = message_len + *deg;
  std::uint64_t count = 0;
  for (unsigned i = 1; i < k; ++i) {
    for (unsigned j = 0; j < i; ++j) {
      const Gf2Poly e = Gf2Poly::monomial(i) + Gf2Poly::monomial(j);
      if ((e % g).is_zero()) {
        ++count;
        if (threshold && count > *threshold) return count;
      }
    }
  }
  return count;
}

std::uint64_t aasw_count_order(const Gf2Poly& g, unsigned message_len) {
  const auto deg = g.degree();
  if (!deg || *deg < 1)
    throw std::domain_error("candidate must have degree >= 1");
  if (!g.constant_term())
    throw std::domain_error(
        "order engine needs constant term 1; use the naive engine");
  const std::uint64_t k = message_len + *deg;
  const std::uint64_t ord = order_of_x(g);
  std::uint64_t count = 0;
  for (std::uint64_t d = ord; d <= k - 1; d += ord) count += k - d;
  return count;
}

namespace {

std::vector<Gf2Poly> candidate_list(const AaswOptions& options) {
  switch (options.set) {
    case CandidateSet::kDegree16ConstantTerm1: {
      std::vector<Gf2Poly> out;
      out.reserve(1u << 15);
      for (std::uint64_t v = (1ULL << 16) | 1; v < (1ULL << 17); v += 2)
        out.push_back(Gf2Poly::from_u64(v));
      return out;
    }
    case CandidateSet::kDegree16All: {
      std::vector<Gf2Poly> out;
      out.reserve(1u << 16);
      for (std::uint64_t v = 1ULL << 16; v < (1ULL << 17); ++v)
        out.push_back(Gf2Poly::from_u64(v));
      return out;
    }
    case CandidateSet::kExplicit:
      return options.explicit_candidates;
  }
  throw std::logic_error("unknown candidate set");
}

struct Checkpoint {
  std::size_t done = 0;
  std::vector<std::uint64_t> counts;
};

nlohmann::json checkpoint_params(const AaswOptions& options) {
  return nlohmann::json{
      {"message_len", options.message_len},
      {"set", static_cast<int>(options.set)},
      {"candidates", options.explicit_candidates.size()},
      {"fail_threshold",
       options.fail_threshold ? nlohmann::json(*options.fail_threshold)
                              : nlohmann::json()}};
}

std::optional<Checkpoint> read_checkpoint(const AaswOptions& options) {
  if (options.checkpoint.empty() ||
      !std::filesystem::exists(options.checkpoint))
    return std::nullopt;
  std::ifstream in(options.checkpoint);
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("params")) return std::nullopt;
  if (j["params"] != checkpoint_params(options))
    throw IntegrityError("checkpoint " + options.checkpoint.string() +
                         " was written for different search parameters");
  Checkpoint cp;
  cp.done = j.at("done").get<std::size_t>();
  cp.counts = j.at("counts").get<std::vector<std::uint64_t>>();
  if (cp.counts.size() != cp.done)
    throw IntegrityError("checkpoint count list does not match progress");
  return cp;
}

void write_checkpoint(const AaswOptions& options, const Checkpoint& cp) {
  if (options.checkpoint.empty()) return;
  nlohmann::json j{{"params", checkpoint_params(options)},
                   {"done", cp.done},
                   {"counts", cp.counts}};
  const auto tmp = options.checkpoint.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump();
  }
  std::filesystem::rename(tmp, options.checkpoint);
}

}  // namespace

std::vector<AaswResult> aasw_search(const AaswOptions& options) {
  const std::vector<Gf2Poly> candidates = candidate_list(options);
  Checkpoint cp;
  if (auto resumed = read_checkpoint(options)) cp = *std::move(resumed);
  if (cp.done > candidates.size())
    throw IntegrityError("checkpoint is ahead of the candidate set");
  cp.counts.resize(candidates.size(), 0);

  const int threads = resolve_workers(options.workers);
  const std::size_t chunk = std::max<std::size_t>(options.checkpoint_every, 1);
  for (std::size_t start = cp.done; start < candidates.size();
       start += chunk) {
    const std::size_t stop = std::min(start + chunk, candidates.size());
    const std::int64_t lo = static_cast<std::int64_t>(start);
    const std::int64_t hi = static_cast<std::int64_t>(stop);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
#endif
    for (std::int64_t i = lo; i < hi; ++i) {
      const Gf2Poly& g = candidates[static_cast<std::size_t>(i)];
      cp.counts[static_cast<std::size_t>(i)] =
          g.constant_term()
              ? aasw_count_order(g, options.message_len)
              : aasw_count_naive(g, options.message_len,
                                 options.fail_threshold);
    }
    cp.done = stop;
    if (stop < candidates.size()) {
      Checkpoint partial;
      partial.done = cp.done;
      partial.counts.assign(cp.counts.begin(),
                            cp.counts.begin() + static_cast<std::ptrdiff_t>(stop));
      write_checkpoint(options, partial);
    }
  }
  (void)threads;

  std::vector<AaswResult> results(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    results[i].candidate = candidates[i];
    results[i].uncaught_two_bit = cp.counts[i];
    results[i].message_len = options.message_len;
    results[i].codeword_len =
        options.message_len + candidates[i].degree().value_or(0);
  }
  std::sort(results.begin(), results.end(),
            [](const AaswResult& a, const AaswResult& b) {
              if (a.uncaught_two_bit != b.uncaught_two_bit)
                return a.uncaught_two_bit < b.uncaught_two_bit;
              return a.candidate < b.candidate;
            });
  if (!options.checkpoint.empty() &&
      std::filesystem::exists(options.checkpoint))
    std::filesystem::remove(options.checkpoint);
  return results;
}

void write_aasw_csv(const std::filesystem::path& path,
                    const std::vector<AaswResult>& results) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  out << "hex,class,uncaught_two_bit,message_len\n";
  std::uint64_t zero_count = 0;
  for (const AaswResult& r : results) {
    const PolyClass cls = classify(r.candidate);
    out << r.candidate.to_hex() << ',' << to_string(cls.kind) << ','
        << r.uncaught_two_bit << ',' << r.message_len << '\n';
    if (r.uncaught_two_bit == 0) ++zero_count;
  }
  out << "# candidates with zero uncaught pairs: " << zero_count << '\n';
}

Degree16Scan scan_degree16(int workers) {
  const int threads = resolve_workers(workers);
  std::uint32_t irreducible = 0;
  std::uint32_t primitive = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 512) num_threads(threads) \
    reduction(+ : irreducible, primitive)
#endif
  for (std::int64_t v = (1LL << 16) + 1; v < (1LL << 17); v += 2) {
    const Gf2Poly f = Gf2Poly::from_u64(static_cast<std::uint64_t>(v));
    if (is_irreducible(f)) {
      ++irreducible;
      if (is_primitive(f)) ++primitive;
    }
  }
  (void)threads;
  return {irreducible, primitive};
}

}  // namespace crclab
