// Copyright 2026 The binlb Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Instances, patterns, certificates and their JSON file formats.
//
// Every number in a file is a string holding an exact rational ("p/q") or a
// perturbed size ("1/4 - (300)d"). Item types are 1-indexed in files and
// 0-indexed in memory.

#ifndef BINLB_MODEL_H_
#define BINLB_MODEL_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "binlb/exactnum.h"
#include "json.hpp"

namespace binlb {

using Json = nlohmann::ordered_json;

// Raised for malformed files and violated invariants. The message names the
// offending field.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Geometry { kHypercube, kRectangle2d };

struct ItemType {
  int id = 0;  // 1-based label.
  PerturbedSize width;
  PerturbedSize height;  // Equal to width for hypercubes.
  std::string name;
};

struct Instance {
  std::string name;
  Geometry geometry = Geometry::kHypercube;
  int dimension = 2;
  std::vector<ItemType> types;
  std::vector<Rational> alpha;
  std::vector<Rational> opt_ratios;
  // Anchor grid resolution for hypercube instances (0 when absent).
  int anchor_grid = 0;
  // 0-based index of the sand type placed through anchors (-1 when absent).
  int sand_type = -1;

  int NumTypes() const { return static_cast<int>(types.size()); }
  // Extent of type t along axis a.
  const PerturbedSize& Extent(int t, int axis) const {
    return axis == 0 ? types[t].width : types[t].height;
  }
  // Limit (base) volume of one item of type t.
  Rational BaseVolume(int t) const;
};

struct Pattern {
  std::vector<int64_t> counts;
  std::string name;

  // 0-based index of the first positive count, -1 for the empty pattern.
  int ClassIndex() const;
  int64_t TotalItems() const;
  bool operator==(const Pattern& o) const { return counts == o.counts; }
};

struct DominanceRule {
  int dominator = 0;  // 0-based.
  int dominated = 0;  // 0-based.
  int64_t m1 = 1;
  int64_t m2 = 1;
};

struct DualCertificate {
  std::string name;
  std::vector<Rational> lambda;
  std::vector<Rational> mu;
  std::vector<DominanceRule> rules;
  bool exploratory = false;
};

struct PrimalEntry {
  Pattern pattern;
  Rational x;
};

struct PrimalSolution {
  std::vector<PrimalEntry> entries;
  Rational ratio;
};

struct SchemeEntry {
  Pattern pattern;
  Rational bins;
};

struct OptScheme {
  std::string name;
  // prefixes[j] realizes opt_ratios[j].
  std::vector<std::vector<SchemeEntry>> prefixes;
};

struct PatternSet {
  std::string name;
  std::vector<Pattern> patterns;
};

// Rational-valued weight of a pattern; throws std::invalid_argument on a
// dimension mismatch.
Rational PatternWeight(const Pattern& p, const std::vector<Rational>& lambda);

// One checked constraint: lhs (sense) rhs.
struct LedgerLine {
  std::string label;
  Rational lhs;
  std::string sense;  // ">=", "<=", "=".
  Rational rhs;
  bool holds = false;
  bool tight = false;
};

struct CoverageReport {
  std::vector<LedgerLine> lines;
  bool AllHold() const;
  bool AllTight() const;
};

CoverageReport CoverageCheck(const PrimalSolution& solution,
                             const Instance& instance);
CoverageReport CoverageCheck(const OptScheme& scheme, const Instance& instance);

// JSON conversion. Loading validates every invariant and throws SchemaError.
Instance InstanceFromJson(const Json& j);
Json InstanceToJson(const Instance& instance);
Pattern PatternFromJson(const Json& j, int num_types);
Json PatternToJson(const Pattern& p);
DualCertificate CertificateFromJson(const Json& j, int num_types);
Json CertificateToJson(const DualCertificate& cert);
PrimalSolution PrimalFromJson(const Json& j, int num_types);
Json PrimalToJson(const PrimalSolution& solution);
OptScheme SchemeFromJson(const Json& j, int num_types);
Json SchemeToJson(const OptScheme& scheme);
PatternSet PatternSetFromJson(const Json& j, int num_types);
Json PatternSetToJson(const PatternSet& set);

Json ReadJsonFile(const std::string& path);
void WriteJsonFile(const std::string& path, const Json& j);

Instance LoadInstance(const std::string& path);
DualCertificate LoadCertificate(const std::string& path, int num_types);
PrimalSolution LoadPrimal(const std::string& path, int num_types);
OptScheme LoadScheme(const std::string& path, int num_types);
PatternSet LoadPatternSet(const std::string& path, int num_types);

}  // namespace binlb

#endif  // BINLB_MODEL_H_
