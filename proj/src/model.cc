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

#include "binlb/model.h"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace binlb {
namespace {

Rational RationalField(const Json& j, const std::string& where) {
  try {
    if (j.is_string()) return ParseRational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<int64_t>());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(where + ": " + e.what());
  }
  throw SchemaError(where + ": expected an exact rational string");
}

PerturbedSize SizeField(const Json& j, const std::string& where) {
  if (!j.is_string()) throw SchemaError(where + ": expected a size string");
  try {
    return ParsePerturbedSize(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(where + ": " + e.what());
  }
}

const Json& Require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw SchemaError(where + ": missing field '" + key + "'");
  }
  return j.at(key);
}

void ExpectKind(const Json& j, const char* kind) {
  if (j.contains("kind") && j.at("kind") != kind) {
    throw SchemaError("kind: expected '" + std::string(kind) + "', found " +
                      j.at("kind").dump());
  }
}

std::vector<Rational> RationalVector(const Json& j, const std::string& where,
                                     size_t expected) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array");
  if (expected != 0 && j.size() != expected) {
    throw SchemaError(where + ": expected " + std::to_string(expected) +
                      " entries, found " + std::to_string(j.size()));
  }
  std::vector<Rational> out;
  for (size_t i = 0; i < j.size(); ++i) {
    out.push_back(RationalField(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Json RationalVectorToJson(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const Rational& r : v) out.push_back(ToString(r));
  return out;
}

bool PositiveAndAtMostOne(const PerturbedSize& s) {
  const Ordering lo = LexCompare(PerturbedSize(0), s);
  const Ordering hi = LexCompare(s, PerturbedSize(1));
  return lo == Ordering::kLess &&
         (hi == Ordering::kLess || hi == Ordering::kEqual);
}

}  // namespace

Rational Instance::BaseVolume(int t) const {
  if (geometry == Geometry::kRectangle2d) {
    return types[t].width.base() * types[t].height.base();
  }
  return Pow(types[t].width.base(), dimension);
}

int Pattern::ClassIndex() const {
  for (size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) return static_cast<int>(i);
  }
  return -1;
}

int64_t Pattern::TotalItems() const {
  int64_t total = 0;
  for (int64_t c : counts) total += c;
  return total;
}

Rational PatternWeight(const Pattern& p, const std::vector<Rational>& lambda) {
  if (p.counts.size() != lambda.size()) {
    throw std::invalid_argument("pattern has " +
                                std::to_string(p.counts.size()) +
                                " counts but lambda has " +
                                std::to_string(lambda.size()) + " entries");
  }
  Rational w = 0;
  for (size_t i = 0; i < lambda.size(); ++i) {
    w += Rational(static_cast<long>(p.counts[i])) * lambda[i];
  }
  return w;
}

bool CoverageReport::AllHold() const {
  for (const LedgerLine& l : lines) {
    if (!l.holds) return false;
  }
  return true;
}

bool CoverageReport::AllTight() const {
  for (const LedgerLine& l : lines) {
    if (!l.tight) return false;
  }
  return true;
}

namespace {

LedgerLine MakeLine(std::string label, Rational lhs, std::string sense,
                    Rational rhs) {
  LedgerLine line;
  line.label = std::move(label);
  line.lhs = std::move(lhs);
  line.sense = std::move(sense);
  line.rhs = std::move(rhs);
  line.tight = line.lhs == line.rhs;
  if (line.sense == ">=") {
    line.holds = line.lhs >= line.rhs;
  } else if (line.sense == "<=") {
    line.holds = line.lhs <= line.rhs;
  } else {
    line.holds = line.tight;
  }
  return line;
}

}  // namespace

CoverageReport CoverageCheck(const PrimalSolution& solution,
                             const Instance& instance) {
  CoverageReport report;
  const int k = instance.NumTypes();
  for (int j = 0; j < k; ++j) {
    Rational covered = 0;
    for (const PrimalEntry& e : solution.entries) {
      covered += Rational(static_cast<long>(e.pattern.counts[j])) * e.x;
    }
    report.lines.push_back(MakeLine("coverage type " + std::to_string(j + 1),
                                    covered, ">=", instance.alpha[j]));
  }
  for (int j = 0; j < k; ++j) {
    Rational bins = 0;
    for (const PrimalEntry& e : solution.entries) {
      const int c = e.pattern.ClassIndex();
      if (c >= 0 && c <= j) bins += e.x;
    }
    report.lines.push_back(MakeLine("prefix " + std::to_string(j + 1), bins,
                                    "<=",
                                    instance.opt_ratios[j] * solution.ratio));
  }
  return report;
}

CoverageReport CoverageCheck(const OptScheme& scheme,
                             const Instance& instance) {
  CoverageReport report;
  const int k = instance.NumTypes();
  for (int j = 0; j < static_cast<int>(scheme.prefixes.size()) && j < k; ++j) {
    const std::string tag = "prefix " + std::to_string(j + 1);
    Rational bins = 0;
    for (const SchemeEntry& e : scheme.prefixes[j]) bins += e.bins;
    report.lines.push_back(
        MakeLine(tag + " bins", bins, "=", instance.opt_ratios[j]));
    for (int i = 0; i < k; ++i) {
      Rational covered = 0;
      for (const SchemeEntry& e : scheme.prefixes[j]) {
        covered += Rational(static_cast<long>(e.pattern.counts[i])) * e.bins;
      }
      if (i <= j) {
        report.lines.push_back(MakeLine(
            tag + " coverage type " + std::to_string(i + 1), covered, ">=",
            instance.alpha[i]));
      } else if (covered != 0) {
        report.lines.push_back(MakeLine(
            tag + " uses type " + std::to_string(i + 1), covered, "=", 0));
      }
    }
  }
  if (static_cast<int>(scheme.prefixes.size()) != k) {
    report.lines.push_back(MakeLine(
        "prefix count", Rational(static_cast<long>(scheme.prefixes.size())),
        "=", Rational(k)));
  }
  return report;
}

Instance InstanceFromJson(const Json& j) {
  ExpectKind(j, "instance");
  Instance inst;
  inst.name = j.value("name", "");
  const std::string geometry = Require(j, "geometry", "instance");
  if (geometry == "hypercube") {
    inst.geometry = Geometry::kHypercube;
  } else if (geometry == "rectangle2d") {
    inst.geometry = Geometry::kRectangle2d;
  } else {
    throw SchemaError("geometry: unknown value '" + geometry + "'");
  }
  inst.dimension = j.value("dimension", 2);
  if (inst.dimension < 1) throw SchemaError("dimension: must be >= 1");
  if (inst.geometry == Geometry::kRectangle2d && inst.dimension != 2) {
    throw SchemaError("dimension: rectangle2d requires dimension 2");
  }
  inst.anchor_grid = j.value("anchor_grid", 0);
  inst.sand_type = j.value("sand_type", 0) - 1;
  const Json& types = Require(j, "types", "instance");
  if (!types.is_array() || types.empty()) {
    throw SchemaError("types: expected a non-empty array");
  }
  for (size_t i = 0; i < types.size(); ++i) {
    const std::string where = "types[" + std::to_string(i) + "]";
    const Json& t = types[i];
    ItemType it;
    it.id = t.value("id", static_cast<int>(i) + 1);
    it.name = t.value("name", "");
    if (inst.geometry == Geometry::kHypercube) {
      it.width = SizeField(Require(t, "side", where), where + ".side");
      it.height = it.width;
    } else {
      it.width = SizeField(Require(t, "width", where), where + ".width");
      it.height = SizeField(Require(t, "height", where), where + ".height");
    }
    if (!PositiveAndAtMostOne(it.width) || !PositiveAndAtMostOne(it.height)) {
      throw SchemaError(where + ": sizes must lie in (0, 1]");
    }
    inst.types.push_back(it);
    const Rational a = RationalField(Require(t, "alpha", where), where + ".alpha");
    if (a < 0) throw SchemaError(where + ".alpha: must be non-negative");
    inst.alpha.push_back(a);
  }
  inst.opt_ratios = RationalVector(Require(j, "opt_ratios", "instance"),
                                   "opt_ratios", types.size());
  for (size_t i = 1; i < inst.opt_ratios.size(); ++i) {
    if (inst.opt_ratios[i] < inst.opt_ratios[i - 1]) {
      throw SchemaError("optRatios not nondecreasing (entry " +
                        std::to_string(i + 1) + ")");
    }
  }
  if (inst.geometry == Geometry::kHypercube) {
    for (size_t i = 1; i < inst.types.size(); ++i) {
      if (LexCompare(inst.types[i - 1].width, inst.types[i].width) ==
          Ordering::kGreater) {
        throw SchemaError("types: hypercube sizes must be nondecreasing (entry " +
                          std::to_string(i + 1) + ")");
      }
    }
  }
  if (inst.sand_type >= inst.NumTypes()) {
    throw SchemaError("sand_type: out of range");
  }
  return inst;
}

Json InstanceToJson(const Instance& inst) {
  Json j;
  j["kind"] = "instance";
  j["name"] = inst.name;
  j["geometry"] =
      inst.geometry == Geometry::kHypercube ? "hypercube" : "rectangle2d";
  j["dimension"] = inst.dimension;
  if (inst.anchor_grid > 0) j["anchor_grid"] = inst.anchor_grid;
  if (inst.sand_type >= 0) j["sand_type"] = inst.sand_type + 1;
  Json types = Json::array();
  for (int i = 0; i < inst.NumTypes(); ++i) {
    Json t;
    t["id"] = inst.types[i].id;
    if (!inst.types[i].name.empty()) t["name"] = inst.types[i].name;
    if (inst.geometry == Geometry::kHypercube) {
      t["side"] = inst.types[i].width.ToString();
    } else {
      t["width"] = inst.types[i].width.ToString();
      t["height"] = inst.types[i].height.ToString();
    }
    t["alpha"] = ToString(inst.alpha[i]);
    types.push_back(t);
  }
  j["types"] = types;
  j["opt_ratios"] = RationalVectorToJson(inst.opt_ratios);
  return j;
}

Pattern PatternFromJson(const Json& j, int num_types) {
  Pattern p;
  const Json* counts = &j;
  if (j.is_object()) {
    p.name = j.value("name", "");
    counts = &Require(j, "counts", "pattern " + p.name);
  }
  const std::string where = "pattern " + p.name;
  if (counts->is_array()) {
    if (static_cast<int>(counts->size()) != num_types) {
      throw SchemaError(where + ": expected " + std::to_string(num_types) +
                        " counts, found " + std::to_string(counts->size()));
    }
    for (const Json& c : *counts) {
      if (!c.is_number_integer() || c.get<int64_t>() < 0) {
        throw SchemaError(where + ": counts must be non-negative integers");
      }
      p.counts.push_back(c.get<int64_t>());
    }
  } else if (counts->is_object()) {
    // Sparse form {"3": 4, "4": 6} keyed by 1-based type id.
    p.counts.assign(num_types, 0);
    for (auto it = counts->begin(); it != counts->end(); ++it) {
      const int t = std::stoi(it.key()) - 1;
      if (t < 0 || t >= num_types || !it.value().is_number_integer() ||
          it.value().get<int64_t>() < 0) {
        throw SchemaError(where + ": bad sparse entry '" + it.key() + "'");
      }
      p.counts[t] = it.value().get<int64_t>();
    }
  } else {
    throw SchemaError(where + ": counts must be an array or object");
  }
  if (p.TotalItems() == 0) {
    throw SchemaError(where + ": pattern must contain at least one item");
  }
  return p;
}

Json PatternToJson(const Pattern& p) {
  Json j;
  if (!p.name.empty()) j["name"] = p.name;
  j["counts"] = p.counts;
  return j;
}

DualCertificate CertificateFromJson(const Json& j, int num_types) {
  ExpectKind(j, "dual_certificate");
  DualCertificate cert;
  cert.name = j.value("name", "");
  cert.exploratory = j.value("exploratory", false);
  Rational scale = 1;
  if (j.contains("scale")) scale = RationalField(j.at("scale"), "scale");
  cert.lambda = RationalVector(Require(j, "lambda", "certificate"), "lambda",
                               num_types);
  cert.mu = RationalVector(Require(j, "mu", "certificate"), "mu", num_types);
  for (Rational& v : cert.lambda) v *= scale;
  for (Rational& v : cert.mu) v *= scale;
  if (j.contains("dominance")) {
    const Json& rules = j.at("dominance");
    for (size_t i = 0; i < rules.size(); ++i) {
      const std::string where = "dominance[" + std::to_string(i) + "]";
      DominanceRule r;
      r.dominator = Require(rules[i], "dominator", where).get<int>() - 1;
      r.dominated = Require(rules[i], "dominated", where).get<int>() - 1;
      r.m1 = rules[i].value("m1", static_cast<int64_t>(1));
      r.m2 = rules[i].value("m2", r.m1);
      if (r.dominator < 0 || r.dominator >= num_types || r.dominated < 0 ||
          r.dominated >= num_types || r.m1 < 1 || r.m2 < 1) {
        throw SchemaError(where + ": invalid rule");
      }
      cert.rules.push_back(r);
    }
  }
  return cert;
}

Json CertificateToJson(const DualCertificate& cert) {
  Json j;
  j["kind"] = "dual_certificate";
  j["name"] = cert.name;
  if (cert.exploratory) j["exploratory"] = true;
  j["lambda"] = RationalVectorToJson(cert.lambda);
  j["mu"] = RationalVectorToJson(cert.mu);
  Json rules = Json::array();
  for (const DominanceRule& r : cert.rules) {
    rules.push_back({{"dominator", r.dominator + 1},
                     {"dominated", r.dominated + 1},
                     {"m1", r.m1},
                     {"m2", r.m2}});
  }
  j["dominance"] = rules;
  return j;
}

PrimalSolution PrimalFromJson(const Json& j, int num_types) {
  ExpectKind(j, "primal_solution");
  PrimalSolution sol;
  sol.ratio = RationalField(Require(j, "ratio", "primal"), "ratio");
  Rational scale = 1;
  if (j.contains("scale")) scale = RationalField(j.at("scale"), "scale");
  const Json& entries = Require(j, "entries", "primal");
  for (size_t i = 0; i < entries.size(); ++i) {
    PrimalEntry e;
    e.pattern = PatternFromJson(entries[i], num_types);
    e.x = RationalField(Require(entries[i], "x", "entries"),
                        "entries[" + std::to_string(i) + "].x") *
          scale;
    if (e.x < 0) throw SchemaError("entries: x must be non-negative");
    sol.entries.push_back(e);
  }
  return sol;
}

Json PrimalToJson(const PrimalSolution& sol) {
  Json j;
  j["kind"] = "primal_solution";
  j["ratio"] = ToString(sol.ratio);
  Json entries = Json::array();
  for (const PrimalEntry& e : sol.entries) {
    Json p = PatternToJson(e.pattern);
    p["x"] = ToString(e.x);
    entries.push_back(p);
  }
  j["entries"] = entries;
  return j;
}

OptScheme SchemeFromJson(const Json& j, int num_types) {
  ExpectKind(j, "opt_scheme");
  OptScheme scheme;
  scheme.name = j.value("name", "");
  const Json& prefixes = Require(j, "prefixes", "scheme");
  scheme.prefixes.resize(prefixes.size());
  for (size_t i = 0; i < prefixes.size(); ++i) {
    const std::string where = "prefixes[" + std::to_string(i) + "]";
    const int index = prefixes[i].value("prefix", static_cast<int>(i) + 1);
    if (index != static_cast<int>(i) + 1) {
      throw SchemaError(where + ": prefixes must be listed in order");
    }
    const Json& entries = Require(prefixes[i], "entries", where);
    for (const Json& e : entries) {
      SchemeEntry se;
      se.pattern = PatternFromJson(e, num_types);
      se.bins = RationalField(Require(e, "bins", where), where + ".bins");
      if (se.bins < 0) throw SchemaError(where + ": bins must be non-negative");
      scheme.prefixes[i].push_back(se);
    }
  }
  return scheme;
}

Json SchemeToJson(const OptScheme& scheme) {
  Json j;
  j["kind"] = "opt_scheme";
  j["name"] = scheme.name;
  Json prefixes = Json::array();
  for (size_t i = 0; i < scheme.prefixes.size(); ++i) {
    Json entries = Json::array();
    for (const SchemeEntry& e : scheme.prefixes[i]) {
      Json p = PatternToJson(e.pattern);
      p["bins"] = ToString(e.bins);
      entries.push_back(p);
    }
    prefixes.push_back({{"prefix", i + 1}, {"entries", entries}});
  }
  j["prefixes"] = prefixes;
  return j;
}

PatternSet PatternSetFromJson(const Json& j, int num_types) {
  ExpectKind(j, "pattern_set");
  PatternSet set;
  set.name = j.value("name", "");
  for (const Json& p : Require(j, "patterns", "pattern_set")) {
    set.patterns.push_back(PatternFromJson(p, num_types));
  }
  return set;
}

Json PatternSetToJson(const PatternSet& set) {
  Json j;
  j["kind"] = "pattern_set";
  j["name"] = set.name;
  Json patterns = Json::array();
  for (const Pattern& p : set.patterns) patterns.push_back(PatternToJson(p));
  j["patterns"] = patterns;
  return j;
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError("parse error in '" + path + "': " + e.what());
  }
}

void WriteJsonFile(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

Instance LoadInstance(const std::string& path) {
  return InstanceFromJson(ReadJsonFile(path));
}

DualCertificate LoadCertificate(const std::string& path, int num_types) {
  return CertificateFromJson(ReadJsonFile(path), num_types);
}

PrimalSolution LoadPrimal(const std::string& path, int num_types) {
  return PrimalFromJson(ReadJsonFile(path), num_types);
}

OptScheme LoadScheme(const std::string& path, int num_types) {
  return SchemeFromJson(ReadJsonFile(path), num_types);
}

PatternSet LoadPatternSet(const std::string& path, int num_types) {
  return PatternSetFromJson(ReadJsonFile(path), num_types);
}

}  // namespace binlb
