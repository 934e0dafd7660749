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

// Dominance relations between item types and the per-class heaviest-pattern
// (knapsack) search that decides the first family of dual constraints.

#ifndef BINLB_PATTERNS_H_
#define BINLB_PATTERNS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "binlb/exactnum.h"
#include "binlb/model.h"
#include "binlb/packing.h"

namespace binlb {

// Provenance of a per-class maximality claim.
//   kExact        full enumeration, or a witness that meets a proven bound
//   kPrunedExact  enumeration that skipped vectors by a sound area bound
//   kTrusted      weight taken from a supplied pattern, maximality not proven
//   kUnproven     budget exhausted or no method applies
//   kViolated     a verified witness is heavier than the capacity
enum class Verdict { kExact, kPrunedExact, kTrusted, kUnproven, kViolated };

const char* VerdictName(Verdict v);

struct DominanceCheck {
  DominanceRule rule;
  bool size_ok = false;
  bool weight_ok = false;
  bool ok() const { return size_ok && weight_ok; }
};

// m1 * w_i <= w_j, m2 * h_i <= h_j and m1 * m2 * lambda_i >= lambda_j.
// Throws AmbiguousComparison when a size comparison cannot be decided.
DominanceCheck CheckDominanceRule(const DominanceRule& rule,
                                  const Instance& instance,
                                  const std::vector<Rational>& lambda);
bool CheckDominance(const DominanceRule& rule, const Instance& instance,
                    const std::vector<Rational>& lambda);

// Transitive closure of a rule list. Immutable once built.
class DominanceClosure {
 public:
  DominanceClosure(int num_types, const std::vector<DominanceRule>& rules);

  // True when type i dominates type j directly or through a chain.
  bool Dominates(int i, int j) const { return reach_[i][j]; }
  int num_types() const { return static_cast<int>(reach_.size()); }

 private:
  std::vector<std::vector<bool>> reach_;
};

// Types t >= j (0-based) that no kept type >= j dominates. Type j is always
// kept since every pattern of class j contains it.
std::vector<int> ReducedTypeSet(int j, const DominanceClosure& closure);

// Replaces item `index` of the placement by the m1 x m2 grid of dominator
// items anchored at its corner.
Placement SubstituteDominated(const Placement& placement, int index,
                              const DominanceRule& rule,
                              const Instance& instance);

struct KnapsackConfig {
  SearchConfig search;
  bool area_pruning = true;
  // Count vectors examined per class before giving up.
  int64_t max_vectors = 2000000;
  // Node budget of the corner search in the grid witness construction.
  int64_t corner_budget = 4000000;
};

struct ClassResult {
  int j = 0;                      // 0-based class index.
  std::vector<int> reduced;       // 0-based types considered.
  std::vector<Pattern> heaviest;  // Every maximizer found (ties included).
  Rational weight;                // Weight of the heaviest verified pattern.
  Rational upper_bound;           // Proven bound on every class-j pattern.
  bool bound_proven = false;
  Rational capacity;              // -sum_{i >= j} mu_i.
  Verdict verdict = Verdict::kUnproven;
  int64_t vectors = 0;            // Count vectors decided.
  std::string method;
  std::string note;

  // The dual constraint of this class holds for every pattern.
  bool Holds() const { return bound_proven && upper_bound <= capacity; }
};

struct KnapsackReport {
  std::vector<DominanceCheck> rules;
  std::vector<ClassResult> classes;

  bool RulesHold() const;
  bool AllHold() const;
};

// Maximizes the pattern weight over feasible class-j patterns restricted to
// the reduced types. `capacity` only feeds the verdict.
ClassResult HeaviestPattern(int j, const Instance& instance,
                            const std::vector<Rational>& lambda,
                            const DominanceClosure& closure,
                            const Rational& capacity,
                            const KnapsackConfig& config);

// Checks every rule of the certificate and solves every class. Rules that
// fail are left out of the closure.
KnapsackReport BuildKnapsackReport(const Instance& instance,
                                   const DualCertificate& cert,
                                   const KnapsackConfig& config);

enum class DominantStatus { kDominant, kNotDominant, kUnknown };

// A pattern is dominant when one more item of its smallest used type does
// not fit.
DominantStatus VerifyDominantOnly(const Pattern& pattern,
                                  const Instance& instance,
                                  const SearchConfig& config);

}  // namespace binlb

#endif  // BINLB_PATTERNS_H_
