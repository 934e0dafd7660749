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

// Exact linear programs over a pattern set and the end-to-end checks that
// turn a dual certificate or an offline packing scheme into a verdict.

#ifndef BINLB_LP_H_
#define BINLB_LP_H_

#include <cstdint>
#include <string>
#include <vector>

#include "binlb/exactnum.h"
#include "binlb/model.h"
#include "binlb/packing.h"
#include "binlb/patterns.h"

namespace binlb {

enum class RowSense { kLessEq, kGreaterEq, kEqual };

const char* RowSenseName(RowSense s);

// Every variable is non-negative.
struct LpProblem {
  bool maximize = false;
  std::vector<Rational> objective;
  std::vector<std::vector<Rational>> rows;
  std::vector<RowSense> senses;
  std::vector<Rational> rhs;
  std::vector<std::string> var_names;
  std::vector<std::string> row_names;

  int NumVars() const { return static_cast<int>(objective.size()); }
  int NumRows() const { return static_cast<int>(rows.size()); }
  // Throws std::invalid_argument when the dimensions disagree.
  void Validate() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* LpStatusName(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Rational objective;
  std::vector<Rational> x;
  int64_t pivots = 0;
};

// Two-phase simplex on a dense rational tableau with the smallest-index
// (Bland) pivot rule.
LpSolution SolveExact(const LpProblem& lp);

// Exact slack of every row at x; negative slack means a violated row.
std::vector<LedgerLine> CheckRows(const LpProblem& lp,
                                  const std::vector<Rational>& x);

struct PatternCertificate {
  FeasibilityStatus status = FeasibilityStatus::kBudgetExceeded;
  std::string method;
  int64_t available_anchors = -1;
  std::string message;
  Placement placement;

  bool ok() const { return status == FeasibilityStatus::kFeasible; }
};

// Single-type patterns are decided by capacity. Grid instances lay out the
// non-sand items on the anchor grid and compare the free anchors with the
// sand count; other instances use the exhaustive search.
PatternCertificate CertifyPattern(const Pattern& pattern,
                                  const Instance& instance,
                                  const SearchConfig& config);

// min R subject to coverage sum_p p_i x(p) >= alpha_i and prefix rows
// sum_{class(p) <= j} x(p) <= optRatio_j * R. Variables are x(p) in set
// order followed by R. Throws std::invalid_argument for an empty set or a
// pattern that cannot be certified.
LpProblem BuildPrimal(const Instance& instance, const PatternSet& set,
                      const SearchConfig& config = {});

// max sum_j alpha_j lambda_j with one row per pattern and the normalization
// row sum_j optRatio_j nu_j <= 1, where nu = -mu. Variables are lambda_1..k
// followed by nu_1..k.
LpProblem BuildDual(const Instance& instance, const PatternSet& set);

enum class BoundStatus { kProven, kRefuted, kUnproven };

const char* BoundStatusName(BoundStatus s);

struct BoundResult {
  BoundStatus status = BoundStatus::kUnproven;
  Rational bound;
  std::string reason;
  std::vector<LedgerLine> ledger;
  KnapsackReport knapsack;
};

// Signs, normalization row and one knapsack constraint per class. A class
// whose verified witness exceeds its capacity refutes the certificate.
BoundResult VerifyDualCertificate(const Instance& instance,
                                  const DualCertificate& cert,
                                  const KnapsackReport& knapsack);
BoundResult VerifyDualCertificate(const Instance& instance,
                                  const DualCertificate& cert,
                                  const KnapsackConfig& config = {});

struct SchemeReport {
  BoundStatus status = BoundStatus::kUnproven;
  std::string reason;
  // certificates[j][e] certifies scheme.prefixes[j][e].
  std::vector<std::vector<PatternCertificate>> certificates;
  CoverageReport coverage;
  // Prefix indices (0-based) whose patterns and coverage all check out.
  std::vector<bool> prefix_ok;
};

SchemeReport VerifyOptScheme(const Instance& instance, const OptScheme& scheme,
                             const SearchConfig& config = {});

struct PrimalReport {
  BoundStatus status = BoundStatus::kUnproven;
  std::string reason;
  std::vector<PatternCertificate> certificates;
  CoverageReport coverage;
};

// Certifies every pattern of the solution and checks its rows at the
// declared ratio.
PrimalReport VerifyPrimal(const Instance& instance,
                          const PrimalSolution& solution,
                          const SearchConfig& config = {});

}  // namespace binlb

#endif  // BINLB_LP_H_
