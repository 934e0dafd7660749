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

// Feasibility oracles for packing items into the unit bin.
//
// All exact searches run on a skyline over per-axis breakpoints. For
// grid-aligned items the breakpoints are the anchor coordinates; for
// perturbed rectangles they are the sums of sub-multisets of item extents,
// which covers every bottom-left normalized packing. At the lowest-leftmost
// undecided cell the search either starts an item there or declares the cell
// empty, so exhausting the tree proves infeasibility.

#ifndef BINLB_PACKING_H_
#define BINLB_PACKING_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "binlb/exactnum.h"
#include "binlb/model.h"

namespace binlb {

struct AnchorGrid {
  int resolution = 420;
  int dimension = 2;

  // (1 + e) / G.
  PerturbedSize Unit() const;
  int64_t NumAnchors() const;
};

// Number of grid units of `s`, or -1 when s is not an integer multiple of the
// grid unit.
int64_t GridUnits(const PerturbedSize& s, const AnchorGrid& grid);

// floor((G - 1) / k)^d. Throws std::out_of_range unless 1 <= k <= G - 1.
int64_t GridCapacity(int64_t k, const AnchorGrid& grid);

// Maximum number of items of type t in one bin: the product over axes of
// FloorCapacity of the extent. Exact for congruent axis-parallel boxes.
int64_t SingleTypeCapacity(const Instance& instance, int t);

struct PlacedItem {
  int type = 0;                      // 0-based.
  std::vector<PerturbedSize> pos;    // One coordinate per axis.
  std::vector<int64_t> cell;         // Grid indices, empty when off-grid.
};

struct Placement {
  std::vector<PlacedItem> items;

  Pattern ToPattern(int num_types) const;
};

struct PlacementCheck {
  bool ok = false;
  std::string message;
};

// Containment in the unit bin and pairwise interior disjointness, decided
// with exact lexicographic comparisons.
PlacementCheck VerifyPlacement(const Placement& placement,
                               const Instance& instance);

// Anchors whose +e shifted point is not covered by a placed item. Every item
// must carry grid cells.
int64_t CountAvailableAnchors(const Placement& placement,
                              const Instance& instance, const AnchorGrid& grid);

// Anchors covered by rasterizing the placement cell by cell (d <= 2).
int64_t RasterizedCoverage(const Placement& placement,
                           const Instance& instance, const AnchorGrid& grid);

struct SearchConfig {
  int64_t node_budget = 10000000;
  int64_t item_cap = 30;
  bool area_pruning = true;
};

enum class FeasibilityStatus { kFeasible, kInfeasible, kBudgetExceeded };

const char* FeasibilityName(FeasibilityStatus s);

struct FeasibilityResult {
  FeasibilityStatus status = FeasibilityStatus::kBudgetExceeded;
  Placement placement;
  int64_t nodes = 0;
  std::string diagnostic;
};

// Decides whether the pattern fits in one bin. Sand items are treated like
// any other type. Throws AmbiguousComparison when breakpoints on one axis
// cannot be ordered.
FeasibilityResult ExhaustiveFeasible(const Pattern& pattern,
                                     const Instance& instance,
                                     const SearchConfig& config);

// Lays out all non-sand items of a grid-aligned pattern on the anchor grid,
// largest first. A failure means no layout was found within the budget.
FeasibilityResult GridLayout(const Pattern& pattern, const Instance& instance,
                             const AnchorGrid& grid,
                             int64_t node_budget = 2000000);

// Best-weight packing of squares with the given sides (in cells) into a
// width x height cell rectangle, searched by increasing weight loss relative
// to the densest type. Weights are per item.
struct GridFill {
  bool found = false;
  std::vector<int64_t> counts;           // Per side index.
  std::vector<std::vector<int64_t>> items;  // {side index, x, y}.
  Rational weight;
  int64_t nodes = 0;
};
GridFill MaxWeightGridFill(int64_t width, int64_t height,
                           const std::vector<int64_t>& sides,
                           const std::vector<Rational>& weights,
                           int64_t node_budget);

// True when the root-of-unity argument rules out a perfect tiling of an L^d
// box (d >= 2) by cubes with the given sides: there are p, q >= 2 such that
// every side is divisible by p or by q while L is divisible by neither.
bool NoPerfectTiling(const std::vector<int64_t>& sides, int64_t length);

// Number of t-items that fit at free t-anchors next to one u-item and
// 2^d - 1 v-items in the Harmonic-type instance families:
//   family 1 (instances 1..h) and family 3 (instance 2h+1):
//     ((2K - y)/y)^d - (K/y)^d - (2^d - 1)(2K)^d
//   family 2 (instances h+1..2h), with z = y(1 - y_next):
//     ((K - z)/z)^d - (K/y)^d - (2^d - 1)(K/(1 - y_next))^d
// y is y_{h-j} (family 1, 2) or y_h (family 3). Throws std::domain_error when
// the anchor counts are not integers.
Integer HarmonicAnchorCount(int family, int d, const Rational& K,
                            const Rational& y, const Rational& y_next);

}  // namespace binlb

#endif  // BINLB_PACKING_H_
