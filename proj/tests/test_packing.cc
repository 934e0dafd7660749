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

#include "binlb/packing.h"

#include <string>

#include "binlb/model.h"
#include "doctest.h"

namespace binlb {
namespace {

const std::string kData = BINLB_TEST_DATA;

Pattern Counts(std::vector<int64_t> counts) {
  Pattern p;
  p.counts = std::move(counts);
  return p;
}

Instance SingleSquare(const PerturbedSize& side) {
  Instance in;
  in.geometry = Geometry::kHypercube;
  in.dimension = 2;
  ItemType t;
  t.id = 1;
  t.width = side;
  t.height = side;
  in.types = {t};
  in.alpha = {Rational(1)};
  in.opt_ratios = {Rational(1)};
  return in;
}

TEST_CASE("grid units and capacities") {
  AnchorGrid grid;
  CHECK(grid.NumAnchors() == 176400);
  CHECK(GridUnits(ParsePerturbedSize("1/105 + (1/105)e"), grid) == 4);
  CHECK(GridUnits(ParsePerturbedSize("1/2 + (1/2)e"), grid) == 210);
  CHECK(GridUnits(ParsePerturbedSize("1/3"), grid) == -1);
  CHECK(GridCapacity(5, grid) == 83 * 83);
  CHECK(GridCapacity(210, grid) == 1);
  CHECK_THROWS_AS(GridCapacity(420, grid), std::out_of_range);
}

TEST_CASE("single-type capacities of the shipped instances") {
  const Instance squares = LoadInstance(kData + "/squares-1p68.json");
  const Instance rect = LoadInstance(kData + "/rect-1p859.json");
  CHECK(SingleTypeCapacity(squares, 0) == 176400);
  CHECK(SingleTypeCapacity(squares, 2) == 6889);
  CHECK(SingleTypeCapacity(squares, 9) == 1);
  CHECK(SingleTypeCapacity(rect, 0) == 24);
  CHECK(SingleTypeCapacity(rect, 1) == 18);
  CHECK(SingleTypeCapacity(rect, 8) == 1);
}

TEST_CASE("placement verification rejects overlap and overflow") {
  const Instance rect = LoadInstance(kData + "/rect-1p859.json");
  Placement ok;
  ok.items.push_back({8, {PerturbedSize(0), PerturbedSize(0)}, {}});
  CHECK(VerifyPlacement(ok, rect).ok);
  Placement overlap = ok;
  overlap.items.push_back({6, {ParsePerturbedSize("1/4"), PerturbedSize(0)}, {}});
  CHECK_FALSE(VerifyPlacement(overlap, rect).ok);
  Placement outside;
  outside.items.push_back({8, {ParsePerturbedSize("1/2"), PerturbedSize(0)}, {}});
  CHECK_FALSE(VerifyPlacement(outside, rect).ok);
}

TEST_CASE("exhaustive search on rectangle patterns") {
  const Instance rect = LoadInstance(kData + "/rect-1p859.json");
  SearchConfig config;
  struct Case {
    std::vector<int64_t> counts;
    FeasibilityStatus expected;
  };
  const std::vector<Case> cases = {
      {{24, 0, 0, 0, 0, 0, 0, 0, 0}, FeasibilityStatus::kFeasible},
      {{25, 0, 0, 0, 0, 0, 0, 0, 0}, FeasibilityStatus::kInfeasible},
      {{4, 4, 4, 2, 2, 0, 0, 0, 0}, FeasibilityStatus::kFeasible},
      {{0, 0, 0, 0, 0, 2, 2, 0, 0}, FeasibilityStatus::kFeasible},
      {{0, 0, 0, 0, 0, 0, 0, 0, 2}, FeasibilityStatus::kInfeasible},
      {{0, 0, 4, 6, 0, 0, 0, 0, 0}, FeasibilityStatus::kFeasible},
      {{0, 0, 0, 0, 0, 0, 0, 3, 1}, FeasibilityStatus::kInfeasible},
  };
  for (const Case& c : cases) {
    const FeasibilityResult r = ExhaustiveFeasible(Counts(c.counts), rect, config);
    CHECK(r.status == c.expected);
    if (r.status == FeasibilityStatus::kFeasible) {
      CHECK(VerifyPlacement(r.placement, rect).ok);
      CHECK(r.placement.ToPattern(9).counts == c.counts);
    }
  }
}

TEST_CASE("exhaustive search respects the item cap") {
  const Instance rect = LoadInstance(kData + "/rect-1p859.json");
  SearchConfig config;
  config.item_cap = 5;
  const FeasibilityResult r =
      ExhaustiveFeasible(Counts({24, 0, 0, 0, 0, 0, 0, 0, 0}), rect, config);
  CHECK(r.status == FeasibilityStatus::kBudgetExceeded);
}

TEST_CASE("exhaustive search agrees with grid capacity on small grids") {
  for (int G = 2; G <= 12; ++G) {
    AnchorGrid grid;
    grid.resolution = G;
    for (int k = 1; k < G; ++k) {
      const Instance in = SingleSquare(grid.Unit() * Rational(k));
      const int64_t cap = GridCapacity(k, grid);
      SearchConfig config;
      config.item_cap = 1000;
      CHECK(ExhaustiveFeasible(Counts({cap}), in, config).status ==
            FeasibilityStatus::kFeasible);
      CHECK(ExhaustiveFeasible(Counts({cap + 1}), in, config).status ==
            FeasibilityStatus::kInfeasible);
    }
  }
}

TEST_CASE("grid layout and anchor accounting") {
  const Instance squares = LoadInstance(kData + "/squares-1p68.json");
  AnchorGrid grid;
  const Pattern p = Counts({839, 10, 8, 4, 39, 8, 4, 7, 5, 1});
  const FeasibilityResult r = GridLayout(p, squares, grid);
  REQUIRE(r.status == FeasibilityStatus::kFeasible);
  CHECK(VerifyPlacement(r.placement, squares).ok);
  const int64_t available = CountAvailableAnchors(r.placement, squares, grid);
  CHECK(available == 839);
  CHECK(RasterizedCoverage(r.placement, squares, grid) == 176400 - 839);
}

TEST_CASE("grid layout refutes an over-full pattern") {
  const Instance squares = LoadInstance(kData + "/squares-1p68.json");
  AnchorGrid grid;
  const FeasibilityResult r =
      GridLayout(Counts({0, 0, 0, 0, 0, 0, 0, 0, 0, 2}), squares, grid);
  CHECK(r.status == FeasibilityStatus::kInfeasible);
}

TEST_CASE("max-weight fill of a small rectangle") {
  const GridFill f = MaxWeightGridFill(9, 9, {4, 5}, {Rational(16), Rational(25)}, 100000);
  REQUIRE(f.found);
  CHECK(f.weight == 73);
  CHECK(f.counts[0] == 3);
  CHECK(f.counts[1] == 1);
  const GridFill g = MaxWeightGridFill(10, 5, {5}, {Rational(1)}, 100000);
  REQUIRE(g.found);
  CHECK(g.counts[0] == 2);
}

TEST_CASE("perfect tiling exclusion") {
  CHECK(NoPerfectTiling({4, 5}, 419));
  CHECK_FALSE(NoPerfectTiling({4, 5}, 420));
  CHECK_FALSE(NoPerfectTiling({1, 5}, 419));
}

TEST_CASE("harmonic anchor counts") {
  CHECK(HarmonicAnchorCount(3, 2, Rational(1), Rational(1, 3), Rational(0)) == 4);
  const Integer m = HarmonicAnchorCount(1, 2, Rational(10), Rational(1, 3), Rational(0));
  CHECK(m == 59 * 59 - 30 * 30 - 3 * 400);
  CHECK_THROWS_AS(HarmonicAnchorCount(3, 2, Rational(1), Rational(2, 5), Rational(0)),
                  std::domain_error);
}

}  // namespace
}  // namespace binlb
