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

#include "binlb/patterns.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace binlb {
namespace {

Rational Weighted(const std::vector<int64_t>& counts,
                  const std::vector<Rational>& lambda) {
  Rational w = 0;
  for (size_t t = 0; t < counts.size(); ++t) {
    if (counts[t] != 0) w += lambda[t] * Rational(static_cast<long>(counts[t]));
  }
  return w;
}

std::string TypeList(const std::vector<int>& types) {
  std::string out;
  for (size_t i = 0; i < types.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(types[i] + 1);
  }
  return out;
}

void SetVerdict(ClassResult* r, Verdict maximal) {
  r->verdict = maximal;
  if (!r->heaviest.empty() && r->weight > r->capacity) {
    r->verdict = Verdict::kViolated;
  }
}

void SingleType(int j, const Instance& instance,
                const std::vector<Rational>& lambda, ClassResult* r) {
  const int64_t cap = SingleTypeCapacity(instance, j);
  r->method = "single type capacity";
  r->bound_proven = true;
  if (cap == 0) {
    r->weight = 0;
    r->upper_bound = 0;
    r->note = "type does not fit in the bin";
    SetVerdict(r, Verdict::kExact);
    return;
  }
  Pattern p;
  p.counts.assign(instance.NumTypes(), 0);
  p.counts[j] = cap;
  r->weight = lambda[j] * Rational(static_cast<long>(cap));
  r->upper_bound = r->weight;
  r->heaviest.push_back(p);
  SetVerdict(r, Verdict::kExact);
}

void Enumerate(const Instance& instance,
               const std::vector<Rational>& lambda,
               const KnapsackConfig& config, ClassResult* r) {
  r->method = "count vector enumeration";
  const int k = instance.NumTypes();
  const std::vector<int>& types = r->reduced;
  std::vector<int64_t> caps;
  double space = 1;
  for (int t : types) {
    caps.push_back(SingleTypeCapacity(instance, t));
    space *= static_cast<double>(caps.back() + 1);
  }
  if (caps[0] == 0) {
    r->bound_proven = true;
    r->weight = 0;
    r->upper_bound = 0;
    r->note = "type does not fit in the bin";
    SetVerdict(r, Verdict::kExact);
    return;
  }
  if (space > static_cast<double>(config.max_vectors)) {
    r->note = "enumeration space exceeds the vector budget";
    SetVerdict(r, Verdict::kUnproven);
    return;
  }
  struct Candidate {
    std::vector<int64_t> counts;
    Rational weight;
  };
  std::vector<Candidate> all;
  std::vector<int64_t> cur(types.size(), 0);
  cur[0] = 1;
  while (true) {
    Candidate c;
    c.counts.assign(k, 0);
    for (size_t i = 0; i < types.size(); ++i) c.counts[types[i]] = cur[i];
    c.weight = Weighted(c.counts, lambda);
    all.push_back(std::move(c));
    size_t i = 0;
    while (i < types.size()) {
      if (cur[i] < caps[i]) {
        ++cur[i];
        break;
      }
      cur[i] = i == 0 ? 1 : 0;
      ++i;
    }
    if (i == types.size()) break;
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return a.weight > b.weight;
                   });
  SearchConfig search = config.search;
  search.area_pruning = config.area_pruning;
  bool pruned = false;
  bool have_bound = false;
  size_t i = 0;
  while (i < all.size()) {
    size_t end = i;
    while (end < all.size() && all[end].weight == all[i].weight) ++end;
    bool undecided = false;
    for (size_t c = i; c < end; ++c) {
      Pattern p;
      p.counts = all[c].counts;
      if (config.area_pruning) {
        Rational area = 0;
        for (int t : types) {
          area += instance.BaseVolume(t) * Rational(static_cast<long>(p.counts[t]));
        }
        if (area > 1) {
          pruned = true;
          continue;
        }
      }
      ++r->vectors;
      const FeasibilityResult f = ExhaustiveFeasible(p, instance, search);
      if (f.status == FeasibilityStatus::kFeasible) {
        r->heaviest.push_back(p);
      } else if (f.status == FeasibilityStatus::kBudgetExceeded) {
        undecided = true;
      }
    }
    if (undecided && !have_bound) {
      have_bound = true;
      r->upper_bound = all[i].weight;
      r->note = "search budget exhausted at weight " + ToString(all[i].weight);
    }
    if (!r->heaviest.empty()) {
      r->weight = all[i].weight;
      if (!have_bound) r->upper_bound = r->weight;
      r->bound_proven = true;
      const bool exact = r->upper_bound == r->weight;
      SetVerdict(r, !exact ? Verdict::kUnproven
                           : (pruned ? Verdict::kPrunedExact : Verdict::kExact));
      return;
    }
    i = end;
  }
  r->bound_proven = have_bound;
  r->weight = 0;
  SetVerdict(r, Verdict::kUnproven);
  if (r->note.empty()) r->note = "no feasible pattern found";
}

// Best weight of rows laid across a band of the given length and height.
struct Band {
  Rational weight;
  std::vector<int64_t> rows;  // Per type index into the reduced list.
};

Band BandKnapsack(int64_t length, int64_t height,
                  const std::vector<int64_t>& sides,
                  const std::vector<Rational>& weights) {
  std::vector<Rational> best(height + 1, Rational(0));
  std::vector<int> choice(height + 1, -1);
  for (int64_t h = 1; h <= height; ++h) {
    best[h] = best[h - 1];
    for (size_t t = 0; t < sides.size(); ++t) {
      if (sides[t] > h) continue;
      const Rational v = best[h - sides[t]] +
                         weights[t] * Rational(static_cast<long>(length / sides[t]));
      if (v > best[h]) {
        best[h] = v;
        choice[h] = static_cast<int>(t);
      }
    }
  }
  Band band;
  band.weight = best[height];
  band.rows.assign(sides.size(), 0);
  int64_t h = height;
  while (h > 0) {
    if (choice[h] < 0 || best[h] == best[h - 1]) {
      --h;
      continue;
    }
    ++band.rows[choice[h]];
    h -= sides[choice[h]];
  }
  return band;
}

struct GridWitness {
  bool found = false;
  Rational weight;
  Placement placement;
  std::vector<int64_t> counts;
};

void AddItem(Placement* pl, int type, int64_t x, int64_t y,
             const PerturbedSize& unit) {
  PlacedItem item;
  item.type = type;
  item.cell = {x, y};
  item.pos = {unit * Rational(static_cast<long>(x)),
              unit * Rational(static_cast<long>(y))};
  pl->items.push_back(std::move(item));
}

// Core block of one type, two banded strips and a searched corner.
GridWitness PeriodicCore(int j, const Instance& instance,
                         const AnchorGrid& grid,
                         const std::vector<int>& types,
                         const std::vector<int64_t>& sides,
                         const std::vector<Rational>& weights,
                         const Rational& target, int64_t corner_budget) {
  const int64_t L = grid.resolution - 1;
  const int64_t max_r = 2 * *std::max_element(sides.begin(), sides.end()) * 4;
  const PerturbedSize unit = grid.Unit();
  GridWitness best;
  for (const int64_t budget : {corner_budget / 16, corner_budget}) {
  for (size_t c = 0; c < types.size(); ++c) {
    const int64_t p = sides[c];
    const int64_t top = std::min(L, max_r);
    for (int64_t r = top - (top - L % p) % p; r >= 0; r -= p) {
      const int64_t core = L - r;
      const Band band = BandKnapsack(core, r, sides, weights);
      const GridFill corner =
          r > 0 ? MaxWeightGridFill(r, r, sides, weights, budget)
                : GridFill{true, std::vector<int64_t>(sides.size(), 0), {}, 0, 0};
      if (!corner.found) continue;
      const Rational per_side = Rational(static_cast<long>(core / p));
      const Rational weight = weights[c] * per_side * per_side +
                              2 * band.weight + corner.weight;
      if (best.found && weight <= best.weight) continue;
      std::vector<int64_t> counts(instance.NumTypes(), 0);
      Placement pl;
      for (int64_t x = 0; x + p <= core; x += p) {
        for (int64_t y = 0; y + p <= core; y += p) AddItem(&pl, types[c], x, y, unit);
      }
      int64_t offset = core;
      for (size_t t = 0; t < sides.size(); ++t) {
        for (int64_t row = 0; row < band.rows[t]; ++row) {
          for (int64_t s = 0; s + sides[t] <= core; s += sides[t]) {
            AddItem(&pl, types[t], offset, s, unit);
            AddItem(&pl, types[t], s, offset, unit);
          }
          offset += sides[t];
        }
      }
      for (const std::vector<int64_t>& it : corner.items) {
        AddItem(&pl, types[it[0]], core + it[1], core + it[2], unit);
      }
      for (const PlacedItem& item : pl.items) ++counts[item.type];
      if (counts[j] == 0) continue;
      best.found = true;
      best.weight = weight;
      best.placement = std::move(pl);
      best.counts = std::move(counts);
      if (best.weight >= target) return best;
    }
  }
  }
  return best;
}

void GridClass(int j, const Instance& instance,
               const std::vector<Rational>& lambda,
               const KnapsackConfig& config, ClassResult* r) {
  r->method = "grid density bound with periodic core witness";
  AnchorGrid grid;
  grid.resolution = instance.anchor_grid;
  grid.dimension = instance.dimension;
  if (instance.dimension != 2) {
    r->note = "grid witness construction needs dimension 2";
    SetVerdict(r, Verdict::kUnproven);
    return;
  }
  std::vector<int64_t> sides;
  std::vector<Rational> weights;
  for (int t : r->reduced) {
    const int64_t u = t == instance.sand_type ? -1 : GridUnits(instance.types[t].width, grid);
    if (u <= 0) {
      r->note = "type " + std::to_string(t + 1) + " is not a grid multiple";
      SetVerdict(r, Verdict::kUnproven);
      return;
    }
    sides.push_back(u);
    weights.push_back(lambda[t]);
  }
  const int64_t L = grid.resolution - 1;
  Rational rho_max = 0;
  for (size_t i = 0; i < sides.size(); ++i) {
    const Rational rho = weights[i] / Rational(static_cast<long>(sides[i] * sides[i]));
    if (rho > rho_max) rho_max = rho;
  }
  int64_t cells = L * L;
  if (NoPerfectTiling(sides, L)) {
    cells -= 1;
    r->note = "no perfect tiling of the usable grid";
  }
  r->upper_bound = rho_max * Rational(static_cast<long>(cells));
  r->bound_proven = true;
  const GridWitness w = PeriodicCore(j, instance, grid, r->reduced, sides,
                                     weights, r->upper_bound,
                                     config.corner_budget);
  if (!w.found) {
    SetVerdict(r, Verdict::kUnproven);
    return;
  }
  const PlacementCheck check = VerifyPlacement(w.placement, instance);
  if (!check.ok) {
    r->note = "witness rejected: " + check.message;
    SetVerdict(r, Verdict::kUnproven);
    return;
  }
  Pattern p;
  p.counts = w.counts;
  r->heaviest.push_back(p);
  r->weight = w.weight;
  r->vectors = 1;
  SetVerdict(r, r->weight == r->upper_bound ? Verdict::kExact : Verdict::kUnproven);
}

}  // namespace

const char* VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kExact:
      return "Exact";
    case Verdict::kPrunedExact:
      return "Pruned-Exact";
    case Verdict::kTrusted:
      return "Trusted";
    case Verdict::kUnproven:
      return "Unproven";
    case Verdict::kViolated:
      return "Violated";
  }
  return "?";
}

DominanceCheck CheckDominanceRule(const DominanceRule& rule,
                                  const Instance& instance,
                                  const std::vector<Rational>& lambda) {
  DominanceCheck out;
  out.rule = rule;
  const int i = rule.dominator;
  const int j = rule.dominated;
  const Rational m1(static_cast<long>(rule.m1));
  const Rational m2(static_cast<long>(rule.m2));
  bool size_ok = LessEq(instance.types[i].width * m1, instance.types[j].width);
  if (instance.dimension >= 2) {
    size_ok = size_ok &&
              LessEq(instance.types[i].height * m2, instance.types[j].height);
  }
  if (instance.geometry == Geometry::kHypercube && rule.m1 != rule.m2) {
    size_ok = false;
  }
  out.size_ok = size_ok;
  Rational copies = m1;
  if (instance.dimension >= 2) copies *= m2;
  for (int a = 2; a < instance.dimension; ++a) copies *= m1;
  out.weight_ok = copies * lambda[i] >= lambda[j];
  return out;
}

bool CheckDominance(const DominanceRule& rule, const Instance& instance,
                    const std::vector<Rational>& lambda) {
  return CheckDominanceRule(rule, instance, lambda).ok();
}

DominanceClosure::DominanceClosure(int num_types,
                                   const std::vector<DominanceRule>& rules)
    : reach_(num_types, std::vector<bool>(num_types, false)) {
  for (const DominanceRule& r : rules) reach_[r.dominator][r.dominated] = true;
  for (int m = 0; m < num_types; ++m) {
    for (int a = 0; a < num_types; ++a) {
      if (!reach_[a][m]) continue;
      for (int b = 0; b < num_types; ++b) {
        if (reach_[m][b]) reach_[a][b] = true;
      }
    }
  }
}

std::vector<int> ReducedTypeSet(int j, const DominanceClosure& closure) {
  const int k = closure.num_types();
  std::vector<int> kept;
  for (int t = j; t < k; ++t) {
    bool removed = false;
    if (t != j) {
      for (int u = j; u < k && !removed; ++u) {
        if (u == t || !closure.Dominates(u, t)) continue;
        removed = !closure.Dominates(t, u) || u < t;
      }
    }
    if (!removed) kept.push_back(t);
  }
  return kept;
}

Placement SubstituteDominated(const Placement& placement, int index,
                              const DominanceRule& rule,
                              const Instance& instance) {
  Placement out;
  for (int n = 0; n < static_cast<int>(placement.items.size()); ++n) {
    if (n != index) out.items.push_back(placement.items[n]);
  }
  const PlacedItem& old = placement.items[index];
  const int i = rule.dominator;
  const int d = static_cast<int>(old.pos.size());
  std::vector<int64_t> reps(d, rule.m1);
  if (d >= 2) reps[1] = rule.m2;
  std::vector<int64_t> idx(d, 0);
  while (true) {
    PlacedItem item;
    item.type = i;
    for (int a = 0; a < d; ++a) {
      const PerturbedSize& ext = a == 1 && instance.geometry == Geometry::kRectangle2d
                                     ? instance.types[i].height
                                     : instance.types[i].width;
      item.pos.push_back(old.pos[a] + ext * Rational(static_cast<long>(idx[a])));
    }
    out.items.push_back(std::move(item));
    int a = 0;
    while (a < d && ++idx[a] == reps[a]) idx[a++] = 0;
    if (a == d) break;
  }
  return out;
}

bool KnapsackReport::RulesHold() const {
  return std::all_of(rules.begin(), rules.end(),
                     [](const DominanceCheck& c) { return c.ok(); });
}

bool KnapsackReport::AllHold() const {
  return RulesHold() &&
         std::all_of(classes.begin(), classes.end(),
                     [](const ClassResult& c) { return c.Holds(); });
}

ClassResult HeaviestPattern(int j, const Instance& instance,
                            const std::vector<Rational>& lambda,
                            const DominanceClosure& closure,
                            const Rational& capacity,
                            const KnapsackConfig& config) {
  ClassResult r;
  r.j = j;
  r.capacity = capacity;
  r.reduced = ReducedTypeSet(j, closure);
  if (r.reduced.size() == 1) {
    SingleType(j, instance, lambda, &r);
  } else if (instance.geometry == Geometry::kHypercube && instance.anchor_grid > 0) {
    GridClass(j, instance, lambda, config, &r);
  } else {
    Enumerate(instance, lambda, config, &r);
  }
  if (r.note.empty()) r.note = "types " + TypeList(r.reduced);
  return r;
}

KnapsackReport BuildKnapsackReport(const Instance& instance,
                                   const DualCertificate& cert,
                                   const KnapsackConfig& config) {
  KnapsackReport report;
  std::vector<DominanceRule> good;
  for (const DominanceRule& rule : cert.rules) {
    DominanceCheck c;
    c.rule = rule;
    try {
      c = CheckDominanceRule(rule, instance, cert.lambda);
    } catch (const AmbiguousComparison&) {
      c.size_ok = false;
    }
    if (c.ok()) good.push_back(rule);
    report.rules.push_back(c);
  }
  const DominanceClosure closure(instance.NumTypes(), good);
  Rational capacity = 0;
  std::vector<Rational> caps(instance.NumTypes());
  for (int j = instance.NumTypes() - 1; j >= 0; --j) {
    capacity -= cert.mu[j];
    caps[j] = capacity;
  }
  for (int j = 0; j < instance.NumTypes(); ++j) {
    report.classes.push_back(
        HeaviestPattern(j, instance, cert.lambda, closure, caps[j], config));
  }
  return report;
}

DominantStatus VerifyDominantOnly(const Pattern& pattern,
                                  const Instance& instance,
                                  const SearchConfig& config) {
  const int c = pattern.ClassIndex();
  if (c < 0) return DominantStatus::kUnknown;
  Pattern extended = pattern;
  ++extended.counts[c];
  int used = 0;
  for (int64_t n : pattern.counts) used += n > 0 ? 1 : 0;
  if (used == 1) {
    return extended.counts[c] > SingleTypeCapacity(instance, c)
               ? DominantStatus::kDominant
               : DominantStatus::kNotDominant;
  }
  FeasibilityResult f;
  if (instance.geometry == Geometry::kHypercube && instance.anchor_grid > 0) {
    if (instance.sand_type >= 0 && pattern.counts[instance.sand_type] > 0) {
      return DominantStatus::kUnknown;
    }
    AnchorGrid grid;
    grid.resolution = instance.anchor_grid;
    grid.dimension = instance.dimension;
    f = GridLayout(extended, instance, grid, config.node_budget);
  } else {
    f = ExhaustiveFeasible(extended, instance, config);
  }
  switch (f.status) {
    case FeasibilityStatus::kFeasible:
      return DominantStatus::kNotDominant;
    case FeasibilityStatus::kInfeasible:
      return DominantStatus::kDominant;
    case FeasibilityStatus::kBudgetExceeded:
      break;
  }
  return DominantStatus::kUnknown;
}

}  // namespace binlb
