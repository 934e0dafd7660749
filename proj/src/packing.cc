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

#include <pthread.h>

#include <algorithm>
#include <exception>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace binlb {
namespace {

// Runs `fn` on a thread whose stack fits one search frame per grid cell.
void RunWithLargeStack(const std::function<void()>& fn) {
  constexpr size_t kStackBytes = size_t{1} << 30;
  pthread_attr_t attr;
  pthread_attr_init(&attr);
  pthread_attr_setstacksize(&attr, kStackBytes);
  struct Job {
    const std::function<void()>* fn;
    std::exception_ptr error;
  } job{&fn, nullptr};
  auto trampoline = [](void* arg) -> void* {
    Job* j = static_cast<Job*>(arg);
    try {
      (*j->fn)();
    } catch (...) {
      j->error = std::current_exception();
    }
    return nullptr;
  };
  pthread_t thread;
  const int rc = pthread_create(&thread, &attr, trampoline, &job);
  pthread_attr_destroy(&attr);
  if (rc != 0) {
    fn();
    return;
  }
  pthread_join(thread, nullptr);
  if (job.error) std::rethrow_exception(job.error);
}

// Skyline over breakpoint indices. Points 0..nx on the x axis and 0..ny on
// the y axis; the last point on each axis is the bin edge.
struct SkylineModel {
  int nx = 0;
  int ny = 0;
  std::vector<int64_t> cell_w;  // Scaled base width of x cell c.
  std::vector<int64_t> y_val;   // Scaled base value of y point i.
  std::vector<std::vector<int>> x_end;  // [t][i] -> end point or -1.
  std::vector<std::vector<int>> y_end;  // [t][i] -> end point or -1.
  std::vector<int64_t> area;            // Scaled base area per type.
  std::vector<int> order;               // Types in try order.
  bool uniform = false;                 // Every cell has the same size.
};

struct PlacedRecord {
  int type;
  int x;  // Point index.
  int y;  // Point index.
};

class SkylineSearch {
 public:
  SkylineSearch(const SkylineModel& model, std::vector<int64_t> counts,
                int64_t node_budget, bool area_pruning)
      : model_(model),
        rem_(std::move(counts)),
        budget_(node_budget),
        area_pruning_(area_pruning),
        heights_(model.nx, 0) {
    for (size_t t = 0; t < rem_.size(); ++t) {
      remaining_items_ += rem_[t];
      rem_area_ += rem_[t] * model_.area[t];
    }
    for (int c = 0; c < model_.nx; ++c) {
      free_area_ += model_.cell_w[c] * (model_.y_val[model_.ny] - model_.y_val[0]);
    }
  }

  FeasibilityStatus Run() {
    bool ok = false;
    RunWithLargeStack([&] { ok = Dfs(); });
    if (ok) return FeasibilityStatus::kFeasible;
    return exceeded_ ? FeasibilityStatus::kBudgetExceeded
                     : FeasibilityStatus::kInfeasible;
  }

  const std::vector<PlacedRecord>& placed() const { return placed_; }
  int64_t nodes() const { return nodes_; }

 private:
  std::string Key() const {
    std::string key;
    key.reserve(heights_.size() * 2 + rem_.size() * 4);
    for (int h : heights_) {
      key.push_back(static_cast<char>(h & 0xff));
      key.push_back(static_cast<char>((h >> 8) & 0xff));
    }
    for (int64_t r : rem_) {
      for (int b = 0; b < 4; ++b) key.push_back(static_cast<char>((r >> (8 * b)) & 0xff));
    }
    return key;
  }

  void Raise(int from, int to, int level) {
    for (int c = from; c < to; ++c) {
      free_area_ -= model_.cell_w[c] *
                    (model_.y_val[level] - model_.y_val[heights_[c]]);
      heights_[c] = level;
    }
  }

  bool Dfs() {
    if (remaining_items_ == 0) return true;
    if (++nodes_ > budget_) {
      exceeded_ = true;
      return false;
    }
    int c0 = 0;
    for (int c = 1; c < model_.nx; ++c) {
      if (heights_[c] < heights_[c0]) c0 = c;
    }
    const int m = heights_[c0];
    if (m >= model_.ny) return false;
    if (area_pruning_ && rem_area_ > free_area_) return false;
    int run_end = c0;
    while (run_end < model_.nx && heights_[run_end] == m) ++run_end;

    std::string key = Key();
    if (failed_.count(key) > 0) return false;

    bool any_fit = false;
    for (int t : model_.order) {
      if (rem_[t] == 0) continue;
      const int e = model_.x_end[t][c0];
      if (e < 0 || e > run_end) continue;
      const int ye = model_.y_end[t][m];
      if (ye < 0) continue;
      any_fit = true;
      std::vector<int> saved(heights_.begin() + c0, heights_.begin() + e);
      Raise(c0, e, ye);
      --rem_[t];
      --remaining_items_;
      rem_area_ -= model_.area[t];
      placed_.push_back({t, c0, m});
      if (Dfs()) return true;
      placed_.pop_back();
      rem_area_ += model_.area[t];
      ++remaining_items_;
      ++rem_[t];
      for (int c = c0; c < e; ++c) {
        free_area_ += model_.cell_w[c] *
                      (model_.y_val[heights_[c]] - model_.y_val[saved[c - c0]]);
        heights_[c] = saved[c - c0];
      }
      if (exceeded_) return false;
    }

    // Leave the cell (c0, m) empty. When no remaining item fits across the
    // run at any start, nothing can enter it below its lower neighbour.
    int level = m + 1;
    int raise_end = c0 + 1;
    if (!any_fit && NothingFitsAcross(c0, run_end)) {
      level = model_.ny;
      if (c0 > 0) level = std::min(level, heights_[c0 - 1]);
      if (run_end < model_.nx) level = std::min(level, heights_[run_end]);
      raise_end = run_end;
    }
    std::vector<int> saved(heights_.begin() + c0, heights_.begin() + raise_end);
    Raise(c0, raise_end, level);
    const bool ok = Dfs();
    if (ok) return true;
    for (int c = c0; c < raise_end; ++c) {
      free_area_ += model_.cell_w[c] *
                    (model_.y_val[heights_[c]] - model_.y_val[saved[c - c0]]);
      heights_[c] = saved[c - c0];
    }
    if (!exceeded_ && memo_bytes_ + key.size() <= kMemoBytes) {
      memo_bytes_ += key.size();
      failed_.insert(std::move(key));
    }
    return false;
  }

  bool NothingFitsAcross(int from, int run_end) const {
    for (size_t t = 0; t < rem_.size(); ++t) {
      if (rem_[t] == 0) continue;
      for (int c = from; c < run_end; ++c) {
        const int e = model_.x_end[t][c];
        if (e >= 0 && e <= run_end) return false;
      }
    }
    return true;
  }

  static constexpr size_t kMemoBytes = size_t{1} << 28;

  const SkylineModel& model_;
  std::vector<int64_t> rem_;
  int64_t budget_;
  bool area_pruning_;
  std::vector<int> heights_;
  int64_t remaining_items_ = 0;
  int64_t rem_area_ = 0;
  int64_t free_area_ = 0;
  int64_t nodes_ = 0;
  bool exceeded_ = false;
  std::vector<PlacedRecord> placed_;
  std::unordered_set<std::string> failed_;
  size_t memo_bytes_ = 0;
};

Integer Lcm(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

// Sorted distinct sums of sub-multisets of `extents` (with multiplicities
// `counts`) that do not exceed one, with one appended when absent.
std::vector<PerturbedSize> SubsetSums(const std::vector<PerturbedSize>& extents,
                                      const std::vector<int64_t>& counts) {
  auto less = [](const PerturbedSize& a, const PerturbedSize& b) {
    return Less(a, b);
  };
  std::set<PerturbedSize, decltype(less)> sums(less);
  sums.insert(PerturbedSize(0));
  const PerturbedSize one(1);
  for (size_t t = 0; t < extents.size(); ++t) {
    if (counts[t] == 0) continue;
    std::vector<PerturbedSize> current(sums.begin(), sums.end());
    for (const PerturbedSize& s : current) {
      PerturbedSize v = s;
      for (int64_t i = 1; i <= counts[t]; ++i) {
        v += extents[t];
        if (!LessEq(v, one)) break;
        sums.insert(v);
      }
    }
  }
  sums.insert(one);
  return std::vector<PerturbedSize>(sums.begin(), sums.end());
}

int64_t ToScaled(const Rational& v, const Integer& scale) {
  const Rational s = v * scale;
  if (s.get_den() != 1 || !s.get_num().fits_slong_p()) {
    throw std::overflow_error("breakpoint scaling overflow");
  }
  return s.get_num().get_si();
}

struct AxisModel {
  std::vector<PerturbedSize> points;
  std::vector<int64_t> scaled;
  Integer scale;
  std::vector<std::vector<int>> ends;
};

AxisModel BuildAxis(const std::vector<PerturbedSize>& extents,
                    const std::vector<int64_t>& counts) {
  AxisModel axis;
  axis.points = SubsetSums(extents, counts);
  axis.scale = 1;
  for (const PerturbedSize& p : axis.points) {
    axis.scale = Lcm(axis.scale, p.base().get_den());
  }
  for (const PerturbedSize& p : axis.points) {
    axis.scaled.push_back(ToScaled(p.base(), axis.scale));
  }
  const int n = static_cast<int>(axis.points.size());
  axis.ends.assign(extents.size(), std::vector<int>(n, -1));
  for (size_t t = 0; t < extents.size(); ++t) {
    if (counts[t] == 0) continue;
    for (int i = 0; i + 1 < n; ++i) {
      const PerturbedSize target = axis.points[i] + extents[t];
      // Points are sorted; binary search with exact comparisons.
      int lo = i + 1;
      int hi = n - 1;
      while (lo <= hi) {
        const int mid = (lo + hi) / 2;
        const Ordering o = LexCompare(axis.points[mid], target);
        if (o == Ordering::kAmbiguous) throw AmbiguousComparison(axis.points[mid], target);
        if (o == Ordering::kEqual) {
          axis.ends[t][i] = mid;
          break;
        }
        if (o == Ordering::kLess) {
          lo = mid + 1;
        } else {
          hi = mid - 1;
        }
      }
    }
  }
  return axis;
}

std::vector<int> AreaOrder(const std::vector<int64_t>& area,
                           const std::vector<int64_t>& counts,
                           const std::vector<Rational>& tiebreak) {
  std::vector<int> order;
  for (size_t t = 0; t < counts.size(); ++t) {
    if (counts[t] > 0) order.push_back(static_cast<int>(t));
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (area[a] != area[b]) return area[a] > area[b];
    return tiebreak[a] > tiebreak[b];
  });
  return order;
}

SkylineModel UniformModel(int64_t width, int64_t height,
                          const std::vector<int64_t>& wx,
                          const std::vector<int64_t>& hy,
                          const std::vector<int64_t>& counts) {
  SkylineModel model;
  model.uniform = true;
  model.nx = static_cast<int>(width);
  model.ny = static_cast<int>(height);
  model.cell_w.assign(width, 1);
  model.y_val.resize(height + 1);
  std::iota(model.y_val.begin(), model.y_val.end(), 0);
  const size_t k = wx.size();
  model.x_end.assign(k, std::vector<int>(width + 1, -1));
  model.y_end.assign(k, std::vector<int>(height + 1, -1));
  model.area.assign(k, 0);
  std::vector<Rational> tiebreak(k);
  for (size_t t = 0; t < k; ++t) {
    model.area[t] = wx[t] * hy[t];
    tiebreak[t] = wx[t];
    if (counts[t] == 0) continue;
    for (int64_t i = 0; i + wx[t] <= width; ++i) model.x_end[t][i] = i + wx[t];
    for (int64_t i = 0; i + hy[t] <= height; ++i) model.y_end[t][i] = i + hy[t];
  }
  model.order = AreaOrder(model.area, counts, tiebreak);
  return model;
}

// First-fit-decreasing shelves: items of equal height share a shelf and
// shelves stack upward. Returns an empty placement when the items do not fit.
Placement ShelfPlacement(const Pattern& pattern,
                         const std::vector<PerturbedSize>& widths,
                         const std::vector<PerturbedSize>& heights) {
  struct Shelf {
    PerturbedSize height;
    PerturbedSize used;
    std::vector<int> types;
  };
  const int k = static_cast<int>(widths.size());
  std::vector<int> order;
  for (int t = 0; t < k; ++t) {
    if (pattern.counts[t] > 0) order.push_back(t);
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return Less(widths[b], widths[a]);
  });
  std::vector<Shelf> shelves;
  for (int t : order) {
    for (int64_t n = 0; n < pattern.counts[t]; ++n) {
      Shelf* target = nullptr;
      for (Shelf& s : shelves) {
        if (s.height == heights[t] &&
            LessEq(s.used + widths[t], PerturbedSize(1))) {
          target = &s;
          break;
        }
      }
      if (target == nullptr) {
        shelves.push_back({heights[t], PerturbedSize(0), {}});
        target = &shelves.back();
      }
      target->used += widths[t];
      target->types.push_back(t);
    }
  }
  Placement placement;
  PerturbedSize y(0);
  for (const Shelf& s : shelves) {
    PerturbedSize x(0);
    for (int t : s.types) {
      PlacedItem item;
      item.type = t;
      item.pos = {x, y};
      placement.items.push_back(item);
      x += widths[t];
    }
    y += s.height;
  }
  if (!LessEq(y, PerturbedSize(1))) placement.items.clear();
  return placement;
}

}  // namespace

PerturbedSize AnchorGrid::Unit() const {
  const Rational u(1, resolution);
  return PerturbedSize(u, u, 0);
}

int64_t AnchorGrid::NumAnchors() const {
  int64_t n = 1;
  for (int a = 0; a < dimension; ++a) n *= resolution;
  return n;
}

int64_t GridUnits(const PerturbedSize& s, const AnchorGrid& grid) {
  const Rational k = s.base() * grid.resolution;
  if (k.get_den() != 1 || k <= 0) return -1;
  if (s.eps() != s.base() || s.del() != 0) return -1;
  return k.get_num().get_si();
}

int64_t GridCapacity(int64_t k, const AnchorGrid& grid) {
  if (k < 1 || k > grid.resolution - 1) {
    throw std::out_of_range("side of " + std::to_string(k) +
                            " units is outside [1, G-1]");
  }
  const int64_t per_axis = (grid.resolution - 1) / k;
  int64_t total = 1;
  for (int a = 0; a < grid.dimension; ++a) total *= per_axis;
  return total;
}

int64_t SingleTypeCapacity(const Instance& instance, int t) {
  if (instance.geometry == Geometry::kRectangle2d) {
    return FloorCapacity(instance.types[t].width) *
           FloorCapacity(instance.types[t].height);
  }
  const int64_t per_axis = FloorCapacity(instance.types[t].width);
  int64_t total = 1;
  for (int a = 0; a < instance.dimension; ++a) total *= per_axis;
  return total;
}

Pattern Placement::ToPattern(int num_types) const {
  Pattern p;
  p.counts.assign(num_types, 0);
  for (const PlacedItem& item : items) ++p.counts[item.type];
  return p;
}

namespace {

int Axes(const Instance& instance) {
  return instance.geometry == Geometry::kRectangle2d ? 2 : instance.dimension;
}

const PerturbedSize& AxisExtent(const Instance& instance, int t, int axis) {
  return axis == 1 && instance.geometry == Geometry::kRectangle2d
             ? instance.types[t].height
             : instance.types[t].width;
}

// Rasterization check for grid-aligned placements with d <= 2.
bool RasterCheck(const Placement& placement, const Instance& instance,
                 const AnchorGrid& grid, PlacementCheck* out,
                 int64_t* covered) {
  const int d = Axes(instance);
  const int64_t L = grid.resolution - 1;
  std::vector<int64_t> units(instance.NumTypes(), -1);
  for (int t = 0; t < instance.NumTypes(); ++t) {
    units[t] = GridUnits(instance.types[t].width, grid);
    if (instance.geometry == Geometry::kRectangle2d &&
        GridUnits(instance.types[t].height, grid) != units[t]) {
      units[t] = -1;
    }
  }
  for (const PlacedItem& item : placement.items) {
    if (static_cast<int>(item.cell.size()) != d || units[item.type] < 0) {
      return false;
    }
  }
  std::vector<uint8_t> bitmap(d == 1 ? L : L * L, 0);
  *covered = 0;
  for (size_t n = 0; n < placement.items.size(); ++n) {
    const PlacedItem& item = placement.items[n];
    const int64_t k = units[item.type];
    for (int a = 0; a < d; ++a) {
      if (item.cell[a] < 0 || item.cell[a] + k > L) {
        out->ok = false;
        out->message = "item " + std::to_string(n) + " exceeds the bin";
        return true;
      }
      if (!item.pos.empty() && item.pos[a] != grid.Unit() * item.cell[a]) {
        out->ok = false;
        out->message = "item " + std::to_string(n) +
                       " position does not match its grid cell";
        return true;
      }
    }
    const int64_t x0 = item.cell[0];
    const int64_t y0 = d == 2 ? item.cell[1] : 0;
    const int64_t ky = d == 2 ? k : 1;
    for (int64_t y = y0; y < y0 + ky; ++y) {
      for (int64_t x = x0; x < x0 + k; ++x) {
        uint8_t& b = bitmap[y * L + x];
        if (b) {
          out->ok = false;
          out->message = "item " + std::to_string(n) + " overlaps another item";
          return true;
        }
        b = 1;
        ++*covered;
      }
    }
  }
  out->ok = true;
  out->message = "ok";
  return true;
}

}  // namespace

PlacementCheck VerifyPlacement(const Placement& placement,
                               const Instance& instance) {
  PlacementCheck out;
  const int d = Axes(instance);
  try {
    for (size_t n = 0; n < placement.items.size(); ++n) {
      const PlacedItem& item = placement.items[n];
      if (item.type < 0 || item.type >= instance.NumTypes()) {
        out.message = "item " + std::to_string(n) + " has an invalid type";
        return out;
      }
    }
    if (instance.anchor_grid > 0 && d <= 2) {
      AnchorGrid grid{instance.anchor_grid, d};
      int64_t covered = 0;
      if (RasterCheck(placement, instance, grid, &out, &covered)) return out;
    }
    const PerturbedSize zero(0);
    const PerturbedSize one(1);
    for (size_t n = 0; n < placement.items.size(); ++n) {
      const PlacedItem& item = placement.items[n];
      if (static_cast<int>(item.pos.size()) != d) {
        out.message = "item " + std::to_string(n) + " has the wrong arity";
        return out;
      }
      for (int a = 0; a < d; ++a) {
        if (!LessEq(zero, item.pos[a]) ||
            !LessEq(item.pos[a] + AxisExtent(instance, item.type, a), one)) {
          out.message = "item " + std::to_string(n) + " exceeds the bin";
          return out;
        }
      }
    }
    std::vector<size_t> idx(placement.items.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
      return Less(placement.items[a].pos[0], placement.items[b].pos[0]);
    });
    for (size_t i = 0; i < idx.size(); ++i) {
      const PlacedItem& p = placement.items[idx[i]];
      const PerturbedSize p_end = p.pos[0] + AxisExtent(instance, p.type, 0);
      for (size_t j = i + 1; j < idx.size(); ++j) {
        const PlacedItem& q = placement.items[idx[j]];
        if (!Less(q.pos[0], p_end)) break;
        bool overlap = true;
        for (int a = 1; a < d && overlap; ++a) {
          overlap = Less(q.pos[a], p.pos[a] + AxisExtent(instance, p.type, a)) &&
                    Less(p.pos[a], q.pos[a] + AxisExtent(instance, q.type, a));
        }
        if (overlap) {
          out.message = "items " + std::to_string(idx[i]) + " and " +
                        std::to_string(idx[j]) + " overlap";
          return out;
        }
      }
    }
  } catch (const AmbiguousComparison& e) {
    out.ok = false;
    out.message = e.what();
    return out;
  }
  out.ok = true;
  out.message = "ok";
  return out;
}

int64_t CountAvailableAnchors(const Placement& placement,
                              const Instance& instance,
                              const AnchorGrid& grid) {
  int64_t blocked = 0;
  for (const PlacedItem& item : placement.items) {
    if (item.cell.empty()) {
      throw std::invalid_argument("placement item without grid cell");
    }
    const int64_t k = GridUnits(instance.types[item.type].width, grid);
    if (k < 0) throw std::invalid_argument("item is not grid-aligned");
    int64_t v = 1;
    for (int a = 0; a < grid.dimension; ++a) v *= k;
    blocked += v;
  }
  return grid.NumAnchors() - blocked;
}

int64_t RasterizedCoverage(const Placement& placement,
                           const Instance& instance, const AnchorGrid& grid) {
  PlacementCheck check;
  int64_t covered = 0;
  if (!RasterCheck(placement, instance, grid, &check, &covered) || !check.ok) {
    throw std::invalid_argument("placement cannot be rasterized: " +
                                check.message);
  }
  return covered;
}

const char* FeasibilityName(FeasibilityStatus s) {
  switch (s) {
    case FeasibilityStatus::kFeasible:
      return "Feasible";
    case FeasibilityStatus::kInfeasible:
      return "Infeasible";
    case FeasibilityStatus::kBudgetExceeded:
      return "BudgetExceeded";
  }
  return "?";
}

FeasibilityResult ExhaustiveFeasible(const Pattern& pattern,
                                     const Instance& instance,
                                     const SearchConfig& config) {
  FeasibilityResult result;
  const int d = Axes(instance);
  if (d > 2) {
    result.diagnostic = "exhaustive search supports dimension 1 and 2 only";
    return result;
  }
  if (pattern.TotalItems() > config.item_cap) {
    result.diagnostic = "pattern has " + std::to_string(pattern.TotalItems()) +
                        " items, above the cap of " +
                        std::to_string(config.item_cap);
    return result;
  }
  const int k = instance.NumTypes();
  std::vector<PerturbedSize> widths(k), heights(k);
  for (int t = 0; t < k; ++t) {
    widths[t] = instance.types[t].width;
    heights[t] = d == 1 ? PerturbedSize(1) : AxisExtent(instance, t, 1);
  }
  // Quick reject: an item that does not fit alone.
  for (int t = 0; t < k; ++t) {
    if (pattern.counts[t] > 0 &&
        (!LessEq(widths[t], PerturbedSize(1)) || !LessEq(heights[t], PerturbedSize(1)))) {
      result.status = FeasibilityStatus::kInfeasible;
      return result;
    }
  }
  if (d == 2) {
    for (int pass = 0; pass < 2; ++pass) {
      Placement shelf;
      try {
        shelf = pass == 0 ? ShelfPlacement(pattern, widths, heights)
                          : ShelfPlacement(pattern, heights, widths);
      } catch (const AmbiguousComparison&) {
        continue;
      }
      if (shelf.items.empty()) continue;
      if (pass == 1) {
        for (PlacedItem& item : shelf.items) std::swap(item.pos[0], item.pos[1]);
      }
      if (VerifyPlacement(shelf, instance).ok) {
        result.status = FeasibilityStatus::kFeasible;
        result.placement = std::move(shelf);
        return result;
      }
    }
  }
  const AxisModel ax = BuildAxis(widths, pattern.counts);
  const AxisModel ay = BuildAxis(heights, pattern.counts);
  SkylineModel model;
  model.nx = static_cast<int>(ax.points.size()) - 1;
  model.ny = static_cast<int>(ay.points.size()) - 1;
  for (int c = 0; c < model.nx; ++c) {
    model.cell_w.push_back(ax.scaled[c + 1] - ax.scaled[c]);
  }
  model.y_val = ay.scaled;
  model.x_end = ax.ends;
  model.y_end = ay.ends;
  model.area.assign(k, 0);
  std::vector<Rational> tiebreak(k);
  for (int t = 0; t < k; ++t) {
    tiebreak[t] = widths[t].base();
    if (pattern.counts[t] == 0) continue;
    model.area[t] = ToScaled(widths[t].base(), ax.scale) *
                    ToScaled(heights[t].base(), ay.scale);
  }
  model.order = AreaOrder(model.area, pattern.counts, tiebreak);
  SkylineSearch search(model, pattern.counts, config.node_budget,
                       config.area_pruning);
  result.status = search.Run();
  result.nodes = search.nodes();
  if (result.status == FeasibilityStatus::kFeasible) {
    for (const PlacedRecord& r : search.placed()) {
      PlacedItem item;
      item.type = r.type;
      item.pos.push_back(ax.points[r.x]);
      if (d == 2) item.pos.push_back(ay.points[r.y]);
      result.placement.items.push_back(item);
    }
  } else if (result.status == FeasibilityStatus::kBudgetExceeded) {
    result.diagnostic = "node budget of " + std::to_string(config.node_budget) +
                        " exhausted";
  }
  return result;
}

FeasibilityResult GridLayout(const Pattern& pattern, const Instance& instance,
                             const AnchorGrid& grid, int64_t node_budget) {
  FeasibilityResult result;
  const int k = instance.NumTypes();
  const int d = grid.dimension;
  if (d < 1 || d > 2) {
    result.diagnostic = "grid layout supports dimension 1 and 2 only";
    return result;
  }
  std::vector<int64_t> units(k, 0), counts(k, 0), ones(k, 1);
  for (int t = 0; t < k; ++t) {
    if (t == instance.sand_type || pattern.counts[t] == 0) continue;
    units[t] = GridUnits(instance.types[t].width, grid);
    if (units[t] < 0 || (instance.geometry == Geometry::kRectangle2d &&
                         GridUnits(instance.types[t].height, grid) != units[t])) {
      throw std::invalid_argument("type " + std::to_string(t + 1) +
                                  " is not a multiple of the grid unit");
    }
    counts[t] = pattern.counts[t];
  }
  const int64_t L = grid.resolution - 1;
  for (int t = 0; t < k; ++t) {
    if (counts[t] > 0 && units[t] > L) {
      result.status = FeasibilityStatus::kInfeasible;
      result.diagnostic = "item larger than the grid";
      return result;
    }
  }
  const SkylineModel model =
      UniformModel(L, d == 2 ? L : 1, units, d == 2 ? units : ones, counts);
  SkylineSearch search(model, counts, node_budget, true);
  const FeasibilityStatus status = search.Run();
  result.nodes = search.nodes();
  if (status != FeasibilityStatus::kFeasible) {
    result.status = FeasibilityStatus::kBudgetExceeded;
    result.diagnostic = status == FeasibilityStatus::kInfeasible
                            ? "no layout exists on the anchor grid"
                            : "no layout found within the node budget";
    if (status == FeasibilityStatus::kInfeasible) {
      result.status = FeasibilityStatus::kInfeasible;
    }
    return result;
  }
  result.status = FeasibilityStatus::kFeasible;
  const PerturbedSize unit = grid.Unit();
  for (const PlacedRecord& r : search.placed()) {
    PlacedItem item;
    item.type = r.type;
    item.cell.push_back(r.x);
    item.pos.push_back(unit * r.x);
    if (d == 2) {
      item.cell.push_back(r.y);
      item.pos.push_back(unit * r.y);
    }
    result.placement.items.push_back(item);
  }
  return result;
}

namespace {

class LossSearch {
 public:
  LossSearch(int64_t width, int64_t height, const std::vector<int64_t>& sides,
             const std::vector<int64_t>& losses, int64_t waste_loss,
             int64_t node_budget)
      : width_(width),
        height_(height),
        sides_(sides),
        losses_(losses),
        waste_loss_(waste_loss),
        budget_(node_budget),
        heights_(width, 0) {
    order_.resize(sides.size());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int a, int b) { return sides_[a] > sides_[b]; });
  }

  // Returns true when a fill with total loss <= budget exists.
  bool Try(int64_t loss_budget) { return Dfs(loss_budget); }
  bool exceeded() const { return exceeded_; }
  int64_t nodes() const { return nodes_; }
  const std::vector<std::vector<int64_t>>& items() const { return items_; }

 private:
  bool Dfs(int64_t b) {
    if (++nodes_ > budget_) {
      exceeded_ = true;
      return false;
    }
    int c0 = 0;
    for (int64_t c = 1; c < width_; ++c) {
      if (heights_[c] < heights_[c0]) c0 = static_cast<int>(c);
    }
    const int64_t m = heights_[c0];
    if (m >= height_) return true;
    std::string key(reinterpret_cast<const char*>(heights_.data()),
                    heights_.size() * sizeof(int64_t));
    auto it = failed_.find(key);
    if (it != failed_.end() && it->second >= b) return false;
    int64_t run_end = c0;
    while (run_end < width_ && heights_[run_end] == m) ++run_end;
    for (int i : order_) {
      const int64_t k = sides_[i];
      if (c0 + k > run_end || m + k > height_ || losses_[i] > b) continue;
      for (int64_t c = c0; c < c0 + k; ++c) heights_[c] = m + k;
      items_.push_back({i, c0, m});
      if (Dfs(b - losses_[i])) return true;
      items_.pop_back();
      for (int64_t c = c0; c < c0 + k; ++c) heights_[c] = m;
      if (exceeded_) return false;
    }
    if (waste_loss_ <= b) {
      heights_[c0] = m + 1;
      if (Dfs(b - waste_loss_)) return true;
      heights_[c0] = m;
    }
    if (!exceeded_) {
      int64_t& slot = failed_[key];
      slot = std::max(slot, b);
    }
    return false;
  }

  int64_t width_;
  int64_t height_;
  std::vector<int64_t> sides_;
  std::vector<int64_t> losses_;
  int64_t waste_loss_;
  int64_t budget_;
  std::vector<int64_t> heights_;
  std::vector<int> order_;
  std::vector<std::vector<int64_t>> items_;
  std::unordered_map<std::string, int64_t> failed_;
  int64_t nodes_ = 0;
  bool exceeded_ = false;
};

}  // namespace

GridFill MaxWeightGridFill(int64_t width, int64_t height,
                           const std::vector<int64_t>& sides,
                           const std::vector<Rational>& weights,
                           int64_t node_budget) {
  GridFill fill;
  fill.counts.assign(sides.size(), 0);
  fill.weight = 0;
  if (width <= 0 || height <= 0) {
    fill.found = true;
    return fill;
  }
  Rational rho_max = 0;
  for (size_t i = 0; i < sides.size(); ++i) {
    const Rational rho = weights[i] / Rational(sides[i] * sides[i]);
    if (rho > rho_max) rho_max = rho;
  }
  std::vector<Rational> raw(sides.size());
  Integer den = rho_max.get_den();
  for (size_t i = 0; i < sides.size(); ++i) {
    raw[i] = rho_max * (sides[i] * sides[i]) - weights[i];
    den = Lcm(den, raw[i].get_den());
  }
  std::vector<int64_t> losses(sides.size());
  Integer g = 0;
  for (size_t i = 0; i < sides.size(); ++i) {
    losses[i] = ToScaled(raw[i], den);
    Integer li = losses[i];
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), li.get_mpz_t());
  }
  const int64_t waste_loss = ToScaled(rho_max, den);
  if (waste_loss == 0) {
    fill.found = true;
    return fill;
  }
  {
    Integer wl = waste_loss;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), wl.get_mpz_t());
  }
  const int64_t step = g.get_si();
  const int64_t max_loss = waste_loss * width * height;
  LossSearch search(width, height, sides, losses, waste_loss, node_budget);
  for (int64_t b = 0; b <= max_loss; b += step) {
    if (search.Try(b)) {
      fill.found = true;
      for (const auto& item : search.items()) {
        fill.items.push_back(item);
        ++fill.counts[item[0]];
        fill.weight += weights[item[0]];
      }
      break;
    }
    if (search.exceeded()) break;
  }
  fill.nodes = search.nodes();
  return fill;
}

bool NoPerfectTiling(const std::vector<int64_t>& sides, int64_t length) {
  std::set<int64_t> candidates;
  for (int64_t s : sides) {
    for (int64_t p = 2; p <= s; ++p) {
      if (s % p == 0) candidates.insert(p);
    }
  }
  for (int64_t p : candidates) {
    if (length % p == 0) continue;
    for (int64_t q : candidates) {
      if (q < p || length % q == 0) continue;
      bool all = true;
      for (int64_t s : sides) {
        if (s % p != 0 && s % q != 0) {
          all = false;
          break;
        }
      }
      if (all) return true;
    }
  }
  return false;
}

Integer HarmonicAnchorCount(int family, int d, const Rational& K,
                            const Rational& y, const Rational& y_next) {
  auto require_integer = [](const Rational& v, const char* what) {
    if (v.get_den() != 1) {
      throw std::domain_error(std::string("divisibility violated: ") + what +
                              " = " + ToString(v) + " is not an integer");
    }
    return v;
  };
  if (d < 1 || K <= 0 || y <= 0) throw std::domain_error("invalid parameters");
  const Rational two_d = Pow(Rational(2), d);
  Rational total_side, u_side, v_side;
  if (family == 1 || family == 3) {
    require_integer(K / y, "K/y");
    total_side = require_integer((2 * K - y) / y, "(2K-y)/y");
    u_side = K / y;
    v_side = 2 * K;
  } else if (family == 2) {
    if (y_next <= 0 || y_next >= 1) throw std::domain_error("invalid y_next");
    const Rational z = y * (1 - y_next);
    require_integer(K / y, "K/y");
    require_integer(K / (1 - y_next), "K/(1-y')");
    total_side = require_integer((K - z) / z, "(K-z)/z");
    u_side = K / y;
    v_side = K / (1 - y_next);
  } else {
    throw std::domain_error("family must be 1, 2 or 3");
  }
  const Rational m =
      Pow(total_side, d) - Pow(u_side, d) - (two_d - 1) * Pow(v_side, d);
  return m.get_num();
}

}  // namespace binlb
