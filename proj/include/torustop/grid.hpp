#pragma once

// Cell-set model of subsets of the 2-torus on a periodic n x n grid.
//
// Digital topology convention: a set carries an adjacency mode (Four or
// Eight) and its complement always carries the dual mode. Sets standing for
// closed continua are Eight-adjacent, open domains are Four-adjacent; this
// keeps Jordan-style separation consistent on the grid.
//
// Cell (i, j) covers [i/n, (i+1)/n) x [j/n, (j+1)/n). Storage and every
// deterministic ordering are row-major: index = j * n + i.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "torustop/lattice.hpp"

namespace torustop {

// Pipeline failure that a driver should surface as a contradiction / abort,
// as opposed to std::invalid_argument for misuse of a precondition.
class pipeline_error : public std::runtime_error {
 public:
  explicit pipeline_error(const std::string& what) : std::runtime_error(what) {}
};

enum class Adjacency : uint8_t { Four, Eight };

constexpr Adjacency dual(Adjacency a) {
  return a == Adjacency::Four ? Adjacency::Eight : Adjacency::Four;
}

inline const std::vector<Vec2i>& adjacency_steps(Adjacency a) {
  static const std::vector<Vec2i> four{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  static const std::vector<Vec2i> eight{{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                        {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};
  return a == Adjacency::Four ? four : eight;
}

struct GridResolution {
  int n;

  explicit GridResolution(int cells_per_axis) : n(cells_per_axis) {
    if (n < 8) throw std::invalid_argument("grid resolution must be at least 8");
    if ((n & (n - 1)) != 0)
      throw std::invalid_argument("grid resolution must be a power of two");
  }
};

class TorusGridSet {
 public:
  TorusGridSet(GridResolution res, Adjacency adj)
      : n_(res.n), adj_(adj), cells_(size_t(res.n) * size_t(res.n), 0) {}

  static TorusGridSet full(GridResolution res, Adjacency adj) {
    TorusGridSet s(res, adj);
    std::fill(s.cells_.begin(), s.cells_.end(), uint8_t(1));
    return s;
  }

  int n() const { return n_; }
  GridResolution resolution() const { return GridResolution(n_); }
  Adjacency adjacency() const { return adj_; }
  void set_adjacency(Adjacency a) { adj_ = a; }

  size_t cell_count() const { return cells_.size(); }
  size_t index(int i, int j) const { return size_t(j) * size_t(n_) + size_t(i); }

  int wrap(int64_t c) const {
    int64_t m = c % n_;
    return int(m < 0 ? m + n_ : m);
  }
  Vec2i wrap(Vec2i c) const { return {wrap(c.x), wrap(c.y)}; }

  bool contains(int i, int j) const { return cells_[index(i, j)] != 0; }
  bool contains(Vec2i c) const { return contains(int(c.x), int(c.y)); }
  bool contains_wrapped(Vec2i c) const { return contains(wrap(c)); }

  void set(int i, int j, bool value = true) { cells_[index(i, j)] = value ? 1 : 0; }
  void set(Vec2i c, bool value = true) { set(int(c.x), int(c.y), value); }
  void set_wrapped(Vec2i c, bool value = true) { set(wrap(c), value); }

  size_t size() const {
    size_t total = 0;
    for (uint8_t v : cells_) total += v;
    return total;
  }
  bool empty() const {
    for (uint8_t v : cells_) if (v) return false;
    return true;
  }

  Vec2d cell_center(Vec2i c) const {
    return {(double(c.x) + 0.5) / n_, (double(c.y) + 0.5) / n_};
  }

  // Row-major visit of member cells.
  template <typename Fn>
  void for_each_cell(Fn&& fn) const {
    for (int j = 0; j < n_; ++j)
      for (int i = 0; i < n_; ++i)
        if (cells_[index(i, j)]) fn(Vec2i{i, j});
  }

  friend bool operator==(const TorusGridSet& a, const TorusGridSet& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_ && a.cells_ == b.cells_;
  }

  // Same member cells, ignoring the adjacency tag.
  bool same_cells(const TorusGridSet& other) const {
    return n_ == other.n_ && cells_ == other.cells_;
  }

  const std::vector<uint8_t>& raw() const { return cells_; }
  std::vector<uint8_t>& raw() { return cells_; }

 private:
  int n_;
  Adjacency adj_;
  std::vector<uint8_t> cells_;
};

inline TorusGridSet complement(const TorusGridSet& s) {
  TorusGridSet out(s.resolution(), dual(s.adjacency()));
  const auto& in = s.raw();
  auto& o = out.raw();
  for (size_t k = 0; k < in.size(); ++k) o[k] = in[k] ? 0 : 1;
  return out;
}

inline TorusGridSet set_union(const TorusGridSet& a, const TorusGridSet& b) {
  if (a.n() != b.n()) throw std::invalid_argument("set_union: resolution mismatch");
  TorusGridSet out = a;
  for (size_t k = 0; k < out.raw().size(); ++k)
    out.raw()[k] = uint8_t(out.raw()[k] | b.raw()[k]);
  return out;
}

inline TorusGridSet set_intersection(const TorusGridSet& a, const TorusGridSet& b) {
  if (a.n() != b.n()) throw std::invalid_argument("set_intersection: resolution mismatch");
  TorusGridSet out = a;
  for (size_t k = 0; k < out.raw().size(); ++k)
    out.raw()[k] = uint8_t(out.raw()[k] & b.raw()[k]);
  return out;
}

inline bool sets_disjoint(const TorusGridSet& a, const TorusGridSet& b) {
  for (size_t k = 0; k < a.raw().size(); ++k)
    if (a.raw()[k] && b.raw()[k]) return false;
  return true;
}

inline bool is_subset(const TorusGridSet& a, const TorusGridSet& b) {
  for (size_t k = 0; k < a.raw().size(); ++k)
    if (a.raw()[k] && !b.raw()[k]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Connected components

struct ComponentLabeling {
  int count = 0;
  std::vector<int32_t> labels;          // one per cell, -1 = outside the set
  std::vector<Vec2i> representatives;   // row-major minimal cell per component
  std::vector<int64_t> sizes;

  int32_t label_at(size_t idx) const { return labels[idx]; }
};

// Generic single-pass labeling: cells scanned in index order, component ids
// assigned in order of first encounter. `neighbors(idx, emit)` must call
// `emit(other_idx)` for every in-universe neighbor.
template <typename InSet, typename Neighbors>
ComponentLabeling label_components(size_t cell_count, InSet&& in_set,
                                   Neighbors&& neighbors) {
  ComponentLabeling out;
  out.labels.assign(cell_count, -1);
  std::vector<size_t> stack;
  for (size_t start = 0; start < cell_count; ++start) {
    if (!in_set(start) || out.labels[start] != -1) continue;
    const int32_t id = out.count++;
    out.sizes.push_back(0);
    out.labels[start] = id;
    stack.push_back(start);
    while (!stack.empty()) {
      const size_t cur = stack.back();
      stack.pop_back();
      ++out.sizes[size_t(id)];
      neighbors(cur, [&](size_t nb) {
        if (in_set(nb) && out.labels[nb] == -1) {
          out.labels[nb] = id;
          stack.push_back(nb);
        }
      });
    }
  }
  return out;
}

inline ComponentLabeling connected_components(const TorusGridSet& s) {
  const int n = s.n();
  const auto& steps = adjacency_steps(s.adjacency());
  ComponentLabeling lab = label_components(
      s.cell_count(), [&](size_t idx) { return s.raw()[idx] != 0; },
      [&](size_t idx, auto&& emit) {
        const int i = int(idx % size_t(n)), j = int(idx / size_t(n));
        for (const Vec2i& d : steps) {
          const int ii = s.wrap(i + d.x), jj = s.wrap(j + d.y);
          emit(s.index(ii, jj));
        }
      });
  // representatives = first (row-major minimal) cell of each component
  lab.representatives.assign(size_t(lab.count), Vec2i{});
  std::vector<char> seen(size_t(lab.count), 0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int32_t id = lab.labels[s.index(i, j)];
      if (id >= 0 && !seen[size_t(id)]) {
        seen[size_t(id)] = 1;
        lab.representatives[size_t(id)] = {i, j};
      }
    }
  return lab;
}

// Cells of one labeled component, as a set with the parent's adjacency.
inline TorusGridSet component_cells(const TorusGridSet& s, const ComponentLabeling& lab,
                                    int32_t id) {
  TorusGridSet out(s.resolution(), s.adjacency());
  for (size_t k = 0; k < out.raw().size(); ++k)
    if (lab.labels[k] == id) out.raw()[k] = 1;
  return out;
}

// ---------------------------------------------------------------------------
// Boundary and dilation

// Cells of s with at least one dual-adjacent cell outside s.
inline TorusGridSet boundary(const TorusGridSet& s) {
  const int n = s.n();
  TorusGridSet out(s.resolution(), s.adjacency());
  const auto& steps = adjacency_steps(dual(s.adjacency()));
  s.for_each_cell([&](Vec2i c) {
    for (const Vec2i& d : steps) {
      if (!s.contains_wrapped(c + d)) {
        out.set(c);
        return;
      }
    }
  });
  return out;
}

// Chebyshev dilation by r cells (r = 1 is the "within one cell" fattening).
inline TorusGridSet dilate(const TorusGridSet& s, int r) {
  TorusGridSet out(s.resolution(), s.adjacency());
  s.for_each_cell([&](Vec2i c) {
    for (int dj = -r; dj <= r; ++dj)
      for (int di = -r; di <= r; ++di) out.set_wrapped(c + Vec2i{di, dj});
  });
  return out;
}

// ---------------------------------------------------------------------------
// Exact torus distance transform and Hausdorff distance (cell centers)

namespace detail {

// Lower envelope of parabolas y = f[q] + (x - q)^2 over x in [0, m).
// Entries with f[q] >= kEdtInf are absent. Exact in int64.
constexpr int64_t kEdtInf = int64_t(1) << 56;

inline void edt_1d(const std::vector<int64_t>& f, std::vector<int64_t>& d) {
  const int m = int(f.size());
  d.assign(size_t(m), kEdtInf);
  std::vector<int> v(static_cast<size_t>(m));
  std::vector<double> z(static_cast<size_t>(m) + 1);
  int k = -1;
  for (int q = 0; q < m; ++q) {
    if (f[size_t(q)] >= kEdtInf) continue;
    while (k >= 0) {
      const int p = v[size_t(k)];
      const double s = (double(f[size_t(q)] + int64_t(q) * q) -
                        double(f[size_t(p)] + int64_t(p) * p)) /
                       (2.0 * (q - p));
      if (s <= z[size_t(k)])
        --k;
      else
        break;
    }
    if (k < 0) {
      k = 0;
      v[0] = q;
      z[0] = -std::numeric_limits<double>::infinity();
      z[1] = std::numeric_limits<double>::infinity();
    } else {
      const int p = v[size_t(k)];
      const double s = (double(f[size_t(q)] + int64_t(q) * q) -
                        double(f[size_t(p)] + int64_t(p) * p)) /
                       (2.0 * (q - p));
      ++k;
      v[size_t(k)] = q;
      z[size_t(k)] = s;
      z[size_t(k) + 1] = std::numeric_limits<double>::infinity();
    }
  }
  if (k < 0) return;
  int idx = 0;
  for (int x = 0; x < m; ++x) {
    while (z[size_t(idx) + 1] < double(x)) ++idx;
    const int q = v[size_t(idx)];
    d[size_t(x)] = f[size_t(q)] + int64_t(x - q) * int64_t(x - q);
  }
}

}  // namespace detail

// Squared Euclidean distance (in cell units) from every cell center to the
// nearest member cell center, with torus wrap. Exact integers.
inline std::vector<int64_t> squared_distance_transform(const TorusGridSet& s) {
  const int n = s.n();
  const size_t nn = s.cell_count();
  std::vector<int64_t> g(nn, detail::kEdtInf);
  // vertical pass: for each column, sources replicated over 3 periods
  std::vector<int64_t> f(size_t(3 * n), detail::kEdtInf), d;
  for (int i = 0; i < n; ++i) {
    std::fill(f.begin(), f.end(), detail::kEdtInf);
    bool any = false;
    for (int j = 0; j < n; ++j) {
      if (s.contains(i, j)) {
        any = true;
        f[size_t(j)] = 0;
        f[size_t(j + n)] = 0;
        f[size_t(j + 2 * n)] = 0;
      }
    }
    if (!any) continue;
    detail::edt_1d(f, d);
    for (int j = 0; j < n; ++j) g[s.index(i, j)] = d[size_t(j + n)];
  }
  // horizontal pass
  std::vector<int64_t> out(nn, detail::kEdtInf);
  for (int j = 0; j < n; ++j) {
    std::fill(f.begin(), f.end(), detail::kEdtInf);
    bool any = false;
    for (int i = 0; i < n; ++i) {
      const int64_t v = g[s.index(i, j)];
      if (v < detail::kEdtInf) {
        any = true;
        f[size_t(i)] = v;
        f[size_t(i + n)] = v;
        f[size_t(i + 2 * n)] = v;
      }
    }
    if (!any) continue;
    detail::edt_1d(f, d);
    for (int i = 0; i < n; ++i) out[s.index(i, j)] = d[size_t(i + n)];
  }
  return out;
}

// Directed Hausdorff: sup over cells of `from` of the distance to `to`,
// cell centers under the flat torus metric. Torus units.
inline double directed_hausdorff(const TorusGridSet& from, const TorusGridSet& to) {
  if (from.empty() || to.empty())
    throw std::invalid_argument("empty set has no Hausdorff distance");
  const auto dt = squared_distance_transform(to);
  int64_t worst = 0;
  from.for_each_cell([&](Vec2i c) {
    worst = std::max(worst, dt[from.index(int(c.x), int(c.y))]);
  });
  return std::sqrt(double(worst)) / double(from.n());
}

inline double hausdorff_distance(const TorusGridSet& c, const TorusGridSet& d) {
  if (c.empty() || d.empty())
    throw std::invalid_argument("empty set has no Hausdorff distance");
  if (c.n() != d.n())
    throw std::invalid_argument("hausdorff_distance: resolution mismatch");
  return std::max(directed_hausdorff(c, d), directed_hausdorff(d, c));
}

// ---------------------------------------------------------------------------
// Cover windows: k x k fundamental domains lifted to a planar grid

struct CoverWindow {
  int k = 1;
  TorusGridSet base;
  std::vector<uint8_t> lifted;  // (k*n)^2 cells, planar, row-major

  int width() const { return k * base.n(); }
  size_t index(int I, int J) const {
    return size_t(J) * size_t(width()) + size_t(I);
  }
  bool contains(int I, int J) const {
    return I >= 0 && I < width() && J >= 0 && J < width() && lifted[index(I, J)] != 0;
  }
};

inline CoverWindow lift_window(const TorusGridSet& s, int k) {
  if (k < 1) throw std::invalid_argument("lift_window: k must be >= 1");
  CoverWindow w{k, s, {}};
  const int n = s.n(), width = k * n;
  w.lifted.assign(size_t(width) * size_t(width), 0);
  for (int J = 0; J < width; ++J)
    for (int I = 0; I < width; ++I)
      w.lifted[w.index(I, J)] = s.contains(I % n, J % n) ? 1 : 0;
  return w;
}

// Planar component labeling inside a window (no wrap), with the window
// set's own adjacency unless overridden.
inline ComponentLabeling window_components(const CoverWindow& w, Adjacency adj) {
  const int width = w.width();
  const auto& steps = adjacency_steps(adj);
  return label_components(
      w.lifted.size(), [&](size_t idx) { return w.lifted[idx] != 0; },
      [&](size_t idx, auto&& emit) {
        const int I = int(idx % size_t(width)), J = int(idx / size_t(width));
        for (const Vec2i& d : steps) {
          const int II = I + int(d.x), JJ = J + int(d.y);
          if (II >= 0 && II < width && JJ >= 0 && JJ < width)
            emit(w.index(II, JJ));
        }
      });
}

}  // namespace torustop
