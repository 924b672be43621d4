#pragma once

// Annulus-chart calculus. A chart for a primitive class (p,q) is a basis
// matrix M = [[p,r],[q,s]] in SL(2,Z); strip cells (x, w) with x mod n
// periodic and |w| < H*n correspond exactly to the planar lattice cells
// M*(x, w), so lifting a torus set into its chart and projecting back are
// bijective on cells - no resampling.
//
// The frontier operators alternate open/closed intent through adjacency
// duality: the grid closure of a Four-adjacent (open) region adds its
// Eight-ring, the closure of an Eight-adjacent (closed) set is itself.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "torustop/grid.hpp"
#include "torustop/lattice.hpp"
#include "torustop/maps.hpp"

namespace torustop {

// Completion of primitive (p,q) to [[p,r],[q,s]] with p*s - q*r = 1,
// minimising |r|+|s|; ties prefer smaller |r|, then smaller r.
inline Mat2i annulus_chart_basis(Vec2i pq) {
  if (pq.is_zero() || !is_primitive(pq))
    throw std::invalid_argument("homotopy vector must be primitive");
  const auto [g, xg, yg] = extended_gcd(pq.x, pq.y);
  (void)g;  // = 1 since primitive
  // base solution of p*s - q*r = 1: s = xg, r = -yg; family (r + t*p, s + t*q)
  const int64_t r0 = -yg, s0 = xg;
  int64_t lo = -2, hi = 2;
  if (pq.x != 0) {
    const int64_t t = -r0 / pq.x;
    lo = std::min(lo, t - 2);
    hi = std::max(hi, t + 2);
  }
  if (pq.y != 0) {
    const int64_t t = -s0 / pq.y;
    lo = std::min(lo, t - 2);
    hi = std::max(hi, t + 2);
  }
  int64_t best_r = r0, best_s = s0;
  auto better = [](int64_t r, int64_t s, int64_t br, int64_t bs) {
    const int64_t c = std::abs(r) + std::abs(s), bc = std::abs(br) + std::abs(bs);
    if (c != bc) return c < bc;
    if (std::abs(r) != std::abs(br)) return std::abs(r) < std::abs(br);
    return r < br;
  };
  for (int64_t t = lo; t <= hi; ++t) {
    const int64_t r = r0 + t * pq.x, s = s0 + t * pq.y;
    if (better(r, s, best_r, best_s)) {
      best_r = r;
      best_s = s;
    }
  }
  Mat2i m{pq.x, best_r, pq.y, best_s};
  if (m.det() != 1) throw std::logic_error("annulus chart construction failed");
  return m;
}

struct AnnulusChart {
  Mat2i basis;          // first column is the homotopy vector (p, q)
  int strip_height = 4; // H, fundamental domains above and below the middle

  Vec2i type() const { return {basis.a, basis.c}; }
};

inline AnnulusChart annulus_chart(int64_t p, int64_t q, int strip_height = 4) {
  return AnnulusChart{annulus_chart_basis({p, q}), strip_height};
}

// Subset of the strip T^1 x [-H, H): n columns (periodic), 2*H*n rows.
// Row y holds transverse coordinate w = y - H*n; row 0 is the bottom.
class StripSet {
 public:
  StripSet(const AnnulusChart& chart, GridResolution res, Adjacency adj)
      : chart_(chart),
        n_(res.n),
        adj_(adj),
        cells_(size_t(res.n) * size_t(2 * chart.strip_height) * size_t(res.n), 0) {}

  const AnnulusChart& chart() const { return chart_; }
  int n() const { return n_; }
  int width() const { return n_; }
  int height() const { return 2 * chart_.strip_height * n_; }
  Adjacency adjacency() const { return adj_; }
  void set_adjacency(Adjacency a) { adj_ = a; }

  size_t index(int x, int y) const { return size_t(y) * size_t(n_) + size_t(x); }
  int wrapx(int64_t x) const {
    int64_t m = x % n_;
    return int(m < 0 ? m + n_ : m);
  }
  bool in_range(int y) const { return y >= 0 && y < height(); }

  bool contains(int x, int y) const { return cells_[index(x, y)] != 0; }
  void set(int x, int y, bool v = true) { cells_[index(x, y)] = v ? 1 : 0; }

  // torus cell under the chart: cell = wrap(M * (x, w)), w = y - H*n
  Vec2i torus_cell(int x, int y) const {
    const Vec2i p = chart_.basis.apply(Vec2i{x, int64_t(y) - int64_t(chart_.strip_height) * n_});
    int64_t i = p.x % n_, j = p.y % n_;
    if (i < 0) i += n_;
    if (j < 0) j += n_;
    return {i, j};
  }

  template <typename Fn>
  void for_each_cell(Fn&& fn) const {
    for (int y = 0; y < height(); ++y)
      for (int x = 0; x < n_; ++x)
        if (cells_[index(x, y)]) fn(x, y);
  }

  size_t size() const {
    size_t t = 0;
    for (uint8_t v : cells_) t += v;
    return t;
  }
  bool empty() const { return size() == 0; }

  bool same_cells(const StripSet& o) const { return n_ == o.n_ && cells_ == o.cells_; }

  int min_row() const {
    for (int y = 0; y < height(); ++y)
      for (int x = 0; x < n_; ++x)
        if (contains(x, y)) return y;
    return -1;
  }
  int max_row() const {
    for (int y = height() - 1; y >= 0; --y)
      for (int x = 0; x < n_; ++x)
        if (contains(x, y)) return y;
    return -1;
  }

  const std::vector<uint8_t>& raw() const { return cells_; }
  std::vector<uint8_t>& raw() { return cells_; }

 private:
  AnnulusChart chart_;
  int n_;
  Adjacency adj_;
  std::vector<uint8_t> cells_;
};

// Full preimage of a torus set in the chart strip (every vertical copy).
inline StripSet strip_preimage(const TorusGridSet& a, const AnnulusChart& chart) {
  StripSet s(chart, a.resolution(), a.adjacency());
  const int h = s.height(), n = a.n();
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < n; ++x) {
      const Vec2i c = s.torus_cell(x, y);
      if (a.contains(c)) s.set(x, y);
    }
  return s;
}

inline TorusGridSet strip_to_torus(const StripSet& s, Adjacency adj) {
  TorusGridSet out(GridResolution(s.n()), adj);
  s.for_each_cell([&](int x, int y) { out.set(s.torus_cell(x, y)); });
  return out;
}

inline ComponentLabeling strip_components(const StripSet& s) {
  const int n = s.width(), h = s.height();
  const auto& steps = adjacency_steps(s.adjacency());
  return label_components(
      s.raw().size(), [&](size_t idx) { return s.raw()[idx] != 0; },
      [&](size_t idx, auto&& emit) {
        const int x = int(idx % size_t(n)), y = int(idx / size_t(n));
        for (const Vec2i& d : steps) {
          const int yy = y + int(d.y);
          if (yy < 0 || yy >= h) continue;
          emit(s.index(s.wrapx(x + d.x), yy));
        }
      });
}

inline StripSet strip_component_cells(const StripSet& s, const ComponentLabeling& lab,
                                      int32_t id) {
  StripSet out(s.chart(), GridResolution(s.n()), s.adjacency());
  for (size_t k = 0; k < out.raw().size(); ++k)
    if (lab.labels[k] == id) out.raw()[k] = 1;
  return out;
}

// The lift component nearest the middle of the strip (deterministic pick).
inline StripSet strip_lift_component(const TorusGridSet& a, const AnnulusChart& chart) {
  const StripSet pre = strip_preimage(a, chart);
  const ComponentLabeling lab = strip_components(pre);
  if (lab.count == 0) throw std::invalid_argument("strip_lift_component: empty set");
  const int mid = pre.height() / 2;
  for (int dist = 0; dist <= mid; ++dist) {
    for (const int y : {mid - dist, mid + dist}) {
      if (y < 0 || y >= pre.height()) continue;
      for (int x = 0; x < pre.width(); ++x) {
        if (pre.contains(x, y))
          return strip_component_cells(pre, lab, lab.labels[pre.index(x, y)]);
      }
    }
  }
  throw std::logic_error("strip_lift_component: scan failed");
}

namespace detail {

struct StripRegions {
  std::optional<StripSet> upper;  // complement component unbounded above
  std::optional<StripSet> lower;  // complement component unbounded below
};

// Open complement regions of the closure of s, where the closure may only
// grow into the reference continuum: cl(s) = s union (Four-ring(s) cap
// blocker). The topological boundary of each region in a frontier chain
// lies in the reference set, so only reference cells may block, and the
// Four-ring is exactly the layer of reference cells the open regions touch.
// Regions are Four-adjacent; a side exists only when its edge row is
// entirely clear.
inline StripRegions strip_regions(const StripSet& s, const StripSet& blocker) {
  if (s.empty()) throw std::invalid_argument("unbounded_components: empty set");
  const int h = s.height();
  StripSet closed = s;
  s.for_each_cell([&](int x, int y) {
    for (const Vec2i& d : adjacency_steps(Adjacency::Four)) {
      const int yy = y + int(d.y);
      if (yy < 0 || yy >= h) continue;
      const int xx = s.wrapx(x + int(d.x));
      if (blocker.contains(xx, yy)) closed.set(xx, yy);
    }
  });
  StripSet comp(s.chart(), GridResolution(s.n()), Adjacency::Four);
  for (size_t k = 0; k < comp.raw().size(); ++k)
    comp.raw()[k] = closed.raw()[k] ? 0 : 1;
  bool top_clear = true, bottom_clear = true;
  for (int x = 0; x < comp.width(); ++x) {
    if (!comp.contains(x, comp.height() - 1)) top_clear = false;
    if (!comp.contains(x, 0)) bottom_clear = false;
  }
  const ComponentLabeling lab = strip_components(comp);
  StripRegions out;
  if (top_clear)
    out.upper = strip_component_cells(comp, lab, lab.labels[comp.index(0, comp.height() - 1)]);
  if (bottom_clear)
    out.lower = strip_component_cells(comp, lab, lab.labels[comp.index(0, 0)]);
  return out;
}

}  // namespace detail

// U^+(s) relative to a reference continuum (the boundary of every region in
// a frontier chain lies in the original set, which therefore stays the
// blocker); raises when the strip has no clear row above s.
inline StripSet upper_region(const StripSet& s, const StripSet& blocker) {
  auto r = detail::strip_regions(s, blocker);
  if (!r.upper) throw pipeline_error("strip height exhausted");
  return std::move(*r.upper);
}

inline StripSet lower_region(const StripSet& s, const StripSet& blocker) {
  auto r = detail::strip_regions(s, blocker);
  if (!r.lower) throw pipeline_error("strip height exhausted");
  return std::move(*r.lower);
}

// U^+(a) alone; raises when the strip has no clear row above a.
inline StripSet upper_region(const StripSet& a) { return upper_region(a, a); }

// U^-(a) alone; raises when the strip has no clear row below a.
inline StripSet lower_region(const StripSet& a) { return lower_region(a, a); }

// Complement components unbounded above / below the closure of a.
// They coincide exactly when a is inessential in the strip.
inline std::pair<StripSet, StripSet> unbounded_components(const StripSet& a) {
  auto r = detail::strip_regions(a, a);
  if (!r.upper || !r.lower) throw pipeline_error("strip height exhausted");
  return {std::move(*r.upper), std::move(*r.lower)};
}

inline bool strip_essential(const StripSet& a) {
  const auto [upper, lower] = unbounded_components(a);
  return !upper.same_cells(lower);
}

struct Circloid {
  StripSet body;   // Eight-adjacent essential continuum
  StripSet upper;  // unbounded-above complement component of the body
  StripSet lower;  // unbounded-below complement component of the body
};

// Upper frontier: body = strip minus (U^{+-} union U^{+-+}). The chain
// keeps blocking with the original continuum, whose boundary carries every
// frontier in between.
inline Circloid circloid_upper_frontier(const StripSet& a) {
  if (!strip_essential(a)) throw std::invalid_argument("input not essential in strip");
  auto region = [&](const StripSet& s, bool want_upper) {
    auto r = detail::strip_regions(s, a);
    auto& side = want_upper ? r.upper : r.lower;
    if (!side) throw pipeline_error("strip height exhausted");
    return std::move(*side);
  };
  const StripSet u_plus = region(a, true);
  const StripSet lower = region(u_plus, false);  // U^{+-}
  const StripSet upper = region(lower, true);    // U^{+-+}
  StripSet body(a.chart(), GridResolution(a.n()), Adjacency::Eight);
  for (size_t k = 0; k < body.raw().size(); ++k)
    body.raw()[k] = (lower.raw()[k] | upper.raw()[k]) ? 0 : 1;
  return {std::move(body), std::move(upper), std::move(lower)};
}

enum class EssentialOrder : uint8_t { Below, Above, Incomparable };

inline EssentialOrder essential_order(const StripSet& e1, const StripSet& e2) {
  const auto [upper, lower] = unbounded_components(e2);
  bool below = true, above = true;
  e1.for_each_cell([&](int x, int y) {
    if (!lower.contains(x, y)) below = false;
    if (!upper.contains(x, y)) above = false;
  });
  if (e1.empty()) return EssentialOrder::Incomparable;
  if (below) return EssentialOrder::Below;
  if (above) return EssentialOrder::Above;
  return EssentialOrder::Incomparable;
}

// ---------------------------------------------------------------------------
// Strip Hausdorff distance (x periodic, w planar), exact cell centers.

inline std::vector<int64_t> strip_squared_distance_transform(const StripSet& s) {
  const int n = s.width(), h = s.height();
  std::vector<int64_t> g(s.raw().size(), detail::kEdtInf);
  std::vector<int64_t> f, d;
  // vertical pass (planar)
  f.assign(size_t(h), detail::kEdtInf);
  for (int x = 0; x < n; ++x) {
    std::fill(f.begin(), f.end(), detail::kEdtInf);
    bool any = false;
    for (int y = 0; y < h; ++y)
      if (s.contains(x, y)) {
        any = true;
        f[size_t(y)] = 0;
      }
    if (!any) continue;
    detail::edt_1d(f, d);
    for (int y = 0; y < h; ++y) g[s.index(x, y)] = d[size_t(y)];
  }
  // horizontal pass (periodic: replicate 3x)
  std::vector<int64_t> out(s.raw().size(), detail::kEdtInf);
  f.assign(size_t(3 * n), detail::kEdtInf);
  for (int y = 0; y < h; ++y) {
    std::fill(f.begin(), f.end(), detail::kEdtInf);
    bool any = false;
    for (int x = 0; x < n; ++x) {
      const int64_t v = g[s.index(x, y)];
      if (v < detail::kEdtInf) {
        any = true;
        f[size_t(x)] = v;
        f[size_t(x + n)] = v;
        f[size_t(x + 2 * n)] = v;
      }
    }
    if (!any) continue;
    detail::edt_1d(f, d);
    for (int x = 0; x < n; ++x) out[s.index(x, y)] = d[size_t(x + n)];
  }
  return out;
}

inline double strip_hausdorff(const StripSet& a, const StripSet& b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("empty set has no Hausdorff distance");
  const auto da = strip_squared_distance_transform(a);
  const auto db = strip_squared_distance_transform(b);
  int64_t worst = 0;
  a.for_each_cell([&](int x, int y) { worst = std::max(worst, db[a.index(x, y)]); });
  b.for_each_cell([&](int x, int y) { worst = std::max(worst, da[b.index(x, y)]); });
  return std::sqrt(double(worst)) / double(a.n());
}

// Cells outside u with an Eight-neighbor inside u; the grid rendering of
// the topological boundary of an open region, as a closed set.
inline StripSet outer_boundary(const StripSet& u) {
  StripSet out(u.chart(), GridResolution(u.n()), Adjacency::Eight);
  const int h = u.height();
  u.for_each_cell([&](int x, int y) {
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        const int yy = y + dy;
        if (yy < 0 || yy >= h) continue;
        const int xx = u.wrapx(x + dx);
        if (!u.contains(xx, yy)) out.set(xx, yy);
      }
  });
  return out;
}

// Hausdorff limit of an increasing (w.r.t. the essential order) sequence:
// the boundary of the union of the lower complement components. Processing
// stops once consecutive terms are closer than tol.
inline StripSet monotone_limit(const std::vector<StripSet>& es, double tol) {
  if (es.empty()) throw std::invalid_argument("monotone_limit: empty sequence");
  StripSet acc = lower_region(es[0]);
  for (size_t i = 1; i < es.size(); ++i) {
    if (essential_order(es[i - 1], es[i]) != EssentialOrder::Below)
      throw std::invalid_argument("sequence not order-monotone");
    const StripSet lower = lower_region(es[i]);
    for (size_t k = 0; k < acc.raw().size(); ++k)
      acc.raw()[k] = uint8_t(acc.raw()[k] | lower.raw()[k]);
    if (strip_hausdorff(es[i - 1], es[i]) < tol) break;
  }
  return outer_boundary(acc);
}

// ---------------------------------------------------------------------------
// Chart dynamics

// Lift of the chart conjugate  M^{-1} o F o M  evaluated at a strip point.
inline Vec2d chart_lift(const TorusMapSpec& map, const AnnulusChart& chart, Vec2d z) {
  const Mat2i m = chart.basis;
  const Mat2i mi = m.inverse();
  return mi.apply(map.eval_lift(m.apply(z)));
}

// Vertical deck behaviour of the chart lift: +1 order-preserving, -1
// order-reversing. Exact for genuine lifts.
inline int chart_vertical_orientation(const TorusMapSpec& map, const AnnulusChart& chart) {
  const Vec2d z{0.1234567, 0.2345678};
  const Vec2d a = chart_lift(map, chart, {z.x, z.y + 1.0});
  const Vec2d b = chart_lift(map, chart, z);
  const double mu = a.y - b.y;
  const int r = int(std::lround(mu));
  if (r != 1 && r != -1)
    throw pipeline_error("chart lift is not vertically equivariant");
  return r;
}

// Supersampled raster of the (possibly squared) chart image of a strip set.
inline StripSet strip_map_image(const TorusMapSpec& map, const StripSet& e, bool squared,
                                bool& escaped) {
  StripSet out(e.chart(), GridResolution(e.n()), e.adjacency());
  const int n = e.n(), h = e.height(), big_h = e.chart().strip_height;
  escaped = false;
  static const double subs[3] = {1.0 / 6.0, 0.5, 5.0 / 6.0};
  e.for_each_cell([&](int x, int y) {
    for (double sv : subs)
      for (double su : subs) {
        const Vec2d z{(double(x) + su) / n, (double(y) + sv) / n - double(big_h)};
        Vec2d w = chart_lift(map, e.chart(), z);
        if (squared) w = chart_lift(map, e.chart(), w);
        const int nx = cell_coord(w.x, n);
        const double fy = (w.y + double(big_h)) * n;
        const int ny = int(std::floor(fy + kCellSnap));
        if (ny < 0 || ny >= h) {
          escaped = true;
          continue;
        }
        out.set(nx, ny);
      }
  });
  return out;
}

// Iterates an essential continuum under the chart dynamics until the
// Hausdorff motion drops below tol, then extracts the circloid frontier of
// the limit. Order-reversing maps are iterated through their square.
inline Circloid iterated_essential_limit(const TorusMapSpec& map, const StripSet& e,
                                         double tol, int64_t max_iter) {
  const Vec2i pq = e.chart().type();
  const Vec2i image_pq = map.homology.apply(pq);
  if (image_pq != pq && image_pq != -pq)
    throw pipeline_error("homotopy class not preserved");
  if (!strip_essential(e)) throw std::invalid_argument("input not essential in strip");

  const bool reversing = chart_vertical_orientation(map, e.chart()) < 0;
  bool escaped = false;
  StripSet img = strip_map_image(map, e, reversing, escaped);
  if (escaped) throw pipeline_error("unbounded orbit - rotation number likely nonzero");
  if (img.same_cells(e)) return circloid_upper_frontier(e);

  const EssentialOrder ord = essential_order(img, e);
  if (ord == EssentialOrder::Incomparable)
    throw std::invalid_argument("image neither disjoint from nor equal to the seed continuum");
  const bool upward = (ord == EssentialOrder::Above);

  auto side_region = [&](const StripSet& s) {
    return upward ? lower_region(s) : upper_region(s);
  };
  StripSet acc = side_region(e);
  StripSet prev = e, cur = img;
  for (int64_t it = 0; it < max_iter; ++it) {
    const StripSet side = side_region(cur);
    for (size_t k = 0; k < acc.raw().size(); ++k)
      acc.raw()[k] = uint8_t(acc.raw()[k] | side.raw()[k]);
    if (strip_hausdorff(prev, cur) < tol) {
      const StripSet limit = outer_boundary(acc);
      return circloid_upper_frontier(limit);
    }
    prev = cur;
    cur = strip_map_image(map, cur, reversing, escaped);
    if (escaped) throw pipeline_error("unbounded orbit - rotation number likely nonzero");
  }
  throw pipeline_error("limit not reached");
}

}  // namespace torustop
