#pragma once

// Torus homeomorphism families with exact lift evaluation. A lift is always
// evaluated by reducing to the fundamental domain and adding back the
// homology image of the integer part, so F(x + v) = F(x) + f_* v holds to
// the last bit.

#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "torustop/grid.hpp"
#include "torustop/lattice.hpp"

namespace torustop {

inline constexpr double kPi = 3.14159265358979323846;

// Rasterisation convention: points within 1e-7 cells below a cell edge snap
// upward, so exact rationals land in the ideal cell despite float drift.
inline constexpr double kCellSnap = 1e-7;

inline int cell_coord(double x, int n) {
  const double y = x - std::floor(x);
  int c = int(std::floor(y * double(n) + kCellSnap));
  if (c >= n) c -= n;
  if (c < 0) c = 0;
  return c;
}

inline Vec2i point_cell(Vec2d p, int n) {
  return {cell_coord(p.x, n), cell_coord(p.y, n)};
}

// Strictly increasing piecewise-affine circle map of degree one, given by
// breakpoint pairs. Used as the base of the Denjoy-style product family.
class CircleInterpolant {
 public:
  // pairs: (source in [0,1), target in [0,1)), cyclically monotone.
  explicit CircleInterpolant(std::vector<std::pair<double, double>> pairs) {
    if (pairs.size() < 2)
      throw std::invalid_argument("circle interpolant needs at least two breakpoints");
    std::sort(pairs.begin(), pairs.end());
    src_.reserve(pairs.size());
    dst_.reserve(pairs.size());
    for (const auto& [s, t] : pairs) {
      if (!src_.empty() && s <= src_.back())
        throw std::invalid_argument("circle interpolant: duplicate source breakpoint");
      double d = t;
      if (!dst_.empty())
        while (d <= dst_.back()) d += 1.0;
      src_.push_back(s);
      dst_.push_back(d);
    }
    if (dst_.back() >= dst_.front() + 1.0)
      throw pipeline_error("circle interpolant breakpoints not cyclically monotone");
  }

  // Lift value; eval_lift(x + 1) = eval_lift(x) + 1 exactly by construction.
  double eval_lift(double x) const {
    const double base = std::floor(x);
    double x0 = x - base;
    double shift = 0.0;
    if (x0 < src_.front()) {
      x0 += 1.0;
      shift = -1.0;
    }
    // segment [src_k, src_{k+1}) with the wrap segment closing the circle
    const size_t m = src_.size();
    size_t k = size_t(std::upper_bound(src_.begin(), src_.end(), x0) - src_.begin());
    double s0, s1, d0, d1;
    if (k == 0 || k > m) throw std::logic_error("interpolant lookup out of range");
    if (k == m) {
      s0 = src_.back();
      s1 = src_.front() + 1.0;
      d0 = dst_.back();
      d1 = dst_.front() + 1.0;
    } else {
      s0 = src_[k - 1];
      s1 = src_[k];
      d0 = dst_[k - 1];
      d1 = dst_[k];
    }
    const double t = (x0 - s0) / (s1 - s0);
    return d0 + t * (d1 - d0) + shift + base;
  }

  size_t breakpoints() const { return src_.size(); }

 private:
  std::vector<double> src_;
  std::vector<double> dst_;  // lifted, strictly increasing, total wrap < 1
};

enum class MapFamily : uint8_t {
  Translation,
  LinearToral,
  DehnTwistPlus,
  SkewShear,
  DenjoyProduct,
  Custom
};

inline const char* family_name(MapFamily f) {
  switch (f) {
    case MapFamily::Translation: return "translation";
    case MapFamily::LinearToral: return "linearToral";
    case MapFamily::DehnTwistPlus: return "dehnTwistPlus";
    case MapFamily::SkewShear: return "skewShear";
    case MapFamily::DenjoyProduct: return "denjoyProduct";
    default: return "custom";
  }
}

struct TorusMapSpec {
  MapFamily family = MapFamily::Translation;
  double alpha = 0.0;
  double beta = 0.0;
  double eps = 0.0;
  Mat2i homology = Mat2i::identity();
  std::shared_ptr<const CircleInterpolant> base_circle;
  std::function<Vec2d(Vec2d)> custom_fundamental;  // values for x in [0,1)^2

  static TorusMapSpec translation(double a, double b) {
    TorusMapSpec m;
    m.family = MapFamily::Translation;
    m.alpha = a;
    m.beta = b;
    return m;
  }

  static TorusMapSpec linear_toral(const Mat2i& h) {
    if (!h.unimodular())
      throw std::invalid_argument("linear toral map requires |det| = 1");
    TorusMapSpec m;
    m.family = MapFamily::LinearToral;
    m.homology = h;
    return m;
  }

  static TorusMapSpec dehn_twist_plus(double a, double b) {
    TorusMapSpec m;
    m.family = MapFamily::DehnTwistPlus;
    m.alpha = a;
    m.beta = b;
    m.homology = Mat2i{1, 1, 0, 1};
    return m;
  }

  static TorusMapSpec skew_shear(double a, double b, double eps) {
    TorusMapSpec m;
    m.family = MapFamily::SkewShear;
    m.alpha = a;
    m.beta = b;
    m.eps = eps;
    return m;
  }

  static TorusMapSpec custom_map(std::function<Vec2d(Vec2d)> fundamental,
                                 const Mat2i& h) {
    if (!h.unimodular())
      throw std::invalid_argument("custom map requires unimodular homology");
    TorusMapSpec m;
    m.family = MapFamily::Custom;
    m.homology = h;
    m.custom_fundamental = std::move(fundamental);
    return m;
  }

  Vec2d eval_fundamental(Vec2d x0) const {
    switch (family) {
      case MapFamily::Translation:
        return {x0.x + alpha, x0.y + beta};
      case MapFamily::LinearToral:
        return homology.apply(x0);
      case MapFamily::DehnTwistPlus:
        return {x0.x + x0.y + alpha, x0.y + beta};
      case MapFamily::SkewShear: {
        const double s = std::sin(kPi * x0.y);
        return {x0.x + alpha + eps * s * s, x0.y + beta};
      }
      case MapFamily::DenjoyProduct:
        return {base_circle->eval_lift(x0.x), x0.y + beta};
      default:
        return custom_fundamental(x0);
    }
  }

  Vec2d eval_lift(Vec2d x) const {
    const Vec2d w{std::floor(x.x), std::floor(x.y)};
    const Vec2d y0 = eval_fundamental({x.x - w.x, x.y - w.y});
    const Vec2d hw = homology.apply(w);
    return {y0.x + hw.x, y0.y + hw.y};
  }

  // Point on the torus: lift, then reduce.
  Vec2d eval_torus(Vec2d x) const {
    const Vec2d y = eval_lift({x.x - std::floor(x.x), x.y - std::floor(x.y)});
    return {y.x - std::floor(y.x), y.y - std::floor(y.y)};
  }

  TorusMapSpec inverse() const {
    switch (family) {
      case MapFamily::Translation:
        return translation(-alpha, -beta);
      case MapFamily::LinearToral:
        return linear_toral(homology.inverse());
      default:
        throw std::invalid_argument("inverse not available for this map family");
    }
  }
};

// Rasterised image of a set: map each member cell center, mark the target
// cell. The one-cell invariance convention for sets is stated against this.
inline TorusGridSet raster_image(const TorusMapSpec& map, const TorusGridSet& s) {
  TorusGridSet out(s.resolution(), s.adjacency());
  const int n = s.n();
  s.for_each_cell([&](Vec2i c) {
    out.set(point_cell(map.eval_torus(s.cell_center(c)), n));
  });
  return out;
}

// rasterised image lands inside the one-cell fattening of the set
inline bool invariant_within_one_cell(const TorusMapSpec& map, const TorusGridSet& s) {
  const TorusGridSet img = raster_image(map, s);
  return is_subset(img, dilate(s, 1));
}

}  // namespace torustop
