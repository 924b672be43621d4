#pragma once

// Rotation set sampling, orthogonal rotation numbers in annulus charts and
// the rational / irrational dichotomy via continued-fraction convergents.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "torustop/annulus.hpp"
#include "torustop/lattice.hpp"
#include "torustop/maps.hpp"

namespace torustop {

// Monotone-chain convex hull; vertices counter-clockwise starting from the
// lexicographic minimum, collinear interior points dropped.
inline std::vector<Vec2d> convex_hull(std::vector<Vec2d> pts) {
  std::sort(pts.begin(), pts.end(), [](Vec2d a, Vec2d b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](Vec2d a, Vec2d b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  if (pts.size() <= 2) return pts;
  auto cross = [](Vec2d o, Vec2d a, Vec2d b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  std::vector<Vec2d> hull(2 * pts.size());
  size_t k = 0;
  for (const Vec2d& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  const size_t lower = k + 1;
  for (size_t i = pts.size() - 1; i-- > 0;) {
    const Vec2d p = pts[i];
    while (k >= lower && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

inline bool point_in_hull(const std::vector<Vec2d>& hull, Vec2d p, double tol = 1e-12) {
  if (hull.empty()) return false;
  if (hull.size() == 1)
    return std::abs(p.x - hull[0].x) <= tol && std::abs(p.y - hull[0].y) <= tol;
  auto cross = [](Vec2d o, Vec2d a, Vec2d b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  if (hull.size() == 2) {
    // segment: distance test
    const Vec2d d{hull[1].x - hull[0].x, hull[1].y - hull[0].y};
    const double len2 = d.x * d.x + d.y * d.y;
    double t = ((p.x - hull[0].x) * d.x + (p.y - hull[0].y) * d.y) / len2;
    t = std::clamp(t, 0.0, 1.0);
    const Vec2d q{hull[0].x + t * d.x, hull[0].y + t * d.y};
    return std::hypot(p.x - q.x, p.y - q.y) <= tol;
  }
  for (size_t i = 0; i < hull.size(); ++i) {
    const Vec2d a = hull[i], b = hull[(i + 1) % hull.size()];
    if (cross(a, b, p) < -tol) return false;
  }
  return true;
}

inline double hull_diameter(const std::vector<Vec2d>& hull) {
  double best = 0.0;
  for (size_t i = 0; i < hull.size(); ++i)
    for (size_t j = i + 1; j < hull.size(); ++j)
      best = std::max(best, std::hypot(hull[i].x - hull[j].x, hull[i].y - hull[j].y));
  return best;
}

inline double hull_area(const std::vector<Vec2d>& hull) {
  double a = 0.0;
  for (size_t i = 0; i < hull.size(); ++i) {
    const Vec2d p = hull[i], q = hull[(i + 1) % hull.size()];
    a += p.x * q.y - q.x * p.y;
  }
  return std::abs(a) / 2.0;
}

struct RotationSetEstimate {
  std::vector<Vec2d> samples;
  std::vector<Vec2d> hull;
  int64_t n_iter = 0;
  int64_t n_samples = 0;

  double diameter() const { return hull_diameter(hull); }
};

// Displacement averages (F^N(z) - F^B(z)) / (N - B) over a uniform seed
// grid; the first tenth of the orbit is treated as burn-in.
inline RotationSetEstimate rotation_set_estimate(const TorusMapSpec& map, int64_t n_samples,
                                                 int64_t n_iter) {
  if (!(map.homology == Mat2i::identity()))
    throw std::invalid_argument("rotation set defined only in the identity class");
  if (n_iter < 100) throw std::invalid_argument("rotation_set_estimate: nIter must be >= 100");
  const int64_t g = std::max<int64_t>(1, int64_t(std::floor(std::sqrt(double(n_samples)))));
  const int64_t burn = n_iter / 10;
  RotationSetEstimate out;
  out.n_iter = n_iter;
  out.n_samples = g * g;
  out.samples.reserve(size_t(g * g));
  for (int64_t b = 0; b < g; ++b)
    for (int64_t a = 0; a < g; ++a) {
      Vec2d z{double(a) / double(g), double(b) / double(g)};
      Vec2d burn_pos = z;
      for (int64_t t = 0; t < burn; ++t) burn_pos = map.eval_lift(burn_pos);
      Vec2d cur = burn_pos;
      for (int64_t t = burn; t < n_iter; ++t) cur = map.eval_lift(cur);
      const double span = double(n_iter - burn);
      out.samples.push_back({(cur.x - burn_pos.x) / span, (cur.y - burn_pos.y) / span});
    }
  out.hull = convex_hull(out.samples);
  return out;
}

// ---------------------------------------------------------------------------
// Rationality via continued fractions

struct RationalVerdict {
  enum class Kind : uint8_t { Rational, Irrational, Undecided } kind = Kind::Undecided;
  int64_t num = 0;
  int64_t den = 1;

  std::string to_string() const {
    switch (kind) {
      case Kind::Rational:
        return "Rational(" + std::to_string(num) + "/" + std::to_string(den) + ")";
      case Kind::Irrational: return "Irrational";
      default: return "Undecided";
    }
  }
};

// Rational(a/b) when a convergent with b <= max_den lands within tol and its
// successor needs a denominator beyond max_den; Irrational when every
// convergent up to max_den, and the first one past it, misses by more than
// 10*tol; Undecided otherwise.
inline RationalVerdict rationality_test(double value, int64_t max_den, double tol) {
  if (max_den < 1 || tol <= 0.0)
    throw std::invalid_argument("rationality_test: bad parameters");
  struct Conv {
    int64_t p, q;
    double miss;
  };
  std::vector<Conv> convs;
  int64_t p_prev = 1, q_prev = 0;         // p_{-1}/q_{-1}
  int64_t p_cur = 0, q_cur = 1;           // p_0 seeded below
  double x = value;
  int64_t a = int64_t(std::floor(x));
  p_cur = a;
  q_cur = 1;
  convs.push_back({p_cur, q_cur, std::abs(value - double(p_cur))});
  double frac = x - double(a);
  bool terminated = frac < 1e-15;
  while (!terminated && q_cur <= max_den) {
    x = 1.0 / frac;
    a = int64_t(std::floor(x));
    frac = x - double(a);
    const int64_t p_next = a * p_cur + p_prev;
    const int64_t q_next = a * q_cur + q_prev;
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
    convs.push_back({p_cur, q_cur, std::abs(value - double(p_cur) / double(q_cur))});
    if (frac < 1e-15 || q_cur > (int64_t(1) << 40)) terminated = true;
    if (q_cur > max_den) break;  // keep exactly one convergent past max_den
  }
  // Rational: first in-range convergent within tol whose successor is absent
  // or out of range.
  for (size_t i = 0; i < convs.size(); ++i) {
    if (convs[i].q > max_den) break;
    if (convs[i].miss < tol) {
      const bool successor_rejected = (i + 1 >= convs.size()) || convs[i + 1].q > max_den;
      if (successor_rejected) {
        const int64_t g = gcd64(convs[i].p, convs[i].q);
        return {RationalVerdict::Kind::Rational, convs[i].p / (g == 0 ? 1 : g),
                convs[i].q / (g == 0 ? 1 : g)};
      }
    }
  }
  bool all_far = true;
  for (const Conv& c : convs)
    if (c.miss <= 10.0 * tol) all_far = false;
  // a terminating expansion within range means the value is that rational
  if (terminated && convs.back().q <= max_den) all_far = false;
  if (all_far) return {RationalVerdict::Kind::Irrational, 0, 1};
  return {RationalVerdict::Kind::Undecided, 0, 1};
}

// ---------------------------------------------------------------------------
// Orthogonal rotation number

struct OrthogonalRotation {
  Vec2i vector{1, 0};
  double value = 0.0;  // representative in [0, ||(p,q)||_2)
  bool order_reversing = false;
  RationalVerdict rational_verdict;
  double sample_min = 0.0;  // per-seed normalised values before reduction
  double sample_max = 0.0;
  int64_t n_iter = 0;
  int64_t seed_count = 0;
};

inline OrthogonalRotation orthogonal_rotation(const TorusMapSpec& map, int64_t p, int64_t q,
                                              int64_t n_iter = 200000, int64_t seed_count = 8,
                                              int64_t max_den = 100, double rat_tol = 1e-6) {
  const Vec2i pq{p, q};
  if (pq.is_zero() || !is_primitive(pq))
    throw std::invalid_argument("homotopy vector must be primitive");
  const Vec2i image = map.homology.apply(pq);
  if (image != pq && image != -pq) throw pipeline_error("homotopy class not preserved");
  const AnnulusChart chart = annulus_chart(p, q);

  const int mu = chart_vertical_orientation(map, chart);
  const bool reversing = mu < 0;
  const double norm = std::hypot(double(p), double(q));
  const int64_t burn = n_iter / 10;

  OrthogonalRotation out;
  out.vector = canonical_direction(pq);
  out.order_reversing = reversing;
  out.n_iter = n_iter;
  out.seed_count = seed_count;

  double mn = std::numeric_limits<double>::infinity(), mx = -mn, sum = 0.0;
  for (int64_t s = 0; s < seed_count; ++s) {
    // low-discrepancy seeds spread across the annulus
    Vec2d z{std::fmod(0.5 + 0.6180339887498949 * double(s), 1.0),
            std::fmod(0.25 + 0.4142135623730951 * double(s), 1.0)};
    auto step = [&](Vec2d w) {
      Vec2d v = chart_lift(map, chart, w);
      if (reversing) v = chart_lift(map, chart, v);
      return v;
    };
    Vec2d cur = z;
    for (int64_t t = 0; t < burn; ++t) cur = step(cur);
    const Vec2d mark = cur;
    for (int64_t t = burn; t < n_iter; ++t) cur = step(cur);
    double disp = (cur.y - mark.y) / double(n_iter - burn);
    if (reversing) disp /= 2.0;
    const double val = disp / norm;
    mn = std::min(mn, val);
    mx = std::max(mx, val);
    sum += val;
  }
  out.sample_min = mn;
  out.sample_max = mx;
  double v = sum / double(seed_count);
  v -= norm * std::floor(v / norm);
  if (norm - v < 1e-9) v = 0.0;  // collapse the wrap seam
  out.value = v;
  out.rational_verdict = rationality_test(out.value, max_den, rat_tol);
  return out;
}

}  // namespace torustop
