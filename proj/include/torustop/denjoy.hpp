#pragma once

// Denjoy-style product example: a wandering-annulus minimal-set candidate
// C x T^1, where C is the circle minus open gaps excised at the points of a
// rigid orbit {k*alpha}, |k| <= M, with lengths c/(1+k^2). The base circle
// map sends gap k affinely onto gap k+1; outside the surviving gaps it is a
// monotone piecewise-affine interpolant pinned to a long shadow of the
// rigid orbit, so its rotation number stays within interpolation error of
// alpha. Points beyond the truncation follow the interpolant.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "torustop/grid.hpp"
#include "torustop/maps.hpp"

namespace torustop {

struct DenjoyProduct {
  TorusGridSet set;   // rasterised C x T^1, Eight-adjacent
  TorusMapSpec map;
  double alpha = 0.0;
  double beta = 0.0;
  double gap_budget = 0.0;
  int truncation = 0;
  std::vector<double> gap_centers;  // index k + truncation
  std::vector<double> gap_lengths;

  // open interval (endpoints may wrap past 1) of gap k
  std::pair<double, double> gap_interval(int k) const {
    const size_t i = size_t(k + truncation);
    return {gap_centers[i] - gap_lengths[i] / 2.0, gap_centers[i] + gap_lengths[i] / 2.0};
  }
};

namespace detail {

inline double circle_frac(double x) { return x - std::floor(x); }

inline double circle_dist(double a, double b) {
  double d = std::abs(circle_frac(a) - circle_frac(b));
  return std::min(d, 1.0 - d);
}

}  // namespace detail

inline DenjoyProduct denjoy_product_set(double alpha, double beta, double gap_budget,
                                        int truncation, GridResolution res,
                                        int shadow_orbit = 1 << 14) {
  if (gap_budget <= 0.0 || gap_budget >= 1.0)
    throw std::invalid_argument("gap budget must lie in (0, 1)");
  if (truncation < 0) throw std::invalid_argument("truncation must be non-negative");
  const int M = truncation;

  double weight = 0.0;
  for (int k = -M; k <= M; ++k) weight += 1.0 / (1.0 + double(k) * double(k));
  const double c = gap_budget / weight;

  DenjoyProduct out{TorusGridSet(res, Adjacency::Eight), TorusMapSpec{}, alpha, beta,
                    gap_budget,  M,           {},             {}};
  for (int k = -M; k <= M; ++k) {
    out.gap_centers.push_back(detail::circle_frac(double(k) * alpha));
    out.gap_lengths.push_back(c / (1.0 + double(k) * double(k)));
  }

  // gaps must stay pairwise disjoint on the circle
  {
    std::vector<std::pair<double, double>> spans;  // (center, half length)
    for (size_t i = 0; i < out.gap_centers.size(); ++i)
      spans.push_back({out.gap_centers[i], out.gap_lengths[i] / 2.0});
    std::sort(spans.begin(), spans.end());
    for (size_t i = 0; i < spans.size(); ++i) {
      const auto& [c0, h0] = spans[i];
      const auto& [c1, h1] = spans[(i + 1) % spans.size()];
      const double gap_between = (i + 1 < spans.size() ? c1 - c0 : c1 + 1.0 - c0);
      if (gap_between <= h0 + h1) throw pipeline_error("gap budget infeasible");
    }
  }

  // breakpoints: gap endpoints map to the next gap's endpoints
  std::vector<std::pair<double, double>> pairs;
  auto gap_bounds = [&](int k) {
    const size_t i = size_t(k + M);
    return std::pair<double, double>{out.gap_centers[i] - out.gap_lengths[i] / 2.0,
                                     out.gap_centers[i] + out.gap_lengths[i] / 2.0};
  };
  for (int k = -M; k < M; ++k) {
    const auto [a0, b0] = gap_bounds(k);
    const auto [a1, b1] = gap_bounds(k + 1);
    pairs.push_back({detail::circle_frac(a0), detail::circle_frac(a1)});
    pairs.push_back({detail::circle_frac(b0), detail::circle_frac(b1)});
  }

  // shadow anchors: rigid-orbit points clear of every (margin-padded) gap
  auto clear_of_gaps = [&](double u) {
    for (int j = -M; j <= M; ++j) {
      const size_t i = size_t(j + M);
      const size_t cap = size_t(std::max(std::abs(j) - 1, 0) + M);
      const double margin = out.gap_lengths[i] / 2.0 + out.gap_lengths[cap] / 2.0 + 1e-9;
      if (detail::circle_dist(u, out.gap_centers[i]) < margin) return false;
    }
    return true;
  };
  for (int k = -shadow_orbit; k <= shadow_orbit; ++k) {
    if (std::abs(k) <= M + 1) continue;
    const double u = detail::circle_frac(double(k) * alpha);
    const double v = detail::circle_frac(double(k + 1) * alpha);
    if (clear_of_gaps(u) && clear_of_gaps(v)) pairs.push_back({u, v});
  }
  if (pairs.size() < 2) {
    // degenerate truncations: fall back to two rigid anchors
    pairs.push_back({detail::circle_frac(0.31), detail::circle_frac(0.31 + alpha)});
    pairs.push_back({detail::circle_frac(0.77), detail::circle_frac(0.77 + alpha)});
  }

  auto base = std::make_shared<CircleInterpolant>(std::move(pairs));
  out.map.family = MapFamily::DenjoyProduct;
  out.map.alpha = alpha;
  out.map.beta = beta;
  out.map.base_circle = std::move(base);

  // raster: drop every column whose cell interval meets a gap
  const int n = res.n;
  std::vector<char> removed(size_t(n), 0);
  for (int k = -M; k <= M; ++k) {
    const auto [lo, hi] = gap_bounds(k);
    const int64_t first = int64_t(std::floor(lo * n));
    const int64_t last = int64_t(std::ceil(hi * n)) - 1;
    for (int64_t cc = first; cc <= last; ++cc)
      removed[size_t(((cc % n) + n) % n)] = 1;
  }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (!removed[size_t(i)]) out.set.set(i, j);
  return out;
}

}  // namespace torustop
