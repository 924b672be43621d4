#pragma once

// Orbit-closure rasterisation, the approximate minimality certificate and
// the induced dynamics on complement components.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "torustop/grid.hpp"
#include "torustop/maps.hpp"

namespace torustop {

struct OrbitRaster {
  TorusGridSet set;
  Vec2d seed{0, 0};
  int64_t iterations = 0;
  std::optional<int64_t> stabilized_at;  // batch index after which no new cell appeared
};

inline OrbitRaster orbit_closure_raster(const TorusMapSpec& map, Vec2d seed,
                                        GridResolution res, int64_t batch,
                                        int64_t stability_window, int64_t max_iter) {
  if (batch < 1 || stability_window < 1)
    throw std::invalid_argument("orbit_closure_raster: bad batching parameters");
  OrbitRaster out{TorusGridSet(res, Adjacency::Eight), seed, 0, std::nullopt};
  const int n = res.n;
  Vec2d z{seed.x - std::floor(seed.x), seed.y - std::floor(seed.y)};
  out.set.set(point_cell(z, n));
  int64_t done = 0, batch_index = 0, last_growth_batch = 0, quiet_streak = 0;
  while (done < max_iter) {
    ++batch_index;
    const int64_t todo = std::min(batch, max_iter - done);
    bool grew = false;
    for (int64_t t = 0; t < todo; ++t) {
      z = map.eval_torus(z);
      const Vec2i c = point_cell(z, n);
      if (!out.set.contains(c)) {
        out.set.set(c);
        grew = true;
      }
    }
    done += todo;
    if (grew) {
      last_growth_batch = batch_index;
      quiet_streak = 0;
    } else if (++quiet_streak >= stability_window) {
      out.stabilized_at = last_growth_batch;
      break;
    }
  }
  out.iterations = done;
  return out;
}

struct MinimalityCertificate {
  bool passed = false;
  double worst_deficit = 0.0;
  bool invariance_ok = true;  // one-cell invariance precondition
  double epsilon = 0.0;
  int64_t orbit_length = 0;
  int64_t probes = 0;
};

// For sampled points of s, the length-L orbit raster must be eps-dense in s
// (directed Hausdorff deficit from s to the raster).
inline MinimalityCertificate minimality_check(const TorusMapSpec& map, const TorusGridSet& s,
                                              double eps, int64_t orbit_length,
                                              int64_t probes) {
  MinimalityCertificate cert;
  cert.epsilon = eps;
  cert.orbit_length = orbit_length;
  cert.probes = probes;
  if (s.empty()) throw std::invalid_argument("minimality_check: empty set");
  if (!invariant_within_one_cell(map, s)) {
    cert.invariance_ok = false;
    cert.passed = false;
    return cert;
  }
  std::vector<Vec2i> members;
  members.reserve(s.size());
  s.for_each_cell([&](Vec2i c) { members.push_back(c); });
  const int64_t count = int64_t(members.size());
  const int64_t use = std::min<int64_t>(probes, count);
  const int n = s.n();
  for (int64_t t = 0; t < use; ++t) {
    const Vec2i start = members[size_t(t * count / use)];
    TorusGridSet raster(s.resolution(), Adjacency::Eight);
    Vec2d z = s.cell_center(start);
    raster.set(point_cell(z, n));
    for (int64_t i = 0; i < orbit_length; ++i) {
      z = map.eval_torus(z);
      raster.set(point_cell(z, n));
    }
    const double deficit = directed_hausdorff(s, raster);
    cert.worst_deficit = std::max(cert.worst_deficit, deficit);
  }
  cert.passed = cert.worst_deficit <= eps;
  return cert;
}

struct ComponentVerdict {
  int32_t component_id = 0;
  bool periodic = false;
  int64_t period = 0;      // valid when periodic
  int64_t horizon = 0;     // wandering certified only up to here
  int32_t successor = -1;  // induced map on components, -1 = leaves them
};

// Induced map on complement components: each component's cell ensemble is
// pushed forward one step and matched by maximal overlap. Two targets with
// at least 40% of the image each make the matching ambiguous.
inline std::vector<ComponentVerdict> component_dynamics(const TorusMapSpec& map,
                                                        const TorusGridSet& m,
                                                        int64_t horizon) {
  if (!invariant_within_one_cell(map, m))
    throw std::invalid_argument("component_dynamics: set not invariant within one cell");
  const TorusGridSet comp = complement(m);
  const ComponentLabeling lab = connected_components(comp);
  const int n = m.n();
  constexpr int64_t kMaxEnsemble = 8192;

  std::vector<int32_t> successor(size_t(lab.count), -1);
  for (int32_t id = 0; id < lab.count; ++id) {
    std::vector<Vec2i> cells;
    comp.for_each_cell([&](Vec2i c) {
      if (lab.labels[comp.index(int(c.x), int(c.y))] == id) cells.push_back(c);
    });
    const int64_t total = int64_t(cells.size());
    const int64_t stride = std::max<int64_t>(1, total / kMaxEnsemble);
    std::vector<int64_t> overlap(size_t(lab.count), 0);
    int64_t mapped = 0;
    for (int64_t t = 0; t < total; t += stride) {
      const Vec2i img = point_cell(map.eval_torus(comp.cell_center(cells[size_t(t)])), n);
      ++mapped;
      const int32_t target = lab.labels[comp.index(int(img.x), int(img.y))];
      if (target >= 0) ++overlap[size_t(target)];
    }
    int32_t best = -1;
    int64_t best_count = 0;
    int heavy = 0;
    for (int32_t t = 0; t < lab.count; ++t) {
      if (overlap[size_t(t)] * 5 >= mapped * 2) ++heavy;  // >= 40%
      if (overlap[size_t(t)] > best_count) {
        best_count = overlap[size_t(t)];
        best = t;
      }
    }
    if (heavy >= 2)
      throw pipeline_error("component tracking ambiguous - refine grid");
    successor[size_t(id)] = best_count > 0 ? best : -1;
  }

  std::vector<ComponentVerdict> out;
  out.reserve(size_t(lab.count));
  for (int32_t id = 0; id < lab.count; ++id) {
    ComponentVerdict v;
    v.component_id = id;
    v.horizon = horizon;
    v.successor = successor[size_t(id)];
    int32_t cur = id;
    for (int64_t t = 1; t <= horizon; ++t) {
      cur = cur >= 0 ? successor[size_t(cur)] : -1;
      if (cur < 0) break;
      if (cur == id) {
        v.periodic = true;
        v.period = t;
        break;
      }
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace torustop
