#pragma once

// Fill-in constructions. Planar window fill absorbs the complement
// components that do not reach the window frame; the torus fill lifts one
// component to a planar window (trivial holonomy) or to an annulus-chart
// strip (essential holonomy) and projects the absorbed disks back. Doubly
// essential sets fill to the whole torus directly.
//
// Every routine is also available relative to a transported lattice basis
// B in GL(2,Z): neighbors step by B*d instead of d. Running the fill of an
// index-mapped set in the transported basis must agree with index-mapping
// the ordinary fill; fill_equivariance_check compares the two paths.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "torustop/annulus.hpp"
#include "torustop/grid.hpp"
#include "torustop/holonomy.hpp"
#include "torustop/lattice.hpp"

namespace torustop {

struct PlanarFillResult {
  int width = 0;
  std::vector<uint8_t> filled;       // window mask, input plus absorbed holes
  std::vector<int32_t> absorbed;     // absorbed complement component ids
  ComponentLabeling complement;      // labeling the absorption was read from

  bool contains(int I, int J) const {
    return filled[size_t(J) * size_t(width) + size_t(I)] != 0;
  }
};

inline CoverWindow empty_window(const TorusGridSet& base, int k) {
  CoverWindow w{k, base, {}};
  w.lifted.assign(size_t(k * base.n()) * size_t(k * base.n()), 0);
  return w;
}

inline PlanarFillResult fill_planar(const CoverWindow& w) {
  const int width = w.width();
  for (int t = 0; t < width; ++t) {
    if (w.contains(t, 0) || w.contains(t, width - 1) || w.contains(0, t) ||
        w.contains(width - 1, t))
      throw pipeline_error("window exhausted");
  }
  const Adjacency comp_adj = dual(w.base.adjacency());
  const auto& steps = adjacency_steps(comp_adj);
  ComponentLabeling lab = label_components(
      w.lifted.size(), [&](size_t idx) { return w.lifted[idx] == 0; },
      [&](size_t idx, auto&& emit) {
        const int I = int(idx % size_t(width)), J = int(idx / size_t(width));
        for (const Vec2i& d : steps) {
          const int II = I + int(d.x), JJ = J + int(d.y);
          if (II >= 0 && II < width && JJ >= 0 && JJ < width)
            emit(size_t(JJ) * size_t(width) + size_t(II));
        }
      });
  std::vector<char> touches_frame(size_t(lab.count), 0);
  for (int t = 0; t < width; ++t) {
    for (const size_t idx : {size_t(t), size_t(width - 1) * size_t(width) + size_t(t),
                             size_t(t) * size_t(width), size_t(t) * size_t(width) + size_t(width - 1)}) {
      const int32_t id = lab.labels[idx];
      if (id >= 0) touches_frame[size_t(id)] = 1;
    }
  }
  PlanarFillResult out;
  out.width = width;
  out.filled = w.lifted;
  for (int32_t id = 0; id < lab.count; ++id)
    if (!touches_frame[size_t(id)]) out.absorbed.push_back(id);
  for (size_t idx = 0; idx < out.filled.size(); ++idx) {
    const int32_t id = lab.labels[idx];
    if (id >= 0 && !touches_frame[size_t(id)]) out.filled[idx] = 1;
  }
  out.complement = std::move(lab);
  return out;
}

enum class FillClass : uint8_t { BoundedDisk, UnboundedDisk, Annulus, WholeTorus };

struct TorusFillResult {
  TorusGridSet filled;
  FillClass classification = FillClass::BoundedDisk;
  Vec2i annulus_type{0, 0};
  std::vector<TorusGridSet> enclosed_disks;  // row-major order of minimal cell
};

namespace detail {

inline void sort_disks(std::vector<TorusGridSet>& disks) {
  auto min_index = [](const TorusGridSet& d) {
    for (size_t k = 0; k < d.raw().size(); ++k)
      if (d.raw()[k]) return k;
    return d.raw().size();
  };
  std::stable_sort(disks.begin(), disks.end(),
                   [&](const TorusGridSet& a, const TorusGridSet& b) {
                     return min_index(a) < min_index(b);
                   });
}

// Window fill of one trivial-holonomy component, stepping by B*d.
inline TorusFillResult fill_trivial_component(const TorusGridSet& s,
                                              const ComponentLabeling& lab, int32_t id,
                                              const Mat2i& B, int k_max) {
  const int n = s.n();
  std::vector<Vec2i> steps;
  for (const Vec2i& d : adjacency_steps(s.adjacency())) steps.push_back(B.apply(d));
  const Vec2i rep = lab.representatives[size_t(id)];

  for (int k = 2; k <= k_max; k *= 2) {
    const int width = k * n;
    const int64_t shift_x = rep.x < n / 2 ? int64_t(n) * (k / 2) : int64_t(n) * (k / 2 - 1);
    const int64_t shift_y = rep.y < n / 2 ? int64_t(n) * (k / 2) : int64_t(n) * (k / 2 - 1);
    const Vec2i start = rep + Vec2i{shift_x, shift_y};
    std::vector<uint8_t> mask(size_t(width) * size_t(width), 0);
    auto at = [&](Vec2i p) -> uint8_t& {
      return mask[size_t(p.y) * size_t(width) + size_t(p.x)];
    };
    bool touched = false;
    std::vector<Vec2i> stack{start};
    at(start) = 1;
    while (!stack.empty() && !touched) {
      const Vec2i cur = stack.back();
      stack.pop_back();
      for (const Vec2i& d : steps) {
        const Vec2i nx = cur + d;
        if (nx.x < 0 || nx.x >= width || nx.y < 0 || nx.y >= width) {
          touched = true;
          break;
        }
        if (at(nx)) continue;
        if (lab.labels[s.index(s.wrap(nx.x), s.wrap(nx.y))] != id) continue;
        if (nx.x == 0 || nx.x == width - 1 || nx.y == 0 || nx.y == width - 1) {
          touched = true;
          break;
        }
        at(nx) = 1;
        stack.push_back(nx);
      }
    }
    if (touched) continue;

    // complement of the single lift component, in the transported graph
    std::vector<Vec2i> csteps;
    for (const Vec2i& d : adjacency_steps(dual(s.adjacency()))) csteps.push_back(B.apply(d));
    ComponentLabeling clab = label_components(
        mask.size(), [&](size_t idx) { return mask[idx] == 0; },
        [&](size_t idx, auto&& emit) {
          const Vec2i p{int64_t(idx % size_t(width)), int64_t(idx / size_t(width))};
          for (const Vec2i& d : csteps) {
            const Vec2i q = p + d;
            if (q.x >= 0 && q.x < width && q.y >= 0 && q.y < width)
              emit(size_t(q.y) * size_t(width) + size_t(q.x));
          }
        });
    std::vector<char> touches_frame(size_t(clab.count), 0);
    for (int t = 0; t < width; ++t) {
      for (const size_t idx :
           {size_t(t), size_t(width - 1) * size_t(width) + size_t(t),
            size_t(t) * size_t(width), size_t(t) * size_t(width) + size_t(width - 1)}) {
        const int32_t cid = clab.labels[idx];
        if (cid >= 0) touches_frame[size_t(cid)] = 1;
      }
    }
    TorusFillResult out{TorusGridSet(s.resolution(), s.adjacency()),
                        FillClass::BoundedDisk,
                        {0, 0},
                        {}};
    for (size_t idx = 0; idx < mask.size(); ++idx)
      if (mask[idx]) {
        const Vec2i p{int64_t(idx % size_t(width)), int64_t(idx / size_t(width))};
        out.filled.set(s.wrap(p));
      }
    for (int32_t cid = 0; cid < clab.count; ++cid) {
      if (touches_frame[size_t(cid)]) continue;
      TorusGridSet disk(s.resolution(), dual(s.adjacency()));
      for (size_t idx = 0; idx < clab.labels.size(); ++idx)
        if (clab.labels[idx] == cid) {
          const Vec2i p{int64_t(idx % size_t(width)), int64_t(idx / size_t(width))};
          const Vec2i cell = s.wrap(p);
          disk.set(cell);
          out.filled.set(cell);
        }
      if (!disk.empty()) out.enclosed_disks.push_back(std::move(disk));
    }
    sort_disks(out.enclosed_disks);
    return out;
  }
  throw pipeline_error("lift window exceeded kMax (" + std::to_string(k_max) +
                       ") while filling a trivial component");
}

// Strip fill of one essential component of primitive class pq (already in
// transported coordinates when B != I).
inline TorusFillResult fill_essential_component(const TorusGridSet& s,
                                                const ComponentLabeling& lab, int32_t id,
                                                Vec2i pq, const Mat2i& B, int h_max) {
  const int n = s.n();
  const Mat2i chart = annulus_chart_basis(canonical_direction(pq));
  const Mat2i chart_inv = chart.inverse();
  std::vector<Vec2i> steps;
  for (const Vec2i& d : adjacency_steps(s.adjacency()))
    steps.push_back(chart_inv.apply(B.apply(d)));
  const Vec2i rep = lab.representatives[size_t(id)];
  const Vec2i rep_uw0 = chart_inv.apply(rep);

  for (int H = 2; H <= h_max; H *= 2) {
    const int rows = 2 * H * n;
    // copy of the representative with transverse coordinate nearest 0
    int64_t w0 = rep_uw0.y % n;
    if (w0 > n / 2) w0 -= n;
    if (w0 < -n / 2) w0 += n;
    Vec2i start{((rep_uw0.x % n) + n) % n, w0};

    std::vector<uint8_t> mask(size_t(n) * size_t(rows), 0);
    auto idx_of = [&](int64_t u, int64_t w) {
      return size_t(w + int64_t(H) * n) * size_t(n) + size_t(u);
    };
    auto wrap_u = [&](int64_t u) { return ((u % n) + n) % n; };

    bool exhausted = false;
    std::vector<Vec2i> stack{start};
    mask[idx_of(start.x, start.y)] = 1;
    while (!stack.empty() && !exhausted) {
      const Vec2i cur = stack.back();
      stack.pop_back();
      for (const Vec2i& d : steps) {
        Vec2i nx{wrap_u(cur.x + d.x), cur.y + d.y};
        if (nx.y <= -int64_t(H) * n || nx.y >= int64_t(H) * n - 1) {
          exhausted = true;
          break;
        }
        if (mask[idx_of(nx.x, nx.y)]) continue;
        const Vec2i cell = s.wrap(chart.apply(nx));
        if (lab.labels[s.index(int(cell.x), int(cell.y))] != id) continue;
        mask[idx_of(nx.x, nx.y)] = 1;
        stack.push_back(nx);
      }
    }
    if (exhausted) continue;

    // complement components within the strip, in the transported graph;
    // keep the ones reaching an end
    std::vector<Vec2i> csteps;
    for (const Vec2i& d : adjacency_steps(dual(s.adjacency())))
      csteps.push_back(chart_inv.apply(B.apply(d)));
    ComponentLabeling clab = label_components(
        mask.size(), [&](size_t idx) { return mask[idx] == 0; },
        [&](size_t idx, auto&& emit) {
          const int64_t u = int64_t(idx % size_t(n));
          const int64_t row = int64_t(idx / size_t(n));
          for (const Vec2i& d : csteps) {
            const int64_t rr = row + d.y;
            if (rr < 0 || rr >= rows) continue;
            emit(size_t(rr) * size_t(n) + size_t(wrap_u(u + d.x)));
          }
        });
    std::vector<char> reaches_end(size_t(clab.count), 0);
    for (int64_t u = 0; u < n; ++u) {
      for (const size_t idx : {size_t(u), size_t(rows - 1) * size_t(n) + size_t(u)}) {
        const int32_t cid = clab.labels[idx];
        if (cid >= 0) reaches_end[size_t(cid)] = 1;
      }
    }
    TorusFillResult out{TorusGridSet(s.resolution(), s.adjacency()), FillClass::Annulus,
                        canonical_direction(pq), {}};
    for (size_t idx = 0; idx < mask.size(); ++idx)
      if (mask[idx]) {
        const int64_t u = int64_t(idx % size_t(n));
        const int64_t w = int64_t(idx / size_t(n)) - int64_t(H) * n;
        out.filled.set(s.wrap(chart.apply(Vec2i{u, w})));
      }
    std::vector<TorusGridSet> disks;
    for (int32_t cid = 0; cid < clab.count; ++cid) {
      if (reaches_end[size_t(cid)]) continue;
      TorusGridSet disk(s.resolution(), dual(s.adjacency()));
      for (size_t idx = 0; idx < clab.labels.size(); ++idx)
        if (clab.labels[idx] == cid) {
          const int64_t u = int64_t(idx % size_t(n));
          const int64_t w = int64_t(idx / size_t(n)) - int64_t(H) * n;
          const Vec2i cell = s.wrap(chart.apply(Vec2i{u, w}));
          disk.set(cell);
          out.filled.set(cell);
        }
      if (!disk.empty()) disks.push_back(std::move(disk));
    }
    sort_disks(disks);
    out.enclosed_disks = std::move(disks);
    return out;
  }
  throw pipeline_error("lift window exceeded kMax (" + std::to_string(h_max) +
                       ") while filling an essential component");
}

inline TorusFillResult fill_component_core(const TorusGridSet& s,
                                           const ComponentLabeling& lab, int32_t id,
                                           const Mat2i& B, int k_max) {
  const HolonomyGroup g = component_holonomy(s, lab, id, B);
  if (g.rank == 2) {
    TorusFillResult out{TorusGridSet::full(s.resolution(), s.adjacency()),
                        FillClass::WholeTorus,
                        {0, 0},
                        {}};
    // the whole complement is swallowed; report its pieces as the disks
    const TorusGridSet comp = complement(component_cells(s, lab, id));
    const ComponentLabeling clab = connected_components_in_basis(comp, B);
    for (int32_t cid = 0; cid < clab.count; ++cid)
      out.enclosed_disks.push_back(component_cells(comp, clab, cid));
    sort_disks(out.enclosed_disks);
    return out;
  }
  if (g.rank == 1) return fill_essential_component(s, lab, id, g.basis[0], B, k_max);
  return fill_trivial_component(s, lab, id, B, k_max);
}

}  // namespace detail

// Fill of a torus set in a transported lattice basis. B = identity is the
// ordinary fill. Disconnected input (allowed only when connectedness is not
// required) is filled component by component.
inline TorusFillResult fill_torus_in_basis(const TorusGridSet& a, bool connectedness_required,
                                           const Mat2i& B, int k_max = 16) {
  if (a.empty())
    return {TorusGridSet(a.resolution(), a.adjacency()), FillClass::BoundedDisk, {0, 0}, {}};
  const ComponentLabeling lab = connected_components_in_basis(a, B);
  if (lab.count > 1 && connectedness_required)
    throw std::invalid_argument("fill_torus: input not connected");
  if (lab.count == 1) return detail::fill_component_core(a, lab, 0, B, k_max);

  TorusFillResult merged{TorusGridSet(a.resolution(), a.adjacency()), FillClass::BoundedDisk,
                         {0, 0}, {}};
  for (int32_t id = 0; id < lab.count; ++id) {
    TorusFillResult one = detail::fill_component_core(a, lab, id, B, k_max);
    merged.filled = set_union(merged.filled, one.filled);
    if (one.classification == FillClass::WholeTorus) {
      merged.classification = FillClass::WholeTorus;
    } else if (one.classification == FillClass::Annulus &&
               merged.classification != FillClass::WholeTorus) {
      merged.classification = FillClass::Annulus;
      merged.annulus_type = one.annulus_type;
    }
    for (auto& d : one.enclosed_disks) merged.enclosed_disks.push_back(std::move(d));
  }
  detail::sort_disks(merged.enclosed_disks);
  return merged;
}

inline TorusFillResult fill_torus(const TorusGridSet& a, bool connectedness_required = false,
                                  int k_max = 16) {
  return fill_torus_in_basis(a, connectedness_required, Mat2i::identity(), k_max);
}

// sigma(fill(a)) computed by the ordinary route must equal fill(sigma(a))
// computed in the transported basis.
inline bool fill_equivariance_check(const TorusGridSet& a, const Mat2i& sigma,
                                    int k_max = 16) {
  if (!sigma.unimodular())
    throw std::invalid_argument("fill_equivariance_check: sigma must be unimodular");
  const TorusGridSet side1 =
      apply_index_map(fill_torus_in_basis(a, false, Mat2i::identity(), k_max).filled, sigma);
  const TorusGridSet side2 =
      fill_torus_in_basis(apply_index_map(a, sigma), false, sigma, k_max).filled;
  return side1.same_cells(side2);
}

// Lemma-style probe: lift every copy of every disk that fits strictly inside
// the window, fill them, and test that the window complement stays connected.
inline bool disjoint_disks_complement_connected(const std::vector<TorusGridSet>& disks,
                                                int k) {
  if (disks.empty()) return true;
  const int n = disks[0].n();
  for (size_t i = 0; i < disks.size(); ++i)
    for (size_t j = i + 1; j < disks.size(); ++j)
      if (!sets_disjoint(disks[i], disks[j]))
        throw std::invalid_argument("disjoint_disks: disks overlap");

  const int width = k * n;
  CoverWindow w = empty_window(disks[0], k);
  for (const TorusGridSet& d : disks) {
    bool placed = false;
    for (int cy = 0; cy < k; ++cy)
      for (int cx = 0; cx < k; ++cx) {
        bool frame = false;
        d.for_each_cell([&](Vec2i c) {
          const int I = int(c.x) + cx * n, J = int(c.y) + cy * n;
          if (I == 0 || I == width - 1 || J == 0 || J == width - 1) frame = true;
        });
        if (frame) continue;
        d.for_each_cell([&](Vec2i c) {
          w.lifted[w.index(int(c.x) + cx * n, int(c.y) + cy * n)] = 1;
        });
        placed = true;
      }
    if (!placed) throw pipeline_error("window exhausted");
  }
  const PlanarFillResult pf = fill_planar(w);
  const auto& steps = adjacency_steps(dual(disks[0].adjacency()));
  const ComponentLabeling lab = label_components(
      pf.filled.size(), [&](size_t idx) { return pf.filled[idx] == 0; },
      [&](size_t idx, auto&& emit) {
        const int I = int(idx % size_t(width)), J = int(idx / size_t(width));
        for (const Vec2i& d : steps) {
          const int II = I + int(d.x), JJ = J + int(d.y);
          if (II >= 0 && II < width && JJ >= 0 && JJ < width)
            emit(size_t(JJ) * size_t(width) + size_t(II));
        }
      });
  return lab.count == 1;
}

// Complement census of a compact (Eight-adjacent) set with trivial pieces
// must contain a doubly essential component; false marks a bug upstream.
inline bool bounded_complement_doubly_essential(const TorusGridSet& a) {
  if (a.adjacency() != Adjacency::Eight)
    throw std::invalid_argument("bounded_complement: set must be Eight-adjacent");
  for (const CensusEntry& e : set_homotopy_census(a))
    if (e.type.tag != HomotopyTag::Trivial)
      throw std::invalid_argument("bounded_complement: set has an essential component");
  for (const CensusEntry& e : set_homotopy_census(complement(a)))
    if (e.type.tag == HomotopyTag::DoublyEssential) return true;
  return false;
}

}  // namespace torustop
