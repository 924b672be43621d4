#pragma once

// Holonomy of lifted components: the subgroup of Z^2 deck translations that
// stabilise one planar lift component of a torus cell set, computed by
// spanning-tree traversal. Every non-tree adjacency contributes its lift
// coordinate mismatch as a period; the group is the HNF reduction of the
// collected periods. Exact at window size 1, unlike cover labeling.

#include <cstdint>
#include <string>
#include <vector>

#include "torustop/grid.hpp"
#include "torustop/lattice.hpp"

namespace torustop {

using HolonomyGroup = Hnf2;

enum class HomotopyTag : uint8_t { Trivial, Essential, DoublyEssential };

struct HomotopyType {
  HomotopyTag tag = HomotopyTag::Trivial;
  Vec2i vector{0, 0};  // primitive, first nonzero coordinate positive

  friend bool operator==(const HomotopyType& a, const HomotopyType& b) {
    return a.tag == b.tag && (a.tag != HomotopyTag::Essential || a.vector == b.vector);
  }
  std::string to_string() const {
    switch (tag) {
      case HomotopyTag::Trivial: return "Trivial";
      case HomotopyTag::Essential:
        return "Essential(" + std::to_string(vector.x) + "," + std::to_string(vector.y) + ")";
      default: return "DoublyEssential";
    }
  }
};

// Components of s under the lattice-transported adjacency: the neighbors of
// cell c are wrap(c + B*d) for the standard steps d of s's adjacency mode.
// B = identity gives the ordinary components.
inline ComponentLabeling connected_components_in_basis(const TorusGridSet& s,
                                                       const Mat2i& basis) {
  const int n = s.n();
  std::vector<Vec2i> steps;
  for (const Vec2i& d : adjacency_steps(s.adjacency())) steps.push_back(basis.apply(d));
  ComponentLabeling lab = label_components(
      s.cell_count(), [&](size_t idx) { return s.raw()[idx] != 0; },
      [&](size_t idx, auto&& emit) {
        const Vec2i c{int64_t(idx % size_t(n)), int64_t(idx / size_t(n))};
        for (const Vec2i& d : steps) emit(s.index(s.wrap(c.x + d.x), s.wrap(c.y + d.y)));
      });
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

inline HolonomyGroup component_holonomy(const TorusGridSet& s, const ComponentLabeling& lab,
                                        int32_t component_id,
                                        const Mat2i& basis = Mat2i::identity()) {
  const int n = s.n();
  if (component_id < 0 || component_id >= lab.count)
    throw std::invalid_argument("component_holonomy: invalid component id");
  std::vector<Vec2i> steps;
  for (const Vec2i& d : adjacency_steps(s.adjacency())) steps.push_back(basis.apply(d));

  // planar lift coordinate per visited cell
  std::vector<char> visited(s.cell_count(), 0);
  std::vector<Vec2i> pos(s.cell_count());
  std::vector<Vec2i> periods;

  const Vec2i rep = lab.representatives[size_t(component_id)];
  const size_t rep_idx = s.index(int(rep.x), int(rep.y));
  visited[rep_idx] = 1;
  pos[rep_idx] = rep;
  std::vector<size_t> stack{rep_idx};
  while (!stack.empty()) {
    const size_t cur = stack.back();
    stack.pop_back();
    const Vec2i here = pos[cur];
    for (const Vec2i& d : steps) {
      const Vec2i next_pos = here + d;
      const size_t nb = s.index(s.wrap(next_pos.x), s.wrap(next_pos.y));
      if (lab.labels[nb] != component_id) continue;
      if (!visited[nb]) {
        visited[nb] = 1;
        pos[nb] = next_pos;
        stack.push_back(nb);
      } else {
        const Vec2i diff = next_pos - pos[nb];
        if (!diff.is_zero()) {
          periods.push_back({diff.x / n, diff.y / n});
          if (periods.size() > 8) {
            // fold down so the working list stays small
            const Hnf2 g = hnf_from_periods(periods);
            periods.clear();
            for (int r = 0; r < g.rank; ++r) periods.push_back(g.basis[size_t(r)]);
          }
        }
      }
    }
  }
  return hnf_from_periods(periods);
}

inline HolonomyGroup component_holonomy(const TorusGridSet& s, int32_t component_id) {
  return component_holonomy(s, connected_components(s), component_id);
}

inline HomotopyType classify_homotopy(const HolonomyGroup& g) {
  HomotopyType out;
  switch (g.rank) {
    case 0:
      out.tag = HomotopyTag::Trivial;
      break;
    case 1: {
      const Vec2i v = g.basis[0];
      if (!is_primitive(v)) throw pipeline_error("non-primitive holonomy basis");
      out.tag = HomotopyTag::Essential;
      out.vector = canonical_direction(v);
      break;
    }
    default:
      out.tag = HomotopyTag::DoublyEssential;
      break;
  }
  return out;
}

struct CensusEntry {
  int32_t component_id = 0;
  HomotopyType type;
  bool bounded = false;  // rank 0; at finite resolution Trivial <=> bounded
  int64_t cells = 0;
};

inline std::vector<CensusEntry> set_homotopy_census(const TorusGridSet& s) {
  std::vector<CensusEntry> out;
  const ComponentLabeling lab = connected_components(s);
  out.reserve(size_t(lab.count));
  for (int32_t id = 0; id < lab.count; ++id) {
    const HolonomyGroup g = component_holonomy(s, lab, id);
    CensusEntry e;
    e.component_id = id;
    e.type = classify_homotopy(g);
    e.bounded = (g.rank == 0);
    e.cells = lab.sizes[size_t(id)];
    out.push_back(e);
  }
  return out;
}

// Cell permutation induced by B in GL(2, Z) acting on indices mod n.
inline TorusGridSet apply_index_map(const TorusGridSet& s, const Mat2i& B) {
  if (!B.unimodular()) throw std::invalid_argument("index map must be unimodular");
  TorusGridSet out(s.resolution(), s.adjacency());
  s.for_each_cell([&](Vec2i c) { out.set(out.wrap(B.apply(c))); });
  return out;
}

// Coarser re-rasterisation: parent cell in iff any child cell in.
inline TorusGridSet downsample(const TorusGridSet& s, int coarse_n) {
  const int n = s.n();
  if (coarse_n > n || n % coarse_n != 0)
    throw std::invalid_argument("downsample: target must divide source resolution");
  const int f = n / coarse_n;
  TorusGridSet out(GridResolution(coarse_n), s.adjacency());
  s.for_each_cell([&](Vec2i c) { out.set(int(c.x) / f, int(c.y) / f); });
  return out;
}

}  // namespace torustop
