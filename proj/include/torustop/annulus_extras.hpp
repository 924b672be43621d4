#pragma once

// Small helpers on strips shared by the frontier checks and tests.

#include "torustop/annulus.hpp"

namespace torustop {

// Cells of s with a dual-adjacent in-strip cell outside s.
inline StripSet strip_boundary(const StripSet& s) {
  StripSet out(s.chart(), GridResolution(s.n()), s.adjacency());
  const int h = s.height();
  const auto& steps = adjacency_steps(dual(s.adjacency()));
  s.for_each_cell([&](int x, int y) {
    for (const Vec2i& d : steps) {
      const int yy = y + int(d.y);
      if (yy < 0 || yy >= h) continue;
      if (!s.contains(s.wrapx(x + d.x), yy)) {
        out.set(x, y);
        return;
      }
    }
  });
  return out;
}

inline StripSet strip_union(const StripSet& a, const StripSet& b) {
  StripSet out = a;
  for (size_t k = 0; k < out.raw().size(); ++k)
    out.raw()[k] = uint8_t(out.raw()[k] | b.raw()[k]);
  return out;
}

inline bool strip_subset(const StripSet& a, const StripSet& b) {
  for (size_t k = 0; k < a.raw().size(); ++k)
    if (a.raw()[k] && !b.raw()[k]) return false;
  return true;
}

}  // namespace torustop
