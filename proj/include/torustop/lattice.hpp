#pragma once

// Small integer linear algebra on Z^2: vectors, unimodular 2x2 matrices and
// Hermite normal forms of rank <= 2 subgroups. Everything here is exact.

#include <array>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace torustop {

struct Vec2i {
  int64_t x = 0;
  int64_t y = 0;

  friend Vec2i operator+(Vec2i a, Vec2i b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2i operator-(Vec2i a, Vec2i b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2i operator*(int64_t c, Vec2i v) { return {c * v.x, c * v.y}; }
  Vec2i operator-() const { return {-x, -y}; }
  friend bool operator==(Vec2i a, Vec2i b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(Vec2i a, Vec2i b) { return !(a == b); }
  bool is_zero() const { return x == 0 && y == 0; }
};

struct Vec2d {
  double x = 0.0;
  double y = 0.0;

  friend Vec2d operator+(Vec2d a, Vec2d b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2d operator-(Vec2d a, Vec2d b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2d operator*(double c, Vec2d v) { return {c * v.x, c * v.y}; }
};

// Column-major 2x2 integer matrix: columns are the images of e1, e2.
struct Mat2i {
  int64_t a = 1, b = 0;  // row 1: [a b]
  int64_t c = 0, d = 1;  // row 2: [c d]

  static Mat2i identity() { return {}; }

  int64_t det() const { return a * d - b * c; }

  Vec2i apply(Vec2i v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  Vec2d apply(Vec2d v) const {
    return {double(a) * v.x + double(b) * v.y, double(c) * v.x + double(d) * v.y};
  }

  friend Mat2i operator*(const Mat2i& m, const Mat2i& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
            m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }

  friend bool operator==(const Mat2i& m, const Mat2i& n) {
    return m.a == n.a && m.b == n.b && m.c == n.c && m.d == n.d;
  }

  // Exact inverse; requires det = +/-1.
  Mat2i inverse() const {
    const int64_t dt = det();
    if (dt != 1 && dt != -1) throw std::invalid_argument("matrix is not unimodular");
    return {dt * d, -dt * b, -dt * c, dt * a};
  }

  bool unimodular() const { return det() == 1 || det() == -1; }
};

inline int64_t gcd64(int64_t a, int64_t b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

inline bool is_primitive(Vec2i v) { return gcd64(v.x, v.y) == 1; }

// Sign convention used for reported homotopy vectors: first nonzero
// coordinate positive, (p,q) and -(p,q) name the same type.
inline Vec2i canonical_direction(Vec2i v) {
  if (v.x < 0 || (v.x == 0 && v.y < 0)) return -v;
  return v;
}

// Hermite normal form of the subgroup of Z^2 generated by `periods`.
// rank 0: empty basis. rank 1: single generator, primitive after the
// division by the content, canonical sign. rank 2: basis {(a,0),(b,c)}
// with a > 0, c > 0 and 0 <= b < a.
struct Hnf2 {
  int rank = 0;
  std::array<Vec2i, 2> basis{};

  friend bool operator==(const Hnf2& g, const Hnf2& h) {
    if (g.rank != h.rank) return false;
    for (int i = 0; i < g.rank; ++i)
      if (g.basis[size_t(i)] != h.basis[size_t(i)]) return false;
    return true;
  }
};

inline Hnf2 hnf_from_periods(const std::vector<Vec2i>& periods) {
  // Gaussian-style reduction with exact integer arithmetic.
  Vec2i u{0, 0}, v{0, 0};  // running generators, u "pivot" on x when possible
  auto reduce_pair = [](Vec2i& p, Vec2i& q) {
    // Euclid on the x coordinates until one vanishes.
    while (q.x != 0) {
      const int64_t t = p.x / q.x;
      p = p - t * q;
      std::swap(p, q);
    }
  };
  for (Vec2i w : periods) {
    if (w.is_zero()) continue;
    if (u.is_zero()) {
      u = w;
      continue;
    }
    // Fold w into (u, v).
    Vec2i p = u, q = w;
    reduce_pair(p, q);
    // now q.x == 0, p generates the x-span together with previous v
    u = p;
    if (q.y != 0) {
      if (v.is_zero())
        v = q;
      else
        v = {0, int64_t(gcd64(v.y, q.y))};
    }
  }
  // u may still have x == 0; merge into v.
  if (u.x == 0) {
    if (u.y != 0) v = v.is_zero() ? u : Vec2i{0, gcd64(v.y, u.y)};
    u = {0, 0};
  }
  Hnf2 out;
  if (u.is_zero() && v.is_zero()) return out;
  if (u.is_zero()) {
    out.rank = 1;
    out.basis[0] = canonical_direction({0, std::abs(v.y)});
    // rank-1 subgroups of connected-set holonomy are generated by a
    // primitive vector; normalise so the stored basis satisfies the
    // HolonomyGroup invariant.
    const int64_t g = gcd64(out.basis[0].x, out.basis[0].y);
    out.basis[0] = {out.basis[0].x / g, out.basis[0].y / g};
    return out;
  }
  if (v.is_zero()) {
    out.rank = 1;
    Vec2i w = canonical_direction(u);
    const int64_t g = gcd64(w.x, w.y);
    out.basis[0] = {w.x / g, w.y / g};
    return out;
  }
  // rank 2: u = (a, y0) with a != 0, v = (0, c).
  int64_t a = std::abs(u.x);
  int64_t c = std::abs(v.y);
  Vec2i first = u.x < 0 ? -u : u;
  int64_t b = ((first.y % c) + c) % c;
  out.rank = 2;
  out.basis[0] = {a, b};
  out.basis[1] = {0, c};
  return out;
}

// Image of a subgroup under a unimodular matrix, re-normalised.
inline Hnf2 transform(const Hnf2& g, const Mat2i& m) {
  std::vector<Vec2i> gens;
  for (int i = 0; i < g.rank; ++i) gens.push_back(m.apply(g.basis[size_t(i)]));
  return hnf_from_periods(gens);
}

// Extended gcd: returns (g, s, t) with s*a + t*b = g = gcd(a, b), g >= 0.
inline std::array<int64_t, 3> extended_gcd(int64_t a, int64_t b) {
  int64_t old_r = a, r = b;
  int64_t old_s = 1, s = 0;
  int64_t old_t = 0, t = 1;
  while (r != 0) {
    const int64_t q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
    old_t -= q * t;
    std::swap(old_t, t);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

}  // namespace torustop
