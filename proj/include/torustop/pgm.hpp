#pragma once

// Binary PGM (P5) raster exchange. One byte per cell, 255 = in-set, 0 = out,
// width = height = n, image row 0 holds the cells with j = 0.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "torustop/grid.hpp"

namespace torustop {

inline void save_pgm(const TorusGridSet& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  const int n = s.n();
  out << "P5\n" << n << " " << n << "\n255\n";
  std::vector<uint8_t> row(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) row[size_t(i)] = s.contains(i, j) ? 255 : 0;
    out.write(reinterpret_cast<const char*>(row.data()), n);
  }
  if (!out) throw std::runtime_error("short write: " + path);
}

// Label image variant: arbitrary byte per cell (diagnostic rasters).
inline void save_pgm_labels(const std::vector<uint8_t>& bytes, int n,
                            const std::string& path) {
  if (bytes.size() != size_t(n) * size_t(n))
    throw std::invalid_argument("save_pgm_labels: size mismatch");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "P5\n" << n << " " << n << "\n255\n";
  out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!out) throw std::runtime_error("short write: " + path);
}

inline TorusGridSet load_pgm(const std::string& path, Adjacency adj) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string magic;
  in >> magic;
  if (magic != "P5") throw std::runtime_error("not a binary PGM (P5): " + path);
  auto next_token = [&in, &path]() -> long {
    // skip whitespace and '#' comment lines
    for (;;) {
      int c = in.peek();
      if (c == '#') {
        std::string line;
        std::getline(in, line);
      } else if (std::isspace(c)) {
        in.get();
      } else {
        break;
      }
    }
    long v = -1;
    if (!(in >> v)) throw std::runtime_error("malformed PGM header: " + path);
    return v;
  };
  const long w = next_token();
  const long h = next_token();
  const long maxval = next_token();
  if (w != h) throw std::runtime_error("raster must be square: " + path);
  if (w < 8 || (w & (w - 1)) != 0)
    throw std::runtime_error("raster side must be a power of two >= 8: " + path);
  if (maxval != 255) throw std::runtime_error("raster maxval must be 255: " + path);
  in.get();  // single whitespace after maxval
  TorusGridSet s(GridResolution(int(w)), adj);
  std::vector<uint8_t> row(static_cast<size_t>(w));
  for (long j = 0; j < h; ++j) {
    in.read(reinterpret_cast<char*>(row.data()), w);
    if (in.gcount() != w) throw std::runtime_error("truncated raster: " + path);
    for (long i = 0; i < w; ++i)
      if (row[size_t(i)] != 0) s.set(int(i), int(j));
  }
  return s;
}

}  // namespace torustop
