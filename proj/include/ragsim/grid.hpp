// Copyright 2026 The ragsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ragsim/objective.hpp"

namespace ragsim {

struct Cell {
  int x = 0;
  int y = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

struct Point {
  double x = 0;
  double y = 0;
};

/// Boolean grid of target ("road") cells, row-major, y grows downward.
class RoadMask {
 public:
  RoadMask() = default;
  RoadMask(int width, int height, bool fill = false)
      : width_(width), height_(height),
        cells_(static_cast<std::size_t>(width) * height, fill ? 1 : 0) {
    if (width <= 0 || height <= 0) throw std::invalid_argument("road mask must be non-empty");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  int size() const { return width_ * height_; }
  bool in_bounds(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_; }
  int index(Cell c) const { return c.y * width_ + c.x; }

  bool road(Cell c) const { return cells_[index(c)] != 0; }
  bool road(int index) const { return cells_[index] != 0; }
  void set(Cell c, bool value) { cells_[index(c)] = value ? 1 : 0; }
  void set(int index, bool value) { cells_[index] = value ? 1 : 0; }

  int road_count() const {
    int n = 0;
    for (auto v : cells_) n += v;
    return n;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> cells_;
};

/// Parses `#` (road) / `.` (empty) rows. Blank trailing lines are ignored.
inline RoadMask read_road_mask(std::istream& in) {
  std::vector<std::string> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    for (char ch : line)
      if (ch != '#' && ch != '.')
        throw std::runtime_error("road mask line " + std::to_string(line_no) +
                                 ": unexpected character '" + std::string(1, ch) + "'");
    if (!rows.empty() && line.size() != rows.front().size())
      throw std::runtime_error("road mask line " + std::to_string(line_no) +
                               ": row length " + std::to_string(line.size()) + " != " +
                               std::to_string(rows.front().size()));
    rows.push_back(line);
  }
  if (rows.empty()) throw std::runtime_error("road mask is empty");
  RoadMask mask(static_cast<int>(rows.front().size()), static_cast<int>(rows.size()));
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x) mask.set({x, y}, rows[y][x] == '#');
  return mask;
}

inline RoadMask load_road_mask(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open road mask file: " + path);
  return read_road_mask(in);
}

inline void write_road_mask(std::ostream& out, const RoadMask& mask) {
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) out << (mask.road(Cell{x, y}) ? '#' : '.');
    out << '\n';
  }
}

/// Random street network: straight corridors of the given width, horizontal
/// or vertical, each spanning between a third and all of the map, added until
/// the road fraction reaches `density`.
inline RoadMask random_road_mask(int width, int height, double density, int corridor_width,
                                 std::uint64_t seed) {
  if (density < 0 || density > 1) throw std::invalid_argument("road density must be in [0,1]");
  if (corridor_width < 1) throw std::invalid_argument("corridor width must be >= 1");
  RoadMask mask(width, height);
  std::mt19937_64 rng(seed);
  const int target = static_cast<int>(std::ceil(density * mask.size()));
  int roads = 0;
  while (roads < target) {
    bool horizontal = std::bernoulli_distribution(0.5)(rng);
    int span = horizontal ? width : height;
    int across = horizontal ? height : width;
    int offset = std::uniform_int_distribution<int>(0, std::max(0, across - corridor_width))(rng);
    int length = std::uniform_int_distribution<int>(std::max(1, span / 3), span)(rng);
    int start = std::uniform_int_distribution<int>(0, span - length)(rng);
    for (int t = start; t < start + length; ++t) {
      for (int w = 0; w < corridor_width && offset + w < across; ++w) {
        Cell c = horizontal ? Cell{t, offset + w} : Cell{offset + w, t};
        if (!mask.road(c)) {
          mask.set(c, true);
          ++roads;
        }
      }
    }
  }
  return mask;
}

/// Cells of a `fov_width` x `fov_height` rectangle centred on `center`,
/// clipped to the grid.
inline std::vector<Cell> fov_cells(const RoadMask& grid, Cell center, int fov_width, int fov_height) {
  std::vector<Cell> out;
  int x0 = center.x - fov_width / 2;
  int y0 = center.y - fov_height / 2;
  for (int y = y0; y < y0 + fov_height; ++y)
    for (int x = x0; x < x0 + fov_width; ++x)
      if (grid.in_bounds({x, y})) out.push_back({x, y});
  return out;
}

inline Cell clamp_to_grid(const RoadMask& grid, Cell c) {
  return {std::clamp(c.x, 0, grid.width() - 1), std::clamp(c.y, 0, grid.height() - 1)};
}

/// The 8 compass displacements N, E, S, W, NE, SE, NW, SW scaled by
/// `magnitude` cells.
inline std::vector<Cell> compass_moves(int magnitude) {
  const int m = magnitude;
  return {{0, -m}, {m, 0}, {0, m}, {-m, 0}, {m, -m}, {m, m}, {-m, -m}, {-m, m}};
}

/// Road-cell coverage on a grid. An element covers the road cells of its
/// footprint; f(A) counts road cells in the union.
class GridCoverageObjective final : public CoverageObjective {
 public:
  GridCoverageObjective(const RoadMask& mask, std::vector<int> action_counts,
                        const std::vector<std::vector<Cell>>& footprints)
      : CoverageObjective(std::move(action_counts), mask.size(), road_items(mask, footprints)),
        width_(mask.width()),
        height_(mask.height()),
        road_cells_(mask.road_count()) {}

  /// Each agent i at `positions[i]` has one action per displacement in
  /// `moves`; the action's footprint is the FOV rectangle around the
  /// clamped destination.
  static GridCoverageObjective from_poses(const RoadMask& mask, const std::vector<Cell>& positions,
                                          const std::vector<Cell>& moves, int fov_width,
                                          int fov_height) {
    std::vector<int> counts(positions.size(), static_cast<int>(moves.size()));
    std::vector<std::vector<Cell>> footprints;
    footprints.reserve(positions.size() * moves.size());
    for (Cell p : positions)
      for (Cell m : moves)
        footprints.push_back(fov_cells(mask, clamp_to_grid(mask, {p.x + m.x, p.y + m.y}),
                                       fov_width, fov_height));
    return GridCoverageObjective(mask, std::move(counts), footprints);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  int road_cells() const { return road_cells_; }

 private:
  static std::vector<std::vector<int>> road_items(const RoadMask& mask,
                                                  const std::vector<std::vector<Cell>>& footprints) {
    std::vector<std::vector<int>> items;
    items.reserve(footprints.size());
    for (const auto& fp : footprints) {
      std::vector<int> ids;
      for (Cell c : fp) {
        if (!mask.in_bounds(c)) throw std::out_of_range("footprint cell outside grid");
        if (mask.road(c)) ids.push_back(mask.index(c));
      }
      items.push_back(std::move(ids));
    }
    return items;
  }

  int width_;
  int height_;
  int road_cells_;
};

struct Arena {
  double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
};

/// Rasterized union-of-disks area. A raster cell counts when its centre lies
/// within `sensing_radius` of an element's disk centre; each cell contributes
/// 1/resolution^2 square metres.
class DiskCoverageObjective final : public CoverageObjective {
 public:
  DiskCoverageObjective(std::vector<int> action_counts, const std::vector<Point>& centers,
                        double sensing_radius, Arena arena, double resolution = 10.0)
      : CoverageObjective(std::move(action_counts), raster_size(arena, resolution),
                          rasterize(centers, sensing_radius, arena, resolution),
                          1.0 / (resolution * resolution)),
        sensing_radius_(sensing_radius),
        resolution_(resolution) {}

  double sensing_radius() const { return sensing_radius_; }
  double resolution() const { return resolution_; }
  double cell_size() const { return 1.0 / resolution_; }

 private:
  static int columns(Arena a, double res) { return static_cast<int>(std::ceil((a.max_x - a.min_x) * res)); }
  static int rows(Arena a, double res) { return static_cast<int>(std::ceil((a.max_y - a.min_y) * res)); }

  static int raster_size(Arena a, double res) {
    if (res <= 0) throw std::invalid_argument("resolution must be positive");
    if (a.max_x <= a.min_x || a.max_y <= a.min_y) throw std::invalid_argument("empty arena");
    return columns(a, res) * rows(a, res);
  }

  static std::vector<std::vector<int>> rasterize(const std::vector<Point>& centers, double r,
                                                 Arena a, double res) {
    if (r <= 0) throw std::invalid_argument("sensing radius must be positive");
    const int nx = columns(a, res), ny = rows(a, res);
    std::vector<std::vector<int>> out;
    out.reserve(centers.size());
    for (Point c : centers) {
      std::vector<int> ids;
      int ix0 = std::max(0, static_cast<int>(std::floor((c.x - r - a.min_x) * res)));
      int ix1 = std::min(nx - 1, static_cast<int>(std::ceil((c.x + r - a.min_x) * res)));
      int iy0 = std::max(0, static_cast<int>(std::floor((c.y - r - a.min_y) * res)));
      int iy1 = std::min(ny - 1, static_cast<int>(std::ceil((c.y + r - a.min_y) * res)));
      for (int iy = iy0; iy <= iy1; ++iy) {
        double cy = a.min_y + (iy + 0.5) / res;
        for (int ix = ix0; ix <= ix1; ++ix) {
          double cx = a.min_x + (ix + 0.5) / res;
          if ((cx - c.x) * (cx - c.x) + (cy - c.y) * (cy - c.y) <= r * r) ids.push_back(iy * nx + ix);
        }
      }
      out.push_back(std::move(ids));
    }
    return out;
  }

  double sensing_radius_;
  double resolution_;
};

}  // namespace ragsim
