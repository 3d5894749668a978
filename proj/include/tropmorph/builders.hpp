#pragma once

/**
 * @file builders.hpp
 * @brief Matrices built from structuring functions on 1-D/2-D grids.
 *
 * Column j of the matrix is the structuring function placed at pixel j:
 * w_ij is the weight of the offset from j to i. Grids are flattened
 * column-major, so pixel (r, c) of a grid with R rows has index c * R + r.
 * A 1-D signal of length n is the grid {n rows, 1 column}.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tropmorph/asticity.hpp"
#include "tropmorph/error.hpp"
#include "tropmorph/lattice.hpp"
#include "tropmorph/matrix.hpp"

namespace tropmorph {

struct GridShape {
  std::size_t rows = 0;
  std::size_t cols = 1;

  std::size_t size() const noexcept { return rows * cols; }
  std::size_t index(std::size_t r, std::size_t c) const noexcept { return c * rows + r; }
  friend bool operator==(const GridShape&, const GridShape&) = default;
};

struct Offset {
  long dr = 0;
  long dc = 0;
  friend auto operator<=>(const Offset&, const Offset&) = default;
};

struct StructuringFunction {
  std::vector<Offset> offsets;
  std::vector<double> weights;
};

enum class Boundary { kClip, kWrap };

namespace detail {

inline void validate_se(const StructuringFunction& se) {
  detail::require_same_size(se.offsets.size(), se.weights.size(), "StructuringFunction");
  bool has_origin = false;
  for (std::size_t k = 0; k < se.offsets.size(); ++k) {
    const double w = se.weights[k];
    if (!std::isfinite(w) || w > 0.0) {
      throw InputError("structuring function weights must be finite and <= 0");
    }
    if (se.offsets[k] == Offset{}) {
      if (w != 0.0) throw InputError("structuring function must have weight 0 at the origin");
      has_origin = true;
    }
  }
  if (!has_origin) throw InputError("structuring function must contain the origin with weight 0");
}

inline long wrap(long v, std::size_t extent) {
  const long m = static_cast<long>(extent);
  return ((v % m) + m) % m;
}

}  // namespace detail

/**
 * w_ij = weight of offset (i - j) when pixel i lies in the grid. With
 * Boundary::kClip out-of-grid offsets are dropped; with kWrap they wrap
 * around (colliding offsets keep the larger weight). The result is CMW.
 */
inline MaxPlusMatrix build_matrix_from_se(const StructuringFunction& se, const GridShape& shape,
                                          const LatticeConfig& cfg,
                                          Boundary boundary = Boundary::kClip) {
  detail::validate_se(se);
  detail::require_same_size(shape.size(), cfg.n(), "build_matrix_from_se");
  std::map<std::pair<std::size_t, std::size_t>, double> cells;
  for (std::size_t c = 0; c < shape.cols; ++c) {
    for (std::size_t r = 0; r < shape.rows; ++r) {
      const std::size_t j = shape.index(r, c);
      for (std::size_t k = 0; k < se.offsets.size(); ++k) {
        long rr = static_cast<long>(r) + se.offsets[k].dr;
        long cc = static_cast<long>(c) + se.offsets[k].dc;
        if (boundary == Boundary::kWrap) {
          rr = detail::wrap(rr, shape.rows);
          cc = detail::wrap(cc, shape.cols);
        } else if (rr < 0 || cc < 0 || rr >= static_cast<long>(shape.rows) ||
                   cc >= static_cast<long>(shape.cols)) {
          continue;
        }
        const std::size_t i = shape.index(static_cast<std::size_t>(rr), static_cast<std::size_t>(cc));
        auto [it, inserted] = cells.try_emplace({i, j}, se.weights[k]);
        if (!inserted) it->second = std::max(it->second, se.weights[k]);
      }
    }
  }
  std::vector<Triplet> t;
  t.reserve(cells.size());
  for (const auto& [ij, w] : cells) t.push_back({ij.first, ij.second, w});
  MaxPlusMatrix m = MaxPlusMatrix::from_triplets(cfg.n(), std::move(t));
  if (!is_cmw(m)) throw Error("build_matrix_from_se: result is not CMW");
  return m;
}

/// Offsets of the 4- or 8-neighborhood, origin excluded.
inline std::vector<Offset> grid_neighbors(int connectivity) {
  if (connectivity == 4) return {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
  if (connectivity == 8) {
    return {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1}};
  }
  throw InputError("neighborhood must be 4 or 8, got " + std::to_string(connectivity));
}

/// Flat structuring function: the origin plus the 4- or 8-neighborhood, all weights 0.
inline StructuringFunction flat_neighborhood(int connectivity) {
  StructuringFunction se{{Offset{}}, {0.0}};
  for (const auto& o : grid_neighbors(connectivity)) {
    se.offsets.push_back(o);
    se.weights.push_back(0.0);
  }
  return se;
}

/**
 * Input-adapted weights: w_ii = 0 and w_ij = -λ |g_i - g_j| for grid
 * neighbors i, j of the guide image (values column-major). Symmetric and CMW.
 */
inline MaxPlusMatrix build_matrix_adaptive(std::span<const double> guide, const GridShape& shape,
                                           double lambda, int connectivity,
                                           const LatticeConfig& cfg) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InputError("lambda must be >= 0");
  detail::require_same_size(guide.size(), shape.size(), "build_matrix_adaptive");
  detail::require_same_size(shape.size(), cfg.n(), "build_matrix_adaptive");
  const auto neighbors = grid_neighbors(connectivity);
  std::vector<Triplet> t;
  t.reserve(shape.size() * (neighbors.size() + 1));
  for (std::size_t c = 0; c < shape.cols; ++c) {
    for (std::size_t r = 0; r < shape.rows; ++r) {
      const std::size_t i = shape.index(r, c);
      t.push_back({i, i, 0.0});
      for (const auto& o : neighbors) {
        const long rr = static_cast<long>(r) + o.dr;
        const long cc = static_cast<long>(c) + o.dc;
        if (rr < 0 || cc < 0 || rr >= static_cast<long>(shape.rows) ||
            cc >= static_cast<long>(shape.cols)) {
          continue;
        }
        const std::size_t j = shape.index(static_cast<std::size_t>(rr), static_cast<std::size_t>(cc));
        // -0.0 would read back as a distinct value; keep flat edges at +0.
        t.push_back({i, j, 0.0 - lambda * std::fabs(guide[i] - guide[j]) + 0.0});
      }
    }
  }
  MaxPlusMatrix m = MaxPlusMatrix::from_triplets(cfg.n(), std::move(t));
  if (!m.is_symmetric() || !is_cmw(m)) {
    throw Error("build_matrix_adaptive: result is not a symmetric CMW matrix");
  }
  return m;
}

}  // namespace tropmorph
