#pragma once

/**
 * @file random.hpp
 * @brief Seeded generators for matrices and lattice vectors used by the
 *        sampling checks, the property suite and the tests.
 */

#include <algorithm>
#include <cstddef>
#include <random>
#include <vector>

#include "tropmorph/lattice.hpp"
#include "tropmorph/matrix.hpp"

namespace tropmorph {

using Rng = std::mt19937_64;

struct MatrixGenOptions {
  /// Probability that an off-diagonal entry is present.
  double density = 0.4;
  /// Present weights are drawn from [min_weight, max_weight].
  double min_weight = -12.0;
  double max_weight = 0.0;
  bool integral = true;
};

namespace detail {

inline double draw_weight(Rng& rng, const MatrixGenOptions& opt) {
  if (opt.integral) {
    std::uniform_int_distribution<long> d(static_cast<long>(std::ceil(opt.min_weight)),
                                          static_cast<long>(std::floor(opt.max_weight)));
    return static_cast<double>(d(rng));
  }
  std::uniform_real_distribution<double> d(opt.min_weight, opt.max_weight);
  return d(rng);
}

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline std::size_t draw_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace detail

/// Arbitrary sparse matrix with weights in [min_weight, max_weight]; no structure imposed.
inline MaxPlusMatrix random_matrix(std::size_t n, Rng& rng, const MatrixGenOptions& opt = {}) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (detail::coin(rng, opt.density)) t.push_back({i, j, detail::draw_weight(rng, opt)});
    }
  }
  return MaxPlusMatrix::from_triplets(n, std::move(t));
}

/**
 * Random doubly-0-astic matrix: sparse non-positive weights, then a zero forced
 * into every row, then each column lacking a zero has its largest entry raised
 * to 0 (a new zero is placed when the column is empty). The repair may add
 * extra zeros to rows, which keeps them 0-astic.
 */
inline MaxPlusMatrix random_doubly_0_astic(std::size_t n, Rng& rng, MatrixGenOptions opt = {}) {
  opt.max_weight = std::min(opt.max_weight, 0.0);
  auto dense = std::vector<std::vector<double>>(n, std::vector<double>(n, kBottom));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (detail::coin(rng, opt.density)) dense[i][j] = detail::draw_weight(rng, opt);
    }
    dense[i][detail::draw_index(rng, n)] = 0.0;
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t arg = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!is_bottom(dense[i][j]) && (arg == n || dense[i][j] > dense[arg][j])) arg = i;
    }
    if (arg == n) arg = detail::draw_index(rng, n);
    dense[arg][j] = 0.0;
  }
  return MaxPlusMatrix::from_dense(dense);
}

/// Random CMW matrix: zero diagonal, sparse non-positive off-diagonal weights.
inline MaxPlusMatrix random_cmw(std::size_t n, Rng& rng, MatrixGenOptions opt = {}) {
  opt.max_weight = std::min(opt.max_weight, 0.0);
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        t.push_back({i, i, 0.0});
      } else if (detail::coin(rng, opt.density)) {
        t.push_back({i, j, detail::draw_weight(rng, opt)});
      }
    }
  }
  return MaxPlusMatrix::from_triplets(n, std::move(t));
}

/// Random symmetric doubly-0-astic matrix (not necessarily CMW: the diagonal
/// may be negative or absent).
inline MaxPlusMatrix random_symmetric_doubly_0_astic(std::size_t n, Rng& rng,
                                                     MatrixGenOptions opt = {}) {
  opt.max_weight = std::min(opt.max_weight, 0.0);
  auto dense = std::vector<std::vector<double>>(n, std::vector<double>(n, kBottom));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (detail::coin(rng, opt.density)) dense[i][j] = dense[j][i] = detail::draw_weight(rng, opt);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::find(dense[i].begin(), dense[i].end(), 0.0) == dense[i].end()) {
      const std::size_t j = detail::draw_index(rng, n);
      dense[i][j] = dense[j][i] = 0.0;
    }
  }
  return MaxPlusMatrix::from_dense(dense);
}

/// Row-0-astic matrix with at least one column whose supremum is below 0.
/// Requires n >= 2.
inline MaxPlusMatrix random_row_0_astic_only(std::size_t n, Rng& rng, MatrixGenOptions opt = {}) {
  if (n < 2) throw Error("random_row_0_astic_only: need n >= 2");
  opt.max_weight = std::min(opt.max_weight, -1.0);
  const std::size_t starved = detail::draw_index(rng, n);
  auto dense = std::vector<std::vector<double>>(n, std::vector<double>(n, kBottom));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (detail::coin(rng, opt.density)) dense[i][j] = detail::draw_weight(rng, opt);
    }
    std::size_t z = detail::draw_index(rng, n - 1);
    if (z >= starved) ++z;
    dense[i][z] = 0.0;
  }
  return MaxPlusMatrix::from_dense(dense);
}

inline LatticeVector random_lattice_vector(const LatticeConfig& cfg, Rng& rng, bool integral = true) {
  std::vector<double> v(cfg.n());
  if (integral && is_integral_value(cfg.a()) && is_integral_value(cfg.b())) {
    std::uniform_int_distribution<long> d(static_cast<long>(cfg.a()), static_cast<long>(cfg.b()));
    for (auto& x : v) x = static_cast<double>(d(rng));
  } else {
    std::uniform_real_distribution<double> d(cfg.a(), cfg.b());
    for (auto& x : v) x = d(rng);
  }
  return {std::move(v), cfg};
}

}  // namespace tropmorph
