#pragma once

/**
 * @file spectral.hpp
 * @brief Max-plus spectral objects of definite matrices.
 *
 * For a definite W (every circuit weight <= 0, some circuit of weight 0) the
 * metric matrix Δ(W) = S_n(W) holds the best weight over all paths. Vertex j
 * is an eigen-node iff Δ_jj = 0; two eigen-nodes are equivalent iff a
 * zero-weight circuit passes through both, i.e. Δ_ij + Δ_ji = 0. Columns of Δ
 * at eigen-nodes are the fundamental eigenvectors, all with eigenvalue 0, and
 * one per equivalence class spans the eigenspace.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropmorph/asticity.hpp"
#include "tropmorph/error.hpp"
#include "tropmorph/iterated.hpp"
#include "tropmorph/lattice.hpp"
#include "tropmorph/matrix.hpp"
#include "tropmorph/random.hpp"

namespace tropmorph {

/// Δ(W) = S_n(W) for definite W, via ⌈log2(n-1)⌉ squarings of E_n ∨ W and a
/// final product by W. Throws if W is not definite.
inline MaxPlusMatrix metric_matrix(const MaxPlusMatrix& w) {
  const std::size_t n = w.size();
  if (n == 0) throw DimensionError("metric_matrix: empty matrix");
  MaxPlusMatrix delta = w;
  if (n > 1) {
    // (E ∨ W)^m = S_m ∨ E; lengths beyond n add nothing once circuits are <= 0.
    MaxPlusMatrix star = mp_mat_join(MaxPlusMatrix::identity(n), w);
    for (std::size_t m = 1; m < n - 1; m *= 2) star = mp_mat_mat(star, star);
    delta = mp_mat_mat(star, w);
  }
  ExtendedReal best = kBottom;
  for (std::size_t j = 0; j < n; ++j) best = std::max(best, delta.at(j, j));
  if (!near(best, 0.0, w.tolerance())) {
    throw AsticityError("metric_matrix: matrix is not definite (best circuit weight " +
                        format_real(best) + ")");
  }
  return delta;
}

struct ApproximateMetric {
  MaxPlusMatrix matrix;
  /// Path length bound actually used.
  std::size_t p = 0;
};

/// S_p(W) pruned at a - b, standing in for Δ(W) when n is too large. The
/// openings G^[p] decrease towards G^[n] as p grows.
inline ApproximateMetric approximate_metric(const MaxPlusMatrix& w, const LatticeConfig& cfg,
                                            std::size_t p) {
  detail::require_same_size(w.size(), cfg.n(), "approximate_metric");
  detail::require_doubly(w, "approximate_metric");
  p = std::min(p, w.size());
  return {mp_sup_integral(w, p, cfg.prune_threshold()), p};
}

struct SpectralDecomposition {
  MaxPlusMatrix base;
  MaxPlusMatrix metric;
  std::vector<std::size_t> eigen_nodes;
  /// Equivalence classes of eigen-nodes, each sorted, ordered by smallest member.
  std::vector<std::vector<std::size_t>> classes;
  double tolerance = 0.0;
};

namespace detail {

inline SpectralDecomposition decompose_from_metric(const MaxPlusMatrix& w, MaxPlusMatrix metric) {
  SpectralDecomposition dec{w, std::move(metric), {}, {}, w.tolerance()};
  const std::size_t n = w.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (near(dec.metric.at(j, j), 0.0, dec.tolerance)) dec.eigen_nodes.push_back(j);
  }
  std::vector<bool> assigned(n, false);
  for (std::size_t i : dec.eigen_nodes) {
    if (assigned[i]) continue;
    std::vector<std::size_t> cls;
    for (std::size_t j : dec.eigen_nodes) {
      if (!assigned[j] &&
          near(otimes(dec.metric.at(i, j), dec.metric.at(j, i)), 0.0, dec.tolerance)) {
        assigned[j] = true;
        cls.push_back(j);
      }
    }
    dec.classes.push_back(std::move(cls));
  }
  return dec;
}

}  // namespace detail

/// Exact decomposition; W must be definite.
inline SpectralDecomposition decompose(const MaxPlusMatrix& w) {
  return detail::decompose_from_metric(w, metric_matrix(w));
}

/// Decomposition read off approximate_metric(w, cfg, p). Eigen-nodes are then
/// those on zero-weight circuits of length <= p, and columns need not be fixed by W.
inline SpectralDecomposition decompose_approximate(const MaxPlusMatrix& w, const LatticeConfig& cfg,
                                                   std::size_t p) {
  return detail::decompose_from_metric(w, approximate_metric(w, cfg, p).matrix);
}

inline const std::vector<std::size_t>& eigen_nodes(const SpectralDecomposition& dec) {
  return dec.eigen_nodes;
}

/// Both are eigen-nodes and some zero-weight circuit passes through both.
inline bool equivalent_nodes(const SpectralDecomposition& dec, std::size_t i, std::size_t j) {
  const std::size_t n = dec.metric.size();
  if (i >= n || j >= n) throw DimensionError("equivalent_nodes: vertex out of range");
  const auto is_eigen = [&](std::size_t v) {
    return std::binary_search(dec.eigen_nodes.begin(), dec.eigen_nodes.end(), v);
  };
  return is_eigen(i) && is_eigen(j) &&
         near(otimes(dec.metric.at(i, j), dec.metric.at(j, i)), 0.0, dec.tolerance);
}

inline std::vector<ExtendedReal> metric_column(const SpectralDecomposition& dec, std::size_t j) {
  std::vector<ExtendedReal> col(dec.metric.size());
  for (std::size_t i = 0; i < col.size(); ++i) col[i] = dec.metric.at(i, j);
  return col;
}

namespace detail {

inline bool same_vector(std::span<const ExtendedReal> l, std::span<const ExtendedReal> r, double tol) {
  if (l.size() != r.size()) return false;
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (!near(l[i], r[i], tol)) return false;
  }
  return true;
}

}  // namespace detail

struct Eigenvector {
  std::size_t node;
  std::vector<ExtendedReal> values;
};

/// Columns of Δ at every eigen-node. Each is checked to satisfy W ⊗ ξ = ξ.
inline std::vector<Eigenvector> fundamental_eigenvectors(const SpectralDecomposition& dec) {
  std::vector<Eigenvector> out;
  for (std::size_t j : dec.eigen_nodes) {
    Eigenvector xi{j, metric_column(dec, j)};
    if (!detail::same_vector(mp_mat_vec(dec.base, xi.values), xi.values, dec.tolerance)) {
      throw Error("fundamental_eigenvectors: column " + std::to_string(j + 1) +
                  " of the metric matrix is not a fixpoint of W (kernel bug)");
    }
    out.push_back(std::move(xi));
  }
  return out;
}

/// One fundamental eigenvector per class, represented by its smallest node.
inline std::vector<Eigenvector> maximal_nonequivalent_set(const SpectralDecomposition& dec) {
  std::vector<Eigenvector> out;
  for (const auto& cls : dec.classes) out.push_back({cls.front(), metric_column(dec, cls.front())});
  return out;
}

struct EigenspaceProjection {
  /// c_k = min_i (x_i - ξ_k,i), one per basis vector.
  std::vector<ExtendedReal> coefficients;
  /// ⋁_k c_k + ξ_k; always <= x.
  std::vector<ExtendedReal> reconstruction;
  bool member = false;
};

/**
 * Residuated projection onto the eigenspace (coefficients in R_max^k). The
 * reconstruction is the largest eigenspace element below x, so x is a member
 * iff it is reproduced. For x in [a,b]^n the coefficients land in [a,b]
 * automatically, so the lattice-restricted span gives the same answer.
 */
inline EigenspaceProjection eigenspace_project(const SpectralDecomposition& dec,
                                               std::span<const ExtendedReal> x) {
  detail::require_same_size(dec.metric.size(), x.size(), "eigenspace_project");
  EigenspaceProjection proj;
  proj.reconstruction.assign(x.size(), kBottom);
  for (const auto& xi : maximal_nonequivalent_set(dec)) {
    double c = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!is_bottom(xi.values[i])) c = std::min(c, x[i] - xi.values[i]);
    }
    proj.coefficients.push_back(c);
    for (std::size_t i = 0; i < x.size(); ++i) {
      proj.reconstruction[i] = oplus(proj.reconstruction[i], otimes(c, xi.values[i]));
    }
  }
  const double tol = dec.tolerance * 16.0;
  proj.member = detail::same_vector(proj.reconstruction, x, tol);
  return proj;
}

struct OpeningSplit {
  /// Part spanned by fundamental eigenvectors (eigen-node columns of Δ).
  std::vector<ExtendedReal> eigen_part;
  /// Part spanned by the remaining columns of Δ.
  std::vector<ExtendedReal> other_part;
};

/// G^[n](x) = u ∨ v with y = ε_Δ(x), u = ⋁_{j eigen} y_j + Δ_:j, v over the
/// other columns. Reporting only: the split is not unique in general.
inline OpeningSplit split_opening(const SpectralDecomposition& dec, const LatticeVector& x) {
  detail::require_same_size(dec.metric.size(), x.size(), "split_opening");
  const LatticeVector y = detail::apply_erosion(dec.metric, x);
  OpeningSplit split{std::vector<ExtendedReal>(x.size(), kBottom),
                     std::vector<ExtendedReal>(x.size(), kBottom)};
  for (std::size_t j = 0; j < x.size(); ++j) {
    const bool eigen = std::binary_search(dec.eigen_nodes.begin(), dec.eigen_nodes.end(), j);
    auto& target = eigen ? split.eigen_part : split.other_part;
    for (std::size_t i = 0; i < x.size(); ++i) {
      target[i] = oplus(target[i], otimes(y[j], dec.metric.at(i, j)));
    }
  }
  return split;
}

struct SymmetricConsequencesReport {
  bool holds = false;
  bool metric_idempotent = false;      // Δ ⊗ Δ = Δ
  bool metric_diagonal_zero = false;   // every vertex is an eigen-node
  bool erosion_is_opening = true;      // E^[n] = G^[n] on samples
  bool invariants_are_eigenspace = true;  // G^[n](x) members; members are fixpoints
  std::size_t samples = 0;
  std::vector<std::string> violations;
};

/**
 * Consequences of symmetry for a doubly-0-astic W: Δ ⊗ Δ = Δ, a zero diagonal
 * of Δ, E^[n] = G^[n], and the invariants of G^[n] being the eigenspace.
 */
inline SymmetricConsequencesReport check_symmetric_consequences(const MaxPlusMatrix& w,
                                                                const LatticeConfig& cfg,
                                                                std::size_t trials,
                                                                std::uint64_t seed) {
  detail::require_same_size(w.size(), cfg.n(), "check_symmetric_consequences");
  if (!w.is_symmetric()) throw AsticityError("check_symmetric_consequences: matrix is not symmetric");
  detail::require_doubly(w, "check_symmetric_consequences");
  const std::size_t n = w.size();
  SymmetricConsequencesReport r;
  const SpectralDecomposition dec = decompose(w);
  const double tol = dec.tolerance * std::max(1.0, cfg.b());

  r.metric_idempotent = approx_equal(mp_mat_mat(dec.metric, dec.metric), dec.metric, tol);
  if (!r.metric_idempotent) r.violations.push_back("metric matrix is not idempotent");
  r.metric_diagonal_zero = dec.eigen_nodes.size() == n;
  if (!r.metric_diagonal_zero) r.violations.push_back("metric diagonal has a non-zero entry");

  const IteratedFamily fam(w, cfg, n);
  const auto basis = maximal_nonequivalent_set(dec);
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    ++r.samples;
    const LatticeVector x = random_lattice_vector(cfg, rng);
    const LatticeVector opened = big_g_opening(fam, n, x);
    if (!detail::same_vector(integral_erode(fam, n, x).values(), opened.values(), tol)) {
      r.erosion_is_opening = false;
      r.violations.push_back("E^[n](x) != G^[n](x)");
    }
    if (!eigenspace_project(dec, opened.values()).member) {
      r.invariants_are_eigenspace = false;
      r.violations.push_back("G^[n](x) is not in the eigenspace");
    }
    // A random member of the span with coefficients in [a, b].
    std::vector<double> v(n, kBottom);
    for (const auto& xi : basis) {
      const double c = random_lattice_vector(cfg.with_dimension(1), rng)[0];
      for (std::size_t i = 0; i < n; ++i) v[i] = oplus(v[i], otimes(c, xi.values[i]));
    }
    const LatticeVector member(std::move(v), cfg);
    if (!detail::same_vector(big_g_opening(fam, n, member).values(), member.values(), tol)) {
      r.invariants_are_eigenspace = false;
      r.violations.push_back("eigenspace member is not invariant under G^[n]");
    }
  }
  r.holds = r.violations.empty();
  return r;
}

struct EigenproblemReport {
  bool holds = false;
  /// Every fundamental eigenvector satisfies W ⊗ ξ = ξ.
  bool fundamentals_fixed = false;
  /// Equivalent eigen-nodes carry equal fundamental eigenvectors.
  bool equivalent_fundamentals_equal = false;
  /// A finite eigenvector was found in the span of the basis.
  bool finitely_soluble = false;
  /// Every finite vector found satisfied W ⊗ v = 0 + v.
  bool eigenvalue_zero = false;
  std::vector<ExtendedReal> finite_eigenvector;
  std::size_t finite_samples = 0;
};

/**
 * Checks the eigenproblem statements for a doubly-0-astic W: fundamental
 * eigenvectors are fixed by W, equivalent ones coincide, and finite
 * combinations of the basis are eigenvectors for eigenvalue 0. The all-zero
 * combination is tried first: it is finite whenever any combination is.
 */
inline EigenproblemReport check_eigenproblem(const SpectralDecomposition& dec, std::size_t trials,
                                             std::uint64_t seed) {
  detail::require_doubly(dec.base, "check_eigenproblem");
  EigenproblemReport r;
  const double tol = dec.tolerance * 16.0;
  r.fundamentals_fixed = true;
  for (std::size_t j : dec.eigen_nodes) {
    const auto xi = metric_column(dec, j);
    if (!detail::same_vector(mp_mat_vec(dec.base, xi), xi, tol)) r.fundamentals_fixed = false;
  }
  r.equivalent_fundamentals_equal = true;
  for (const auto& cls : dec.classes) {
    const auto first = metric_column(dec, cls.front());
    for (std::size_t j : cls) {
      if (!detail::same_vector(metric_column(dec, j), first, tol)) {
        r.equivalent_fundamentals_equal = false;
      }
    }
  }

  const auto basis = maximal_nonequivalent_set(dec);
  const std::size_t n = dec.metric.size();
  Rng rng(seed);
  std::uniform_int_distribution<int> coef(-5, 5);
  r.eigenvalue_zero = true;
  for (std::size_t t = 0; t <= trials; ++t) {
    std::vector<double> v(n, kBottom);
    for (const auto& xi : basis) {
      const double c = t == 0 ? 0.0 : static_cast<double>(coef(rng));
      for (std::size_t i = 0; i < n; ++i) v[i] = oplus(v[i], otimes(c, xi.values[i]));
    }
    if (std::any_of(v.begin(), v.end(), is_bottom)) continue;
    ++r.finite_samples;
    if (!detail::same_vector(mp_mat_vec(dec.base, v), v, tol)) {
      r.eigenvalue_zero = false;
    } else if (!r.finitely_soluble) {
      r.finitely_soluble = true;
      r.finite_eigenvector = v;
    }
  }
  r.holds = r.fundamentals_fixed && r.equivalent_fundamentals_equal && r.finitely_soluble &&
            r.eigenvalue_zero;
  return r;
}

}  // namespace tropmorph
