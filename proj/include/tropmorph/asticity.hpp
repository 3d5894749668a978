#pragma once

/**
 * @file asticity.hpp
 * @brief 0-asticity classification and the equivalence classes of doubly-0-astic matrices.
 *
 * A row-0-astic matrix has every row supremum equal to 0 (dually for
 * columns). Doubly-0-astic matrices are exactly those whose dilation and
 * erosion form an adjunction on [a,b]^n. Two doubly-0-astic matrices
 * represent the same dilation iff they agree once joined with the constant
 * matrix I_{a-b}; each class is a complete lattice between a smallest
 * representative (entries <= a-b removed) and a greatest (joined with I_{a-b}).
 */

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tropmorph/error.hpp"
#include "tropmorph/lattice.hpp"
#include "tropmorph/matrix.hpp"

namespace tropmorph {

struct AsticityReport {
  bool row_0_astic = false;
  bool column_0_astic = false;
  bool doubly_0_astic = false;
  bool zero_astic = false;
  bool cmw = false;
  bool definite = false;
  /// Largest weight over circuits of length <= n (-inf when the graph is acyclic).
  ExtendedReal max_circuit_weight = kBottom;
  /// Tolerance the flags were computed with (0 for integral weights).
  double tolerance = 0.0;
};

inline std::vector<ExtendedReal> row_suprema(const MaxPlusMatrix& w) {
  std::vector<ExtendedReal> sup(w.size(), kBottom);
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (const auto& e : w.row(i)) sup[i] = std::max(sup[i], e.weight);
  }
  return sup;
}

inline std::vector<ExtendedReal> column_suprema(const MaxPlusMatrix& w) {
  std::vector<ExtendedReal> sup(w.size(), kBottom);
  for (const auto& e : w.entries()) sup[e.col] = std::max(sup[e.col], e.weight);
  return sup;
}

namespace detail {

inline std::optional<std::size_t> first_nonzero(const std::vector<ExtendedReal>& sups, double tol) {
  for (std::size_t i = 0; i < sups.size(); ++i) {
    if (!near(sups[i], 0.0, tol)) return i;
  }
  return std::nullopt;
}

}  // namespace detail

/// Index of the first row whose supremum is not 0, if any.
inline std::optional<std::size_t> first_non_zero_row(const MaxPlusMatrix& w) {
  return detail::first_nonzero(row_suprema(w), w.tolerance());
}

/// Index of the first column whose supremum is not 0, if any.
inline std::optional<std::size_t> first_non_zero_column(const MaxPlusMatrix& w) {
  return detail::first_nonzero(column_suprema(w), w.tolerance());
}

inline bool is_row_0_astic(const MaxPlusMatrix& w) { return !first_non_zero_row(w); }
inline bool is_column_0_astic(const MaxPlusMatrix& w) { return !first_non_zero_column(w); }
inline bool is_doubly_0_astic(const MaxPlusMatrix& w) {
  return is_row_0_astic(w) && is_column_0_astic(w);
}

/// Non-positive weights and a zero diagonal.
inline bool is_cmw(const MaxPlusMatrix& w) {
  const double tol = w.tolerance();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!near(w.at(i, i), 0.0, tol)) return false;
    for (const auto& e : w.row(i)) {
      if (e.weight > tol) return false;
    }
  }
  return true;
}

/// max_j (S_n(W))_jj. When no circuit is positive this is the best circuit
/// weight, since every circuit splits into elementary circuits of length <= n;
/// otherwise it is positive (closed walks may repeat a positive circuit).
inline ExtendedReal max_circuit_weight(const MaxPlusMatrix& w) {
  if (w.size() == 0) return kBottom;
  const MaxPlusMatrix s = mp_sup_integral(w, w.size());
  ExtendedReal best = kBottom;
  for (std::size_t j = 0; j < w.size(); ++j) best = std::max(best, s.at(j, j));
  return best;
}

/// Same quantity by explicit enumeration of elementary circuits. Exponential;
/// refuses n > 12.
inline ExtendedReal max_circuit_weight_enumerated(const MaxPlusMatrix& w) {
  const std::size_t n = w.size();
  if (n > 12) throw Error("max_circuit_weight_enumerated: refusing n > 12");
  ExtendedReal best = kBottom;
  std::vector<bool> on_path(n, false);
  // Circuits are enumerated once per smallest vertex `start`.
  auto dfs = [&](auto&& self, std::size_t start, std::size_t v, double weight) -> void {
    for (const auto& e : w.row(v)) {
      if (e.col == start) {
        best = std::max(best, weight + e.weight);
      } else if (e.col > start && !on_path[e.col]) {
        on_path[e.col] = true;
        self(self, start, e.col, weight + e.weight);
        on_path[e.col] = false;
      }
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    on_path[s] = true;
    dfs(dfs, s, s, 0.0);
    on_path[s] = false;
  }
  return best;
}

inline AsticityReport classify(const MaxPlusMatrix& w, const LatticeConfig& cfg) {
  detail::require_same_size(w.size(), cfg.n(), "classify");
  AsticityReport r;
  r.tolerance = w.tolerance();
  r.row_0_astic = is_row_0_astic(w);
  r.column_0_astic = is_column_0_astic(w);
  r.doubly_0_astic = r.row_0_astic && r.column_0_astic;
  ExtendedReal global = kBottom;
  for (const auto& e : w.entries()) global = std::max(global, e.weight);
  r.zero_astic = near(global, 0.0, r.tolerance);
  r.cmw = is_cmw(w);
  r.max_circuit_weight = max_circuit_weight(w);
  r.definite = near(r.max_circuit_weight, 0.0, r.tolerance);
  if (r.cmw && !r.doubly_0_astic) throw Error("classify: CMW matrix not doubly-0-astic");
  if ((r.row_0_astic || r.column_0_astic) && !r.definite) {
    throw Error("classify: 0-astic matrix reported as not definite");
  }
  return r;
}

namespace detail {

inline void require_doubly(const MaxPlusMatrix& w, const char* what) {
  if (auto row = first_non_zero_row(w)) {
    throw AsticityError(std::string(what) + ": matrix is not doubly-0-astic (row " +
                        std::to_string(*row + 1) + " supremum is not 0)");
  }
  if (auto col = first_non_zero_column(w)) {
    throw AsticityError(std::string(what) + ": matrix is not doubly-0-astic (column " +
                        std::to_string(*col + 1) + " supremum is not 0)");
  }
}

}  // namespace detail

/// Greatest element of the class: W ∨ I_{a-b}.
inline MaxPlusMatrix canonical_upper(const MaxPlusMatrix& w, const LatticeConfig& cfg) {
  detail::require_same_size(w.size(), cfg.n(), "canonical_upper");
  detail::require_doubly(w, "canonical_upper");
  return mp_mat_join(w, MaxPlusMatrix::constant(w.size(), cfg.prune_threshold()));
}

/// Smallest element of the class: entries <= a-b removed.
inline MaxPlusMatrix canonical_lower(const MaxPlusMatrix& w, const LatticeConfig& cfg) {
  detail::require_same_size(w.size(), cfg.n(), "canonical_lower");
  detail::require_doubly(w, "canonical_lower");
  const double threshold = cfg.prune_threshold();
  return w.filter([threshold](std::size_t, std::size_t, double v) { return v > threshold; });
}

/// M ~ W iff both represent the same dilation on [a,b]^n.
inline bool equivalent(const MaxPlusMatrix& m, const MaxPlusMatrix& w, const LatticeConfig& cfg) {
  detail::require_same_size(m.size(), w.size(), "equivalent");
  const double tol = std::max(m.tolerance(), w.tolerance());
  return approx_equal(canonical_upper(m, cfg), canonical_upper(w, cfg), tol);
}

/// Entrywise max of two equivalent matrices; stays in the class.
inline MaxPlusMatrix class_join(const MaxPlusMatrix& m, const MaxPlusMatrix& w,
                                const LatticeConfig& cfg) {
  if (!equivalent(m, w, cfg)) throw AsticityError("class_join: matrices are not equivalent");
  MaxPlusMatrix out = mp_mat_join(m, w);
  if (!equivalent(out, w, cfg)) throw Error("class_join: result left the equivalence class");
  return out;
}

/// Entrywise min of two equivalent matrices; stays in the class.
inline MaxPlusMatrix class_meet(const MaxPlusMatrix& m, const MaxPlusMatrix& w,
                                const LatticeConfig& cfg) {
  if (!equivalent(m, w, cfg)) throw AsticityError("class_meet: matrices are not equivalent");
  MaxPlusMatrix out = mp_mat_meet(m, w);
  if (!equivalent(out, w, cfg)) throw Error("class_meet: result left the equivalence class");
  return out;
}

}  // namespace tropmorph
