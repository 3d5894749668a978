#pragma once

/**
 * @file matrix.hpp
 * @brief Sparse square matrices over the max-plus semiring and their kernels.
 *
 * Rows are stored compressed (CSR). An entry that is not stored is -infinity;
 * stored weights are always finite and column indices within a row are
 * strictly increasing. Matrices are immutable values once built.
 */

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tropmorph/error.hpp"
#include "tropmorph/scalar.hpp"

namespace tropmorph {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double weight;
};

class MaxPlusMatrix {
 public:
  struct Entry {
    std::size_t col;
    double weight;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  MaxPlusMatrix() = default;

  /// The n x n matrix with every entry -infinity.
  explicit MaxPlusMatrix(std::size_t n) : n_(n), offsets_(n + 1, 0) {}

  /// E_n: 0 on the diagonal, -infinity elsewhere.
  static MaxPlusMatrix identity(std::size_t n) {
    MaxPlusMatrix m(n);
    m.entries_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      m.entries_.push_back({i, 0.0});
      m.offsets_[i + 1] = i + 1;
    }
    return m;
  }

  /// I_u: every entry equal to u (all absent when u is -infinity).
  static MaxPlusMatrix constant(std::size_t n, ExtendedReal u) {
    if (is_bottom(u)) return MaxPlusMatrix(n);
    check_weight(u, 0, 0);
    MaxPlusMatrix m(n);
    m.entries_.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m.entries_.push_back({j, u});
      m.offsets_[i + 1] = m.entries_.size();
    }
    return m;
  }

  /// Builds from (row, col, weight) records. -infinity weights are skipped;
  /// duplicates, +infinity, NaN and out-of-range indices are rejected.
  static MaxPlusMatrix from_triplets(std::size_t n, std::vector<Triplet> triplets) {
    for (const auto& t : triplets) {
      if (t.row >= n || t.col >= n) {
        throw DimensionError("entry (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                             ") out of range for n=" + std::to_string(n));
      }
    }
    std::erase_if(triplets, [](const Triplet& t) { return is_bottom(t.weight); });
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& l, const Triplet& r) {
      return l.row != r.row ? l.row < r.row : l.col < r.col;
    });
    MaxPlusMatrix m(n);
    m.entries_.reserve(triplets.size());
    for (std::size_t k = 0; k < triplets.size(); ++k) {
      const auto& t = triplets[k];
      if (k > 0 && triplets[k - 1].row == t.row && triplets[k - 1].col == t.col) {
        throw InputError("duplicate entry (" + std::to_string(t.row) + ", " +
                         std::to_string(t.col) + ")");
      }
      check_weight(t.weight, t.row, t.col);
      m.entries_.push_back({t.col, t.weight});
      ++m.offsets_[t.row + 1];
    }
    for (std::size_t i = 0; i < n; ++i) m.offsets_[i + 1] += m.offsets_[i];
    return m;
  }

  /// Builds from a dense row-major table; -infinity cells become absent.
  static MaxPlusMatrix from_dense(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    std::vector<Triplet> triplets;
    for (std::size_t i = 0; i < n; ++i) {
      detail::require_same_size(rows[i].size(), n, "MaxPlusMatrix::from_dense");
      for (std::size_t j = 0; j < n; ++j) triplets.push_back({i, j, rows[i][j]});
    }
    return from_triplets(n, std::move(triplets));
  }

  /// Assembles directly from canonical rows (sorted, finite). Used by kernels.
  static MaxPlusMatrix from_rows(std::size_t n, std::vector<std::size_t> offsets,
                                 std::vector<Entry> entries) {
    MaxPlusMatrix m;
    m.n_ = n;
    m.offsets_ = std::move(offsets);
    m.entries_ = std::move(entries);
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  std::size_t nnz() const noexcept { return entries_.size(); }

  std::span<const Entry> row(std::size_t i) const {
    return {entries_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  std::span<const Entry> entries() const noexcept { return entries_; }

  ExtendedReal at(std::size_t i, std::size_t j) const {
    const auto r = row(i);
    const auto it = std::lower_bound(r.begin(), r.end(), j,
                                     [](const Entry& e, std::size_t c) { return e.col < c; });
    return (it != r.end() && it->col == j) ? it->weight : kBottom;
  }

  MaxPlusMatrix transpose() const {
    std::vector<std::size_t> offsets(n_ + 1, 0);
    for (const auto& e : entries_) ++offsets[e.col + 1];
    for (std::size_t i = 0; i < n_; ++i) offsets[i + 1] += offsets[i];
    std::vector<Entry> out(entries_.size());
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (std::size_t i = 0; i < n_; ++i) {
      for (const auto& e : row(i)) out[cursor[e.col]++] = {i, e.weight};
    }
    return from_rows(n_, std::move(offsets), std::move(out));
  }

  std::vector<std::vector<double>> to_dense() const {
    std::vector<std::vector<double>> out(n_, std::vector<double>(n_, kBottom));
    for (std::size_t i = 0; i < n_; ++i) {
      for (const auto& e : row(i)) out[i][e.col] = e.weight;
    }
    return out;
  }

  bool is_integral() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Entry& e) { return is_integral_value(e.weight); });
  }

  /// Exact comparison when both matrices are integral, kDefaultTolerance otherwise.
  double tolerance() const noexcept { return is_integral() ? 0.0 : kDefaultTolerance; }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < n_; ++i) {
      for (const auto& e : row(i)) {
        if (at(e.col, i) != e.weight) return false;
      }
    }
    return true;
  }

  /// Keeps the entries for which keep(row, col, weight) holds.
  template <class Predicate>
  MaxPlusMatrix filter(Predicate keep) const {
    std::vector<std::size_t> offsets(n_ + 1, 0);
    std::vector<Entry> out;
    out.reserve(entries_.size());
    for (std::size_t i = 0; i < n_; ++i) {
      for (const auto& e : row(i)) {
        if (keep(i, e.col, e.weight)) out.push_back(e);
      }
      offsets[i + 1] = out.size();
    }
    return from_rows(n_, std::move(offsets), std::move(out));
  }

  friend bool operator==(const MaxPlusMatrix& lhs, const MaxPlusMatrix& rhs) {
    return lhs.n_ == rhs.n_ && lhs.offsets_ == rhs.offsets_ && lhs.entries_ == rhs.entries_;
  }

 private:
  static void check_weight(double w, std::size_t i, std::size_t j) {
    if (!std::isfinite(w)) {
      throw InputError("weight at (" + std::to_string(i) + ", " + std::to_string(j) +
                       ") must be finite or -inf");
    }
  }

  std::size_t n_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Entry> entries_;
};

/// Entrywise comparison with an absolute tolerance (absent == absent).
inline bool approx_equal(const MaxPlusMatrix& lhs, const MaxPlusMatrix& rhs, double tol) {
  if (lhs.size() != rhs.size()) return false;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    const auto l = lhs.row(i);
    const auto r = rhs.row(i);
    std::size_t p = 0, q = 0;
    while (p < l.size() || q < r.size()) {
      if (q == r.size() || (p < l.size() && l[p].col < r[q].col)) return false;
      if (p == l.size() || r[q].col < l[p].col) return false;
      if (!near(l[p].weight, r[q].weight, tol)) return false;
      ++p;
      ++q;
    }
  }
  return true;
}

/// (W ⊗ x)_i = max_j w_ij + x_j.
inline std::vector<ExtendedReal> mp_mat_vec(const MaxPlusMatrix& w, std::span<const ExtendedReal> x) {
  detail::require_same_size(w.size(), x.size(), "mp_mat_vec");
  std::vector<ExtendedReal> out(w.size(), kBottom);
  for (std::size_t i = 0; i < w.size(); ++i) {
    ExtendedReal acc = kBottom;
    for (const auto& e : w.row(i)) acc = oplus(acc, otimes(e.weight, x[e.col]));
    out[i] = acc;
  }
  return out;
}

/**
 * Sparse max-plus product (Gustavson row-by-row with a dense accumulator).
 *
 * When @p prune_at is set, entries <= *prune_at are dropped from the result.
 * For doubly-0-astic operands and prune_at = a - b this keeps the represented
 * dilation on [a,b]^n unchanged while bounding fill-in.
 */
inline MaxPlusMatrix mp_mat_mat(const MaxPlusMatrix& lhs, const MaxPlusMatrix& rhs,
                                std::optional<double> prune_at = std::nullopt) {
  detail::require_same_size(lhs.size(), rhs.size(), "mp_mat_mat");
  const std::size_t n = lhs.size();
  std::vector<double> acc(n, kBottom);
  std::vector<std::size_t> touched;
  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<MaxPlusMatrix::Entry> out;
  for (std::size_t i = 0; i < n; ++i) {
    touched.clear();
    for (const auto& ik : lhs.row(i)) {
      for (const auto& kj : rhs.row(ik.col)) {
        const double v = ik.weight + kj.weight;
        if (is_bottom(acc[kj.col])) {
          touched.push_back(kj.col);
          acc[kj.col] = v;
        } else if (v > acc[kj.col]) {
          acc[kj.col] = v;
        }
      }
    }
    std::sort(touched.begin(), touched.end());
    for (std::size_t j : touched) {
      if (!prune_at || acc[j] > *prune_at) out.push_back({j, acc[j]});
      acc[j] = kBottom;
    }
    offsets[i + 1] = out.size();
  }
  return MaxPlusMatrix::from_rows(n, std::move(offsets), std::move(out));
}

namespace detail {

template <class Combine>
MaxPlusMatrix merge_rows(const MaxPlusMatrix& lhs, const MaxPlusMatrix& rhs, Combine combine,
                         bool keep_unmatched) {
  const std::size_t n = lhs.size();
  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<MaxPlusMatrix::Entry> out;
  out.reserve(std::max(lhs.nnz(), rhs.nnz()));
  for (std::size_t i = 0; i < n; ++i) {
    const auto l = lhs.row(i);
    const auto r = rhs.row(i);
    std::size_t p = 0, q = 0;
    while (p < l.size() || q < r.size()) {
      if (q == r.size() || (p < l.size() && l[p].col < r[q].col)) {
        if (keep_unmatched) out.push_back(l[p]);
        ++p;
      } else if (p == l.size() || r[q].col < l[p].col) {
        if (keep_unmatched) out.push_back(r[q]);
        ++q;
      } else {
        out.push_back({l[p].col, combine(l[p].weight, r[q].weight)});
        ++p;
        ++q;
      }
    }
    offsets[i + 1] = out.size();
  }
  return MaxPlusMatrix::from_rows(n, std::move(offsets), std::move(out));
}

}  // namespace detail

/// Entrywise max; absent ∨ absent stays absent.
inline MaxPlusMatrix mp_mat_join(const MaxPlusMatrix& lhs, const MaxPlusMatrix& rhs) {
  detail::require_same_size(lhs.size(), rhs.size(), "mp_mat_join");
  return detail::merge_rows(
      lhs, rhs, [](double x, double y) { return std::max(x, y); }, true);
}

/// Entrywise min; an absent entry on either side is absent in the result.
inline MaxPlusMatrix mp_mat_meet(const MaxPlusMatrix& lhs, const MaxPlusMatrix& rhs) {
  detail::require_same_size(lhs.size(), rhs.size(), "mp_mat_meet");
  return detail::merge_rows(
      lhs, rhs, [](double x, double y) { return std::min(x, y); }, false);
}

/// p-fold ⊗-product by repeated squaring. p = 0 is rejected; use identity().
inline MaxPlusMatrix mp_mat_power(const MaxPlusMatrix& w, std::size_t p,
                                  std::optional<double> prune_at = std::nullopt) {
  if (p == 0) throw Error("mp_mat_power: exponent must be at least 1 (use identity for p = 0)");
  std::optional<MaxPlusMatrix> result;
  MaxPlusMatrix base = w;
  while (true) {
    if (p & 1U) result = result ? mp_mat_mat(*result, base, prune_at) : base;
    p >>= 1U;
    if (p == 0) break;
    base = mp_mat_mat(base, base, prune_at);
  }
  return *std::move(result);
}

/// S_p(W) = W ∨ W^2 ∨ ... ∨ W^p, computed as (E_n ∨ W)^(p-1) ⊗ W.
inline MaxPlusMatrix mp_sup_integral(const MaxPlusMatrix& w, std::size_t p,
                                     std::optional<double> prune_at = std::nullopt) {
  if (p == 0) throw Error("mp_sup_integral: p must be at least 1");
  if (p == 1) return w;
  const MaxPlusMatrix star = mp_mat_power(mp_mat_join(MaxPlusMatrix::identity(w.size()), w), p - 1,
                                          prune_at);
  return mp_mat_mat(star, w, prune_at);
}

/// λ ⊗ x: adds λ to every coordinate.
inline std::vector<ExtendedReal> scalar_shift(ExtendedReal lambda, std::span<const ExtendedReal> x) {
  std::vector<ExtendedReal> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = otimes(lambda, x[i]);
  return out;
}

}  // namespace tropmorph
