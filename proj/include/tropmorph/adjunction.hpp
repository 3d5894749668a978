#pragma once

/**
 * @file adjunction.hpp
 * @brief Dilations, erosions, openings and closings represented by max-plus matrices.
 *
 * For a row-0-astic W the dilation is δ_W(x) = W ⊗ x; for a column-0-astic W
 * the erosion is ε_W(y)_i = min_j (y_j - w_ji). Both map [a,b]^n into itself,
 * and (ε_W, δ_W) is an adjunction exactly when W is doubly-0-astic.
 */

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tropmorph/asticity.hpp"
#include "tropmorph/error.hpp"
#include "tropmorph/lattice.hpp"
#include "tropmorph/matrix.hpp"
#include "tropmorph/random.hpp"

namespace tropmorph {

enum class OperatorKind { kDilation, kErosion };

namespace detail {

inline void require_row_0_astic(const MaxPlusMatrix& w, const char* what) {
  if (auto row = first_non_zero_row(w)) {
    throw AsticityError(std::string(what) + ": matrix is not row-0-astic (row " +
                        std::to_string(*row + 1) + " supremum is not 0)");
  }
}

inline void require_column_0_astic(const MaxPlusMatrix& w, const char* what) {
  if (auto col = first_non_zero_column(w)) {
    throw AsticityError(std::string(what) + ": matrix is not column-0-astic (column " +
                        std::to_string(*col + 1) + " supremum is not 0)");
  }
}

inline void require_config(const MaxPlusMatrix& w, const LatticeVector& x, const char* what) {
  detail::require_same_size(w.size(), x.size(), what);
}

// Unchecked kernels. Results are clamped to [a, b] only to absorb rounding
// when weights are non-integral; for valid matrices the clamp is exact identity.
inline LatticeVector apply_dilation(const MaxPlusMatrix& w, const LatticeVector& x) {
  const auto& cfg = x.config();
  std::vector<double> out = mp_mat_vec(w, x.values());
  for (auto& v : out) v = std::clamp(v, cfg.a(), cfg.b());
  return {std::move(out), cfg};
}

// min_j (y_j - w_ji) by scattering over rows; +inf where column i is empty.
inline std::vector<double> raw_erosion(const MaxPlusMatrix& w, std::span<const double> y) {
  std::vector<double> out(w.size(), std::numeric_limits<double>::infinity());
  for (std::size_t j = 0; j < w.size(); ++j) {
    for (const auto& e : w.row(j)) out[e.col] = std::min(out[e.col], y[j] - e.weight);
  }
  return out;
}

inline LatticeVector apply_erosion(const MaxPlusMatrix& w, const LatticeVector& y) {
  const auto& cfg = y.config();
  std::vector<double> out = raw_erosion(w, y.values());
  for (auto& v : out) v = std::clamp(v, cfg.a(), cfg.b());
  return {std::move(out), cfg};
}

}  // namespace detail

/// δ_W(x) = W ⊗ x. Throws AsticityError naming the failing row.
inline LatticeVector dilate(const MaxPlusMatrix& w, const LatticeVector& x) {
  detail::require_config(w, x, "dilate");
  detail::require_row_0_astic(w, "dilate");
  return detail::apply_dilation(w, x);
}

/// ε_W(y)_i = min_j (y_j - w_ji). Throws AsticityError naming the failing column.
/// Column-0-asticity alone keeps the result inside [a, b].
inline LatticeVector erode(const MaxPlusMatrix& w, const LatticeVector& y) {
  detail::require_config(w, y, "erode");
  detail::require_column_0_astic(w, "erode");
  return detail::apply_erosion(w, y);
}

struct AdjointErosion {
  LatticeVector value;
  /// Some coordinate of ε_W(y) exceeded b and was cut back.
  bool clamped = false;
};

/// Adjoint α_W = ε_W ∧ b of the dilation of a row-0-astic W. For W that is not
/// column-0-astic ε_W may exceed b (or be +inf on an empty column); the clamp
/// then fires and is reported.
inline AdjointErosion adjoint_erode(const MaxPlusMatrix& w, const LatticeVector& y) {
  detail::require_config(w, y, "adjoint_erode");
  detail::require_row_0_astic(w, "adjoint_erode");
  const auto& cfg = y.config();
  std::vector<double> raw = detail::raw_erosion(w, y.values());
  bool clamped = false;
  for (auto& v : raw) {
    if (v > cfg.b() + kDefaultTolerance) clamped = true;
    v = std::clamp(v, cfg.a(), cfg.b());
  }
  return {LatticeVector(std::move(raw), cfg), clamped};
}

/// δ_W ∘ ε_W: anti-extensive, increasing, idempotent.
inline LatticeVector open(const MaxPlusMatrix& w, const LatticeVector& x) {
  detail::require_config(w, x, "open");
  detail::require_doubly(w, "open");
  return detail::apply_dilation(w, detail::apply_erosion(w, x));
}

/// ε_W ∘ δ_W: extensive, increasing, idempotent.
inline LatticeVector close(const MaxPlusMatrix& w, const LatticeVector& x) {
  detail::require_config(w, x, "close");
  detail::require_doubly(w, "close");
  return detail::apply_erosion(w, detail::apply_dilation(w, x));
}

/// A matrix bound to a lattice and validated once for its role.
class MorphOperator {
 public:
  MorphOperator(MaxPlusMatrix matrix, LatticeConfig cfg, OperatorKind kind)
      : matrix_(std::move(matrix)), cfg_(cfg), kind_(kind) {
    detail::require_same_size(matrix_.size(), cfg_.n(), "MorphOperator");
    if (kind_ == OperatorKind::kDilation) {
      detail::require_row_0_astic(matrix_, "MorphOperator");
    } else {
      detail::require_column_0_astic(matrix_, "MorphOperator");
    }
  }

  LatticeVector operator()(const LatticeVector& x) const {
    if (!(x.config() == cfg_)) throw DimensionError("MorphOperator: configuration mismatch");
    return kind_ == OperatorKind::kDilation ? detail::apply_dilation(matrix_, x)
                                            : detail::apply_erosion(matrix_, x);
  }

  const MaxPlusMatrix& matrix() const noexcept { return matrix_; }
  const LatticeConfig& config() const noexcept { return cfg_; }
  OperatorKind kind() const noexcept { return kind_; }

 private:
  MaxPlusMatrix matrix_;
  LatticeConfig cfg_;
  OperatorKind kind_;
};

struct AdjunctionCheck {
  bool holds = false;
  std::size_t trials_run = 0;
  std::string reason;
  /// First (x, y) with δ(x) <= y not equivalent to x <= ε(y).
  std::optional<std::pair<LatticeVector, LatticeVector>> counterexample;
};

namespace detail {

// Pairs (x, y) where roughly half satisfy δ(x) <= y: y is drawn above δ(x)
// and, every other trial, one coordinate is pushed below it.
inline std::pair<LatticeVector, LatticeVector> sample_adjunction_pair(
    const std::function<LatticeVector(const LatticeVector&)>& dil, const LatticeConfig& cfg,
    Rng& rng, std::size_t trial) {
  LatticeVector x = random_lattice_vector(cfg, rng);
  if (trial % 4 == 3) return {x, random_lattice_vector(cfg, rng)};
  const LatticeVector dx = dil(x);
  std::vector<double> y(dx.values().begin(), dx.values().end());
  std::uniform_int_distribution<int> bump(0, 2);
  for (auto& v : y) v = std::min(cfg.b(), v + bump(rng));
  if (trial % 2 == 1) {
    const std::size_t i = detail::draw_index(rng, cfg.n());
    if (y[i] > cfg.a()) y[i] = std::max(cfg.a(), dx[i] - 1.0);
  }
  return {x, LatticeVector(std::move(y), cfg)};
}

}  // namespace detail

/// Samples δ_W(x) <= y ⟺ x <= ε_W(y). Matrices that are not doubly-0-astic are
/// rejected up front since no adjunction can exist.
inline AdjunctionCheck check_adjunction(const MaxPlusMatrix& w, const LatticeConfig& cfg,
                                        std::size_t trials, std::uint64_t seed) {
  detail::require_same_size(w.size(), cfg.n(), "check_adjunction");
  if (trials == 0) throw Error("check_adjunction: trials must be at least 1");
  AdjunctionCheck report;
  if (!is_doubly_0_astic(w)) {
    report.reason = "matrix is not doubly-0-astic";
    return report;
  }
  Rng rng(seed);
  auto dil = [&w](const LatticeVector& x) { return detail::apply_dilation(w, x); };
  for (std::size_t t = 0; t < trials; ++t) {
    auto [x, y] = detail::sample_adjunction_pair(dil, cfg, rng, t);
    ++report.trials_run;
    const bool lhs = lattice_leq(dil(x), y);
    const bool rhs = lattice_leq(x, detail::apply_erosion(w, y));
    if (lhs != rhs) {
      report.reason = "adjunction law violated";
      report.counterexample.emplace(std::move(x), std::move(y));
      return report;
    }
  }
  report.holds = true;
  return report;
}

using LatticeMap = std::function<LatticeVector(const LatticeVector&)>;

/**
 * Recovers a representing matrix of a shift-invariant dilation from its n
 * impulse responses: column j is δ(e_j) - b. Entries equal to a - b are kept
 * (they stand for anything <= a - b, including -inf).
 */
inline MaxPlusMatrix matrix_from_dilation(const LatticeMap& dilation, const LatticeConfig& cfg) {
  const std::size_t n = cfg.n();
  std::vector<Triplet> t;
  t.reserve(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    const LatticeVector response = dilation(impulse(j, cfg));
    detail::require_same_size(response.size(), n, "matrix_from_dilation");
    for (std::size_t i = 0; i < n; ++i) t.push_back({i, j, response[i] - cfg.b()});
  }
  MaxPlusMatrix w = MaxPlusMatrix::from_triplets(n, std::move(t));
  if (auto row = first_non_zero_row(w)) {
    throw AsticityError("matrix_from_dilation: input is not a representable dilation (row " +
                        std::to_string(*row + 1) + " supremum is not 0)");
  }
  return w;
}

struct ShiftInvarianceCheck {
  bool holds = false;
  /// Vertical-translation law sampled on every trial.
  bool shift_invariant = false;
  /// δ(x ∨ y) = δ(x) ∨ δ(y) (resp. ε(x ∧ y) = ε(x) ∧ ε(y)) sampled on every trial.
  bool commutes_with_lattice_op = false;
  std::size_t trials_run = 0;
  std::optional<LatticeVector> counterexample;
  double lambda = 0.0;
};

/**
 * Samples the shift-invariance law of an opaque operator,
 *   dilation: δ((λ + x) ∨ a) = (λ + δ(x)) ∨ a for λ <= 0,
 *   erosion:  ε((λ + x) ∧ b) = (λ + ε(x)) ∧ b for λ >= 0,
 * together with commutation with ∨ (resp. ∧). The second test is needed since
 * the law alone is also satisfied by non-dilations such as rank filters.
 * Sampling cannot prove either property.
 */
inline ShiftInvarianceCheck check_shift_invariance(const LatticeMap& op, OperatorKind kind,
                                                   const LatticeConfig& cfg, std::size_t trials,
                                                   std::uint64_t seed) {
  if (trials == 0) throw Error("check_shift_invariance: trials must be at least 1");
  const double tol = kDefaultTolerance * std::max(1.0, cfg.b());
  const bool dilation = kind == OperatorKind::kDilation;
  auto shifted = [&](const LatticeVector& v, double lambda) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      out[i] = dilation ? std::max(lambda + v[i], cfg.a()) : std::min(lambda + v[i], cfg.b());
    }
    return LatticeVector(std::move(out), cfg);
  };
  auto same = [tol](const LatticeVector& l, const LatticeVector& r) {
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (!near(l[i], r[i], tol)) return false;
    }
    return true;
  };

  ShiftInvarianceCheck report;
  report.shift_invariant = true;
  report.commutes_with_lattice_op = true;
  Rng rng(seed);
  std::uniform_real_distribution<double> span(0.0, cfg.b() - cfg.a());
  for (std::size_t t = 0; t < trials; ++t) {
    ++report.trials_run;
    const LatticeVector x = random_lattice_vector(cfg, rng);
    const LatticeVector y = random_lattice_vector(cfg, rng);
    double lambda = std::round(span(rng));
    if (dilation) lambda = -lambda;
    if (!same(op(shifted(x, lambda)), shifted(op(x), lambda))) {
      report.shift_invariant = false;
      report.counterexample = x;
      report.lambda = lambda;
      return report;
    }
    const LatticeVector combined = dilation ? lattice_join(x, y) : lattice_meet(x, y);
    const LatticeVector separate = dilation ? lattice_join(op(x), op(y)) : lattice_meet(op(x), op(y));
    if (!same(op(combined), separate)) {
      report.commutes_with_lattice_op = false;
      report.counterexample = combined;
      return report;
    }
  }
  report.holds = true;
  return report;
}

}  // namespace tropmorph
