#pragma once

/**
 * @file lattice.hpp
 * @brief The bounded lattice [a,b]^n of signals and images.
 *
 * Signals are stored as flat vectors; images are flattened column-major
 * (pixel (row, col) of an H-row image sits at index col * H + row).
 */

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tropmorph/error.hpp"
#include "tropmorph/scalar.hpp"

namespace tropmorph {

/// Value range [a, b] and dimension n of the lattice L = [a,b]^n.
class LatticeConfig {
 public:
  LatticeConfig(double a, double b, std::size_t n) : a_(a), b_(b), n_(n) {
    if (!(std::isfinite(a) && std::isfinite(b)) || a < 0.0 || !(a < b)) {
      throw InputError("lattice bounds must satisfy 0 <= a < b, got a=" + std::to_string(a) +
                       " b=" + std::to_string(b));
    }
    if (n == 0) throw InputError("lattice dimension must be positive");
  }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  std::size_t n() const noexcept { return n_; }

  /// Weights at or below this threshold never influence a dilation on L.
  double prune_threshold() const noexcept { return a_ - b_; }

  LatticeConfig with_dimension(std::size_t n) const { return {a_, b_, n}; }

  friend bool operator==(const LatticeConfig&, const LatticeConfig&) = default;

 private:
  double a_;
  double b_;
  std::size_t n_;
};

/// A point of L. Construction validates the range.
class LatticeVector {
 public:
  LatticeVector(std::vector<double> values, LatticeConfig cfg)
      : values_(std::move(values)), cfg_(cfg) {
    detail::require_same_size(values_.size(), cfg_.n(), "LatticeVector");
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const double v = values_[i];
      if (!(v >= cfg_.a() && v <= cfg_.b())) {
        throw InputError("value " + std::to_string(v) + " at index " + std::to_string(i) +
                         " lies outside [" + std::to_string(cfg_.a()) + ", " +
                         std::to_string(cfg_.b()) + "]");
      }
    }
  }

  static LatticeVector constant(double v, const LatticeConfig& cfg) {
    return {std::vector<double>(cfg.n(), v), cfg};
  }
  static LatticeVector bottom(const LatticeConfig& cfg) { return constant(cfg.a(), cfg); }
  static LatticeVector top(const LatticeConfig& cfg) { return constant(cfg.b(), cfg); }

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const noexcept { return values_; }
  const LatticeConfig& config() const noexcept { return cfg_; }

  friend bool operator==(const LatticeVector& lhs, const LatticeVector& rhs) {
    return lhs.cfg_ == rhs.cfg_ && lhs.values_ == rhs.values_;
  }

 private:
  std::vector<double> values_;
  LatticeConfig cfg_;
};

/// Complement b - x + a; an order-reversing involution on L.
inline LatticeVector complement(const LatticeVector& x) {
  const auto& cfg = x.config();
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    // Clamped so rounding in b - x + a cannot leave [a, b].
    out[i] = std::clamp(cfg.b() - x[i] + cfg.a(), cfg.a(), cfg.b());
  }
  return {std::move(out), cfg};
}

/// Impulse vector: b at index i (0-based), a elsewhere.
inline LatticeVector impulse(std::size_t i, const LatticeConfig& cfg) {
  if (i >= cfg.n()) {
    throw DimensionError("impulse index " + std::to_string(i) + " out of range for n=" +
                         std::to_string(cfg.n()));
  }
  std::vector<double> out(cfg.n(), cfg.a());
  out[i] = cfg.b();
  return {std::move(out), cfg};
}

/// Pareto order.
inline bool lattice_leq(const LatticeVector& x, const LatticeVector& y) {
  if (!(x.config() == y.config())) throw DimensionError("lattice_leq: configuration mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > y[i]) return false;
  }
  return true;
}

inline LatticeVector lattice_join(const LatticeVector& x, const LatticeVector& y) {
  if (!(x.config() == y.config())) throw DimensionError("lattice_join: configuration mismatch");
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::max(x[i], y[i]);
  return {std::move(out), x.config()};
}

inline LatticeVector lattice_meet(const LatticeVector& x, const LatticeVector& y) {
  if (!(x.config() == y.config())) throw DimensionError("lattice_meet: configuration mismatch");
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::min(x[i], y[i]);
  return {std::move(out), x.config()};
}

}  // namespace tropmorph
