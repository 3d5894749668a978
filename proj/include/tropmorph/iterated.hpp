#pragma once

/**
 * @file iterated.hpp
 * @brief Iterated operators δ^p, ε^p, their sup/inf integrals D^[p], E^[p] and
 *        the two opening families γ^[p] = δ^p ε^p and G^[p] = D^[p] E^[p].
 *
 * δ^p is represented by W^p and D^[p] by S_p(W) = W ∨ ... ∨ W^p. Both families
 * of openings are granulometries (decreasing in p).
 */

#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "tropmorph/adjunction.hpp"
#include "tropmorph/asticity.hpp"
#include "tropmorph/lattice.hpp"
#include "tropmorph/matrix.hpp"
#include "tropmorph/random.hpp"

namespace tropmorph {

struct FamilyOptions {
  /// Drop entries <= a - b after every product. The represented operators are
  /// unchanged but cached matrices no longer equal the exact powers.
  bool prune = false;
};

/**
 * Lazily grown caches of W^k and S_k(W) for k <= p_max.
 *
 * Levels are appended under a mutex and never modified afterwards, so
 * references handed out stay valid and a reader never sees a half-built level.
 */
class IteratedFamily {
 public:
  IteratedFamily(MaxPlusMatrix base, LatticeConfig cfg, std::size_t p_max, FamilyOptions opt = {})
      : cfg_(cfg), p_max_(p_max), opt_(opt), cache_(std::make_unique<Cache>()) {
    detail::require_same_size(base.size(), cfg.n(), "IteratedFamily");
    if (p_max == 0) throw Error("IteratedFamily: p_max must be at least 1");
    detail::require_doubly(base, "IteratedFamily");
    if (opt_.prune) base = canonical_lower(base, cfg_);
    cache_->powers.push_back(base);
    cache_->integrals.push_back(std::move(base));
  }

  const MaxPlusMatrix& base() const { return power(1); }
  const LatticeConfig& config() const noexcept { return cfg_; }
  std::size_t p_max() const noexcept { return p_max_; }
  const FamilyOptions& options() const noexcept { return opt_; }

  /// W^p (pruned when options().prune).
  const MaxPlusMatrix& power(std::size_t p) const {
    std::lock_guard lock(cache_->mutex);
    grow(p);
    return cache_->powers[p - 1];
  }

  /// S_p(W) (pruned when options().prune).
  const MaxPlusMatrix& integral(std::size_t p) const {
    std::lock_guard lock(cache_->mutex);
    grow(p);
    return cache_->integrals[p - 1];
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::deque<MaxPlusMatrix> powers;
    std::deque<MaxPlusMatrix> integrals;
  };

  void grow(std::size_t p) const {
    if (p == 0 || p > p_max_) {
      throw Error("IteratedFamily: p=" + std::to_string(p) + " outside [1, " +
                  std::to_string(p_max_) + "]");
    }
    std::optional<double> prune;
    if (opt_.prune) prune = cfg_.prune_threshold();
    while (cache_->powers.size() < p) {
      MaxPlusMatrix next = mp_mat_mat(cache_->powers.back(), cache_->powers.front(), prune);
      MaxPlusMatrix next_integral = mp_mat_join(cache_->integrals.back(), next);
      cache_->powers.push_back(std::move(next));
      cache_->integrals.push_back(std::move(next_integral));
    }
  }

  LatticeConfig cfg_;
  std::size_t p_max_;
  FamilyOptions opt_;
  std::unique_ptr<Cache> cache_;
};

namespace detail {

inline void require_family_vector(const IteratedFamily& fam, const LatticeVector& x) {
  if (!(x.config() == fam.config())) throw DimensionError("IteratedFamily: configuration mismatch");
}

}  // namespace detail

/// δ^p_W(x) = W^p ⊗ x.
inline LatticeVector iterate_dilate(const IteratedFamily& fam, std::size_t p, const LatticeVector& x) {
  detail::require_family_vector(fam, x);
  return detail::apply_dilation(fam.power(p), x);
}

/// ε^p_W(x) = ε_{W^p}(x).
inline LatticeVector iterate_erode(const IteratedFamily& fam, std::size_t p, const LatticeVector& x) {
  detail::require_family_vector(fam, x);
  return detail::apply_erosion(fam.power(p), x);
}

/// D^[p]_W(x) = S_p(W) ⊗ x.
inline LatticeVector integral_dilate(const IteratedFamily& fam, std::size_t p, const LatticeVector& x) {
  detail::require_family_vector(fam, x);
  return detail::apply_dilation(fam.integral(p), x);
}

/// E^[p]_W(x) = ε_{S_p(W)}(x).
inline LatticeVector integral_erode(const IteratedFamily& fam, std::size_t p, const LatticeVector& x) {
  detail::require_family_vector(fam, x);
  return detail::apply_erosion(fam.integral(p), x);
}

/// γ^[p] = δ^p ε^p.
inline LatticeVector gamma_opening(const IteratedFamily& fam, std::size_t p, const LatticeVector& x) {
  return iterate_dilate(fam, p, iterate_erode(fam, p, x));
}

/// G^[p] = D^[p] E^[p].
inline LatticeVector big_g_opening(const IteratedFamily& fam, std::size_t p, const LatticeVector& x) {
  return integral_dilate(fam, p, integral_erode(fam, p, x));
}

/// ε^p δ^p.
inline LatticeVector gamma_closing(const IteratedFamily& fam, std::size_t p, const LatticeVector& x) {
  return iterate_erode(fam, p, iterate_dilate(fam, p, x));
}

/// E^[p] D^[p].
inline LatticeVector big_g_closing(const IteratedFamily& fam, std::size_t p, const LatticeVector& x) {
  return integral_erode(fam, p, integral_dilate(fam, p, x));
}

struct GranulometryReport {
  bool holds = false;
  bool gamma_decreasing = true;
  bool big_g_decreasing = true;
  bool absorption = true;
  /// Only meaningful for CMW bases: γ^[p] = G^[p] on every sample.
  bool cmw_families_equal = true;
  bool base_is_cmw = false;
  std::size_t samples = 0;
  std::vector<std::string> violations;
};

/**
 * Samples the granulometry laws for p < p_max:
 *   γ^[p+1](x) <= γ^[p](x),  G^[p+1](x) <= G^[p](x),  G^[p](G^[p+1](x)) = G^[p+1](x),
 * and, when the base is CMW, γ^[p](x) = G^[p](x).
 */
inline GranulometryReport check_granulometry(const IteratedFamily& fam, std::size_t p_max,
                                             std::size_t trials, std::uint64_t seed) {
  if (p_max < 2) throw Error("check_granulometry: p_max must be at least 2");
  if (p_max > fam.p_max()) throw Error("check_granulometry: p_max exceeds the family's p_max");
  GranulometryReport r;
  r.base_is_cmw = is_cmw(fam.base());
  const double tol = fam.base().tolerance() * std::max(1.0, fam.config().b());
  auto same = [tol](const LatticeVector& l, const LatticeVector& m) {
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (!near(l[i], m[i], tol)) return false;
    }
    return true;
  };
  auto leq = [tol](const LatticeVector& l, const LatticeVector& m) {
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (l[i] > m[i] + tol) return false;
    }
    return true;
  };
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const LatticeVector x = random_lattice_vector(fam.config(), rng);
    ++r.samples;
    std::vector<LatticeVector> gammas;
    std::vector<LatticeVector> bigs;
    for (std::size_t p = 1; p <= p_max; ++p) {
      gammas.push_back(gamma_opening(fam, p, x));
      bigs.push_back(big_g_opening(fam, p, x));
      if (r.base_is_cmw && !same(gammas.back(), bigs.back())) {
        r.cmw_families_equal = false;
        r.violations.push_back("gamma != G for CMW base at p=" + std::to_string(p));
      }
    }
    for (std::size_t p = 1; p < p_max; ++p) {
      if (!leq(gammas[p], gammas[p - 1])) {
        r.gamma_decreasing = false;
        r.violations.push_back("gamma not decreasing at p=" + std::to_string(p));
      }
      if (!leq(bigs[p], bigs[p - 1])) {
        r.big_g_decreasing = false;
        r.violations.push_back("G not decreasing at p=" + std::to_string(p));
      }
      if (!same(big_g_opening(fam, p, bigs[p]), bigs[p])) {
        r.absorption = false;
        r.violations.push_back("G_p G_{p+1} != G_{p+1} at p=" + std::to_string(p));
      }
    }
  }
  r.holds = r.violations.empty();
  return r;
}

}  // namespace tropmorph
