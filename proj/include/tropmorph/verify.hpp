#pragma once

/**
 * @file verify.hpp
 * @brief Sampled algebraic laws across all modules, as run by `tropmorph verify`.
 */

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tropmorph/adjunction.hpp"
#include "tropmorph/asticity.hpp"
#include "tropmorph/graph.hpp"
#include "tropmorph/io.hpp"
#include "tropmorph/iterated.hpp"
#include "tropmorph/matrix.hpp"
#include "tropmorph/random.hpp"
#include "tropmorph/spectral.hpp"

namespace tropmorph {

struct LawResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace detail {

inline LawResult run_law(const std::string& name, const std::function<std::string()>& body) {
  try {
    std::string failure = body();
    return {name, failure.empty(), failure};
  } catch (const std::exception& e) {
    return {name, false, std::string("exception: ") + e.what()};
  }
}

inline bool same_values(const LatticeVector& l, const LatticeVector& r, double tol = 0.0) {
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (!near(l[i], r[i], tol)) return false;
  }
  return true;
}

}  // namespace detail

/**
 * Runs every law on `trials` random instances (integral weights, a = 0,
 * b = 10, n in 2..8) and, when given, on the user matrix as well. Each law
 * returns a failure message or passes. Deterministic in `seed`.
 */
inline std::vector<LawResult> run_property_suite(const std::optional<MatrixFile>& user,
                                                 std::size_t trials, std::uint64_t seed) {
  std::vector<LawResult> results;
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> dim(2, 8);
  const double a = 0.0;
  const double b = 10.0;
  const std::size_t samples = std::max<std::size_t>(trials, 1);

  // Doubly-0-astic instances the per-matrix laws run on.
  std::vector<MatrixFile> cases;
  if (user) {
    results.push_back(detail::run_law("user matrix is doubly-0-astic", [&] {
      if (auto row = first_non_zero_row(user->matrix)) return "row " + std::to_string(*row + 1) + " supremum is not 0";
      if (auto col = first_non_zero_column(user->matrix)) {
        return "column " + std::to_string(*col + 1) + " supremum is not 0";
      }
      return std::string();
    }));
    if (results.back().passed) cases.push_back(*user);
  }
  for (std::size_t t = 0; t < samples; ++t) {
    const std::size_t n = dim(rng);
    cases.push_back({LatticeConfig(a, b, n), random_doubly_0_astic(n, rng)});
  }

  results.push_back(detail::run_law("semiring laws (associativity, distributivity, identity)", [&] {
    for (std::size_t t = 0; t < samples; ++t) {
      const std::size_t n = dim(rng);
      MatrixGenOptions opt{0.4, -6.0, 3.0, true};
      const auto x = random_matrix(n, rng, opt);
      const auto y = random_matrix(n, rng, opt);
      const auto z = random_matrix(n, rng, opt);
      if (!(mp_mat_mat(mp_mat_mat(x, y), z) == mp_mat_mat(x, mp_mat_mat(y, z)))) return std::string("⊗ not associative");
      if (!(mp_mat_join(mp_mat_join(x, y), z) == mp_mat_join(x, mp_mat_join(y, z)))) return std::string("∨ not associative");
      if (!(mp_mat_mat(x, mp_mat_join(y, z)) == mp_mat_join(mp_mat_mat(x, y), mp_mat_mat(x, z)))) {
        return std::string("⊗ does not distribute over ∨");
      }
      if (!(mp_mat_mat(x, MaxPlusMatrix::identity(n)) == x) || !(mp_mat_mat(MaxPlusMatrix::identity(n), x) == x)) {
        return std::string("E_n is not neutral");
      }
      std::vector<double> v(n);
      for (auto& e : v) e = static_cast<double>(std::uniform_int_distribution<int>(-5, 5)(rng));
      if (mp_mat_vec(mp_mat_mat(x, y), v) != mp_mat_vec(x, mp_mat_vec(y, v))) {
        return std::string("(A⊗B)⊗x != A⊗(B⊗x)");
      }
    }
    return std::string();
  }));

  results.push_back(detail::run_law("complement is an order-reversing involution", [&] {
    for (std::size_t t = 0; t < samples; ++t) {
      const LatticeConfig cfg(a, b, dim(rng));
      const auto x = random_lattice_vector(cfg, rng);
      const auto y = lattice_join(x, random_lattice_vector(cfg, rng));
      if (!(complement(complement(x)) == x)) return std::string("complement is not an involution");
      if (!lattice_leq(complement(y), complement(x))) return std::string("complement is not order-reversing");
    }
    return std::string();
  }));

  results.push_back(detail::run_law("0-astic implies definite; circuit routes agree", [&] {
    for (std::size_t t = 0; t < samples; ++t) {
      const std::size_t n = dim(rng);
      const LatticeConfig cfg(a, b, n);
      const auto w = t % 2 ? random_row_0_astic_only(n, rng) : random_matrix(n, rng, {0.4, -6.0, 2.0, true});
      const auto rep = classify(w, cfg);
      if ((rep.row_0_astic || rep.column_0_astic) && !rep.definite) return std::string("0-astic but not definite");
      // Closed walks may repeat a positive circuit, so only the sign is shared then.
      const double enumerated = max_circuit_weight_enumerated(w);
      if (enumerated <= 0.0 ? rep.max_circuit_weight != enumerated : rep.max_circuit_weight <= 0.0) {
        return std::string("max circuit weight differs from enumeration");
      }
    }
    return std::string();
  }));

  results.push_back(detail::run_law("equivalence class extremes represent the same dilation", [&] {
    for (const auto& c : cases) {
      const auto lo = canonical_lower(c.matrix, c.config);
      const auto hi = canonical_upper(c.matrix, c.config);
      if (!equivalent(lo, c.matrix, c.config) || !equivalent(hi, c.matrix, c.config)) {
        return std::string("canonical forms not equivalent to W");
      }
      for (std::size_t s = 0; s < samples; ++s) {
        const auto x = random_lattice_vector(c.config, rng);
        const auto ref = dilate(c.matrix, x);
        if (!detail::same_values(dilate(lo, x), ref, c.matrix.tolerance()) ||
            !detail::same_values(dilate(hi, x), ref, c.matrix.tolerance())) {
          return std::string("canonical forms change the dilation");
        }
      }
    }
    return std::string();
  }));

  results.push_back(detail::run_law("adjunction law and sup/inf commutation", [&] {
    for (const auto& c : cases) {
      const auto rep = check_adjunction(c.matrix, c.config, samples, rng());
      if (!rep.holds) return "adjunction: " + rep.reason;
      for (std::size_t s = 0; s < samples; ++s) {
        const auto x = random_lattice_vector(c.config, rng);
        const auto y = random_lattice_vector(c.config, rng);
        if (!(dilate(c.matrix, lattice_join(x, y)) == lattice_join(dilate(c.matrix, x), dilate(c.matrix, y)))) {
          return std::string("dilation does not commute with ∨");
        }
        if (!(erode(c.matrix, lattice_meet(x, y)) == lattice_meet(erode(c.matrix, x), erode(c.matrix, y)))) {
          return std::string("erosion does not commute with ∧");
        }
        if (!(erode(c.matrix, x) == complement(dilate(c.matrix.transpose(), complement(x))))) {
          return std::string("erosion differs from its complement conjugate");
        }
      }
    }
    return std::string();
  }));

  results.push_back(detail::run_law("CMW matrices give extensive dilations", [&] {
    for (std::size_t t = 0; t < samples; ++t) {
      const LatticeConfig cfg(a, b, dim(rng));
      const auto w = random_cmw(cfg.n(), rng);
      const auto x = random_lattice_vector(cfg, rng);
      if (!lattice_leq(x, dilate(w, x)) || !lattice_leq(erode(w, x), x)) {
        return std::string("CMW operator is not (anti-)extensive");
      }
    }
    return std::string();
  }));

  results.push_back(detail::run_law("matrix recovered from impulse responses is equivalent", [&] {
    for (const auto& c : cases) {
      const MaxPlusMatrix& w = c.matrix;
      const auto rec = matrix_from_dilation([&w](const LatticeVector& x) { return dilate(w, x); }, c.config);
      if (!equivalent(rec, w, c.config)) return std::string("recovered matrix not equivalent");
      const auto si = check_shift_invariance([&w](const LatticeVector& x) { return dilate(w, x); },
                                             OperatorKind::kDilation, c.config, samples, rng());
      if (!si.holds) return std::string("matrix dilation failed the shift-invariance check");
    }
    return std::string();
  }));

  results.push_back(detail::run_law("granulometries and iterated adjunctions", [&] {
    for (const auto& c : cases) {
      const std::size_t p_max = std::min<std::size_t>(5, std::max<std::size_t>(2, c.config.n()));
      const IteratedFamily fam(c.matrix, c.config, p_max);
      const auto rep = check_granulometry(fam, p_max, samples, rng());
      if (!rep.holds) return rep.violations.front();
      for (std::size_t p = 1; p <= p_max; ++p) {
        if (!check_adjunction(fam.power(p), c.config, samples, rng()).holds) return std::string("(ε^p, δ^p) not an adjunction");
        if (!check_adjunction(fam.integral(p), c.config, samples, rng()).holds) {
          return std::string("(E^[p], D^[p]) not an adjunction");
        }
        MaxPlusMatrix joined = c.matrix;
        for (std::size_t k = 2; k <= p; ++k) joined = mp_mat_join(joined, mp_mat_power(c.matrix, k));
        if (!(joined == fam.integral(p))) return std::string("incremental S_p differs from the join of powers");
      }
    }
    return std::string();
  }));

  results.push_back(detail::run_law("powers and integrals match path enumeration", [&] {
    for (std::size_t t = 0; t < samples; ++t) {
      const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 6)(rng);
      const auto w = random_matrix(n, rng, {0.45, -5.0, 3.0, true});
      const WeightedDigraph g(w);
      for (std::size_t p = 1; p <= 4; ++p) {
        const auto wp = mp_mat_power(w, p);
        const auto sp = mp_sup_integral(w, p);
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            if (wp.at(i, j) != oracle_power_entry(g, i, j, p)) return std::string("W^p entry differs from oracle");
            if (sp.at(i, j) != oracle_integral_entry(g, i, j, p)) return std::string("S_p entry differs from oracle");
          }
        }
      }
    }
    return std::string();
  }));

  results.push_back(detail::run_law("threshold characterization of G^[p]", [&] {
    for (const auto& c : cases) {
      if (c.config.n() > 6) continue;
      const IteratedFamily fam(c.matrix, c.config, 3);
      for (std::size_t p = 1; p <= 3; ++p) {
        for (std::size_t s = 0; s < samples; ++s) {
          const auto x = random_lattice_vector(c.config, rng);
          if (!detail::same_values(opening_via_threshold(fam, p, x), big_g_opening(fam, p, x), c.matrix.tolerance())) {
            return std::string("threshold opening differs from G^[p]");
          }
        }
      }
    }
    return std::string();
  }));

  results.push_back(detail::run_law("spectral layer (eigenproblem, symmetric consequences)", [&] {
    std::vector<MatrixFile> spectral_cases = cases;
    for (std::size_t t = 0; t < samples; ++t) {
      const std::size_t n = dim(rng);
      spectral_cases.push_back({LatticeConfig(a, b, n), random_symmetric_doubly_0_astic(n, rng)});
    }
    for (const auto& c : spectral_cases) {
      const auto dec = decompose(c.matrix);
      const auto eig = check_eigenproblem(dec, samples, rng());
      if (!eig.holds) return std::string("eigenproblem statements failed");
      if (c.matrix.is_symmetric()) {
        const auto sym = check_symmetric_consequences(c.matrix, c.config, samples, rng());
        if (!sym.holds) return sym.violations.front();
      }
    }
    return std::string();
  }));

  return results;
}

}  // namespace tropmorph
