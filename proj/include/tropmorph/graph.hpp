#pragma once

/**
 * @file graph.hpp
 * @brief Graph reading of max-plus matrices and brute-force path oracles.
 *
 * G(W) has an edge i -> j exactly when w_ij > -inf. (W^p)_ij is the best weight
 * over paths i -> j of length exactly p, and S_p(W)_ij over lengths 1..p.
 * Everything here enumerates paths explicitly and is exponential in p: it
 * exists to validate the algebraic kernels at desk scale, not to evaluate
 * operators in production.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "tropmorph/error.hpp"
#include "tropmorph/iterated.hpp"
#include "tropmorph/lattice.hpp"
#include "tropmorph/matrix.hpp"

namespace tropmorph {

class WeightedDigraph {
 public:
  struct Edge {
    std::size_t from;
    std::size_t to;
    double weight;
  };

  explicit WeightedDigraph(const MaxPlusMatrix& w) : n_(w.size()), out_(w.size()), in_(w.size()) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (const auto& e : w.row(i)) {
        edges_.push_back({i, e.col, e.weight});
        out_[i].push_back(edges_.size() - 1);
        in_[e.col].push_back(edges_.size() - 1);
      }
    }
  }

  std::size_t size() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Outgoing edges of vertex v, as indices into edges().
  const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_[v]; }
  const std::vector<std::size_t>& in_edges(std::size_t v) const { return in_[v]; }

  MaxPlusMatrix to_matrix() const {
    std::vector<Triplet> t;
    t.reserve(edges_.size());
    for (const auto& e : edges_) t.push_back({e.from, e.to, e.weight});
    return MaxPlusMatrix::from_triplets(n_, std::move(t));
  }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

struct Path {
  std::vector<std::size_t> vertices;
  double weight = 0.0;

  /// Number of edges.
  std::size_t length() const noexcept { return vertices.empty() ? 0 : vertices.size() - 1; }
  bool is_circuit() const noexcept { return !vertices.empty() && vertices.front() == vertices.back(); }
};

/// Largest n^p the enumerators accept.
inline constexpr double kMaxPathCandidates = 1e7;

namespace detail {

inline void require_enumerable(std::size_t n, std::size_t p) {
  if (std::pow(static_cast<double>(n), static_cast<double>(p)) > kMaxPathCandidates) {
    throw Error("path enumeration bound exceeded (n=" + std::to_string(n) + ", p=" +
                std::to_string(p) +
                "); path oracles are meant for desk-scale validation only");
  }
}

// Calls visit(vertices, weight) for every path from `from` to `to` of length
// exactly p, walking actual edges only.
template <class Visit>
void for_each_path(const WeightedDigraph& g, std::size_t from, std::size_t to, std::size_t p,
                   Visit&& visit) {
  std::vector<std::size_t> stack{from};
  auto walk = [&](auto&& self, std::size_t v, double weight) -> void {
    if (stack.size() == p + 1) {
      if (v == to) visit(stack, weight);
      return;
    }
    for (std::size_t e : g.out_edges(v)) {
      const auto& edge = g.edges()[e];
      stack.push_back(edge.to);
      self(self, edge.to, weight + edge.weight);
      stack.pop_back();
    }
  };
  walk(walk, from, 0.0);
}

inline void require_vertex(const WeightedDigraph& g, std::size_t v) {
  if (v >= g.size()) throw DimensionError("vertex " + std::to_string(v) + " out of range");
}

}  // namespace detail

/// All paths from i to j with exactly p edges (0-based vertex ids).
inline std::vector<Path> enumerate_paths(const WeightedDigraph& g, std::size_t i, std::size_t j,
                                         std::size_t p) {
  detail::require_vertex(g, i);
  detail::require_vertex(g, j);
  detail::require_enumerable(g.size(), p);
  std::vector<Path> out;
  detail::for_each_path(g, i, j, p, [&out](const std::vector<std::size_t>& vs, double w) {
    out.push_back({vs, w});
  });
  return out;
}

/// max over paths i -> j of length exactly p of their weight; -inf if none.
inline ExtendedReal oracle_power_entry(const WeightedDigraph& g, std::size_t i, std::size_t j,
                                       std::size_t p) {
  ExtendedReal best = kBottom;
  for (const auto& path : enumerate_paths(g, i, j, p)) best = std::max(best, path.weight);
  return best;
}

/// max over paths i -> j of length 1..p of their weight; -inf if none.
inline ExtendedReal oracle_integral_entry(const WeightedDigraph& g, std::size_t i, std::size_t j,
                                          std::size_t p) {
  ExtendedReal best = kBottom;
  for (std::size_t k = 1; k <= p; ++k) best = std::max(best, oracle_power_entry(g, i, j, k));
  return best;
}

enum class NeighborhoodMode { kExact, kUpTo };
enum class Direction { kOut, kIn };

/**
 * Vertices reachable from i (kOut) or reaching i (kIn) in exactly p steps
 * (kExact) or in 1..p steps (kUpTo). Sorted, 0-based.
 */
inline std::vector<std::size_t> neighborhood(const WeightedDigraph& g, std::size_t i, std::size_t p,
                                             NeighborhoodMode mode, Direction dir) {
  detail::require_vertex(g, i);
  if (p == 0) throw Error("neighborhood: p must be at least 1");
  std::set<std::size_t> frontier{i};
  std::set<std::size_t> reached;
  for (std::size_t step = 0; step < p; ++step) {
    std::set<std::size_t> next;
    for (std::size_t v : frontier) {
      const auto& adj = dir == Direction::kOut ? g.out_edges(v) : g.in_edges(v);
      for (std::size_t e : adj) {
        const auto& edge = g.edges()[e];
        next.insert(dir == Direction::kOut ? edge.to : edge.from);
      }
    }
    frontier = std::move(next);
    if (mode == NeighborhoodMode::kUpTo) reached.insert(frontier.begin(), frontier.end());
  }
  const auto& result = mode == NeighborhoodMode::kExact ? frontier : reached;
  return {result.begin(), result.end()};
}

enum class NeighborhoodForm { kPowerDilate, kPowerErode, kIntegralDilate, kIntegralErode };

/**
 * Operators evaluated through neighborhoods and path oracles:
 *   δ^p(x)_i  = max_{j ∈ N^p_i} x_j + w^(p)_ij      ε^p(x)_i  = min_{j ∈ Ň^p_i} x_j - w^(p)_ji
 *   D^[p](x)_i = max over the cumulative neighborhood with s^[p]_ij, E^[p] dually.
 * Cross-check oracle only.
 */
inline LatticeVector neighborhood_dilate(const WeightedDigraph& g, std::size_t p,
                                         const LatticeVector& x,
                                         NeighborhoodForm form = NeighborhoodForm::kPowerDilate) {
  detail::require_same_size(g.size(), x.size(), "neighborhood_dilate");
  const bool integral =
      form == NeighborhoodForm::kIntegralDilate || form == NeighborhoodForm::kIntegralErode;
  const bool dilation =
      form == NeighborhoodForm::kPowerDilate || form == NeighborhoodForm::kIntegralDilate;
  const auto mode = integral ? NeighborhoodMode::kUpTo : NeighborhoodMode::kExact;
  auto entry = [&](std::size_t i, std::size_t j) {
    return integral ? oracle_integral_entry(g, i, j, p) : oracle_power_entry(g, i, j, p);
  };
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (dilation) {
      double acc = kBottom;
      for (std::size_t j : neighborhood(g, i, p, mode, Direction::kOut)) {
        acc = std::max(acc, x[j] + entry(i, j));
      }
      out[i] = acc;
    } else {
      double acc = std::numeric_limits<double>::infinity();
      for (std::size_t j : neighborhood(g, i, p, mode, Direction::kIn)) {
        acc = std::min(acc, x[j] - entry(j, i));
      }
      out[i] = acc;
    }
  }
  return {std::move(out), x.config()};
}

namespace detail {

struct IntegralSupport {
  // out[i]: j with s_ij > -inf; in[j]: l with s_lj > -inf.
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::vector<std::size_t>> in;
};

inline IntegralSupport integral_support(const MaxPlusMatrix& s) {
  IntegralSupport sup{std::vector<std::vector<std::size_t>>(s.size()),
                      std::vector<std::vector<std::size_t>>(s.size())};
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (const auto& e : s.row(i)) {
      sup.out[i].push_back(e.col);
      sup.in[e.col].push_back(i);
    }
  }
  return sup;
}

inline bool threshold_condition(const MaxPlusMatrix& s, const IntegralSupport& sup,
                                const LatticeVector& x, std::size_t i, double t, double tol) {
  for (std::size_t j : sup.out[i]) {
    const double s_ij = s.at(i, j);
    bool all = true;
    for (std::size_t l : sup.in[j]) {
      if (x[l] < t - s_ij + s.at(l, j) - tol) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

}  // namespace detail

/**
 * Right-hand side of the threshold characterization of G^[p]:
 *   G^[p](x)_i >= t  ⟺  ∃ j ∈ N^p_i, ∀ l ∈ Ň^p_j : x_l >= t - s_ij + s_lj,
 * with neighborhoods read off the support of S_p (the cumulative graph
 * neighborhoods, by the path characterization of S_p).
 */
inline bool opening_threshold_check(const IteratedFamily& fam, std::size_t p, const LatticeVector& x,
                                    std::size_t i, double t) {
  const MaxPlusMatrix& s = fam.integral(p);
  detail::require_same_size(s.size(), x.size(), "opening_threshold_check");
  if (i >= s.size()) throw DimensionError("opening_threshold_check: vertex out of range");
  const double tol = s.tolerance() * std::max(1.0, fam.config().b());
  return detail::threshold_condition(s, detail::integral_support(s), x, i, t, tol);
}

/**
 * G^[p](x)_i as the largest t in [a, b] passing opening_threshold_check.
 *
 * The feasible set of t is {t <= max_j min_l (x_l + s_ij - s_lj)} ∩ [a, b], an
 * interval closed on the right whose endpoint is either a or one of the
 * values x_l + s_ij - s_lj, so scanning those breakpoints attains the sup.
 */
inline LatticeVector opening_via_threshold(const IteratedFamily& fam, std::size_t p,
                                           const LatticeVector& x) {
  const MaxPlusMatrix& s = fam.integral(p);
  detail::require_same_size(s.size(), x.size(), "opening_via_threshold");
  const auto& cfg = fam.config();
  const double tol = s.tolerance() * std::max(1.0, cfg.b());
  const auto sup = detail::integral_support(s);
  std::vector<double> out(s.size(), cfg.a());
  for (std::size_t i = 0; i < s.size(); ++i) {
    double best = cfg.a();
    for (std::size_t j : sup.out[i]) {
      for (std::size_t l : sup.in[j]) {
        const double t = (x[l] - s.at(l, j)) + s.at(i, j);
        if (t > best && t <= cfg.b() + tol &&
            detail::threshold_condition(s, sup, x, i, t, tol)) {
          best = std::min(t, cfg.b());
        }
      }
    }
    out[i] = best;
  }
  return {std::move(out), cfg};
}

/// Graphviz dump: 1-based vertex ids, edge label = weight.
inline void write_dot(std::ostream& os, const WeightedDigraph& g, const std::string& name = "W") {
  os << "digraph " << name << " {\n";
  for (std::size_t v = 0; v < g.size(); ++v) os << "  " << v + 1 << ";\n";
  for (const auto& e : g.edges()) {
    os << "  " << e.from + 1 << " -> " << e.to + 1 << " [label=\""
       << format_real(e.weight) << "\"];\n";
  }
  os << "}\n";
}

}  // namespace tropmorph
