#include <gtest/gtest.h>

#include "dense_oracle.hpp"
#include "tropmorph/tropmorph.hpp"

namespace {

using namespace tropmorph;
constexpr double I = kBottom;

const auto kW1 = MaxPlusMatrix::from_dense({{0, -2, I}, {-2, 0, -3}, {I, -3, 0}});
const auto kW2 = MaxPlusMatrix::from_dense({{I, 0}, {0, I}});
const auto kW3 = MaxPlusMatrix::from_dense({{0, -1}, {I, 0}});
const LatticeConfig kCfg(0, 10, 3);

using Nodes = std::vector<std::size_t>;

TEST(Metric, Examples) {
  EXPECT_EQ(metric_matrix(MaxPlusMatrix::identity(4)), MaxPlusMatrix::identity(4));
  EXPECT_EQ(metric_matrix(kW2), MaxPlusMatrix::constant(2, 0));
  EXPECT_EQ(metric_matrix(MaxPlusMatrix::identity(1)), MaxPlusMatrix::identity(1));
}

TEST(Metric, RejectsIndefinite) {
  EXPECT_THROW(metric_matrix(MaxPlusMatrix::from_dense({{-1, I}, {I, -1}})), AsticityError);
  EXPECT_THROW(metric_matrix(MaxPlusMatrix::from_dense({{1, I}, {I, 0}})), AsticityError);
}

TEST(Metric, MatchesWalkOracleOnDefiniteMatrices) {
  Rng rng(73);
  for (int t = 0; t < 80; ++t) {
    const std::size_t n = 1 + t % 9;
    const auto w = random_doubly_0_astic(n, rng);
    EXPECT_EQ(metric_matrix(w).to_dense(), oracle::integral(w.to_dense(), n));
  }
}

TEST(Decompose, W1AllNodesNonEquivalent) {
  const auto dec = decompose(kW1);
  EXPECT_EQ(eigen_nodes(dec), (Nodes{0, 1, 2}));
  EXPECT_EQ(dec.classes.size(), 3u);
  EXPECT_FALSE(equivalent_nodes(dec, 0, 1));
  EXPECT_TRUE(equivalent_nodes(dec, 1, 1));
  EXPECT_EQ(maximal_nonequivalent_set(dec).size(), 3u);
}

TEST(Decompose, W2NodesEquivalent) {
  const auto dec = decompose(kW2);
  EXPECT_EQ(eigen_nodes(dec), (Nodes{0, 1}));
  ASSERT_EQ(dec.classes.size(), 1u);
  EXPECT_EQ(dec.classes[0], (Nodes{0, 1}));
  EXPECT_TRUE(equivalent_nodes(dec, 0, 1));
  const auto xis = fundamental_eigenvectors(dec);
  ASSERT_EQ(xis.size(), 2u);
  EXPECT_EQ(xis[0].values, (std::vector<double>{0, 0}));
  EXPECT_EQ(xis[0].values, xis[1].values);
  EXPECT_EQ(maximal_nonequivalent_set(dec).size(), 1u);
}

TEST(Decompose, IdentityHasOneClassPerNode) {
  const auto dec = decompose(MaxPlusMatrix::identity(4));
  EXPECT_EQ(dec.classes.size(), 4u);
  for (const auto& xi : fundamental_eigenvectors(dec)) {
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(xi.values[i], i == xi.node ? 0 : I);
  }
}

TEST(Decompose, NonEigenNodeExcluded) {
  // Vertex 3 only reaches the loop at 1; its own circuits weigh -2.
  const auto w = MaxPlusMatrix::from_dense({{0, I, -1}, {I, 0, I}, {0, I, -2}});
  const auto dec = decompose(w);
  EXPECT_EQ(eigen_nodes(dec), (Nodes{0, 1}));
  EXPECT_FALSE(equivalent_nodes(dec, 0, 2));
}

TEST(Eigenvectors, FixedByW) {
  Rng rng(79);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + t % 7;
    const auto w = random_doubly_0_astic(n, rng);
    const auto dec = decompose(w);
    for (const auto& xi : fundamental_eigenvectors(dec)) EXPECT_EQ(mp_mat_vec(w, xi.values), xi.values);
    const auto rep = check_eigenproblem(dec, 20, rng());
    EXPECT_TRUE(rep.holds);
    EXPECT_TRUE(rep.finitely_soluble);
  }
}

TEST(Eigenvectors, ShiftedEigenvectorOfW1) {
  const auto dec = decompose(kW1);
  const std::vector<double> v{2, 0, -3};
  EXPECT_EQ(mp_mat_vec(kW1, v), v);
  const auto w2_dec = decompose(kW2);
  const std::vector<double> c{4.5, 4.5};
  EXPECT_EQ(mp_mat_vec(kW2, c), c);
  EXPECT_TRUE(check_eigenproblem(w2_dec, 10, 1).holds);
}

TEST(Projection, MembersAndNonMembers) {
  const auto dec = decompose(kW1);
  const auto p = eigenspace_project(dec, std::vector<double>{3, 1, 4});
  EXPECT_TRUE(p.member);
  EXPECT_EQ(p.coefficients, (std::vector<double>{3, 1, 4}));
  const auto q = eigenspace_project(dec, std::vector<double>{5, 1, 9});
  EXPECT_FALSE(q.member);
  EXPECT_EQ(q.reconstruction, (std::vector<double>{3, 1, 4}));
  const auto xi2 = metric_column(dec, 1);
  const auto r = eigenspace_project(dec, xi2);
  EXPECT_TRUE(r.member);
  EXPECT_EQ(r.coefficients[1], 0);
  EXPECT_THROW(eigenspace_project(dec, std::vector<double>{1, 2}), DimensionError);
}

TEST(Projection, ReconstructionIsBelowInput) {
  Rng rng(83);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + t % 7;
    const LatticeConfig cfg(0, 10, n);
    const auto dec = decompose(random_doubly_0_astic(n, rng));
    const auto x = random_lattice_vector(cfg, rng);
    const auto p = eigenspace_project(dec, x.values());
    for (std::size_t i = 0; i < n; ++i) EXPECT_LE(p.reconstruction[i], x[i]);
    EXPECT_TRUE(eigenspace_project(dec, p.reconstruction).member);
  }
}

TEST(SplitOpening, RecomposesTheOpening) {
  Rng rng(89);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + t % 6;
    const LatticeConfig cfg(0, 10, n);
    const auto w = random_doubly_0_astic(n, rng);
    const auto dec = decompose(w);
    const IteratedFamily fam(w, cfg, n);
    const auto x = random_lattice_vector(cfg, rng);
    const auto split = split_opening(dec, x);
    const auto g = big_g_opening(fam, n, x);
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(oplus(split.eigen_part[i], split.other_part[i]), g[i]);
  }
}

TEST(Symmetric, W1PassesAllChecks) {
  const auto r = check_symmetric_consequences(kW1, kCfg, 50, 1);
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.metric_idempotent);
  EXPECT_TRUE(r.metric_diagonal_zero);
  EXPECT_TRUE(r.erosion_is_opening);
  EXPECT_TRUE(r.invariants_are_eigenspace);
  EXPECT_TRUE(check_symmetric_consequences(MaxPlusMatrix::identity(3), kCfg, 10, 1).holds);
}

TEST(Symmetric, RandomSymmetricMatrices) {
  Rng rng(97);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + t % 7;
    const auto w = random_symmetric_doubly_0_astic(n, rng);
    const auto r = check_symmetric_consequences(w, LatticeConfig(0, 10, n), 20, rng());
    EXPECT_TRUE(r.holds) << (r.violations.empty() ? "" : r.violations.front());
  }
}

TEST(Symmetric, RefusesNonSymmetric) {
  EXPECT_THROW(check_symmetric_consequences(kW3, LatticeConfig(0, 10, 2), 5, 1), AsticityError);
}

TEST(Approximate, ConvergesToExactAtN) {
  Rng rng(101);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 3 + t % 6;
    const LatticeConfig cfg(0, 10, n);
    const auto w = random_symmetric_doubly_0_astic(n, rng);
    const auto approx = approximate_metric(w, cfg, n + 5);
    EXPECT_EQ(approx.p, n);
    EXPECT_TRUE(equivalent(approx.matrix, metric_matrix(w), cfg));
    const auto dec = decompose_approximate(w, cfg, 2);
    EXPECT_EQ(dec.eigen_nodes.size(), n);
  }
}

}  // namespace
