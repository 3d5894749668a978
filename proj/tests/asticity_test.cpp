#include <gtest/gtest.h>

#include "tropmorph/tropmorph.hpp"

namespace {

using namespace tropmorph;
constexpr double I = kBottom;

const auto kW1 = MaxPlusMatrix::from_dense({{0, -2, I}, {-2, 0, -3}, {I, -3, 0}});

TEST(Classify, W1IsEverything) {
  const auto r = classify(kW1, LatticeConfig(0, 10, 3));
  EXPECT_TRUE(r.row_0_astic);
  EXPECT_TRUE(r.column_0_astic);
  EXPECT_TRUE(r.doubly_0_astic);
  EXPECT_TRUE(r.zero_astic);
  EXPECT_TRUE(r.cmw);
  EXPECT_TRUE(r.definite);
  EXPECT_EQ(r.max_circuit_weight, 0);
}

TEST(Classify, PositiveEntryDefiniteButNotRowAstic) {
  const auto w = MaxPlusMatrix::from_dense({{0, 1}, {-1, 0}});
  const auto r = classify(w, LatticeConfig(0, 10, 2));
  EXPECT_FALSE(r.row_0_astic);
  EXPECT_EQ(first_non_zero_row(w), 0u);
  EXPECT_TRUE(r.definite);
  EXPECT_FALSE(r.cmw);
}

TEST(Classify, NegativeCircuitsOnly) {
  const auto w = MaxPlusMatrix::from_dense({{-1, I}, {I, -2}});
  const auto r = classify(w, LatticeConfig(0, 10, 2));
  EXPECT_FALSE(r.definite);
  EXPECT_EQ(r.max_circuit_weight, -1);
  EXPECT_FALSE(r.row_0_astic);
}

TEST(Classify, AcyclicGraphHasNoCircuit) {
  const auto w = MaxPlusMatrix::from_dense({{I, 0}, {I, I}});
  const auto r = classify(w, LatticeConfig(0, 10, 2));
  EXPECT_TRUE(is_bottom(r.max_circuit_weight));
  EXPECT_FALSE(r.definite);
}

TEST(Classify, DimensionMismatch) {
  EXPECT_THROW(classify(kW1, LatticeConfig(0, 10, 2)), DimensionError);
}

TEST(CircuitWeight, KernelAgreesWithEnumerationOnNonPositiveGraphs) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 8;
    const auto w = random_matrix(n, rng, {0.35, -7, 0, true});
    EXPECT_EQ(max_circuit_weight(w), max_circuit_weight_enumerated(w));
  }
}

TEST(CircuitWeight, PositiveCircuitReportsPositive) {
  const auto w = MaxPlusMatrix::from_dense({{I, 2}, {-1, I}});
  EXPECT_EQ(max_circuit_weight_enumerated(w), 1);
  EXPECT_GT(max_circuit_weight(w), 0);
}

TEST(CircuitWeight, EnumerationRefusesLargeGraphs) {
  EXPECT_THROW(max_circuit_weight_enumerated(MaxPlusMatrix::identity(13)), Error);
}

TEST(Canonical, UpperAndLowerForms) {
  const LatticeConfig cfg(0, 10, 2);
  const auto w3 = MaxPlusMatrix::from_dense({{0, -1}, {I, 0}});
  const auto upper = canonical_upper(w3, cfg);
  EXPECT_EQ(upper, MaxPlusMatrix::from_dense({{0, -1}, {-10, 0}}));
  EXPECT_EQ(canonical_lower(upper, cfg), w3);
  EXPECT_EQ(canonical_lower(canonical_upper(w3, cfg), cfg), canonical_lower(w3, cfg));
  EXPECT_EQ(canonical_lower(kW1, LatticeConfig(0, 10, 3)), kW1);
  EXPECT_TRUE(equivalent(w3, upper, cfg));
  EXPECT_FALSE(equivalent(kW1, MaxPlusMatrix::identity(3), LatticeConfig(0, 10, 3)));
}

TEST(Canonical, RejectsNonAstic) {
  const auto w = MaxPlusMatrix::from_dense({{0, -1}, {-1, -1}});
  try {
    canonical_upper(w, LatticeConfig(0, 10, 2));
    FAIL() << "expected AsticityError";
  } catch (const AsticityError& e) {
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos);
  }
}

TEST(Canonical, ClassJoinAndMeetStayInClass) {
  const LatticeConfig cfg(0, 10, 3);
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const auto w = random_doubly_0_astic(3, rng, {0.6, -15, 0, true});
    const auto lo = canonical_lower(w, cfg);
    const auto hi = canonical_upper(w, cfg);
    EXPECT_EQ(class_join(lo, w, cfg), w);
    EXPECT_EQ(class_meet(hi, w, cfg), w);
    EXPECT_TRUE(equivalent(class_meet(lo, hi, cfg), w, cfg));
  }
  EXPECT_THROW(class_join(kW1, MaxPlusMatrix::identity(3), cfg), AsticityError);
}

TEST(Generators, ProduceTheAdvertisedClasses) {
  Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + t % 7;
    EXPECT_TRUE(is_doubly_0_astic(random_doubly_0_astic(n, rng)));
    const auto cmw = random_cmw(n, rng);
    EXPECT_TRUE(is_cmw(cmw));
    EXPECT_TRUE(is_doubly_0_astic(cmw));
    const auto sym = random_symmetric_doubly_0_astic(n, rng);
    EXPECT_TRUE(sym.is_symmetric());
    EXPECT_TRUE(is_doubly_0_astic(sym));
    const auto row_only = random_row_0_astic_only(n, rng);
    EXPECT_TRUE(is_row_0_astic(row_only));
    EXPECT_FALSE(is_column_0_astic(row_only));
  }
}

}  // namespace
