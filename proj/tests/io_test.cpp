#include <gtest/gtest.h>

#include <sstream>

#include "tropmorph/tropmorph.hpp"

namespace {

using namespace tropmorph;
constexpr double I = kBottom;

const auto kW1 = MaxPlusMatrix::from_dense({{0, -2, I}, {-2, 0, -3}, {I, -3, 0}});

TEST(MatrixFileFormat, RoundTripIsExact) {
  const LatticeConfig cfg(0, 10, 3);
  std::stringstream ss;
  write_matrix_file(ss, kW1, cfg);
  const std::string text = ss.str();
  const MatrixFile back = read_matrix_file(ss);
  EXPECT_EQ(back.matrix, kW1);
  EXPECT_EQ(back.config, cfg);
  std::stringstream again;
  write_matrix_file(again, back.matrix, back.config);
  EXPECT_EQ(again.str(), text);
}

TEST(MatrixFileFormat, CommentsAndBlankLines) {
  std::istringstream in("# header follows\n2 0 255\n\n1 1 0 # diagonal\n2 2 0\n1 2 -1.5\n");
  const MatrixFile f = read_matrix_file(in);
  EXPECT_EQ(f.config.b(), 255);
  EXPECT_EQ(f.matrix.at(0, 1), -1.5);
  EXPECT_TRUE(is_bottom(f.matrix.at(1, 0)));
}

TEST(MatrixFileFormat, Errors) {
  auto read = [](const std::string& s) {
    std::istringstream in(s);
    return read_matrix_file(in);
  };
  EXPECT_THROW(read(""), InputError);
  EXPECT_THROW(read("2 0\n"), InputError);
  EXPECT_THROW(read("0 0 10\n"), InputError);
  EXPECT_THROW(read("2 5 1\n"), Error);
  EXPECT_THROW(read("2 0 10\n3 1 0\n"), InputError);
  EXPECT_THROW(read("2 0 10\n0 1 0\n"), InputError);
  EXPECT_THROW(read("2 0 10\n1 1 x\n"), InputError);
  EXPECT_THROW(read("2 0 10\n1 1 inf\n"), InputError);
  EXPECT_THROW(read("2 0 10\n1 1 0\n1 1 -1\n"), Error);
}

TEST(VectorCsv, RoundTrip) {
  std::stringstream ss;
  write_vector_csv(ss, std::vector<double>{5, 0.25, -3});
  EXPECT_EQ(ss.str(), "5\n0.25\n-3\n");
  EXPECT_EQ(read_vector_csv(ss), (std::vector<double>{5, 0.25, -3}));
  std::istringstream bad("1\nfoo\n");
  EXPECT_THROW(read_vector_csv(bad), InputError);
}

TEST(Pgm, AsciiReadIsColumnMajor) {
  std::istringstream in("P2\n# comment\n3 2\n255\n1 2 3\n4 5 6\n");
  const Image img = read_pgm(in);
  EXPECT_EQ(img.shape.rows, 2u);
  EXPECT_EQ(img.shape.cols, 3u);
  EXPECT_EQ(img.pixels, (std::vector<double>{1, 4, 2, 5, 3, 6}));
  EXPECT_EQ(img.lattice(), LatticeConfig(0, 255, 6));
}

TEST(Pgm, BinaryRoundTrip) {
  const Image img{GridShape{2, 2}, 255, {0, 255, 17, 128}};
  for (bool binary : {true, false}) {
    std::stringstream ss;
    write_pgm(ss, img, binary);
    const Image back = read_pgm(ss);
    EXPECT_EQ(back.pixels, img.pixels);
    EXPECT_EQ(back.shape, img.shape);
  }
}

TEST(Pgm, SixteenBitRoundTrip) {
  const Image img{GridShape{1, 3}, 1000, {0, 999, 1000}};
  std::stringstream ss;
  write_pgm(ss, img);
  EXPECT_EQ(read_pgm(ss).pixels, img.pixels);
}

TEST(Pgm, SinglePixel) {
  std::istringstream in("P2 1 1 255 7");
  const Image img = read_pgm(in);
  EXPECT_EQ(img.lattice().n(), 1u);
  EXPECT_EQ(img.pixels, std::vector<double>{7});
}

TEST(Pgm, RoundingTiesToEven) {
  EXPECT_EQ(pgm_sample(2.5, 255), 2u);
  EXPECT_EQ(pgm_sample(3.5, 255), 4u);
  EXPECT_EQ(pgm_sample(3.49, 255), 3u);
  EXPECT_EQ(pgm_sample(300, 255), 255u);
}

TEST(Pgm, Errors) {
  auto read = [](const std::string& s) {
    std::istringstream in(s);
    return read_pgm(in);
  };
  EXPECT_THROW(read("P6\n1 1\n255\n0"), InputError);
  EXPECT_THROW(read("P2\n2 1\n10\n3 11\n"), InputError);
  EXPECT_THROW(read("P2\n2 1\n10\n3\n"), InputError);
  EXPECT_THROW(read("P5\n2 1\n255\n"), InputError);
  EXPECT_THROW(read("P2\n0 1\n255\n"), InputError);
}

TEST(StructuringFile, OneAndTwoDimensional) {
  std::istringstream one("-1 -1\n0 0\n1 -1\n");
  const auto se = read_structuring_function(one);
  EXPECT_EQ(se.offsets.size(), 3u);
  EXPECT_EQ(se.offsets[0], (Offset{-1, 0}));
  std::istringstream two("0 0 0\n0 1 -2 # right\n");
  const auto se2 = read_structuring_function(two);
  EXPECT_EQ(se2.offsets[1], (Offset{0, 1}));
  EXPECT_EQ(se2.weights[1], -2);
  std::istringstream bad("0.5 0\n");
  EXPECT_THROW(read_structuring_function(bad), InputError);
}

TEST(BasisCsv, HeaderAndColumns) {
  const auto dec = decompose(MaxPlusMatrix::from_dense({{I, 0}, {0, I}}));
  std::ostringstream os;
  write_basis_csv(os, maximal_nonequivalent_set(dec));
  EXPECT_EQ(os.str(), "1\n0\n0\n");
}

TEST(BuildFromSe, TridiagonalOneD) {
  const LatticeConfig cfg(0, 10, 4);
  const StructuringFunction se{{{-1, 0}, {0, 0}, {1, 0}}, {-1, 0, -1}};
  const auto w = build_matrix_from_se(se, GridShape{4, 1}, cfg);
  EXPECT_EQ(w, MaxPlusMatrix::from_dense({{0, -1, I, I}, {-1, 0, -1, I}, {I, -1, 0, -1}, {I, I, -1, 0}}));
  EXPECT_TRUE(classify(w, cfg).cmw);
}

TEST(BuildFromSe, OriginOnlyIsIdentity) {
  const LatticeConfig cfg(0, 10, 5);
  EXPECT_EQ(build_matrix_from_se({{{0, 0}}, {0}}, GridShape{5, 1}, cfg), MaxPlusMatrix::identity(5));
}

TEST(BuildFromSe, OffsetDirection) {
  // Offset +1 with weight -2: w_ij = -2 for i = j + 1.
  const auto w = build_matrix_from_se({{{0, 0}, {1, 0}}, {0, -2}}, GridShape{3, 1}, LatticeConfig(0, 10, 3));
  EXPECT_EQ(w.at(1, 0), -2);
  EXPECT_TRUE(is_bottom(w.at(0, 1)));
}

TEST(BuildFromSe, FlatTwoByTwoGrid) {
  const LatticeConfig cfg(0, 10, 4);
  const auto w = build_matrix_from_se(flat_neighborhood(4), GridShape{2, 2}, cfg);
  // Column-major: 0=(0,0) 1=(1,0) 2=(0,1) 3=(1,1); diagonals are not 4-neighbors.
  EXPECT_EQ(w, MaxPlusMatrix::from_dense({{0, 0, 0, I}, {0, 0, I, 0}, {0, I, 0, 0}, {I, 0, 0, 0}}));
  EXPECT_TRUE(classify(w, cfg).doubly_0_astic);
}

TEST(BuildFromSe, WrapBoundary) {
  const LatticeConfig cfg(0, 10, 4);
  const StructuringFunction se{{{-1, 0}, {0, 0}, {1, 0}}, {-1, 0, -1}};
  const auto w = build_matrix_from_se(se, GridShape{4, 1}, cfg, Boundary::kWrap);
  EXPECT_EQ(w.at(0, 3), -1);
  EXPECT_EQ(w.at(3, 0), -1);
  EXPECT_TRUE(is_cmw(w));
}

TEST(BuildFromSe, ValidationErrors) {
  const LatticeConfig cfg(0, 10, 3);
  const GridShape shape{3, 1};
  EXPECT_THROW(build_matrix_from_se({{{0, 0}, {1, 0}}, {-1, 0}}, shape, cfg), InputError);
  EXPECT_THROW(build_matrix_from_se({{{1, 0}}, {0}}, shape, cfg), InputError);
  EXPECT_THROW(build_matrix_from_se({{{0, 0}, {1, 0}}, {0, 2}}, shape, cfg), InputError);
  EXPECT_THROW(build_matrix_from_se({{{0, 0}}, {0}}, GridShape{2, 1}, cfg), DimensionError);
}

TEST(BuildAdaptive, StepEdgeAndFlatCases) {
  const LatticeConfig cfg(0, 10, 4);
  const std::vector<double> step{2, 2, 7, 7};
  const auto w = build_matrix_adaptive(step, GridShape{4, 1}, 0.5, 4, cfg);
  EXPECT_EQ(w.at(1, 2), -2.5);
  EXPECT_EQ(w.at(0, 1), 0);
  EXPECT_TRUE(w.is_symmetric());
  EXPECT_TRUE(classify(w, cfg).doubly_0_astic);
  const auto flat = build_matrix_adaptive(step, GridShape{4, 1}, 0.0, 4, cfg);
  EXPECT_EQ(flat, build_matrix_from_se(flat_neighborhood(4), GridShape{4, 1}, cfg));
  const std::vector<double> constant(4, 3.0);
  EXPECT_EQ(build_matrix_adaptive(constant, GridShape{2, 2}, 2.0, 8, cfg),
            build_matrix_from_se(flat_neighborhood(8), GridShape{2, 2}, cfg));
  EXPECT_THROW(build_matrix_adaptive(step, GridShape{4, 1}, -1, 4, cfg), InputError);
  EXPECT_THROW(build_matrix_adaptive(step, GridShape{4, 1}, 1, 6, cfg), InputError);
}

}  // namespace
