#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "pilotwave/hilbert/kochen_specker.hpp"
#include "pilotwave/hilbert/linalg.hpp"
#include "pilotwave/hilbert/mermin.hpp"
#include "pilotwave/hilbert/spin1.hpp"

using namespace pilotwave;

namespace {

// Brute force over all 2^n {0,1} assignments.
std::uint64_t count_by_enumeration(const ContextHypergraph& hg) {
  std::uint64_t count = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << hg.nodes); ++bits) {
    ValueAssignment v(hg.nodes);
    for (std::size_t i = 0; i < hg.nodes; ++i) v[i] = static_cast<int>((bits >> i) & 1u);
    if (check_value_map(v, hg).empty()) ++count;
  }
  return count;
}

}  // namespace

TEST(Linalg, DiagonalEigensystem) {
  const auto es = eigendecompose(HermitianOperator::diagonal({1.0, -1.0}));
  EXPECT_DOUBLE_EQ(es.values(0), -1.0);
  EXPECT_DOUBLE_EQ(es.values(1), 1.0);
  EXPECT_NEAR(std::abs(es.vectors(1, 0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(es.vectors(0, 1) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(es.vectors(0, 0)), 0.0, 1e-15);
}

TEST(Linalg, RejectsNonHermitian) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(HermitianOperator{m}, NotHermitian);
  EXPECT_THROW(HermitianOperator{Matrix::Zero(2, 3)}, InvalidArgument);
}

TEST(Linalg, RandomHermitianReconstruction) {
  Rng rng(11, streams::kOperators);
  for (int trial = 0; trial < 50; ++trial) {
    const auto op = random_hermitian(4, rng);
    const auto es = eigendecompose(op);
    EXPECT_LT(reconstruction_residual(op, es), 1e-10);
    for (Eigen::Index i = 1; i < es.values.size(); ++i) EXPECT_LE(es.values(i - 1), es.values(i));
    EXPECT_LT(max_abs(es.vectors.adjoint() * es.vectors - Matrix::Identity(4, 4)), 1e-12);
    // Phase convention: the first component above 1e-8 is real positive.
    for (Eigen::Index j = 0; j < 4; ++j) {
      Eigen::Index i = 0;
      while (std::abs(es.vectors(i, j)) <= 1e-8) ++i;
      EXPECT_GT(es.vectors(i, j).real(), 0.0);
      EXPECT_EQ(es.vectors(i, j).imag(), 0.0);
    }
  }
}

TEST(Linalg, RandomUnitaryIsUnitary) {
  Rng rng(3);
  const Matrix u = random_unitary(6, rng);
  EXPECT_LT(max_abs(u.adjoint() * u - Matrix::Identity(6, 6)), 1e-12);
}

TEST(Linalg, SpectralProjectorsMergeDegenerateValues) {
  const auto s = spectral_projectors(HermitianOperator::diagonal({1.0, -1.0, 1.0, -1.0}));
  ASSERT_EQ(s.values.size(), 2u);
  EXPECT_NEAR(s.projectors[0].trace().real(), 2.0, 1e-12);
  EXPECT_LT(max_abs(s.projectors[0] + s.projectors[1] - Matrix::Identity(4, 4)), 1e-12);
}

TEST(Spin1, SzSquaredEigenvalues) {
  const auto sq = spin1_squares({Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY(), Eigen::Vector3d::UnitZ()});
  const auto es = eigendecompose(sq[2]);
  EXPECT_NEAR(es.values(0), 0.0, 1e-12);
  EXPECT_NEAR(es.values(1), 1.0, 1e-12);
  EXPECT_NEAR(es.values(2), 1.0, 1e-12);
  EXPECT_LT(max_abs(sq[2].matrix() - HermitianOperator::diagonal({1.0, 0.0, 1.0}).matrix()), 1e-15);
}

TEST(Spin1, MatchesCartesianOracle) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Frame f = random_frame(rng);
    const auto sq = spin1_squares(f);
    for (int k = 0; k < 3; ++k) {
      const auto ref = oracle::spin1_square({f[k].x(), f[k].y(), f[k].z()});
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) EXPECT_LT(std::abs(sq[k].matrix()(a, b) - ref[a][b]), 1e-12);
    }
  }
}

TEST(Spin1, PropertiesHoldForRandomFrames) {
  Rng rng(2024);
  const Matrix two = 2.0 * Matrix::Identity(3, 3);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto sq = spin1_squares(random_frame(rng));
    for (const auto& s : sq) {
      const auto es = eigendecompose(s);
      EXPECT_NEAR(es.values(0), 0.0, 1e-10);
      EXPECT_NEAR(es.values(1), 1.0, 1e-10);
      EXPECT_NEAR(es.values(2), 1.0, 1e-10);
    }
    EXPECT_LT(commutator_norm(sq[0].matrix(), sq[1].matrix()), 1e-12);
    EXPECT_LT(commutator_norm(sq[1].matrix(), sq[2].matrix()), 1e-12);
    EXPECT_LT(commutator_norm(sq[2].matrix(), sq[0].matrix()), 1e-12);
    EXPECT_LT(max_abs(sq[0].matrix() + sq[1].matrix() + sq[2].matrix() - two), 1e-12);
  }
}

TEST(Spin1, RejectsSkewFrame) {
  const Frame f{Eigen::Vector3d::UnitX(), Eigen::Vector3d(1.0, 1.0, 0.0).normalized(), Eigen::Vector3d::UnitZ()};
  EXPECT_THROW(spin1_squares(f), InvalidArgument);
}

TEST(ValueMap, TriadValues) {
  const auto hg = abstract_hypergraph(3, {{0, 1, 2}});
  EXPECT_TRUE(check_value_map({1, 1, 0}, hg).empty());
  EXPECT_EQ(check_value_map({1, 1, 1}, hg).size(), 1u);
  EXPECT_EQ(check_value_map({0, 0, 1}, hg).size(), 1u);
  EXPECT_THROW(check_value_map({1, -1, 0}, hg), IncompleteAssignment);
}

TEST(ValueMap, OperatorFormSumAndProduct) {
  // S_x², S_y², S_z² and the identity relation S_x² + S_y² = 2 − S_z².
  const auto sq = spin1_squares({Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY(), Eigen::Vector3d::UnitZ()});
  const HermitianOperator rest(2.0 * Matrix::Identity(3, 3) - sq[2].matrix());
  const std::vector<HermitianOperator> ops{sq[0], sq[1], rest, sq[2]};
  const std::vector<OperatorRelation> rel{{OperatorRelation::Kind::kSum, 0, 1, 2, 1}};
  EXPECT_TRUE(check_value_map({1.0, 1.0, 2.0, 0.0}, ops, rel).empty());
  const auto bad = check_value_map({1.0, 1.0, 1.0, 1.0}, ops, rel);
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_EQ(bad[0].kind, "sum");
  EXPECT_EQ(check_value_map({0.5, 1.0, 1.5, 0.0}, ops, rel).front().kind, "eigenvalue");
  // Product of commuting diagonal operators.
  const std::vector<HermitianOperator> d{HermitianOperator::diagonal({1, -1}), HermitianOperator::diagonal({-1, -1}),
                                         HermitianOperator::diagonal({-1, 1})};
  const std::vector<OperatorRelation> prod{{OperatorRelation::Kind::kProduct, 0, 1, 2, 1}};
  EXPECT_TRUE(check_value_map({1.0, -1.0, -1.0}, d, prod).empty());
  EXPECT_EQ(check_value_map({1.0, -1.0, 1.0}, d, prod).size(), 1u);
  EXPECT_THROW(check_value_map({1.0, std::nullopt, 1.0}, d, prod), IncompleteAssignment);
}

TEST(KsSearch, SingleTriadHasThreeWitnesses) {
  const auto hg = abstract_hypergraph(3, {{0, 1, 2}});
  const auto r = ks_search(hg, {.count_all = true});
  EXPECT_TRUE(r.satisfiable);
  EXPECT_EQ(r.solutions, 3u);
  EXPECT_TRUE(check_value_map(r.witness, hg).empty());
}

TEST(KsSearch, DisjointTriadsMultiply) {
  const auto hg = abstract_hypergraph(6, {{0, 1, 2}, {3, 4, 5}});
  const auto r = ks_search(hg, {.count_all = true});
  EXPECT_EQ(r.solutions, 9u);
  EXPECT_EQ(count_by_enumeration(hg), 9u);
}

TEST(KsSearch, CountMatchesEnumerationOnRandomSmallGraphs) {
  Rng rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + rng.below(10);
    std::vector<std::array<std::size_t, 3>> triads;
    std::vector<std::array<std::size_t, 2>> pairs;
    const auto nt = rng.below(6);
    for (std::uint64_t t = 0; t < nt; ++t) {
      std::array<std::size_t, 3> c{};
      do {
        c = {rng.below(n), rng.below(n), rng.below(n)};
      } while (c[0] == c[1] || c[1] == c[2] || c[0] == c[2]);
      triads.push_back(c);
    }
    const auto np = rng.below(4);
    for (std::uint64_t p = 0; p < np; ++p) {
      std::array<std::size_t, 2> c{};
      do {
        c = {rng.below(n), rng.below(n)};
      } while (c[0] == c[1]);
      pairs.push_back(c);
    }
    const auto hg = abstract_hypergraph(n, triads, pairs);
    const auto r = ks_search(hg, {.count_all = true});
    EXPECT_EQ(r.solutions, count_by_enumeration(hg)) << "trial " << trial;
    EXPECT_EQ(r.satisfiable, r.solutions > 0);
    if (r.satisfiable) EXPECT_TRUE(check_value_map(r.witness, hg).empty());
    const auto par = ks_search(hg, {.count_all = true, .parallel = true, .threads = 3});
    EXPECT_EQ(par.solutions, r.solutions);
  }
}

TEST(KsSearch, FreeRaysCountTwice) {
  const auto hg = abstract_hypergraph(5, {{0, 1, 2}});
  EXPECT_EQ(ks_search(hg, {.count_all = true}).solutions, 12u);
}

TEST(Peres33, StructureOfTheRaySet) {
  const auto hg = peres33();
  EXPECT_EQ(hg.nodes, 33u);
  EXPECT_EQ(hg.triads.size(), 16u);
  EXPECT_EQ(hg.pairs.size(), 24u);
  const double r2 = std::sqrt(2.0);
  for (const auto& r : hg.rays) {
    // Rescaled so the smallest nonzero magnitude is 1, every component is 0, ±1 or ±√2.
    double m = 10.0;
    for (int i = 0; i < 3; ++i)
      if (std::abs(r[i]) > 1e-12) m = std::min(m, std::abs(r[i]));
    for (int i = 0; i < 3; ++i) {
      const double c = std::abs(r[i]) / m;
      EXPECT_TRUE(c < 1e-12 || std::abs(c - 1.0) < 1e-12 || std::abs(c - r2) < 1e-12);
    }
  }
}

TEST(Peres33, Unsatisfiable) {
  const auto hg = peres33();
  const auto r = ks_search(hg);
  EXPECT_FALSE(r.satisfiable);
  EXPECT_GT(r.stats.nodes_visited, 1u);
  EXPECT_LT(r.stats.elapsed_seconds, 10.0);
  EXPECT_FALSE(ks_search(hg, {.parallel = true, .threads = 4}).satisfiable);
  EXPECT_EQ(ks_search(hg, {.count_all = true}).solutions, 0u);
}

TEST(Peres33, TriadsAloneAreColorable) {
  auto hg = peres33();
  hg.pairs.clear();
  const auto r = ks_search(hg);
  ASSERT_TRUE(r.satisfiable);
  EXPECT_TRUE(check_value_map(r.witness, hg).empty());
}

TEST(RayFile, RoundTripAndSignIdentification) {
  const auto hg = peres33();
  std::stringstream ss;
  write_ray_file(ss, hg);
  const auto back = read_ray_file(ss);
  EXPECT_EQ(back.nodes, hg.nodes);
  EXPECT_EQ(back.triads, hg.triads);
  EXPECT_EQ(back.pairs, hg.pairs);

  std::istringstream in(
      "# two copies of x, one negated\n"
      "1 0 0\n0 1 0  # y\n0 0 2\n-1 0 0\n");
  const auto d = read_ray_file(in);
  EXPECT_EQ(d.nodes, 3u);
  EXPECT_EQ(d.triads.size(), 1u);
  EXPECT_NEAR(d.rays[2].z(), 1.0, 1e-15);
}

TEST(RayFile, ExplicitContextsAreValidated) {
  std::istringstream ok("1 0 0\n0 1 0\n0 0 1\n[contexts]\n0 1 2\n");
  EXPECT_EQ(read_ray_file(ok).triads.size(), 1u);
  std::istringstream skew("1 0 0\n1 1 0\n0 0 1\n[contexts]\n0 1 2\n");
  EXPECT_THROW(read_ray_file(skew), InvalidArgument);
  std::istringstream junk("1 0\n");
  EXPECT_THROW(read_ray_file(junk), InvalidArgument);
  std::istringstream range("1 0 0\n[contexts]\n0 4\n");
  EXPECT_THROW(read_ray_file(range), InvalidArgument);
}

TEST(Mermin, OperatorIdentities) {
  const auto r = mermin_square_check();
  EXPECT_TRUE(r.operators_ok);
  EXPECT_LT(r.max_commutator, 1e-12);
  EXPECT_LT(r.max_product_residual, 1e-12);
  const std::array<int, 6> expected{1, 1, 1, 1, 1, -1};
  EXPECT_EQ(r.product_signs, expected);
}

TEST(Mermin, NoAssignmentSatisfiesAllSix) {
  const auto r = mermin_square_check();
  EXPECT_EQ(r.assignments, 512u);
  EXPECT_EQ(r.satisfying_all, 0u);
  EXPECT_TRUE(r.contradiction());
  EXPECT_LT(r.elapsed_seconds, 1.0);
}

TEST(Mermin, EveryFiveOfSixIsSatisfiable) {
  const auto r = mermin_square_check();
  for (std::size_t k = 0; k < 6; ++k) {
    EXPECT_GT(r.satisfying_without[k], 0u);
    // The witness meets the five remaining constraints and breaks k.
    static constexpr int lines[6][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6}, {1, 4, 7}, {2, 5, 8}};
    for (std::size_t m = 0; m < 6; ++m) {
      const auto& w = r.five_witness[k];
      const int p = w[lines[m][0]] * w[lines[m][1]] * w[lines[m][2]];
      if (m == k) EXPECT_NE(p, r.product_signs[m]);
      else EXPECT_EQ(p, r.product_signs[m]);
    }
  }
}

TEST(Mermin, ContradictionSurvivesRelabeling) {
  std::array<int, 3> rows{0, 1, 2};
  do {
    std::array<int, 3> cols{0, 1, 2};
    do {
      for (bool t : {false, true}) {
        const auto r = mermin_square_check({rows, cols, t});
        EXPECT_TRUE(r.operators_ok);
        EXPECT_EQ(r.satisfying_all, 0u);
      }
    } while (std::next_permutation(cols.begin(), cols.end()));
  } while (std::next_permutation(rows.begin(), rows.end()));
  EXPECT_THROW(mermin_square_check({{0, 0, 1}, {0, 1, 2}, false}), InvalidArgument);
}
