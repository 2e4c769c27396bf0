#include <gtest/gtest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "kitaev/kms_solver.hpp"
#include "kitaev/quantum_ops.hpp"

using namespace kitaev;

namespace {

std::vector<GroupSpec> groups() { return {GroupSpec({2}), GroupSpec({3}), GroupSpec({2, 2}), GroupSpec({4})}; }

// Largest and second-largest eigenvalue moduli from a general eigensolver.
std::pair<double, double> top_two_moduli(const Eigen::MatrixXd& a) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(a);
  std::vector<double> m;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) m.push_back(std::abs(es.eigenvalues()(i)));
  std::sort(m.rbegin(), m.rend());
  return {m[0], m.size() > 1 ? m[1] : 0.0};
}

}  // namespace

TEST(KmsSolver, MeasureParamsExamples) {
  const auto flat = build_measure_params(0.0, GroupSpec({3}));
  EXPECT_DOUBLE_EQ(flat.nu_neutral, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(flat.nu_excited, 1.0 / 3.0);
  const auto p = build_measure_params(std::log(3.0), GroupSpec({2}));
  EXPECT_NEAR(p.nu_neutral, 0.75, 1e-15);
  EXPECT_NEAR(p.nu_excited, 0.25, 1e-15);
  EXPECT_GE(build_measure_params(50.0, GroupSpec({2})).nu_neutral, 1.0 - 1e-15);
  EXPECT_THROW(build_measure_params(-0.1, GroupSpec({2})), std::invalid_argument);
  for (const auto& G : groups()) {
    const auto q = build_measure_params(1.7, G);
    EXPECT_NEAR(q.nu_neutral + (G.order() - 1) * q.nu_excited, 1.0, 1e-15);
    EXPECT_NEAR(q.nu_neutral, std::exp(1.7) / (std::exp(1.7) + G.order() - 1), 1e-15);
  }
}

TEST(KmsSolver, TransferExamples) {
  const auto tm = build_transfer(std::log(2.0), GroupSpec({2}));
  Eigen::Matrix2d expected;
  expected << 1.0, 1.0, 0.25, 1.0;
  EXPECT_LT((tm.B - expected).cwiseAbs().maxCoeff(), 1e-15);
  const auto flat = build_transfer(0.0, GroupSpec({3}));
  EXPECT_EQ(flat.A, Eigen::MatrixXd::Ones(9, 9));
  for (const auto& G : groups()) {
    for (double beta : {0.25, 1.0, 4.0}) {
      const auto t = build_transfer(beta, G);
      Eigen::MatrixXd kron(t.A.rows(), t.A.cols());
      const Eigen::Index n = t.B.rows();
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) kron.block(i * n, j * n, n, n) = t.D(i, j) * t.B;
      EXPECT_LT((t.A - kron).cwiseAbs().maxCoeff(), 1e-15);
      EXPECT_TRUE((t.A.array() > 0).all());
    }
  }
  EXPECT_THROW(build_transfer(1.0, GroupSpec({101})), GuardExceeded);
}

TEST(KmsSolver, DeterminantExamples) {
  const auto z2 = det_closed_form_check(std::log(2.0), GroupSpec({2}));
  EXPECT_NEAR(z2.det_B, 0.75, 1e-15);
  EXPECT_NEAR(z2.det_B_formula, 0.75, 1e-15);
  const auto z3 = det_closed_form_check(std::log(2.0), GroupSpec({3}));
  EXPECT_NEAR(z3.det_B, 0.5, 1e-14);
  EXPECT_NEAR(det_closed_form_check(0.0, GroupSpec({2})).det_B, 0.0, 1e-15);
  for (const auto& G : groups())
    for (double beta : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const auto d = det_closed_form_check(beta, G);
      EXPECT_LE(d.residual, 1e-10);
      EXPECT_LE(d.det_A_residual, 1e-10);
      EXPECT_GT(std::abs(d.det_A), 0.0);
      EXPECT_GT(d.inverse_condition, 1e-8);
      EXPECT_LE(det_closed_form_check(0.0, G).inverse_condition, 1e-12);
    }
}

TEST(KmsSolver, PerronFrobeniusExamples) {
  const auto tm = build_transfer(std::log(2.0), GroupSpec({2}));
  const auto pb = pf_eigen(tm.B);
  EXPECT_NEAR(pb.eigenvalue, 1.5, 1e-12);
  EXPECT_NEAR(pb.vector(0), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(pb.vector(1), 1.0 / 3.0, 1e-12);
  const auto flat = pf_eigen(build_transfer(0.0, GroupSpec({3})).A);
  for (Eigen::Index i = 0; i < 9; ++i) EXPECT_NEAR(flat.vector(i), 1.0 / 9.0, 1e-15);
  EXPECT_NEAR(flat.gap_ratio, 0.0, 1e-12);
  EXPECT_THROW(pf_eigen(Eigen::MatrixXd::Zero(2, 2)), std::invalid_argument);
}

TEST(KmsSolver, PerronFrobeniusMatchesProductMeasure) {
  for (const auto& G : groups()) {
    const double n = static_cast<double>(G.order());
    for (double beta : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const auto tm = build_transfer(beta, G);
      const double q = std::exp(-beta);
      const auto pb = pf_eigen(tm.B);
      EXPECT_NEAR(pb.eigenvalue, 1.0 + (n - 1.0) * q, 1e-10);
      const auto pa = pf_eigen(tm.A);
      const auto p = build_measure_params(beta, G);
      for (std::uint32_t chi = 0; chi < G.order(); ++chi)
        for (std::uint32_t g = 0; g < G.order(); ++g)
          EXPECT_NEAR(pa.vector(static_cast<Eigen::Index>(tm.index(chi, g))), p.weight(chi) * p.weight(g), 1e-10);
      const auto [l1, l2] = top_two_moduli(tm.A);
      EXPECT_NEAR(pa.eigenvalue, l1, 1e-9);
      EXPECT_NEAR(pa.gap_ratio, l2 / l1, 1e-6);
      EXPECT_LT(pa.gap_ratio, 1.0);
    }
  }
}

TEST(KmsSolver, RecursionExamples) {
  for (const auto& G : groups())
    for (double beta : {0.0, 0.5, 1.0, 3.0}) {
      const auto r = recursion_check(beta, G, 6);
      EXPECT_LE(r.residual, 1e-12);
      EXPECT_LE(r.brute_force_residual, 1e-14);
      EXPECT_LE(r.entry_residual, 1e-14);
      EXPECT_NEAR(r.level_one_sum, 1.0, 1e-14);
    }
  const auto tm = build_transfer(0.0, GroupSpec({2}));
  for (int n = 1; n <= 4; ++n)
    for (Eigen::Index i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(cylinder_vector(tm, n)(i), std::pow(0.25, n));
}

TEST(KmsSolver, ExpectationTableExamples) {
  for (const auto& row : expectation_table(0.0, GroupSpec({3}))) EXPECT_DOUBLE_EQ(row.s_beta, 1.0 / 3.0);
  const auto rows = expectation_table(std::log(3.0), GroupSpec({2}));
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_NEAR(rows[0].s_beta, 0.75, 1e-15);
  EXPECT_NEAR(rows[1].s_beta, 0.25, 1e-15);
}

TEST(KmsSolver, ExpectationTableMatchesGibbs) {
  auto s = OperatorSpace::create(LatticePatch(2, 2), GroupSpec({2}));
  const auto omega = neutral_syndrome(*s);
  for (double beta : {0.5, 1.5}) {
    const auto rho = gibbs_operator(s, beta, omega);
    for (const auto& row : expectation_table(beta, s->group())) {
      const SiteId w = row.site_kind == SiteKind::vertex ? SiteId::vertex(1, 1) : SiteId::face(1, 0);
      const auto P = site_projector(s, w, row.neutral ? 0 : 1);
      EXPECT_NEAR(gibbs_expectation(P, rho).real(), row.s_beta, 1e-10);
    }
  }
}

TEST(KmsSolver, ZeroTemperatureScan) {
  std::vector<double> grid;
  for (int b = 0; b <= 20; ++b) grid.push_back(b);
  for (const auto& G : groups()) {
    const auto scan = zero_t_scan(G, grid);
    EXPECT_TRUE(scan.within_bound);
    EXPECT_TRUE(scan.strictly_decreasing);
    EXPECT_NEAR(scan.points.front().s_beta, 1.0 / G.order(), 1e-15);
    EXPECT_LT(scan.points.back().defect, 1e-8);
  }
  const auto z2 = zero_t_scan(GroupSpec({2}), {10.0});
  EXPECT_NEAR(z2.points[0].defect, std::exp(-10.0) / (1.0 + std::exp(-10.0)), 1e-18);
  EXPECT_THROW(zero_t_scan(GroupSpec({2}), {1.0, 1.0}), std::invalid_argument);
}
