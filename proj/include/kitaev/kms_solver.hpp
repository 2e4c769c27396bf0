#pragma once

#include <vector>

#include <Eigen/Dense>

#include "kitaev/config_space.hpp"
#include "kitaev/measure.hpp"

namespace kitaev {

inline constexpr std::size_t kTransferGuard = 10'000;

/// A_beta = D (x) B on (chi, g) pairs, chi the major index. B carries the G
/// part, D the dual part; both have the same entries.
struct TransferMatrix {
  MeasureParams params;
  std::size_t order = 0;
  Eigen::MatrixXd B;
  Eigen::MatrixXd D;
  Eigen::MatrixXd A;

  std::size_t index(std::uint32_t chi, std::uint32_t g) const { return chi * order + g; }
};

/// e^{-beta (1 + [h=1] - [g=1] - [g^-1 h = 1])} on enumeration indices.
double transfer_factor(const GroupTables& t, double beta, std::uint32_t g, std::uint32_t h);

/// Builds B and D from the block values (B(1,k) = 1, B(g,1) = q^2, B(g,g) = 1,
/// q otherwise) and A entrywise from the exponential formula.
TransferMatrix build_transfer(double beta, const GroupSpec& group);

struct DeterminantCheck {
  double det_B = 0.0;
  double det_B_formula = 0.0;
  double residual = 0.0;
  double det_A = 0.0;
  double det_A_formula = 0.0;
  double det_A_residual = 0.0;
  /// Smallest over largest singular value of A.
  double inverse_condition = 0.0;
};

/// LU determinants against (1-q)^{|G|-1} (1 + (|G|-1) q) and (det B)^{2|G|}.
DeterminantCheck det_closed_form_check(double beta, const GroupSpec& group);

struct PerronFrobenius {
  double eigenvalue = 0.0;
  /// Normalized to sum one.
  Eigen::VectorXd vector;
  /// |lambda_2| / lambda_1 from power iteration on the deflated matrix.
  double gap_ratio = 0.0;
  int iterations = 0;
};

/// Power iteration to relative tolerance rel_tol (at most max_iter steps).
/// Throws std::invalid_argument for a matrix with a non-positive entry and
/// std::runtime_error when the iteration does not converge.
PerronFrobenius pf_eigen(const Eigen::MatrixXd& a, double rel_tol = 1e-12, int max_iter = 100'000);

/// u_n(chi, g) = nu(chi) nu~(g) (nu(1) nu~(1))^{n-1}.
Eigen::VectorXd cylinder_vector(const TransferMatrix& a, int n);

struct RecursionReport {
  /// max_n ||u_n - A u_{n+1}||_inf for 1 <= n <= n_max.
  double residual = 0.0;
  /// u_1 and u_2 against marginals summed over every configuration of W_{n+1}.
  double brute_force_residual = 0.0;
  /// mu(C(n+1, chi, g; chi', g')) against A(chi, g; zeta, h) mu(C(n+1, zeta, h)), n <= 2.
  double entry_residual = 0.0;
  double level_one_sum = 0.0;
};

RecursionReport recursion_check(double beta, const GroupSpec& group, int n_max);

/// The window W_n = {v_1..v_n, f_1..f_n} used by the recursion, interleaved.
std::vector<SiteId> recursion_window(int n);

struct ExpectationRow {
  SiteKind site_kind = SiteKind::vertex;
  bool neutral = true;
  double s_beta = 0.0;
};

/// s_beta(P_w^label) for neutral and excited labels on vertices and faces.
std::vector<ExpectationRow> expectation_table(double beta, const GroupSpec& group);

struct ZeroTemperaturePoint {
  double beta = 0.0;
  double s_beta = 0.0;
  double defect = 0.0;
  double bound = 0.0;
};

struct ZeroTemperatureScan {
  std::vector<ZeroTemperaturePoint> points;
  bool within_bound = true;
  bool strictly_decreasing = true;
};

/// Throws std::invalid_argument unless the grid is strictly increasing.
ZeroTemperatureScan zero_t_scan(const GroupSpec& group, const std::vector<double>& betas);

}  // namespace kitaev
