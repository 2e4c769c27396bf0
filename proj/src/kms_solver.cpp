#include "kitaev/kms_solver.hpp"

#include <cmath>
#include <stdexcept>

namespace kitaev {

double transfer_factor(const GroupTables& t, double beta, std::uint32_t g, std::uint32_t h) {
  const int exponent = 1 + (h == 0) - (g == 0) - (t.compose(t.inverse(g), h) == 0);
  return std::exp(-beta * exponent);
}

TransferMatrix build_transfer(double beta, const GroupSpec& group) {
  if (group.order() * group.order() > kTransferGuard)
    throw GuardExceeded("transfer matrix of size |G|^2 = " + std::to_string(group.order() * group.order()) +
                        " exceeds the guard");
  TransferMatrix tm;
  tm.params = build_measure_params(beta, group);
  tm.order = group.order();
  const Eigen::Index n = static_cast<Eigen::Index>(tm.order);
  const double q = tm.params.q;
  tm.B.resize(n, n);
  for (Eigen::Index g = 0; g < n; ++g)
    for (Eigen::Index k = 0; k < n; ++k) tm.B(g, k) = g == 0 ? 1.0 : k == 0 ? q * q : k == g ? 1.0 : q;
  tm.D = tm.B;

  GroupTables t(group);
  tm.A.resize(n * n, n * n);
  for (std::uint32_t chi = 0; chi < tm.order; ++chi)
    for (std::uint32_t g = 0; g < tm.order; ++g)
      for (std::uint32_t zeta = 0; zeta < tm.order; ++zeta)
        for (std::uint32_t h = 0; h < tm.order; ++h)
          tm.A(static_cast<Eigen::Index>(tm.index(chi, g)), static_cast<Eigen::Index>(tm.index(zeta, h))) =
              transfer_factor(t, beta, g, h) * transfer_factor(t, beta, chi, zeta);
  return tm;
}

DeterminantCheck det_closed_form_check(double beta, const GroupSpec& group) {
  const TransferMatrix tm = build_transfer(beta, group);
  const double q = tm.params.q;
  const double n = static_cast<double>(group.order());
  DeterminantCheck d;
  d.det_B = tm.B.partialPivLu().determinant();
  d.det_B_formula = std::pow(1.0 - q, n - 1.0) * (1.0 + (n - 1.0) * q);
  d.residual = std::abs(d.det_B - d.det_B_formula);
  d.det_A = tm.A.partialPivLu().determinant();
  d.det_A_formula = std::pow(d.det_B_formula, 2.0 * n);
  d.det_A_residual = std::abs(d.det_A - d.det_A_formula);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(tm.A);
  const auto& s = svd.singularValues();
  d.inverse_condition = s(s.size() - 1) / s(0);
  return d;
}

namespace {

struct PowerResult {
  double value = 0.0;
  Eigen::VectorXd vector;
  int iterations = 0;
  bool converged = false;
};

PowerResult power_iteration(const Eigen::MatrixXd& a, Eigen::VectorXd v, double rel_tol, int max_iter) {
  PowerResult r;
  v /= v.norm();
  for (int it = 1; it <= max_iter; ++it) {
    Eigen::VectorXd w = a * v;
    const double norm = w.norm();
    r.iterations = it;
    if (norm == 0.0) {
      r.value = 0.0;
      r.vector = v;
      r.converged = true;
      return r;
    }
    w /= norm;
    const double change = (w - v).lpNorm<Eigen::Infinity>();
    v = w;
    if (std::abs(norm - r.value) <= rel_tol * norm && change <= rel_tol) {
      r.value = norm;
      r.vector = v;
      r.converged = true;
      return r;
    }
    r.value = norm;
  }
  r.vector = v;
  return r;
}

}  // namespace

PerronFrobenius pf_eigen(const Eigen::MatrixXd& a, double rel_tol, int max_iter) {
  if (a.rows() != a.cols() || a.rows() == 0) throw std::invalid_argument("pf_eigen needs a non-empty square matrix");
  if (!(a.array() > 0.0).all()) throw std::invalid_argument("pf_eigen needs a strictly positive matrix");
  const Eigen::VectorXd start = Eigen::VectorXd::Ones(a.rows());
  const PowerResult right = power_iteration(a, start, rel_tol, max_iter);
  if (!right.converged) throw std::runtime_error("power iteration did not converge");
  const PowerResult left = power_iteration(a.transpose(), start, rel_tol, max_iter);
  if (!left.converged) throw std::runtime_error("power iteration did not converge");

  PerronFrobenius pf;
  pf.eigenvalue = (a * right.vector).dot(right.vector) / right.vector.squaredNorm();
  pf.vector = right.vector / right.vector.sum();
  pf.iterations = right.iterations;

  // Deflate the Perron pair and estimate the next spectral radius.
  const Eigen::MatrixXd deflated =
      a - pf.eigenvalue * right.vector * left.vector.transpose() / left.vector.dot(right.vector);
  Eigen::VectorXd probe(a.rows());
  for (Eigen::Index i = 0; i < probe.size(); ++i) probe(i) = 1.0 + 0.1 * static_cast<double>(i % 7) - 0.05 * (i % 3);
  const PowerResult second = power_iteration(deflated, probe, 1e-10, 20'000);
  pf.gap_ratio = second.value / pf.eigenvalue;
  return pf;
}

Eigen::VectorXd cylinder_vector(const TransferMatrix& a, int n) {
  const MeasureParams& p = a.params;
  const double level = std::pow(p.nu_neutral * p.nu_neutral, n - 1);
  Eigen::VectorXd u(static_cast<Eigen::Index>(a.order * a.order));
  for (std::uint32_t chi = 0; chi < a.order; ++chi)
    for (std::uint32_t g = 0; g < a.order; ++g)
      u(static_cast<Eigen::Index>(a.index(chi, g))) = p.weight(chi) * p.weight(g) * level;
  return u;
}

std::vector<SiteId> recursion_window(int n) {
  std::vector<SiteId> w;
  for (int i = 0; i < n; ++i) {
    w.push_back(SiteId::vertex(i, 0));
    w.push_back(SiteId::face(i, 0));
  }
  return w;
}

RecursionReport recursion_check(double beta, const GroupSpec& group, int n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  const TransferMatrix tm = build_transfer(beta, group);
  RecursionReport r;
  for (int n = 1; n <= n_max; ++n) {
    const Eigen::VectorXd lhs = cylinder_vector(tm, n);
    const Eigen::VectorXd rhs = tm.A * cylinder_vector(tm, n + 1);
    r.residual = std::max(r.residual, (lhs - rhs).lpNorm<Eigen::Infinity>());
  }
  r.level_one_sum = cylinder_vector(tm, 1).sum();

  GroupTables t(group);
  const std::uint32_t order = t.order();
  for (int n = 1; n <= 2; ++n) {
    const auto window = recursion_window(n + 1);
    const SiteId vn(SiteId::vertex(n, 0)), fn(SiteId::face(n, 0));
    const Eigen::VectorXd closed = cylinder_vector(tm, n);
    Eigen::VectorXd marginal = Eigen::VectorXd::Zero(closed.size());
    Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(closed.size(), closed.size());
    for (const auto& c : enumerate_configurations(group, window)) {
      bool neutral_middle = true;
      for (int i = 1; i < n; ++i)
        neutral_middle = neutral_middle && c.index_at(SiteId::vertex(i, 0)) == 0 && c.index_at(SiteId::face(i, 0)) == 0;
      if (!neutral_middle) continue;
      const double m = cylinder_measure(tm.params, window, c);
      const std::uint32_t chi = c.index_at(SiteId::vertex(0, 0)), g = c.index_at(SiteId::face(0, 0));
      marginal(static_cast<Eigen::Index>(tm.index(chi, g))) += m;
      mass(static_cast<Eigen::Index>(tm.index(chi, g)), static_cast<Eigen::Index>(tm.index(c.index_at(vn), c.index_at(fn)))) = m;
    }
    r.brute_force_residual = std::max(r.brute_force_residual, (marginal - closed).lpNorm<Eigen::Infinity>());

    // mu(C(n+1; chi, g; chi', g')) = A(chi, g; chi chi', g g') mu(C(n+1, chi chi', g g')).
    const Eigen::VectorXd next = cylinder_vector(tm, n + 1);
    for (std::uint32_t chi = 0; chi < order; ++chi)
      for (std::uint32_t g = 0; g < order; ++g)
        for (std::uint32_t chi2 = 0; chi2 < order; ++chi2)
          for (std::uint32_t g2 = 0; g2 < order; ++g2) {
            const auto row = static_cast<Eigen::Index>(tm.index(chi, g));
            const auto col = static_cast<Eigen::Index>(tm.index(t.compose(chi, chi2), t.compose(g, g2)));
            const double predicted = tm.A(row, col) * next(col);
            r.entry_residual = std::max(
                r.entry_residual, std::abs(mass(row, static_cast<Eigen::Index>(tm.index(chi2, g2))) - predicted));
          }
  }
  return r;
}

std::vector<ExpectationRow> expectation_table(double beta, const GroupSpec& group) {
  const MeasureParams p = build_measure_params(beta, group);
  std::vector<ExpectationRow> rows;
  for (SiteKind kind : {SiteKind::vertex, SiteKind::face}) {
    rows.push_back({kind, true, p.nu_neutral});
    rows.push_back({kind, false, p.nu_excited});
  }
  return rows;
}

ZeroTemperatureScan zero_t_scan(const GroupSpec& group, const std::vector<double>& betas) {
  for (std::size_t i = 1; i < betas.size(); ++i)
    if (!(betas[i] > betas[i - 1])) throw std::invalid_argument("beta grid must be strictly increasing");
  ZeroTemperatureScan scan;
  const double n = static_cast<double>(group.order());
  for (double beta : betas) {
    const MeasureParams p = build_measure_params(beta, group);
    // 1 - s_beta, written without the cancellation.
    const double defect = (n - 1.0) * p.q / (1.0 + (n - 1.0) * p.q);
    const ZeroTemperaturePoint pt{beta, p.nu_neutral, defect, (n - 1.0) * std::exp(-beta)};
    scan.within_bound = scan.within_bound && pt.defect <= pt.bound;
    if (!scan.points.empty()) scan.strictly_decreasing = scan.strictly_decreasing && pt.defect < scan.points.back().defect;
    scan.points.push_back(pt);
  }
  return scan;
}

}  // namespace kitaev
