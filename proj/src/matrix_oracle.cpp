#include "kitaev/matrix_oracle.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace kitaev {

std::size_t basis_dimension(const OperatorSpace& space, std::size_t guard) {
  std::size_t dim = 1;
  for (std::size_t e = 0; e < space.num_edges(); ++e) {
    if (dim > guard / space.order())
      throw GuardExceeded("Hilbert dimension " + std::to_string(space.order()) + "^" +
                          std::to_string(space.num_edges()) + " exceeds the guard " + std::to_string(guard));
    dim *= space.order();
  }
  return dim;
}

std::size_t basis_index(const OperatorSpace& space, const Connection& c) {
  std::size_t idx = 0;
  for (std::uint32_t v : c.values) idx = idx * space.order() + v;
  return idx;
}

Connection basis_connection(const OperatorSpace& space, std::size_t index) {
  Connection c{std::vector<std::uint32_t>(space.num_edges())};
  for (std::size_t e = space.num_edges(); e-- > 0;) {
    c.values[e] = static_cast<std::uint32_t>(index % space.order());
    index /= space.order();
  }
  return c;
}

std::size_t apply_term(const OperatorSpace& space, const Term& term, const Connection& c, std::complex<double>& factor) {
  const GroupTables& t = space.tables();
  std::uint32_t k = 0;
  std::size_t idx = 0;
  for (std::size_t e = 0; e < c.values.size(); ++e) {
    const std::uint32_t code = term.signature[e];
    k += t.pairing(space.code_chi(code), c.values[e]);
    idx = idx * space.order() + t.compose(space.code_g(code), c.values[e]);
  }
  factor = term.coeff * t.root(k % static_cast<std::uint32_t>(t.exponent()));
  return idx;
}

DenseOperator to_dense(const OperatorSum& x, std::size_t guard) {
  const OperatorSpace& space = *x.space();
  const std::size_t dim = basis_dimension(space, guard);
  DenseOperator m = DenseOperator::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    const Connection c = basis_connection(space, col);
    for (const auto& term : x.terms()) {
      std::complex<double> f;
      const std::size_t row = apply_term(space, term, c, f);
      m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += f;
    }
  }
  return m;
}

SparseOperator to_sparse(const OperatorSum& x, std::size_t guard) {
  const OperatorSpace& space = *x.space();
  const std::size_t dim = basis_dimension(space, guard);
  std::vector<Eigen::Triplet<std::complex<double>>> trips;
  trips.reserve(dim * x.size());
  for (std::size_t col = 0; col < dim; ++col) {
    const Connection c = basis_connection(space, col);
    for (const auto& term : x.terms()) {
      std::complex<double> f;
      const std::size_t row = apply_term(space, term, c, f);
      trips.emplace_back(static_cast<int>(row), static_cast<int>(col), f);
    }
  }
  SparseOperator m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setFromTriplets(trips.begin(), trips.end());
  m.prune(std::complex<double>(0.0, 0.0), 0.0);
  return m;
}

double operator_norm(const DenseOperator& m) {
  if (m.size() == 0) return 0.0;
  const DenseOperator g = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<DenseOperator> es(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double operator_norm(const SparseOperator& m, double rel_tol, int max_iter) {
  if (m.nonZeros() == 0) return 0.0;
  const SparseOperator adj = m.adjoint();
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> n01;
  Eigen::VectorXcd v(m.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = {n01(rng), n01(rng)};
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXcd w = adj * (m * v);
    const double next = w.norm();
    if (next == 0.0) return 0.0;
    v = w / next;
    if (std::abs(next - lambda) <= rel_tol * next) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(lambda);
}

DenseOperator hermitian_gibbs(const DenseOperator& h, double beta) {
  Eigen::SelfAdjointEigenSolver<DenseOperator> es(h);
  const Eigen::VectorXd w = (-beta * es.eigenvalues().array()).exp();
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

SparseOperator integer_spectrum_gibbs(const SparseOperator& h, double beta, int max_level, double tol) {
  const Eigen::Index n = h.rows();
  SparseOperator id(n, n);
  id.setIdentity();
  std::vector<SparseOperator> shifted;
  for (int j = 0; j <= max_level; ++j) shifted.push_back(h - static_cast<double>(j) * id);

  SparseOperator annihilator = id;
  for (const auto& s : shifted) annihilator = (annihilator * s).pruned(1e-300);
  double worst = 0.0;
  for (int k = 0; k < annihilator.outerSize(); ++k)
    for (SparseOperator::InnerIterator it(annihilator, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  if (worst > tol) throw std::runtime_error("spectrum is not contained in {0, ..., " + std::to_string(max_level) + "}");

  SparseOperator out(n, n);
  for (int k = 0; k <= max_level; ++k) {
    SparseOperator lk = id;
    for (int j = 0; j <= max_level; ++j)
      if (j != k) lk = (lk * shifted[static_cast<std::size_t>(j)]).pruned(1e-300) * (1.0 / (k - j));
    out += std::exp(-beta * k) * lk;
  }
  return out;
}

}  // namespace kitaev
