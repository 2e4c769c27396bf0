#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "kitaev/operator_sum.hpp"

namespace kitaev {

/// G-connection on a patch: element index per edge, in patch edge order.
struct Connection {
  std::vector<std::uint32_t> values;

  friend bool operator==(const Connection&, const Connection&) = default;
};

using DenseOperator = Eigen::MatrixXcd;
using SparseOperator = Eigen::SparseMatrix<std::complex<double>, Eigen::RowMajor>;

inline constexpr std::size_t kDenseGuard = std::size_t{1} << 14;
inline constexpr std::size_t kSparseGuard = std::size_t{1} << 20;

/// |G|^{|edges|}; throws GuardExceeded above the guard.
std::size_t basis_dimension(const OperatorSpace& space, std::size_t guard);

/// Basis index with the first patch edge as the most significant digit.
std::size_t basis_index(const OperatorSpace& space, const Connection& c);
Connection basis_connection(const OperatorSpace& space, std::size_t index);

/// Image of a basis vector under one monomial: returns the target index
/// and writes the scalar factor.
std::size_t apply_term(const OperatorSpace& space, const Term& term, const Connection& c, std::complex<double>& factor);

DenseOperator to_dense(const OperatorSum& x, std::size_t guard = kDenseGuard);
SparseOperator to_sparse(const OperatorSum& x, std::size_t guard = kSparseGuard);

/// Largest singular value.
double operator_norm(const DenseOperator& m);
/// Largest singular value by power iteration on m^* m.
double operator_norm(const SparseOperator& m, double rel_tol = 1e-13, int max_iter = 10000);

/// exp(-beta * h) for Hermitian h by eigendecomposition.
DenseOperator hermitian_gibbs(const DenseOperator& h, double beta);

/// exp(-beta * h) for a Hermitian h with spectrum inside {0, ..., max_level},
/// as sum_k e^{-beta k} L_k(h) with Lagrange interpolation projectors. Throws
/// std::runtime_error when prod_j (h - j) is not zero within tol.
SparseOperator integer_spectrum_gibbs(const SparseOperator& h, double beta, int max_level, double tol = 1e-9);

}  // namespace kitaev
