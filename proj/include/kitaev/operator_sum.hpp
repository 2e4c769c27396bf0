#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "kitaev/group.hpp"
#include "kitaev/lattice.hpp"

namespace kitaev {

/// Hilbert space of a patch: one copy of l^2(G) per edge.
class OperatorSpace {
 public:
  OperatorSpace(LatticePatch patch, GroupSpec group);

  static std::shared_ptr<const OperatorSpace> create(LatticePatch patch, GroupSpec group) {
    return std::make_shared<const OperatorSpace>(std::move(patch), std::move(group));
  }

  const LatticePatch& patch() const { return patch_; }
  const GroupSpec& group() const { return group_; }
  const GroupTables& tables() const { return tables_; }
  std::size_t num_edges() const { return patch_.num_edges(); }
  std::uint32_t order() const { return tables_.order(); }
  /// |G|^{|edges|} as a double; may exceed any integer type.
  double dimension() const;

  /// Per-edge code of T_g M_chi.
  std::uint32_t encode(std::uint32_t g, std::uint32_t chi) const { return g * order() + chi; }
  std::uint32_t code_g(std::uint32_t code) const { return code / order(); }
  std::uint32_t code_chi(std::uint32_t code) const { return code % order(); }

 private:
  LatticePatch patch_;
  GroupSpec group_;
  GroupTables tables_;
};

using SpacePtr = std::shared_ptr<const OperatorSpace>;

/// Per-edge factors of prod_e T_{g_e} M_{chi_e}, one code per patch edge.
/// All-zero is the identity.
using Signature = std::vector<std::uint32_t>;

/// Exact unitary monomial phase * prod_e T_{g_e} M_{chi_e}. On a basis
/// connection |c> it acts as phase * prod_e <chi_e, c(e)> |e -> g_e c(e)>.
struct Monomial {
  Phase phase;
  Signature signature;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

Monomial identity_monomial(const OperatorSpace& space);
/// Product a*b, using (g1,chi1)(g2,chi2) = <chi1,g2> (g1 g2, chi1 chi2) per edge.
Monomial multiply(const OperatorSpace& space, const Monomial& a, const Monomial& b);
Monomial adjoint(const OperatorSpace& space, const Monomial& m);
Monomial power(const OperatorSpace& space, const Monomial& m, int k);
/// Phase p with a*b = p * b*a.
Phase commutation_phase(const OperatorSpace& space, const Monomial& a, const Monomial& b);
bool is_identity(const Monomial& m);

struct Term {
  Signature signature;
  std::complex<double> coeff;
};

/// Finite linear combination of monomials in canonical form: signatures
/// unique and sorted, no zero coefficients. Coefficients that cancel to
/// within kCancellation of the magnitudes merged into them are dropped.
class OperatorSum {
 public:
  static constexpr double kCancellation = 1e-13;

  explicit OperatorSum(SpacePtr space) : space_(std::move(space)) {}

  static OperatorSum identity(SpacePtr space);
  static OperatorSum from_monomial(SpacePtr space, const Monomial& m, std::complex<double> coeff = 1.0);
  static OperatorSum from_terms(SpacePtr space, std::vector<Term> terms);

  const SpacePtr& space() const { return space_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  std::complex<double> coefficient(const Signature& sig) const;

  /// Matrix trace on the full patch Hilbert space.
  std::complex<double> trace() const;
  /// Trace normalized so that the identity has trace one.
  std::complex<double> normalized_trace() const;

  OperatorSum adjoint() const;
  /// Edges on which some term acts non-trivially.
  std::vector<std::size_t> support() const;

  OperatorSum operator+(const OperatorSum& other) const;
  OperatorSum operator-(const OperatorSum& other) const;
  OperatorSum operator-() const;
  OperatorSum operator*(std::complex<double> s) const;
  friend OperatorSum operator*(std::complex<double> s, const OperatorSum& x) { return x * s; }

 private:
  SpacePtr space_;
  std::vector<Term> terms_;
};

/// Exact distributed product. Work is split into fixed-size chunks of the
/// left factor's terms and partial sums are merged in chunk order, so the
/// result is bit-identical for any thread count.
OperatorSum multiply(const OperatorSum& x, const OperatorSum& y, unsigned threads = 1);
inline OperatorSum operator*(const OperatorSum& x, const OperatorSum& y) { return multiply(x, y); }

/// Normalized trace of x*y without forming the product.
std::complex<double> normalized_trace_of_product(const OperatorSum& x, const OperatorSum& y);

/// Largest coefficient difference between two canonical sums.
double max_coefficient_difference(const OperatorSum& x, const OperatorSum& y);
/// Sum of |coeff|, an upper bound on the operator norm.
double coefficient_l1_norm(const OperatorSum& x);

}  // namespace kitaev
