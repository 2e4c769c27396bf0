#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace kitaev {

/// Thrown when labels from different groups are combined.
class SpecMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an enumeration or brute-force guard would be exceeded.
class GuardExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Exact unit-modulus complex number exp(2*pi*i*num/den), stored as a
/// reduced fraction in [0, 1).
class Phase {
 public:
  Phase() = default;
  Phase(std::int64_t num, std::int64_t den);

  static Phase one() { return {}; }

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }
  bool is_one() const { return num_ == 0; }

  Phase operator*(const Phase& other) const;
  Phase& operator*=(const Phase& other) { return *this = *this * other; }
  Phase inverse() const { return Phase(-num_, den_); }
  Phase pow(std::int64_t k) const;

  std::complex<double> value() const;

  friend bool operator==(const Phase&, const Phase&) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// exp(2*pi*i*k/n) with the quarter-turns evaluated exactly.
std::complex<double> root_of_unity(std::int64_t k, std::int64_t n);

template <class Tag>
struct Label {
  std::vector<int> residues;

  friend bool operator==(const Label&, const Label&) = default;
  friend auto operator<=>(const Label&, const Label&) = default;
};

struct ElementTag {};
struct CharacterTag {};

/// g in G, stored as residues modulo the cyclic orders.
using GroupElement = Label<ElementTag>;
/// chi in the dual group, identified with G through the same residue vector.
using Character = Label<CharacterTag>;

/// Finite abelian group Z_{n_1} x ... x Z_{n_k}.
class GroupSpec {
 public:
  static constexpr std::size_t kEnumerationGuard = 1'000'000;

  explicit GroupSpec(std::vector<int> orders);

  const std::vector<int>& orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  std::size_t order() const { return order_; }
  /// Least common multiple of the cyclic orders; every pairing value is an
  /// exponent-th root of unity.
  std::int64_t exponent() const { return exponent_; }

  GroupElement neutral() const { return {std::vector<int>(rank(), 0)}; }
  Character trivial_character() const { return {std::vector<int>(rank(), 0)}; }

  GroupElement compose(const GroupElement& a, const GroupElement& b) const;
  Character compose(const Character& a, const Character& b) const;
  GroupElement inverse(const GroupElement& a) const;
  Character inverse(const Character& a) const;
  GroupElement power(const GroupElement& a, int k) const;
  Character power(const Character& a, int k) const;

  bool is_neutral(const GroupElement& a) const;
  bool is_neutral(const Character& a) const;

  /// <chi, g> = exp(2*pi*i * sum_j chi_j g_j / n_j).
  Phase pairing(const Character& chi, const GroupElement& g) const;

  /// Lexicographic order, neutral first. Throws GuardExceeded past
  /// kEnumerationGuard.
  std::vector<GroupElement> elements() const;
  std::vector<Character> characters() const;

  /// Position of a label in the enumeration order (mixed radix, last
  /// component fastest).
  std::uint32_t index_of(const std::vector<int>& residues) const;
  std::vector<int> residues_at(std::uint32_t index) const;
  GroupElement element_at(std::uint32_t index) const { return {residues_at(index)}; }
  Character character_at(std::uint32_t index) const { return {residues_at(index)}; }

  /// Throws SpecMismatch unless the residue vector belongs to this group.
  void validate(const std::vector<int>& residues) const;

  std::string to_string() const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) { return a.orders_ == b.orders_; }

 private:
  std::vector<int> orders_;
  std::size_t order_ = 1;
  std::int64_t exponent_ = 1;
};

/// Index-based multiplication, inversion and pairing tables for the hot
/// loops of the operator engine. Pairings are stored as numerators k of
/// k/exponent.
class GroupTables {
 public:
  static constexpr std::size_t kMaxOrder = 1024;

  explicit GroupTables(const GroupSpec& spec);

  std::uint32_t order() const { return order_; }
  std::int64_t exponent() const { return exponent_; }

  std::uint32_t compose(std::uint32_t a, std::uint32_t b) const { return compose_[a * order_ + b]; }
  std::uint32_t inverse(std::uint32_t a) const { return inverse_[a]; }
  std::uint32_t power(std::uint32_t a, int k) const;
  /// Numerator k such that <chi, g> = exp(2*pi*i*k/exponent).
  std::uint32_t pairing(std::uint32_t chi, std::uint32_t g) const { return pairing_[chi * order_ + g]; }
  const std::complex<double>& root(std::uint32_t k) const { return roots_[k]; }

 private:
  std::uint32_t order_;
  std::int64_t exponent_;
  std::vector<std::uint32_t> compose_;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::uint32_t> pairing_;
  std::vector<std::complex<double>> roots_;
};

}  // namespace kitaev
