#include "kitaev/group.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace kitaev {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

template <class L>
L combine(const GroupSpec& spec, const L& a, const L& b) {
  spec.validate(a.residues);
  spec.validate(b.residues);
  L out{std::vector<int>(spec.rank())};
  for (std::size_t i = 0; i < spec.rank(); ++i)
    out.residues[i] = (a.residues[i] + b.residues[i]) % spec.orders()[i];
  return out;
}

template <class L>
L scale(const GroupSpec& spec, const L& a, int k) {
  spec.validate(a.residues);
  L out{std::vector<int>(spec.rank())};
  for (std::size_t i = 0; i < spec.rank(); ++i) {
    const std::int64_t n = spec.orders()[i];
    out.residues[i] = static_cast<int>(floor_mod(static_cast<std::int64_t>(a.residues[i]) * k, n));
  }
  return out;
}

template <class L>
std::vector<L> enumerate_labels(const GroupSpec& spec) {
  if (spec.order() > GroupSpec::kEnumerationGuard)
    throw GuardExceeded("group of order " + std::to_string(spec.order()) + " exceeds the enumeration guard");
  std::vector<L> out;
  out.reserve(spec.order());
  for (std::uint32_t i = 0; i < spec.order(); ++i) out.push_back(L{spec.residues_at(i)});
  return out;
}

}  // namespace

Phase::Phase(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw std::invalid_argument("phase denominator must be positive");
  num = floor_mod(num, den);
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Phase Phase::operator*(const Phase& other) const {
  const std::int64_t l = std::lcm(den_, other.den_);
  return Phase(num_ * (l / den_) + other.num_ * (l / other.den_), l);
}

Phase Phase::pow(std::int64_t k) const { return Phase(floor_mod(num_ * floor_mod(k, den_), den_), den_); }

std::complex<double> Phase::value() const { return root_of_unity(num_, den_); }

std::complex<double> root_of_unity(std::int64_t k, std::int64_t n) {
  k = floor_mod(k, n);
  if (k == 0) return {1.0, 0.0};
  if (4 * k == n) return {0.0, 1.0};
  if (2 * k == n) return {-1.0, 0.0};
  if (4 * k == 3 * n) return {0.0, -1.0};
  // Upper half-turn only; the rest by conjugation.
  if (2 * k > n) return std::conj(root_of_unity(n - k, n));
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

GroupSpec::GroupSpec(std::vector<int> orders) : orders_(std::move(orders)) {
  if (orders_.empty()) throw std::invalid_argument("group must have at least one cyclic factor");
  for (int n : orders_) {
    if (n < 2) throw std::invalid_argument("cyclic order " + std::to_string(n) + " < 2: the group must be non-trivial");
    if (order_ > std::numeric_limits<std::uint32_t>::max() / static_cast<std::size_t>(n))
      throw GuardExceeded("group order overflows 32-bit indexing");
    order_ *= static_cast<std::size_t>(n);
    exponent_ = std::lcm(exponent_, static_cast<std::int64_t>(n));
  }
}

void GroupSpec::validate(const std::vector<int>& residues) const {
  if (residues.size() != rank()) throw SpecMismatch("label of rank " + std::to_string(residues.size()) + " used with group " + to_string());
  for (std::size_t i = 0; i < rank(); ++i)
    if (residues[i] < 0 || residues[i] >= orders_[i])
      throw SpecMismatch("residue " + std::to_string(residues[i]) + " out of range for group " + to_string());
}

GroupElement GroupSpec::compose(const GroupElement& a, const GroupElement& b) const { return combine(*this, a, b); }
Character GroupSpec::compose(const Character& a, const Character& b) const { return combine(*this, a, b); }
GroupElement GroupSpec::inverse(const GroupElement& a) const { return scale(*this, a, -1); }
Character GroupSpec::inverse(const Character& a) const { return scale(*this, a, -1); }
GroupElement GroupSpec::power(const GroupElement& a, int k) const { return scale(*this, a, k); }
Character GroupSpec::power(const Character& a, int k) const { return scale(*this, a, k); }

bool GroupSpec::is_neutral(const GroupElement& a) const {
  validate(a.residues);
  return std::all_of(a.residues.begin(), a.residues.end(), [](int r) { return r == 0; });
}

bool GroupSpec::is_neutral(const Character& a) const {
  validate(a.residues);
  return std::all_of(a.residues.begin(), a.residues.end(), [](int r) { return r == 0; });
}

Phase GroupSpec::pairing(const Character& chi, const GroupElement& g) const {
  validate(chi.residues);
  validate(g.residues);
  std::int64_t num = 0;
  for (std::size_t i = 0; i < rank(); ++i)
    num += static_cast<std::int64_t>(chi.residues[i]) * g.residues[i] * (exponent_ / orders_[i]);
  return Phase(num, exponent_);
}

std::vector<GroupElement> GroupSpec::elements() const { return enumerate_labels<GroupElement>(*this); }
std::vector<Character> GroupSpec::characters() const { return enumerate_labels<Character>(*this); }

std::uint32_t GroupSpec::index_of(const std::vector<int>& residues) const {
  validate(residues);
  std::uint32_t idx = 0;
  for (std::size_t i = 0; i < rank(); ++i) idx = idx * static_cast<std::uint32_t>(orders_[i]) + static_cast<std::uint32_t>(residues[i]);
  return idx;
}

std::vector<int> GroupSpec::residues_at(std::uint32_t index) const {
  if (index >= order_) throw SpecMismatch("index " + std::to_string(index) + " out of range for group " + to_string());
  std::vector<int> r(rank());
  for (std::size_t i = rank(); i-- > 0;) {
    r[i] = static_cast<int>(index % static_cast<std::uint32_t>(orders_[i]));
    index /= static_cast<std::uint32_t>(orders_[i]);
  }
  return r;
}

std::string GroupSpec::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rank(); ++i) os << (i ? "x" : "") << "Z" << orders_[i];
  return os.str();
}

GroupTables::GroupTables(const GroupSpec& spec)
    : order_(static_cast<std::uint32_t>(spec.order())), exponent_(spec.exponent()) {
  if (spec.order() > kMaxOrder)
    throw GuardExceeded("group of order " + std::to_string(spec.order()) + " exceeds the operator-engine table guard");
  std::vector<std::vector<int>> labels;
  labels.reserve(order_);
  for (std::uint32_t i = 0; i < order_; ++i) labels.push_back(spec.residues_at(i));

  compose_.resize(static_cast<std::size_t>(order_) * order_);
  pairing_.resize(static_cast<std::size_t>(order_) * order_);
  inverse_.resize(order_);
  for (std::uint32_t a = 0; a < order_; ++a) {
    inverse_[a] = spec.index_of(spec.inverse(GroupElement{labels[a]}).residues);
    for (std::uint32_t b = 0; b < order_; ++b) {
      compose_[a * order_ + b] = spec.index_of(spec.compose(GroupElement{labels[a]}, GroupElement{labels[b]}).residues);
      const Phase p = spec.pairing(Character{labels[a]}, GroupElement{labels[b]});
      pairing_[a * order_ + b] = static_cast<std::uint32_t>(p.numerator() * (exponent_ / p.denominator()));
    }
  }
  roots_.resize(static_cast<std::size_t>(exponent_));
  for (std::int64_t k = 0; k < exponent_; ++k) roots_[k] = root_of_unity(k, exponent_);
}

std::uint32_t GroupTables::power(std::uint32_t a, int k) const {
  if (k < 0) {
    a = inverse(a);
    k = -k;
  }
  std::uint32_t out = 0;
  for (int i = 0; i < k; ++i) out = compose(out, a);
  return out;
}

}  // namespace kitaev
