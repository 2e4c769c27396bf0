#include "kitaev/operator_sum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace kitaev {

namespace {

struct SignatureHash {
  std::size_t operator()(const Signature& s) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::uint32_t c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

struct Accumulator {
  std::complex<double> sum{0.0, 0.0};
  double magnitude = 0.0;
};

using AccumulatorMap = std::unordered_map<Signature, Accumulator, SignatureHash>;

void require_same_space(const OperatorSum& x, const OperatorSum& y) {
  if (x.space() != y.space() && (x.space()->group() != y.space()->group() ||
                                 x.space()->num_edges() != y.space()->num_edges()))
    throw SpecMismatch("operator sums live on different spaces");
}

std::vector<Term> finish(AccumulatorMap&& acc) {
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [sig, a] : acc) {
    if (a.sum == std::complex<double>(0.0, 0.0)) continue;
    if (std::abs(a.sum) <= OperatorSum::kCancellation * a.magnitude) continue;
    out.push_back({sig, a.sum});
  }
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.signature < b.signature; });
  return out;
}

// Product of two per-edge codes; returns the phase numerator added.
inline std::uint32_t edge_product(const OperatorSpace& space, std::uint32_t a, std::uint32_t b, std::uint32_t& out) {
  const GroupTables& t = space.tables();
  const std::uint32_t g1 = space.code_g(a), c1 = space.code_chi(a);
  const std::uint32_t g2 = space.code_g(b), c2 = space.code_chi(b);
  out = space.encode(t.compose(g1, g2), t.compose(c1, c2));
  return t.pairing(c1, g2);
}

}  // namespace

OperatorSpace::OperatorSpace(LatticePatch patch, GroupSpec group)
    : patch_(std::move(patch)), group_(std::move(group)), tables_(group_) {}

double OperatorSpace::dimension() const {
  return std::pow(static_cast<double>(order()), static_cast<double>(num_edges()));
}

Monomial identity_monomial(const OperatorSpace& space) { return {Phase::one(), Signature(space.num_edges(), 0)}; }

Monomial multiply(const OperatorSpace& space, const Monomial& a, const Monomial& b) {
  if (a.signature.size() != space.num_edges() || b.signature.size() != space.num_edges())
    throw SpecMismatch("monomial does not match the operator space");
  Monomial out{a.phase * b.phase, Signature(space.num_edges())};
  std::int64_t k = 0;
  for (std::size_t e = 0; e < space.num_edges(); ++e) k += edge_product(space, a.signature[e], b.signature[e], out.signature[e]);
  out.phase *= Phase(k, space.tables().exponent());
  return out;
}

Monomial adjoint(const OperatorSpace& space, const Monomial& m) {
  // (T_g M_chi)^* = M_{chi^-1} T_{g^-1} = <chi, g> T_{g^-1} M_{chi^-1}
  const GroupTables& t = space.tables();
  Monomial out{m.phase.inverse(), Signature(m.signature.size())};
  std::int64_t k = 0;
  for (std::size_t e = 0; e < m.signature.size(); ++e) {
    const std::uint32_t g = space.code_g(m.signature[e]), chi = space.code_chi(m.signature[e]);
    k += t.pairing(chi, g);
    out.signature[e] = space.encode(t.inverse(g), t.inverse(chi));
  }
  out.phase *= Phase(k, t.exponent());
  return out;
}

Monomial power(const OperatorSpace& space, const Monomial& m, int k) {
  Monomial base = k < 0 ? adjoint(space, m) : m;
  Monomial out = identity_monomial(space);
  for (int i = 0; i < std::abs(k); ++i) out = multiply(space, out, base);
  return out;
}

Phase commutation_phase(const OperatorSpace& space, const Monomial& a, const Monomial& b) {
  const Monomial ab = multiply(space, a, b);
  const Monomial ba = multiply(space, b, a);
  return ab.phase * ba.phase.inverse();
}

bool is_identity(const Monomial& m) {
  return m.phase.is_one() && std::all_of(m.signature.begin(), m.signature.end(), [](std::uint32_t c) { return c == 0; });
}

OperatorSum OperatorSum::identity(SpacePtr space) {
  return from_monomial(space, identity_monomial(*space));
}

OperatorSum OperatorSum::from_monomial(SpacePtr space, const Monomial& m, std::complex<double> coeff) {
  return from_terms(space, {{m.signature, coeff * m.phase.value()}});
}

OperatorSum OperatorSum::from_terms(SpacePtr space, std::vector<Term> terms) {
  AccumulatorMap acc;
  for (auto& t : terms) {
    if (t.signature.size() != space->num_edges()) throw SpecMismatch("term does not match the operator space");
    auto& a = acc[t.signature];
    a.sum += t.coeff;
    a.magnitude += std::abs(t.coeff);
  }
  OperatorSum out(std::move(space));
  out.terms_ = finish(std::move(acc));
  return out;
}

std::complex<double> OperatorSum::coefficient(const Signature& sig) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), sig,
                             [](const Term& t, const Signature& s) { return t.signature < s; });
  if (it != terms_.end() && it->signature == sig) return it->coeff;
  return 0.0;
}

std::complex<double> OperatorSum::normalized_trace() const {
  return coefficient(Signature(space_->num_edges(), 0));
}

std::complex<double> OperatorSum::trace() const { return normalized_trace() * space_->dimension(); }

OperatorSum OperatorSum::adjoint() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    const Monomial m = kitaev::adjoint(*space_, Monomial{Phase::one(), t.signature});
    out.push_back({m.signature, std::conj(t.coeff) * m.phase.value()});
  }
  return from_terms(space_, std::move(out));
}

std::vector<std::size_t> OperatorSum::support() const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < space_->num_edges(); ++e)
    if (std::any_of(terms_.begin(), terms_.end(), [e](const Term& t) { return t.signature[e] != 0; })) out.push_back(e);
  return out;
}

OperatorSum OperatorSum::operator+(const OperatorSum& other) const {
  require_same_space(*this, other);
  std::vector<Term> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return from_terms(space_, std::move(all));
}

OperatorSum OperatorSum::operator-(const OperatorSum& other) const { return *this + (-other); }

OperatorSum OperatorSum::operator-() const { return *this * -1.0; }

OperatorSum OperatorSum::operator*(std::complex<double> s) const {
  if (s == std::complex<double>(0.0, 0.0)) return OperatorSum(space_);
  OperatorSum out(space_);
  out.terms_ = terms_;
  for (auto& t : out.terms_) t.coeff *= s;
  return out;
}

OperatorSum multiply(const OperatorSum& x, const OperatorSum& y, unsigned threads) {
  require_same_space(x, y);
  const OperatorSpace& space = *x.space();
  const auto& xs = x.terms();
  const auto& ys = y.terms();
  constexpr std::size_t kChunk = 64;
  const std::size_t num_chunks = (xs.size() + kChunk - 1) / kChunk;
  std::vector<AccumulatorMap> partial(num_chunks);

  auto run_chunk = [&](std::size_t c) {
    AccumulatorMap& acc = partial[c];
    const std::size_t begin = c * kChunk, end = std::min(xs.size(), begin + kChunk);
    Signature sig(space.num_edges());
    for (std::size_t i = begin; i < end; ++i) {
      for (const auto& b : ys) {
        std::uint32_t k = 0;
        for (std::size_t e = 0; e < sig.size(); ++e) k += edge_product(space, xs[i].signature[e], b.signature[e], sig[e]);
        const std::complex<double> c_ab =
            xs[i].coeff * b.coeff * space.tables().root(k % static_cast<std::uint32_t>(space.tables().exponent()));
        auto& a = acc[sig];
        a.sum += c_ab;
        a.magnitude += std::abs(c_ab);
      }
    }
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(num_chunks)));
  if (threads <= 1) {
    for (std::size_t c = 0; c < num_chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t c = t; c < num_chunks; c += threads) run_chunk(c);
      });
    for (auto& th : pool) th.join();
  }

  AccumulatorMap total;
  for (auto& chunk : partial) {
    // Deterministic merge: iterate each chunk's keys in sorted order.
    std::vector<std::pair<const Signature*, Accumulator*>> items;
    items.reserve(chunk.size());
    for (auto& [sig, a] : chunk) items.push_back({&sig, &a});
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return *a.first < *b.first; });
    for (const auto& [sig, a] : items) {
      auto& t = total[*sig];
      t.sum += a->sum;
      t.magnitude += a->magnitude;
    }
    AccumulatorMap().swap(chunk);
  }
  OperatorSum out(x.space());
  return OperatorSum::from_terms(x.space(), finish(std::move(total)));
}

std::complex<double> normalized_trace_of_product(const OperatorSum& x, const OperatorSum& y) {
  require_same_space(x, y);
  const OperatorSpace& space = *x.space();
  const GroupTables& t = space.tables();
  // x_i * y_j is proportional to the identity iff sig(y_j) is the inverse of sig(x_i).
  std::complex<double> sum = 0.0;
  Signature want(space.num_edges());
  for (const auto& a : x.terms()) {
    for (std::size_t e = 0; e < want.size(); ++e)
      want[e] = space.encode(t.inverse(space.code_g(a.signature[e])), t.inverse(space.code_chi(a.signature[e])));
    const std::complex<double> cb = y.coefficient(want);
    if (cb == std::complex<double>(0.0, 0.0)) continue;
    std::uint32_t k = 0;
    for (std::size_t e = 0; e < want.size(); ++e) k += t.pairing(space.code_chi(a.signature[e]), space.code_g(want[e]));
    sum += a.coeff * cb * t.root(k % static_cast<std::uint32_t>(t.exponent()));
  }
  return sum;
}

double max_coefficient_difference(const OperatorSum& x, const OperatorSum& y) {
  const OperatorSum d = x - y;
  double m = 0.0;
  // Raw difference, including terms dropped as cancelled.
  for (const auto& t : x.terms()) m = std::max(m, std::abs(t.coeff - y.coefficient(t.signature)));
  for (const auto& t : y.terms()) m = std::max(m, std::abs(t.coeff - x.coefficient(t.signature)));
  for (const auto& t : d.terms()) m = std::max(m, std::abs(t.coeff));
  return m;
}

double coefficient_l1_norm(const OperatorSum& x) {
  double s = 0.0;
  for (const auto& t : x.terms()) s += std::abs(t.coeff);
  return s;
}

}  // namespace kitaev
