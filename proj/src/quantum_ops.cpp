#include "kitaev/quantum_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kitaev {

namespace {

std::uint32_t element_index(const OperatorSpace& space, const std::vector<int>& residues) {
  space.group().validate(residues);
  return space.group().index_of(residues);
}

void require_interior(const OperatorSpace& space, const SiteId& w) {
  if (!space.patch().contains(w) || !space.patch().is_interior(w))
    throw std::invalid_argument("site " + to_string(w) + " is not interior to the patch");
}

Monomial with_factor(const OperatorSpace& space, Monomial m, const EdgeId& e, std::uint32_t g, std::uint32_t chi) {
  return multiply(space, m, Monomial{Phase::one(), [&] {
                                       Signature s(space.num_edges(), 0);
                                       s[space.patch().edge_index(e)] = space.encode(g, chi);
                                       return s;
                                     }()});
}

Monomial vertex_monomial(const OperatorSpace& space, const SiteId& v, std::uint32_t g) {
  Monomial m = identity_monomial(space);
  for (const auto& e : space.patch().incident_edges(v))
    m.signature[space.patch().edge_index(e)] = space.encode(space.tables().power(g, incidence_vertex(e, v)), 0);
  return m;
}

Monomial face_monomial(const OperatorSpace& space, const SiteId& f, std::uint32_t chi) {
  Monomial m = identity_monomial(space);
  for (const auto& e : space.patch().incident_edges(f))
    m.signature[space.patch().edge_index(e)] = space.encode(0, space.tables().power(chi, incidence_face(e, f)));
  return m;
}

std::string describe(const std::string& what, const SiteId& w, std::uint32_t a, std::uint32_t b) {
  return what + " at " + to_string(w) + " labels " + std::to_string(a) + "," + std::to_string(b);
}

}  // namespace

Monomial edge_translation(const OperatorSpace& space, const EdgeId& e, const GroupElement& g) {
  return with_factor(space, identity_monomial(space), e, element_index(space, g.residues), 0);
}

Monomial edge_multiplication(const OperatorSpace& space, const EdgeId& e, const Character& chi) {
  return with_factor(space, identity_monomial(space), e, 0, element_index(space, chi.residues));
}

Monomial vertex_operator(const OperatorSpace& space, const SiteId& v, const GroupElement& g) {
  if (!v.is_vertex()) throw std::invalid_argument("vertex_operator needs a vertex");
  require_interior(space, v);
  return vertex_monomial(space, v, element_index(space, g.residues));
}

Monomial face_operator(const OperatorSpace& space, const SiteId& f, const Character& chi) {
  if (!f.is_face()) throw std::invalid_argument("face_operator needs a face");
  require_interior(space, f);
  return face_monomial(space, f, element_index(space, chi.residues));
}

OperatorSum site_projector(const SpacePtr& space, const SiteId& w, std::uint32_t label) {
  require_interior(*space, w);
  const GroupTables& t = space->tables();
  const double norm = 1.0 / t.order();
  std::vector<Term> terms;
  for (std::uint32_t k = 0; k < t.order(); ++k) {
    // Vertex: conj(chi(g)) A^g with chi = label, g = k. Face: conj(chi(g)) B^chi with chi = k, g = label.
    const std::uint32_t num = w.is_vertex() ? t.pairing(label, k) : t.pairing(k, label);
    const Monomial m = w.is_vertex() ? vertex_monomial(*space, w, k) : face_monomial(*space, w, k);
    terms.push_back({m.signature, norm * std::conj(t.root(num))});
  }
  return OperatorSum::from_terms(space, std::move(terms));
}

OperatorSum vertex_projector(const SpacePtr& space, const SiteId& v, const Character& chi) {
  if (!v.is_vertex()) throw std::invalid_argument("vertex_projector needs a vertex");
  return site_projector(space, v, element_index(*space, chi.residues));
}

OperatorSum face_projector(const SpacePtr& space, const SiteId& f, const GroupElement& g) {
  if (!f.is_face()) throw std::invalid_argument("face_projector needs a face");
  return site_projector(space, f, element_index(*space, g.residues));
}

OperatorSum build_generator(const SpacePtr& space, const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorKind::edge_T:
      return OperatorSum::from_monomial(space, edge_translation(*space, spec.edge, GroupElement{spec.label}));
    case GeneratorKind::edge_M:
      return OperatorSum::from_monomial(space, edge_multiplication(*space, spec.edge, Character{spec.label}));
    case GeneratorKind::vertex_A:
      return OperatorSum::from_monomial(space, vertex_operator(*space, spec.site, GroupElement{spec.label}));
    case GeneratorKind::face_B:
      return OperatorSum::from_monomial(space, face_operator(*space, spec.site, Character{spec.label}));
    case GeneratorKind::projector_P:
      return site_projector(space, spec.site, element_index(*space, spec.label));
  }
  throw std::invalid_argument("unknown generator kind");
}

Monomial ribbon_operator(const OperatorSpace& space, const Ribbon& rho, const Character& chi) {
  if (rho.lattice != RibbonLattice::direct && !rho.empty())
    throw std::invalid_argument("a character labels ribbons of the direct lattice");
  const std::uint32_t c = element_index(space, chi.residues);
  Monomial m = identity_monomial(space);
  for (const auto& s : rho.steps) m = with_factor(space, m, s.edge, 0, space.tables().power(c, s.sign));
  return m;
}

Monomial ribbon_operator(const OperatorSpace& space, const Ribbon& rho, const GroupElement& g) {
  if (rho.lattice != RibbonLattice::dual && !rho.empty())
    throw std::invalid_argument("a group element labels ribbons of the dual lattice");
  const std::uint32_t h = element_index(space, g.residues);
  Monomial m = identity_monomial(space);
  for (const auto& s : rho.steps) m = with_factor(space, m, s.edge, space.tables().power(h, s.sign), 0);
  return m;
}

std::uint32_t syndrome_shift(const OperatorSpace& space, const Monomial& m, const SiteId& w) {
  const GroupTables& t = space.tables();
  const LatticePatch& patch = space.patch();
  std::uint32_t s = 0;
  for (const auto& e : patch.incident_edges(w)) {
    const std::uint32_t code = m.signature[patch.edge_index(e)];
    if (w.is_vertex())
      s = t.compose(s, t.power(space.code_chi(code), -incidence_vertex(e, w)));
    else
      s = t.compose(s, t.power(space.code_g(code), incidence_face(e, w)));
  }
  return s;
}

Monomial gamma_operator(const OperatorSpace& space, const std::vector<EdgeDelta>& factors) {
  const GroupTables& t = space.tables();
  Monomial m = identity_monomial(space);
  for (const auto& d : factors) {
    if (d.label >= t.order()) throw SpecMismatch("label index out of range");
    m = d.target == SiteKind::vertex ? with_factor(space, m, d.edge, 0, d.label)
                                     : with_factor(space, m, d.edge, t.inverse(d.label), 0);
  }
  return m;
}

SyndromeConfig neutral_syndrome(const OperatorSpace& space) {
  return SyndromeConfig(space.group(), space.patch().interior_sites());
}

OperatorSum hamiltonian(const SpacePtr& space, const SyndromeConfig& omega) {
  if (!(omega.group() == space->group())) throw SpecMismatch("syndrome and operator space use different groups");
  OperatorSum h(space);
  const OperatorSum id = OperatorSum::identity(space);
  for (const auto& w : space->patch().interior_sites()) {
    if (!omega.in_window(w)) throw std::invalid_argument("omega is undefined at interior site " + to_string(w));
    h = h + (id - site_projector(space, w, omega.index_at(w)));
  }
  return h;
}

OperatorSum hamiltonian(const SpacePtr& space) { return hamiltonian(space, neutral_syndrome(*space)); }

OperatorSum ground_projector(const SpacePtr& space, const std::vector<SiteId>& sites, const SyndromeConfig& omega) {
  OperatorSum p = OperatorSum::identity(space);
  for (const auto& w : sites) p = multiply(p, site_projector(space, w, omega.index_at(w)));
  return p;
}

OperatorSum gibbs_operator(const SpacePtr& space, double beta, const SyndromeConfig& omega, unsigned threads) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be finite and >= 0");
  if (!(omega.group() == space->group())) throw SpecMismatch("syndrome and operator space use different groups");
  const double q = std::exp(-beta);
  const OperatorSum id = OperatorSum::identity(space);
  OperatorSum rho = id;
  for (const auto& w : space->patch().interior_sites()) {
    if (!omega.in_window(w)) throw std::invalid_argument("omega is undefined at interior site " + to_string(w));
    const OperatorSum factor = id * q + site_projector(space, w, omega.index_at(w)) * (1.0 - q);
    rho = multiply(rho, factor, threads);
  }
  return rho;
}

std::complex<double> gibbs_expectation(const OperatorSum& x, const OperatorSum& gibbs) {
  const std::complex<double> z = gibbs.normalized_trace();
  if (std::abs(z) == 0.0) throw std::domain_error("vanishing partition function");
  return normalized_trace_of_product(gibbs, x) / z;
}

std::complex<double> gibbs_expectation(const OperatorSum& x, double beta, const SyndromeConfig& omega) {
  return gibbs_expectation(x, gibbs_operator(x.space(), beta, omega));
}

namespace {

OperatorSum preserved_part(const OperatorSum& x, const std::vector<SiteId>& delta) {
  const OperatorSpace& space = *x.space();
  std::vector<Term> kept;
  for (const auto& t : x.terms()) {
    const Monomial m{Phase::one(), t.signature};
    if (std::all_of(delta.begin(), delta.end(), [&](const SiteId& w) { return syndrome_shift(space, m, w) == 0; }))
      kept.push_back(t);
  }
  return OperatorSum::from_terms(x.space(), std::move(kept));
}

}  // namespace

OperatorSum compress(const OperatorSum& x, const std::vector<SiteId>& delta, const SyndromeConfig& omega) {
  for (const auto& w : delta) require_interior(*x.space(), w);
  return multiply(preserved_part(x, delta), ground_projector(x.space(), delta, omega));
}

std::vector<EdgeId> ltqo_edges(const LatticePatch& patch) {
  std::vector<EdgeId> bulk;
  for (const auto& e : patch.edges())
    if (patch.is_interior(e.tail()) && patch.is_interior(e.head())) bulk.push_back(e);
  return bulk;
}

LtqoResult ltqo_check(const OperatorSum& x, const std::vector<SiteId>& delta, const SyndromeConfig& omega) {
  for (const auto& w : delta) require_interior(*x.space(), w);
  const OperatorSum p = ground_projector(x.space(), delta, omega);
  const std::complex<double> tr_p = p.normalized_trace();
  if (std::abs(tr_p) == 0.0) throw std::domain_error("ground projector vanishes");
  const OperatorSum y = preserved_part(x, delta);
  LtqoResult r;
  r.surviving_terms = y.size();
  r.s_value = normalized_trace_of_product(y, p) / tr_p;
  const OperatorSum shifted = y - OperatorSum::identity(x.space()) * r.s_value;
  const OperatorSum residual = shifted.is_zero() ? shifted : multiply(shifted, p);
  if (residual.is_zero()) {
    r.symbolic_zero = true;
    return r;
  }
  const std::size_t dim = basis_dimension(*x.space(), kSparseGuard);
  r.residual = dim <= 1024 ? operator_norm(to_dense(residual)) : operator_norm(to_sparse(residual));
  return r;
}

DynamicsCheck dynamics_cocycle_check(const SpacePtr& space, const GammaElement& gamma, const SiteId& base_v,
                                     const SiteId& base_f) {
  const auto factors = decompose_gamma(gamma, base_v, base_f, space->patch());
  const OperatorSum F = OperatorSum::from_monomial(space, gamma_operator(*space, factors));
  const OperatorSum H = hamiltonian(space);
  const OperatorSum D = F.adjoint() * H * F - H;

  const auto sites = space->patch().interior_sites();
  DynamicsCheck r;
  OperatorSum expected(space);
  for (const auto& omega : enumerate_configurations(space->group(), sites)) {
    ++r.configurations;
    const int c = cocycle(omega, gamma, sites);
    if (c != 0) expected = expected + ground_projector(space, sites, omega) * static_cast<double>(c);
  }
  r.symbolic_residual = max_coefficient_difference(D, expected);

  const SparseOperator f = to_sparse(F), h = to_sparse(H);
  const SparseOperator dense_d = SparseOperator(f.adjoint()) * h * f - h;
  r.dense_residual = operator_norm(SparseOperator(dense_d - to_sparse(expected)));

  const auto support = gamma.support();
  if (std::all_of(support.begin(), support.end(), [](const SiteId& w) { return w.is_face(); })) {
    r.diagonal_residual = 0.0;
    for (Eigen::Index row = 0; row < dense_d.outerSize(); ++row) {
      const Connection conn = basis_connection(*space, static_cast<std::size_t>(row));
      SyndromeConfig omega(space->group());
      for (const auto& w : sites)
        if (w.is_face()) omega.set_face(w, face_holonomy(*space, conn, w));
      const double c = cocycle(omega, gamma, sites);
      double off = 0.0, diag = 0.0;
      for (SparseOperator::InnerIterator it(dense_d, row); it; ++it) {
        if (it.col() == row)
          diag = std::abs(it.value() - c);
        else
          off += std::abs(it.value());
      }
      if (dense_d.coeff(row, row) == std::complex<double>(0.0, 0.0)) diag = std::abs(c);
      r.diagonal_residual = std::max(r.diagonal_residual, off + diag);
    }
  }
  return r;
}

bool RelationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const RelationCheck& c) { return c.failures == 0 && c.cases > 0; });
}

std::size_t RelationReport::total_cases() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.cases;
  return n;
}

RelationReport verify_relation_suite(const SpacePtr& space_ptr) {
  const OperatorSpace& space = *space_ptr;
  const GroupSpec& G = space.group();
  const GroupTables& t = space.tables();
  const LatticePatch& patch = space.patch();
  const std::uint32_t n = t.order();
  const std::int64_t N = t.exponent();

  auto record = [](RelationCheck& c, bool ok, const std::string& what) {
    ++c.cases;
    if (!ok && c.failures++ == 0) c.first_failure = what;
  };

  RelationReport report;

  RelationCheck exchange{"edge_exchange TgMchi = chi(g^-1) Mchi Tg", 0, 0, {}};
  RelationCheck edge_group{"edge_group_law TgTh = Tgh, MchiMxi = Mchixi", 0, 0, {}};
  for (const auto& e : patch.edges()) {
    for (std::uint32_t g = 0; g < n; ++g) {
      for (std::uint32_t c = 0; c < n; ++c) {
        const Monomial T = with_factor(space, identity_monomial(space), e, g, 0);
        const Monomial M = with_factor(space, identity_monomial(space), e, 0, c);
        const Monomial tm = multiply(space, T, M);
        Monomial expected = multiply(space, M, T);
        expected.phase *= Phase(t.pairing(c, t.inverse(g)), N);
        record(exchange, tm == expected, "edge " + to_string(e));
        const Monomial T2 = with_factor(space, identity_monomial(space), e, c, 0);
        const Monomial M2 = with_factor(space, identity_monomial(space), e, 0, g);
        record(edge_group,
               multiply(space, T, T2) == with_factor(space, identity_monomial(space), e, t.compose(g, c), 0) &&
                   multiply(space, M, M2) == with_factor(space, identity_monomial(space), e, 0, t.compose(c, g)),
               "edge " + to_string(e));
      }
    }
  }
  report.checks.push_back(exchange);
  report.checks.push_back(edge_group);

  std::vector<SiteId> vertices, faces;
  for (const auto& w : patch.interior_sites()) (w.is_vertex() ? vertices : faces).push_back(w);

  RelationCheck commute{"commutation [A,A] = [A,B] = [B,B] = 0", 0, 0, {}};
  RelationCheck order{"order (A_v^g)^|G| = (B_f^chi)^|G| = 1", 0, 0, {}};
  RelationCheck homomorphism{"A_v^g A_v^h = A_v^gh, B_f^chi B_f^xi = B_f^chixi", 0, 0, {}};
  struct Labelled {
    SiteId site;
    std::uint32_t label;
    Monomial op;
  };
  std::vector<Labelled> ops;
  for (const auto& v : vertices)
    for (std::uint32_t g = 0; g < n; ++g) ops.push_back({v, g, vertex_monomial(space, v, g)});
  for (const auto& f : faces)
    for (std::uint32_t c = 0; c < n; ++c) ops.push_back({f, c, face_monomial(space, f, c)});
  for (std::size_t i = 0; i < ops.size(); ++i) {
    record(order, is_identity(power(space, ops[i].op, static_cast<int>(n))), describe("order", ops[i].site, ops[i].label, n));
    for (std::size_t j = 0; j < ops.size(); ++j) {
      const Monomial ab = multiply(space, ops[i].op, ops[j].op);
      if (j > i) record(commute, ab == multiply(space, ops[j].op, ops[i].op),
                        to_string(ops[i].site) + " vs " + to_string(ops[j].site));
      if (ops[i].site == ops[j].site) {
        const std::uint32_t l = t.compose(ops[i].label, ops[j].label);
        const Monomial expected =
            ops[i].site.is_vertex() ? vertex_monomial(space, ops[i].site, l) : face_monomial(space, ops[i].site, l);
        record(homomorphism, ab == expected, describe("product", ops[i].site, ops[i].label, ops[j].label));
      }
    }
  }
  report.checks.push_back(commute);
  report.checks.push_back(order);
  report.checks.push_back(homomorphism);

  RelationCheck ribbon_vertex{"ribbon A_v^g F^chi = prod chi(g)^sign F^chi A_v^g", 0, 0, {}};
  RelationCheck ribbon_face{"ribbon F^g B_f^chi = prod chi(g)^sign B_f^chi F^g", 0, 0, {}};
  RelationCheck ribbon_cross{"direct ribbons commute with B, dual ribbons with A", 0, 0, {}};
  auto ribbon_family = [&](const std::vector<SiteId>& ends) {
    std::vector<Ribbon> out;
    for (const auto& a : ends)
      for (const auto& b : ends)
        if (!(a == b)) out.push_back(find_ribbon(a, b, patch));
    return out;
  };
  const std::vector<Ribbon> direct = ribbon_family(patch.vertices());
  const std::vector<Ribbon> dual = ribbon_family(patch.faces());

  for (const auto& rho : direct) {
    for (std::uint32_t c = 0; c < n; ++c) {
      const Monomial F = ribbon_operator(space, rho, G.character_at(c));
      for (const auto& v : vertices) {
        for (std::uint32_t g = 0; g < n; ++g) {
          std::int64_t k = 0;
          for (const auto& s : rho.steps) k += ribbon_sign(rho, s.edge, v) * static_cast<std::int64_t>(t.pairing(c, g));
          const Monomial A = vertex_monomial(space, v, g);
          Monomial expected = multiply(space, F, A);
          expected.phase *= Phase(k, N);
          record(ribbon_vertex, multiply(space, A, F) == expected, describe("vertex", v, g, c));
        }
      }
      for (const auto& f : faces)
        for (std::uint32_t x = 0; x < n; ++x) {
          const Monomial B = face_monomial(space, f, x);
          record(ribbon_cross, multiply(space, B, F) == multiply(space, F, B), describe("face", f, x, c));
        }
    }
  }
  for (const auto& rho : dual) {
    for (std::uint32_t g = 0; g < n; ++g) {
      const Monomial F = ribbon_operator(space, rho, G.element_at(g));
      for (const auto& f : faces) {
        for (std::uint32_t c = 0; c < n; ++c) {
          std::int64_t k = 0;
          for (const auto& s : rho.steps) k += ribbon_sign(rho, s.edge, f) * static_cast<std::int64_t>(t.pairing(c, g));
          const Monomial B = face_monomial(space, f, c);
          Monomial expected = multiply(space, B, F);
          expected.phase *= Phase(k, N);
          record(ribbon_face, multiply(space, F, B) == expected, describe("face", f, c, g));
        }
      }
      for (const auto& v : vertices)
        for (std::uint32_t h = 0; h < n; ++h) {
          const Monomial A = vertex_monomial(space, v, h);
          record(ribbon_cross, multiply(space, A, F) == multiply(space, F, A), describe("vertex", v, h, g));
        }
    }
  }
  report.checks.push_back(ribbon_vertex);
  report.checks.push_back(ribbon_face);
  report.checks.push_back(ribbon_cross);
  return report;
}

}  // namespace kitaev
