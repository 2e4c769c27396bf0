#pragma once

#include <complex>
#include <string>
#include <vector>

#include "kitaev/matrix_oracle.hpp"
#include "kitaev/operator_sum.hpp"
#include "kitaev/config_space.hpp"
#include "kitaev/syndrome.hpp"

namespace kitaev {

/// T_g on edge e.
Monomial edge_translation(const OperatorSpace& space, const EdgeId& e, const GroupElement& g);
/// M_chi on edge e.
Monomial edge_multiplication(const OperatorSpace& space, const EdgeId& e, const Character& chi);
/// A_v^g = prod_{e at v} T_{g^zeta(e,v)}; v must be interior.
Monomial vertex_operator(const OperatorSpace& space, const SiteId& v, const GroupElement& g);
/// B_f^chi = prod_{e in f} M_{chi^zeta(e,f)}.
Monomial face_operator(const OperatorSpace& space, const SiteId& f, const Character& chi);

/// Projector onto vertex syndrome chi: (1/|G|) sum_g conj(chi(g)) A_v^g.
OperatorSum vertex_projector(const SpacePtr& space, const SiteId& v, const Character& chi);
/// Projector onto face holonomy g: (1/|G|) sum_chi conj(chi(g)) B_f^chi.
OperatorSum face_projector(const SpacePtr& space, const SiteId& f, const GroupElement& g);
/// Vertex or face projector with the label given as an enumeration index.
OperatorSum site_projector(const SpacePtr& space, const SiteId& w, std::uint32_t label);

enum class GeneratorKind { edge_T, edge_M, vertex_A, face_B, projector_P };

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::edge_T;
  EdgeId edge;
  SiteId site;
  std::vector<int> label;
};

OperatorSum build_generator(const SpacePtr& space, const GeneratorSpec& spec);

/// F^chi along a direct ribbon.
Monomial ribbon_operator(const OperatorSpace& space, const Ribbon& rho, const Character& chi);
/// F^g along a dual ribbon.
Monomial ribbon_operator(const OperatorSpace& space, const Ribbon& rho, const GroupElement& g);

/// Label index s with m P_w^a m^* = P_w^{a s} (vertex: prod chi_e^{-zeta(e,v)},
/// face: prod g_e^{zeta(e,f)}).
std::uint32_t syndrome_shift(const OperatorSpace& space, const Monomial& m, const SiteId& w);

/// F_gamma for a list of elementary factors: M_chi on e for delta_chi^e and
/// T_{g^-1} on e for delta_g^e, so that F C F^* = C(gamma . ) on C.
Monomial gamma_operator(const OperatorSpace& space, const std::vector<EdgeDelta>& factors);

/// omega_0 on the interior sites of the patch.
SyndromeConfig neutral_syndrome(const OperatorSpace& space);

/// H = sum over interior w of (1 - P_w^{omega(w)}). Throws
/// std::invalid_argument when omega is not defined on every interior site.
OperatorSum hamiltonian(const SpacePtr& space, const SyndromeConfig& omega);
OperatorSum hamiltonian(const SpacePtr& space);

/// prod over the sites of P_w^{omega(w)}.
OperatorSum ground_projector(const SpacePtr& space, const std::vector<SiteId>& sites, const SyndromeConfig& omega);

/// e^{-beta H} = prod_w (q + (1 - q) P_w^{omega(w)}), q = e^{-beta}.
OperatorSum gibbs_operator(const SpacePtr& space, double beta, const SyndromeConfig& omega, unsigned threads = 1);
/// Tr(e^{-beta H} x) / Tr(e^{-beta H}).
std::complex<double> gibbs_expectation(const OperatorSum& x, double beta, const SyndromeConfig& omega);
std::complex<double> gibbs_expectation(const OperatorSum& x, const OperatorSum& gibbs);

/// P_D x P_D with P_D the ground projector of delta. Terms that shift a
/// syndrome in delta are annihilated, the rest commute with P_D.
OperatorSum compress(const OperatorSum& x, const std::vector<SiteId>& delta, const SyndromeConfig& omega);

struct LtqoResult {
  std::complex<double> s_value;
  double residual = 0.0;
  /// True when P x P - s P vanished in canonical form; no norm was needed.
  bool symbolic_zero = false;
  std::size_t surviving_terms = 0;
};

/// || P x P - s(x) P || with s(x) = Tr(P x P) / Tr(P).
LtqoResult ltqo_check(const OperatorSum& x, const std::vector<SiteId>& delta, const SyndromeConfig& omega);

/// Edges with both endpoints interior. Empty below a 3x3 patch, where no ring
/// of interior sites surrounds an edge.
std::vector<EdgeId> ltqo_edges(const LatticePatch& patch);

struct DynamicsCheck {
  /// Max coefficient gap between F^* H F - H and sum_omega c_H(omega, gamma) P^omega.
  double symbolic_residual = 0.0;
  /// Operator norm of the same difference computed from sparse matrices.
  double dense_residual = 0.0;
  /// For face-only gamma: max over basis connections of the off-diagonal mass
  /// plus |diagonal - c_H(holonomies, gamma)|; -1 when gamma touches vertices.
  double diagonal_residual = -1.0;
  std::size_t configurations = 0;
};

/// F_gamma^* H F_gamma - H against the cocycle, with c_H summed over the
/// interior sites carrying Hamiltonian terms. gamma must decompose inside the patch.
DynamicsCheck dynamics_cocycle_check(const SpacePtr& space, const GammaElement& gamma, const SiteId& base_v,
                                     const SiteId& base_f);

struct RelationCheck {
  std::string relation;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
};

struct RelationReport {
  std::vector<RelationCheck> checks;

  bool all_passed() const;
  std::size_t total_cases() const;
};

/// Exhaustive exact-phase checks of the edge exchange rule, the vertex/face
/// commutation and order relations and the ribbon exchange relations over
/// all L-shaped ribbons of the patch.
RelationReport verify_relation_suite(const SpacePtr& space);

}  // namespace kitaev
