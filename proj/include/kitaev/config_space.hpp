#pragma once

#include <random>
#include <utility>
#include <vector>

#include "kitaev/matrix_oracle.hpp"
#include "kitaev/measure.hpp"
#include "kitaev/syndrome.hpp"

namespace kitaev {

inline constexpr std::size_t kConfigurationGuard = 1'000'000;

struct Charge {
  Character vertex;
  GroupElement face;
};

/// (prod of vertex values, prod of face values).
Charge pi_hat(const SyndromeConfig& sigma);
bool in_gamma(const SyndromeConfig& sigma);

/// delta_chi^e: chi^{zeta(e,v)} at both endpoints of e.
GammaElement elementary_delta(const LatticePatch& patch, const GroupSpec& group, const EdgeId& e, const Character& chi);
/// delta_g^e: g^{zeta(e,f)} on both faces adjacent to e. Throws
/// std::invalid_argument when e lies on the patch boundary.
GammaElement elementary_delta(const LatticePatch& patch, const GroupSpec& group, const EdgeId& e, const GroupElement& g);
GammaElement elementary_delta(const LatticePatch& patch, const GroupSpec& group, const EdgeDelta& d);

/// Pointwise product sigma * omega; the window is omega's followed by new sites of sigma.
SyndromeConfig act(const SyndromeConfig& sigma, const SyndromeConfig& omega);
SyndromeConfig act(const GammaElement& gamma, const SyndromeConfig& omega);

/// c_H(omega, gamma) = sum over supp(gamma) of 1[omega(w)=1] - 1[omega(w) gamma(w)^-1 = 1].
int cocycle(const SyndromeConfig& omega, const SyndromeConfig& gamma);
int cocycle(const SyndromeConfig& omega, const GammaElement& gamma);
/// Same sum restricted to the given sites.
int cocycle(const SyndromeConfig& omega, const GammaElement& gamma, const std::vector<SiteId>& sites);

/// mu_beta of the cylinder fixing omega' on every window site.
double cylinder_measure(const MeasureParams& params, const std::vector<SiteId>& window, const SyndromeConfig& omega_prime);

/// All configurations on the window, enumerated with the first site most
/// significant. Throws GuardExceeded above kConfigurationGuard.
std::vector<SyndromeConfig> enumerate_configurations(const GroupSpec& group, const std::vector<SiteId>& window);

struct KmsMeasureReport {
  double residual = 0.0;
  std::size_t cylinders = 0;
};

/// Max over cylinders C(K, omega'), K a subset of the window, of
/// |mu(eta_gamma^-1 C) - sum_{omega in C} e^{-beta c_H(omega,gamma)} mu(omega)|.
/// The left side uses the closed-form cylinder mass of C(K, gamma^-1 omega');
/// the right side is a brute-force sum over the window.
KmsMeasureReport kms_measure_check(const MeasureParams& params, const std::vector<SiteId>& window, const GammaElement& gamma);

/// Factors along L-shaped ribbons to the base sites; composing them gives gamma.
std::vector<EdgeDelta> decompose_gamma(const GammaElement& gamma, const SiteId& base_v, const SiteId& base_f,
                                       const LatticePatch& patch);
GammaElement compose_deltas(const std::vector<EdgeDelta>& factors, const LatticePatch& patch, const GroupSpec& group);

/// prod_{e in boundary f} c(e)^{zeta(e,f)}.
GroupElement face_holonomy(const OperatorSpace& space, const Connection& c, const SiteId& f);

/// Vertices and faces of the patch interleaved in row-major order:
/// v1, f1, v2, f2, ..., then the remaining vertices.
std::vector<SiteId> interleaved_sites(const LatticePatch& patch);

/// Random element of Gamma supported on at most max_support of the candidate
/// sites (at least two of a kind when non-trivial).
GammaElement random_gamma(std::mt19937_64& rng, const GroupSpec& group, const std::vector<SiteId>& candidates,
                          std::size_t max_support);

}  // namespace kitaev
