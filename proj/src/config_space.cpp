#include "kitaev/config_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kitaev {

namespace {

void require_same_group(const GroupSpec& a, const GroupSpec& b) {
  if (!(a == b)) throw SpecMismatch("configurations over " + a.to_string() + " and " + b.to_string());
}

std::uint32_t power_index(const GroupTables& t, std::uint32_t a, int k) { return t.power(a, k); }

}  // namespace

MeasureParams build_measure_params(double beta, const GroupSpec& group) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be finite and >= 0");
  MeasureParams p;
  p.beta = beta;
  p.q = std::exp(-beta);
  p.order = group.order();
  const double z = 1.0 + static_cast<double>(p.order - 1) * p.q;
  p.nu_neutral = 1.0 / z;
  p.nu_excited = p.q / z;
  return p;
}

Charge pi_hat(const SyndromeConfig& sigma) {
  const GroupSpec& G = sigma.group();
  Charge c{G.trivial_character(), G.neutral()};
  for (const auto& s : sigma.support()) {
    if (s.is_vertex())
      c.vertex = G.compose(c.vertex, sigma.vertex_value(s));
    else
      c.face = G.compose(c.face, sigma.face_value(s));
  }
  return c;
}

bool in_gamma(const SyndromeConfig& sigma) {
  const Charge c = pi_hat(sigma);
  return sigma.group().is_neutral(c.vertex) && sigma.group().is_neutral(c.face);
}

GammaElement elementary_delta(const LatticePatch& patch, const GroupSpec& group, const EdgeId& e, const Character& chi) {
  if (!patch.contains(e)) throw std::out_of_range("edge " + to_string(e) + " outside the patch");
  group.validate(chi.residues);
  SyndromeConfig out(group);
  out.set_vertex(e.tail(), group.power(chi, incidence_vertex(e, e.tail())));
  out.set_vertex(e.head(), group.power(chi, incidence_vertex(e, e.head())));
  return GammaElement(std::move(out));
}

GammaElement elementary_delta(const LatticePatch& patch, const GroupSpec& group, const EdgeId& e, const GroupElement& g) {
  if (!patch.contains(e)) throw std::out_of_range("edge " + to_string(e) + " outside the patch");
  group.validate(g.residues);
  const auto faces = patch.adjacent_faces(e);
  if (faces.size() != 2) throw std::invalid_argument("edge " + to_string(e) + " lies on the patch boundary");
  SyndromeConfig out(group);
  for (const auto& f : faces) out.set_face(f, group.power(g, incidence_face(e, f)));
  return GammaElement(std::move(out));
}

GammaElement elementary_delta(const LatticePatch& patch, const GroupSpec& group, const EdgeDelta& d) {
  return d.target == SiteKind::vertex ? elementary_delta(patch, group, d.edge, group.character_at(d.label))
                                      : elementary_delta(patch, group, d.edge, group.element_at(d.label));
}

SyndromeConfig act(const SyndromeConfig& sigma, const SyndromeConfig& omega) {
  require_same_group(sigma.group(), omega.group());
  GroupTables t(omega.group());
  SyndromeConfig out = omega;
  for (const auto& s : sigma.window()) out.set_index(s, t.compose(sigma.index_at(s), omega.index_at(s)));
  return out;
}

SyndromeConfig act(const GammaElement& gamma, const SyndromeConfig& omega) { return act(gamma.config(), omega); }

int cocycle(const SyndromeConfig& omega, const SyndromeConfig& gamma) {
  require_same_group(omega.group(), gamma.group());
  GroupTables t(omega.group());
  int c = 0;
  for (const auto& w : gamma.support()) {
    const std::uint32_t o = omega.index_at(w);
    c += (o == 0 ? 1 : 0) - (t.compose(o, t.inverse(gamma.index_at(w))) == 0 ? 1 : 0);
  }
  return c;
}

int cocycle(const SyndromeConfig& omega, const GammaElement& gamma) { return cocycle(omega, gamma.config()); }

int cocycle(const SyndromeConfig& omega, const GammaElement& gamma, const std::vector<SiteId>& sites) {
  SyndromeConfig restricted(gamma.group());
  for (const auto& s : sites) restricted.set_index(s, gamma.config().index_at(s));
  return cocycle(omega, restricted);
}

double cylinder_measure(const MeasureParams& params, const std::vector<SiteId>& window, const SyndromeConfig& omega_prime) {
  double m = 1.0;
  for (const auto& s : window) m *= params.weight(omega_prime.index_at(s));
  return m;
}

std::vector<SyndromeConfig> enumerate_configurations(const GroupSpec& group, const std::vector<SiteId>& window) {
  std::size_t count = 1;
  for (std::size_t i = 0; i < window.size(); ++i) {
    if (count > kConfigurationGuard / group.order())
      throw GuardExceeded("window of " + std::to_string(window.size()) + " sites exceeds the configuration guard");
    count *= group.order();
  }
  std::vector<SyndromeConfig> out;
  out.reserve(count);
  for (std::size_t idx = 0; idx < count; ++idx) {
    SyndromeConfig c(group, window);
    std::size_t rest = idx;
    for (std::size_t i = window.size(); i-- > 0;) {
      c.set_index(window[i], static_cast<std::uint32_t>(rest % group.order()));
      rest /= group.order();
    }
    out.push_back(std::move(c));
  }
  return out;
}

KmsMeasureReport kms_measure_check(const MeasureParams& params, const std::vector<SiteId>& window, const GammaElement& gamma) {
  for (const auto& s : gamma.support())
    if (std::find(window.begin(), window.end(), s) == window.end())
      throw std::invalid_argument("supp(gamma) is not contained in the window");
  if (window.size() > 20) throw GuardExceeded("window too large for subset enumeration");
  const GroupSpec& G = gamma.group();
  const auto configs = enumerate_configurations(G, window);
  const GammaElement gamma_inv = gamma.inverse();

  std::vector<double> mass(configs.size()), weighted(configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) {
    mass[i] = cylinder_measure(params, window, configs[i]);
    weighted[i] = std::exp(-params.beta * cocycle(configs[i], gamma)) * mass[i];
  }

  KmsMeasureReport report;
  const std::size_t n = window.size();
  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << n); ++subset) {
    std::vector<SiteId> k_sites;
    for (std::size_t i = 0; i < n; ++i)
      if (subset >> i & 1) k_sites.push_back(window[i]);
    const auto k_configs = enumerate_configurations(G, k_sites);
    for (const auto& omega_prime : k_configs) {
      const double lhs = cylinder_measure(params, k_sites, act(gamma_inv, omega_prime));
      double rhs = 0.0;
      for (std::size_t i = 0; i < configs.size(); ++i) {
        bool inside = true;
        for (const auto& s : k_sites)
          if (configs[i].index_at(s) != omega_prime.index_at(s)) {
            inside = false;
            break;
          }
        if (inside) rhs += weighted[i];
      }
      report.residual = std::max(report.residual, std::abs(lhs - rhs));
      ++report.cylinders;
    }
  }
  return report;
}

std::vector<EdgeDelta> decompose_gamma(const GammaElement& gamma, const SiteId& base_v, const SiteId& base_f,
                                       const LatticePatch& patch) {
  const GroupSpec& G = gamma.group();
  GroupTables t(G);
  std::vector<EdgeDelta> out;
  for (const auto& w : gamma.support()) {
    if (!patch.contains(w)) throw std::out_of_range("support site " + to_string(w) + " outside the patch");
    const SiteId& base = w.is_vertex() ? base_v : base_f;
    if (w == base) continue;
    if (base.kind != w.kind || !patch.contains(base)) throw std::invalid_argument("base site missing or of the wrong kind");
    const Ribbon rho = find_ribbon(w, base, patch);
    const std::uint32_t label = gamma.config().index_at(w);
    for (const auto& step : rho.steps) {
      // Exponent beta on vertices, -beta on faces.
      const int exponent = w.is_vertex() ? step.sign : -step.sign;
      out.push_back({step.edge, w.kind, power_index(t, label, exponent)});
    }
  }
  return out;
}

GammaElement compose_deltas(const std::vector<EdgeDelta>& factors, const LatticePatch& patch, const GroupSpec& group) {
  GammaElement acc(group);
  for (const auto& d : factors) acc = elementary_delta(patch, group, d).compose(acc);
  return acc;
}

GroupElement face_holonomy(const OperatorSpace& space, const Connection& c, const SiteId& f) {
  const LatticePatch& patch = space.patch();
  if (!f.is_face() || !patch.contains(f)) throw std::invalid_argument("face_holonomy needs a face of the patch");
  const GroupTables& t = space.tables();
  std::uint32_t h = 0;
  for (const auto& e : patch.incident_edges(f))
    h = t.compose(h, t.power(c.values[patch.edge_index(e)], incidence_face(e, f)));
  return space.group().element_at(h);
}

std::vector<SiteId> interleaved_sites(const LatticePatch& patch) {
  std::vector<SiteId> out;
  const auto& vs = patch.vertices();
  const auto& fs = patch.faces();
  for (std::size_t i = 0; i < std::max(vs.size(), fs.size()); ++i) {
    if (i < vs.size()) out.push_back(vs[i]);
    if (i < fs.size()) out.push_back(fs[i]);
  }
  return out;
}

GammaElement random_gamma(std::mt19937_64& rng, const GroupSpec& group, const std::vector<SiteId>& candidates,
                          std::size_t max_support) {
  std::vector<SiteId> pool = candidates;
  std::shuffle(pool.begin(), pool.end(), rng);
  std::uniform_int_distribution<std::size_t> pick_size(0, std::min(max_support, pool.size()));
  pool.resize(pick_size(rng));
  GroupTables t(group);
  std::uniform_int_distribution<std::uint32_t> pick_label(0, t.order() - 1);
  SyndromeConfig out(group);
  for (SiteKind kind : {SiteKind::vertex, SiteKind::face}) {
    std::vector<SiteId> sites;
    for (const auto& s : pool)
      if (s.kind == kind) sites.push_back(s);
    std::uint32_t total = 0;
    for (std::size_t i = 0; i + 1 < sites.size(); ++i) {
      const std::uint32_t v = pick_label(rng);
      out.set_index(sites[i], v);
      total = t.compose(total, v);
    }
    if (!sites.empty()) out.set_index(sites.back(), t.inverse(total));
  }
  return GammaElement(std::move(out));
}

}  // namespace kitaev
