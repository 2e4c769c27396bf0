// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kitaev/config_space.hpp"
#include "kitaev/kms_solver.hpp"
#include "kitaev/matrix_oracle.hpp"
#include "kitaev/quantum_ops.hpp"
#include "test_support.hpp"

using namespace kitaev;
using kitaev::testing::max_abs;
using kitaev::testing::naive_dense;
using kitaev::testing::random_sum;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// e^beta / (e^beta + n - 1) and 1 / (e^beta + n - 1).
double s_neutral(double beta, double n) { return std::exp(beta) / (std::exp(beta) + n - 1.0); }
double s_excited(double beta, double n) { return 1.0 / (std::exp(beta) + n - 1.0); }

const std::vector<GroupSpec> kSmallGroups{GroupSpec({2}), GroupSpec({3}), GroupSpec({2, 2})};

Outcome algebra() {
  const auto start = Clock::now();
  std::size_t cases = 0, failures = 0;
  std::string first;
  for (const auto& G : kSmallGroups)
    for (int w = 1; w <= 3; ++w)
      for (int h = 1; h <= 3; ++h) {
        const auto rep = verify_relation_suite(OperatorSpace::create(LatticePatch(w, h), G));
        for (const auto& c : rep.checks) {
          cases += c.cases;
          failures += c.failures;
          if (c.failures && first.empty()) first = G.to_string() + " " + c.relation + ": " + c.first_failure;
        }
      }
  const double t = seconds_since(start);
  return {failures == 0 && cases > 0 && t < 10.0,
          std::to_string(cases) + " exact identities, " + std::to_string(failures) + " failures, " + fmt("%.2f s", t) +
              (first.empty() ? "" : "; " + first)};
}

Outcome gibbs() {
  const auto start = Clock::now();
  double worst = 0.0;
  bool tracial_exact = true;
  struct Case {
    GroupSpec group;
    int w, h;
  };
  for (const auto& [G, w, h] : {Case{GroupSpec({2}), 2, 2}, Case{GroupSpec({3}), 1, 2}}) {
    auto s = OperatorSpace::create(LatticePatch(w, h), G);
    const auto omega = neutral_syndrome(*s);
    const auto interior = s->patch().interior_sites();
    const double n = static_cast<double>(G.order());
    const SparseOperator H = to_sparse(hamiltonian(s));
    for (double beta : {0.0, 0.5, 1.0, 2.0}) {
      const auto rho = gibbs_operator(s, beta, omega);
      // Independent route: spectral projectors of the sparse Hamiltonian.
      const SparseOperator oracle = integer_spectrum_gibbs(H, beta, static_cast<int>(interior.size()));
      std::complex<double> z_oracle = 0.0;
      for (Eigen::Index i = 0; i < oracle.rows(); ++i) z_oracle += oracle.coeff(i, i);
      for (const auto& site : interior) {
        for (std::uint32_t label : {0u, 1u}) {
          const auto P = site_projector(s, site, label);
          const auto value = gibbs_expectation(P, rho);
          const double expected = label == 0 ? s_neutral(beta, n) : s_excited(beta, n);
          const SparseOperator PO = to_sparse(P) * oracle;
          std::complex<double> tr = 0.0;
          for (Eigen::Index i = 0; i < PO.rows(); ++i) tr += PO.coeff(i, i);
          worst = std::max({worst, std::abs(value - expected), std::abs(tr / z_oracle - expected)});
          if (beta == 0.0 && value != std::complex<double>(1.0 / n, 0.0)) tracial_exact = false;
        }
      }
    }
  }
  const double t = seconds_since(start);
  return {worst <= 1e-10 && tracial_exact && t < 60.0,
          "max |omega_beta(P) - s_beta(P)| = " + fmt("%.2e", worst) + ", beta=0 exact: " +
              (tracial_exact ? "yes" : "no") + ", " + fmt("%.2f s", t)};
}

Outcome measure() {
  std::mt19937_64 rng(20240601);
  const LatticePatch patch(3, 3);
  const auto pool = interleaved_sites(patch);
  double worst = 0.0;
  std::size_t checks = 0;
  for (const auto& G : {GroupSpec({2}), GroupSpec({3})})
    for (double beta : {0.5, 1.0, 2.0}) {
      const MeasureParams params = build_measure_params(beta, G);
      for (int k = 0; k < 20; ++k) {
        auto sites = pool;
        std::shuffle(sites.begin(), sites.end(), rng);
        sites.resize(std::uniform_int_distribution<std::size_t>(2, 4)(rng));
        const GammaElement gamma = random_gamma(rng, G, sites, sites.size());
        const auto rep = kms_measure_check(params, sites, gamma);
        worst = std::max(worst, rep.residual);
        ++checks;
      }
    }
  return {worst <= 1e-12, std::to_string(checks) + " (gamma, beta) pairs, max residual " + fmt("%.2e", worst)};
}

Outcome cocycle_law() {
  const GroupSpec G({2});
  std::size_t cases = 0, failures = 0;
  const std::vector<std::vector<SiteId>> windows{
      {SiteId::vertex(0, 0), SiteId::vertex(1, 0), SiteId::vertex(0, 1)},
      {SiteId::vertex(0, 0), SiteId::vertex(1, 0), SiteId::face(0, 0)},
      {SiteId::vertex(0, 0), SiteId::face(0, 0), SiteId::face(1, 0)},
      {SiteId::face(0, 0), SiteId::face(1, 0), SiteId::face(0, 1)},
  };
  for (const auto& window : windows) {
    const auto configs = enumerate_configurations(G, window);
    std::vector<GammaElement> gammas;
    for (const auto& c : configs)
      if (in_gamma(c)) gammas.emplace_back(c);
    for (const auto& omega : configs)
      for (const auto& g1 : gammas)
        for (const auto& g2 : gammas) {
          ++cases;
          if (cocycle(omega, g1.compose(g2)) != cocycle(omega, g1) + cocycle(act(g1.inverse(), omega), g2)) ++failures;
        }
  }
  return {failures == 0 && cases > 0, std::to_string(cases) + " integer identities, " + std::to_string(failures) + " failures"};
}

Outcome transfer() {
  double det = 0.0, pf = 0.0, rec = 0.0, gap = 0.0, cond0 = 0.0;
  for (const auto& G : kSmallGroups) {
    const double n = static_cast<double>(G.order());
    for (double beta : {0.5, 1.0, 2.0}) {
      const double q = std::exp(-beta);
      const TransferMatrix tm = build_transfer(beta, G);
      det = std::max(det, std::abs(tm.B.determinant() - std::pow(1.0 - q, n - 1.0) * (1.0 + (n - 1.0) * q)));
      const PerronFrobenius p = pf_eigen(tm.A);
      const double nu1 = 1.0 / (1.0 + (n - 1.0) * q), nux = q * nu1;
      for (std::uint32_t chi = 0; chi < G.order(); ++chi)
        for (std::uint32_t g = 0; g < G.order(); ++g) {
          const double target = (chi == 0 ? nu1 : nux) * (g == 0 ? nu1 : nux);
          pf = std::max(pf, std::abs(p.vector(static_cast<Eigen::Index>(tm.index(chi, g))) - target));
        }
      rec = std::max(rec, recursion_check(beta, G, 6).residual);
      gap = std::max(gap, p.gap_ratio);
    }
    const TransferMatrix zero = build_transfer(0.0, G);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(zero.A);
    const auto& sv = svd.singularValues();
    cond0 = std::max(cond0, sv(sv.size() - 1) / sv(0));
  }
  const bool ok = det <= 1e-10 && pf <= 1e-10 && rec <= 1e-12 && gap < 1.0 && cond0 <= 1e-12;
  return {ok, "det " + fmt("%.1e", det) + ", PF vector " + fmt("%.1e", pf) + ", recursion " + fmt("%.1e", rec) +
                  ", gap ratio " + fmt("%.3f", gap) + ", sigma_min/sigma_max at beta=0 " + fmt("%.1e", cond0)};
}

Outcome ltqo() {
  auto s = OperatorSpace::create(LatticePatch(3, 3), GroupSpec({2}));
  const GroupSpec& G = s->group();
  const auto region = ltqo_edges(s->patch());
  const auto delta = s->patch().interior_sites();
  const auto omega = neutral_syndrome(*s);
  double worst = 0.0;
  std::size_t count = 0;
  auto check = [&](const OperatorSum& x) {
    worst = std::max(worst, ltqo_check(x, delta, omega).residual);
    ++count;
  };
  for (const auto& e : region)
    for (std::uint32_t a = 1; a < G.order(); ++a) {
      check(OperatorSum::from_monomial(s, edge_translation(*s, e, G.element_at(a))));
      check(OperatorSum::from_monomial(s, edge_multiplication(*s, e, G.character_at(a))));
      check(OperatorSum::from_monomial(s, multiply(*s, edge_translation(*s, e, G.element_at(a)),
                                                   edge_multiplication(*s, e, G.character_at(a)))));
    }
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, region.size() - 1);
  std::uniform_int_distribution<std::uint32_t> code(0, s->order() * s->order() - 1);
  std::normal_distribution<double> n01;
  for (int k = 0; k < 10; ++k) {
    std::vector<Term> terms;
    for (int t = 0; t < 4; ++t) {
      Signature sig(s->num_edges(), 0);
      sig[s->patch().edge_index(region[pick(rng)])] = code(rng);
      sig[s->patch().edge_index(region[pick(rng)])] = code(rng);
      terms.push_back({sig, {n01(rng), n01(rng)}});
    }
    check(OperatorSum::from_terms(s, std::move(terms)));
  }
  return {worst <= 1e-10 && !region.empty(),
          std::to_string(count) + " operators on " + std::to_string(region.size()) + " bulk edges, max residual " +
              fmt("%.2e", worst)};
}

Outcome gamma_roundtrip() {
  std::mt19937_64 rng(31337);
  std::size_t draws = 0, bad = 0;
  for (const auto& G : kSmallGroups)
    for (auto [w, h] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {3, 3}}) {
      const LatticePatch patch(w, h);
      const auto candidates = interleaved_sites(patch);
      for (int k = 0; k < 50; ++k) {
        const GammaElement g = random_gamma(rng, G, candidates, 6);
        const auto factors = decompose_gamma(g, patch.vertices().front(), patch.faces().front(), patch);
        bool ok = compose_deltas(factors, patch, G) == g;
        for (const auto& d : factors) {
          const Charge c = pi_hat(elementary_delta(patch, G, d).config());
          ok = ok && G.is_neutral(c.vertex) && G.is_neutral(c.face);
        }
        ++draws;
        if (!ok) ++bad;
      }
    }
  return {bad == 0, std::to_string(draws) + " random gamma, " + std::to_string(bad) + " mismatches"};
}

Outcome dynamics() {
  auto s = OperatorSpace::create(LatticePatch(2, 2), GroupSpec({2}));
  const auto& p = s->patch();
  const GroupSpec& G = s->group();
  std::vector<SiteId> faces = p.faces();
  double worst = 0.0;
  std::size_t cases = 0;
  bool diagonal_checked = false;
  for (const auto& config : enumerate_configurations(G, faces)) {
    if (!in_gamma(config)) continue;
    const GammaElement gamma(config);
    const auto r = dynamics_cocycle_check(s, gamma, SiteId::vertex(1, 1), SiteId::face(0, 0));
    worst = std::max({worst, r.symbolic_residual, r.dense_residual, r.diagonal_residual});
    diagonal_checked = diagonal_checked || r.diagonal_residual >= 0;
    ++cases;
  }
  const auto charge = elementary_delta(p, G, EdgeId::horizontal(0, 1), Character{{1}});
  const auto r = dynamics_cocycle_check(s, charge, SiteId::vertex(1, 1), SiteId::face(0, 0));
  worst = std::max({worst, r.symbolic_residual, r.dense_residual});
  ++cases;
  return {worst <= 1e-10 && diagonal_checked,
          std::to_string(cases) + " gamma on (2,2) Z2, max residual " + fmt("%.2e", worst)};
}

Outcome zero_temperature() {
  std::vector<double> grid;
  for (int b = 0; b <= 20; ++b) grid.push_back(b);
  bool ok = true;
  double at20 = 0.0;
  for (const auto& G : kSmallGroups) {
    const auto scan = zero_t_scan(G, grid);
    const double n = static_cast<double>(G.order());
    ok = ok && scan.within_bound && scan.strictly_decreasing;
    for (const auto& pt : scan.points) {
      const double direct = 1.0 - s_neutral(pt.beta, n);
      ok = ok && std::abs(pt.defect - direct) <= 1e-15 && pt.defect <= (n - 1.0) * std::exp(-pt.beta);
    }
    at20 = std::max(at20, scan.points.back().defect);
  }
  ok = ok && at20 < 1e-8;
  return {ok, "bound and strict decrease on beta = 0..20, defect at beta=20 " + fmt("%.2e", at20)};
}

Outcome symbolic_dense() {
  std::mt19937_64 rng(99);
  struct Space {
    GroupSpec group;
    int w, h;
  };
  std::vector<SpacePtr> spaces;
  for (const auto& [G, w, h] : {Space{GroupSpec({2}), 1, 1}, Space{GroupSpec({2}), 2, 1}, Space{GroupSpec({3}), 1, 1},
                                Space{GroupSpec({2, 2}), 1, 1}, Space{GroupSpec({4}), 1, 1}, Space{GroupSpec({5}), 1, 1}})
    spaces.push_back(OperatorSpace::create(LatticePatch(w, h), G));
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto& s = spaces[static_cast<std::size_t>(k) % spaces.size()];
    const auto x = random_sum(s, rng, 6, 3), y = random_sum(s, rng, 6, 3);
    const Eigen::MatrixXcd dx = naive_dense(x), dy = naive_dense(y);
    const double dim = static_cast<double>(dx.rows());
    worst = std::max(worst, max_abs(naive_dense(x * y) - dx * dy));
    worst = std::max(worst, std::abs(x.trace() - dx.trace()) / dim);
    worst = std::max(worst, std::abs(normalized_trace_of_product(x, y) - (dx * dy).trace() / dim));
  }
  return {worst <= 1e-12, "100 products and traces, max deviation " + fmt("%.2e", worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"exact algebra suite", algebra},
      {"Gibbs vs s_beta", gibbs},
      {"measure-level KMS condition", measure},
      {"cocycle law", cocycle_law},
      {"transfer-matrix package", transfer},
      {"LTQO on (3,3) Z2", ltqo},
      {"Gamma decomposition round trip", gamma_roundtrip},
      {"dynamics cocycle identity", dynamics},
      {"zero-temperature limit", zero_temperature},
      {"symbolic/dense equivalence", symbolic_dense},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
