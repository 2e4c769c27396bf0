#include "kitaev/reports.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "kitaev/config_space.hpp"
#include "kitaev/json_io.hpp"
#include "kitaev/kms_solver.hpp"
#include "kitaev/quantum_ops.hpp"

namespace kitaev {

using nlohmann::json;

// ---------------------------------------------------------------- config

namespace {

constexpr int kMaxPatchSide = 32;
constexpr std::size_t kDynamicsConfigurations = 4096;

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < text.size()) {
      if (text[pos] == '#') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ',') {
        ++pos;
      } else {
        break;
      }
    }
  }
  bool done() {
    skip_space();
    return pos >= text.size();
  }
};

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }

std::string read_key(Cursor& c) {
  const std::size_t start = c.pos;
  while (c.pos < c.text.size() && is_word_char(c.text[c.pos])) ++c.pos;
  if (c.pos == start) throw ConfigError("?", "expected a key at offset " + std::to_string(start));
  return c.text.substr(start, c.pos - start);
}

// A scalar is returned verbatim; quoted strings keep no quotes.
std::string read_scalar(Cursor& c, const std::string& key) {
  if (c.pos < c.text.size() && (c.text[c.pos] == '"' || c.text[c.pos] == '\'')) {
    const char quote = c.text[c.pos++];
    const std::size_t end = c.text.find(quote, c.pos);
    if (end == std::string::npos) throw ConfigError(key, "unterminated string");
    std::string out = c.text.substr(c.pos, end - c.pos);
    c.pos = end + 1;
    return out;
  }
  const std::size_t start = c.pos;
  while (c.pos < c.text.size() && !std::isspace(static_cast<unsigned char>(c.text[c.pos])) && c.text[c.pos] != ',' &&
         c.text[c.pos] != ']' && c.text[c.pos] != '#')
    ++c.pos;
  if (c.pos == start) throw ConfigError(key, "missing value");
  return c.text.substr(start, c.pos - start);
}

struct Value {
  bool is_list = false;
  std::vector<std::string> items;
};

Value read_value(Cursor& c, const std::string& key) {
  while (c.pos < c.text.size() && (c.text[c.pos] == ' ' || c.text[c.pos] == '\t')) ++c.pos;
  Value v;
  if (c.pos < c.text.size() && c.text[c.pos] == '[') {
    v.is_list = true;
    ++c.pos;
    for (;;) {
      c.skip_space();
      if (c.pos >= c.text.size()) throw ConfigError(key, "unterminated list");
      if (c.text[c.pos] == ']') {
        ++c.pos;
        break;
      }
      if (c.text[c.pos] == '[') throw ConfigError(key, "nested lists are not supported");
      v.items.push_back(read_scalar(c, key));
    }
  } else {
    v.items.push_back(read_scalar(c, key));
  }
  return v;
}

long long to_integer(const std::string& s, const std::string& key) {
  std::size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw ConfigError(key, "'" + s + "' is not an integer");
  }
  if (used != s.size()) throw ConfigError(key, "'" + s + "' is not an integer");
  return out;
}

double to_real(const std::string& s, const std::string& key) {
  std::size_t used = 0;
  double out = 0;
  try {
    out = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError(key, "'" + s + "' is not a number");
  }
  if (used != s.size()) throw ConfigError(key, "'" + s + "' is not a number");
  return out;
}

const Value& expect_list(const Value& v, const std::string& key) {
  if (!v.is_list) throw ConfigError(key, "expected a [..] list");
  return v;
}

std::size_t saturating_power(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (out > cap / base) return cap + 1;
    out *= base;
  }
  return out;
}

bool has_suite(const RunConfig& cfg, const std::string& name) {
  return std::find(cfg.suites.begin(), cfg.suites.end(), name) != cfg.suites.end();
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::set<std::string> seen;
  Cursor c{text};
  while (!c.done()) {
    const std::string key = read_key(c);
    while (c.pos < text.size() && (text[c.pos] == ' ' || text[c.pos] == '\t')) ++c.pos;
    if (c.pos >= text.size() || text[c.pos] != '=') throw ConfigError(key, "expected '=' after key");
    ++c.pos;
    if (!seen.insert(key).second) throw ConfigError(key, "duplicate key");
    const Value v = read_value(c, key);

    if (key == "group") {
      cfg.group.clear();
      for (const auto& s : expect_list(v, key).items) {
        const long long n = to_integer(s, key);
        if (n < 2) throw ConfigError(key, "cyclic order " + s + " < 2: the group must be non-trivial");
        if (n > static_cast<long long>(GroupTables::kMaxOrder)) throw ConfigError(key, "cyclic order " + s + " too large");
        cfg.group.push_back(static_cast<int>(n));
      }
      if (cfg.group.empty()) throw ConfigError(key, "empty group: the group must be non-trivial");
    } else if (key == "patch") {
      const auto& items = expect_list(v, key).items;
      if (items.size() != 2) throw ConfigError(key, "expected [width, height]");
      const long long w = to_integer(items[0], key), h = to_integer(items[1], key);
      if (w < 1 || h < 1) throw ConfigError(key, "width and height must be at least 1");
      if (w > kMaxPatchSide || h > kMaxPatchSide)
        throw ConfigError(key, "sides above " + std::to_string(kMaxPatchSide) + " are not supported");
      cfg.width = static_cast<int>(w);
      cfg.height = static_cast<int>(h);
    } else if (key == "betas") {
      cfg.betas.clear();
      for (const auto& s : expect_list(v, key).items) {
        const double b = to_real(s, key);
        if (!std::isfinite(b) || b < 0) throw ConfigError(key, "inverse temperatures must be finite and >= 0");
        cfg.betas.push_back(b);
      }
      if (cfg.betas.empty()) throw ConfigError(key, "empty beta list");
    } else if (key == "suites") {
      cfg.suites.clear();
      for (const auto& s : expect_list(v, key).items) {
        if (std::find(kSuiteNames.begin(), kSuiteNames.end(), s) == kSuiteNames.end())
          throw ConfigError(key, "unknown suite '" + s + "'");
        if (!has_suite(cfg, s)) cfg.suites.push_back(s);
      }
      if (cfg.suites.empty()) throw ConfigError(key, "empty suite list");
      std::sort(cfg.suites.begin(), cfg.suites.end(), [](const std::string& a, const std::string& b) {
        return std::find(kSuiteNames.begin(), kSuiteNames.end(), a) < std::find(kSuiteNames.begin(), kSuiteNames.end(), b);
      });
    } else if (key == "seed") {
      if (v.is_list) throw ConfigError(key, "expected an integer");
      const long long s = to_integer(v.items[0], key);
      if (s < 0) throw ConfigError(key, "seed must be non-negative");
      cfg.seed = static_cast<std::uint64_t>(s);
    } else if (key == "output") {
      if (v.is_list) throw ConfigError(key, "expected a path");
      cfg.output = v.items[0];
    } else {
      throw ConfigError(key, "unknown key (allowed: group, patch, betas, suites, seed, output)");
    }
  }
  if (!seen.count("group")) throw ConfigError("group", "missing");
  if (!seen.count("patch")) throw ConfigError("patch", "missing");
  if (!seen.count("betas")) throw ConfigError("betas", "missing");
  check_guards(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void check_guards(const RunConfig& cfg) {
  std::size_t order = 1;
  for (int n : cfg.group) {
    order *= static_cast<std::size_t>(n);
    if (order > GroupTables::kMaxOrder)
      throw ConfigError("group", "order above " + std::to_string(GroupTables::kMaxOrder));
  }
  const LatticePatch patch(cfg.width, cfg.height);
  const std::size_t interior = patch.interior_sites().size();
  if (has_suite(cfg, "gibbs") && saturating_power(order, interior, kConfigurationGuard) > kConfigurationGuard)
    throw ConfigError("patch", "gibbs suite: |G|^(interior sites) exceeds " + std::to_string(kConfigurationGuard));
  if (has_suite(cfg, "measure") && saturating_power(order, 4, kConfigurationGuard) > kConfigurationGuard)
    throw ConfigError("group", "measure suite: |G|^4 exceeds " + std::to_string(kConfigurationGuard));
  if (has_suite(cfg, "transfer") && order * order > kTransferGuard)
    throw ConfigError("group", "transfer suite: |G|^2 exceeds " + std::to_string(kTransferGuard));
  if (has_suite(cfg, "ltqo") && saturating_power(order, interior, kConfigurationGuard) > kConfigurationGuard)
    throw ConfigError("patch", "ltqo suite: |G|^(interior sites) exceeds " + std::to_string(kConfigurationGuard));
}

// ---------------------------------------------------------------- records

bool operator==(const ReportRecord& a, const ReportRecord& b) {
  auto same = [](double x, double y) { return x == y || (std::isnan(x) && std::isnan(y)); };
  return a.suite == b.suite && a.case_id == b.case_id && a.group == b.group && a.beta == b.beta &&
         a.inputs == b.inputs && a.expected == b.expected && a.computed == b.computed && same(a.residual, b.residual) &&
         a.tolerance == b.tolerance && a.passed == b.passed && a.note == b.note && a.label_class == b.label_class &&
         a.site_kind == b.site_kind && a.s_beta == b.s_beta && a.pf_lambda == b.pf_lambda &&
         a.det_B_residual == b.det_B_residual && a.recursion_residual == b.recursion_residual;
}

bool all_passed(const std::vector<ReportRecord>& records) {
  return std::all_of(records.begin(), records.end(), [](const ReportRecord& r) { return r.passed; });
}

namespace {

class Runner {
 public:
  explicit Runner(const RunConfig& cfg)
      : cfg_(cfg), group_(cfg.group), space_(OperatorSpace::create(LatticePatch(cfg.width, cfg.height), group_)) {}

  std::vector<ReportRecord> run() {
    for (std::size_t i = 0; i < kSuiteNames.size(); ++i) {
      const std::string& name = kSuiteNames[i];
      if (!has_suite(cfg_, name)) continue;
      suite_index_ = i;
      suite_ = name;
      if (name == "algebra") algebra();
      if (name == "gibbs") per_beta(&Runner::gibbs);
      if (name == "measure") {
        cocycle_law();
        per_beta(&Runner::measure);
      }
      if (name == "transfer") per_beta(&Runner::transfer);
      if (name == "ltqo") ltqo();
      if (name == "gamma") gamma();
      if (name == "zerot") zerot();
    }
    return std::move(records_);
  }

 private:
  const RunConfig& cfg_;
  GroupSpec group_;
  SpacePtr space_;
  std::vector<ReportRecord> records_;
  std::size_t suite_index_ = 0;
  std::string suite_;

  const LatticePatch& patch() const { return space_->patch(); }

  std::mt19937_64 rng(std::size_t stream) const {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg_.seed & 0xffffffffu), static_cast<std::uint32_t>(cfg_.seed >> 32),
                      static_cast<std::uint32_t>(suite_index_), static_cast<std::uint32_t>(stream)};
    return std::mt19937_64(seq);
  }

  json base_inputs(std::optional<std::size_t> stream = std::nullopt) const {
    json in{{"patch", {cfg_.width, cfg_.height}}};
    if (stream) in["rng"] = {{"generator", kGeneratorName}, {"seed", cfg_.seed}, {"stream", *stream}};
    return in;
  }

  // Runs fill(record); a thrown exception turns into a failed record.
  void add(const std::string& case_id, std::optional<double> beta, const std::function<void(ReportRecord&)>& fill) {
    ReportRecord r;
    r.suite = suite_;
    r.case_id = case_id;
    r.group = cfg_.group;
    r.beta = beta;
    r.inputs = base_inputs();
    const auto start = std::chrono::steady_clock::now();
    try {
      fill(r);
      r.passed = r.residual >= 0 && r.residual <= r.tolerance;
    } catch (const std::exception& e) {
      r.residual = std::numeric_limits<double>::infinity();
      r.passed = false;
      r.note = e.what();
    }
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    records_.push_back(std::move(r));
  }

  void per_beta(void (Runner::*fn)(double, std::size_t)) {
    for (std::size_t i = 0; i < cfg_.betas.size(); ++i) (this->*fn)(cfg_.betas[i], i);
  }

  void algebra() {
    const auto start = std::chrono::steady_clock::now();
    RelationReport rep;
    try {
      rep = verify_relation_suite(space_);
    } catch (const std::exception& e) {
      add("algebra/relations", std::nullopt, [&](ReportRecord&) { throw std::runtime_error(e.what()); });
      return;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const auto& c : rep.checks) {
      add("algebra/" + c.relation, std::nullopt, [&](ReportRecord& r) {
        r.expected = {{"failures", 0}};
        r.computed = {{"cases", c.cases}, {"failures", c.failures}};
        r.residual = static_cast<double>(c.failures);
        r.tolerance = 0.0;
        r.note = c.cases == 0 ? "no cases on this patch" : c.first_failure;
      });
      records_.back().wall_seconds += seconds / static_cast<double>(rep.checks.size());
    }
  }

  std::vector<SiteId> gibbs_sites() const {
    std::vector<SiteId> out;
    for (SiteKind kind : {SiteKind::vertex, SiteKind::face})
      for (const auto& w : patch().interior_sites())
        if (w.kind == kind) {
          out.push_back(w);
          break;
        }
    return out;
  }

  void gibbs(double beta, std::size_t) {
    const auto table = expectation_table(beta, group_);
    const SyndromeConfig omega = neutral_syndrome(*space_);
    std::optional<OperatorSum> rho;
    for (const auto& w : gibbs_sites()) {
      for (bool neutral : {true, false}) {
        const std::string kind = w.is_vertex() ? "vertex" : "face";
        const std::string cls = neutral ? "neutral" : "excited";
        add("gibbs/" + kind + "/" + cls, beta, [&](ReportRecord& r) {
          if (!rho) rho = gibbs_operator(space_, beta, omega);
          const std::uint32_t label = neutral ? 0 : 1;
          double expected = 0.0;
          for (const auto& row : table)
            if (row.site_kind == w.kind && row.neutral == neutral) expected = row.s_beta;
          const auto value = gibbs_expectation(site_projector(space_, w, label), *rho);
          r.inputs["site"] = {{"kind", kind}, {"x", w.x}, {"y", w.y}, {"label", group_.residues_at(label)}};
          r.expected = expected;
          r.computed = {value.real(), value.imag()};
          r.residual = std::abs(value - expected);
          r.tolerance = beta == 0.0 ? 0.0 : 1e-10;
          r.label_class = cls;
          r.site_kind = kind;
          r.s_beta = value.real();
          if (beta == 0.0) r.note = "tracial state: exactly 1/|G|";
        });
      }
    }
  }

  std::vector<SiteId> measure_window() const {
    auto sites = interleaved_sites(patch());
    sites.resize(std::min<std::size_t>(4, sites.size()));
    return sites;
  }

  void measure(double beta, std::size_t beta_index) {
    auto gen = rng(beta_index);
    const auto window = measure_window();
    const MeasureParams params = build_measure_params(beta, group_);
    for (int k = 0; k < 20; ++k) {
      const GammaElement gamma = random_gamma(gen, group_, window, 4);
      add("measure/kms/" + std::to_string(k), beta, [&](ReportRecord& r) {
        r.inputs = base_inputs(beta_index);
        r.inputs["draw"] = k;
        r.inputs["gamma"] = syndrome_to_json(gamma.config());
        r.inputs["window"] = syndrome_to_json(SyndromeConfig(group_, window))["sites"];
        const auto rep = kms_measure_check(params, window, gamma);
        r.expected = 0.0;
        r.computed = {{"cylinders", rep.cylinders}, {"residual", rep.residual}};
        r.residual = rep.residual;
        r.tolerance = 1e-12;
      });
    }
  }

  void cocycle_law() {
    add("measure/cocycle_law", std::nullopt, [&](ReportRecord& r) {
      auto window = interleaved_sites(patch());
      window.resize(std::min<std::size_t>(3, window.size()));
      const auto configs = enumerate_configurations(group_, window);
      std::vector<GammaElement> gammas;
      for (const auto& c : configs)
        if (in_gamma(c)) gammas.emplace_back(c);
      if (configs.size() * gammas.size() * gammas.size() > kConfigurationGuard)
        throw GuardExceeded("cocycle law: enumeration above the configuration guard");
      std::size_t failures = 0, cases = 0;
      for (const auto& omega : configs)
        for (const auto& g1 : gammas)
          for (const auto& g2 : gammas) {
            ++cases;
            const int lhs = cocycle(omega, g1.compose(g2));
            const int rhs = cocycle(omega, g1) + cocycle(act(g1.inverse(), omega), g2);
            if (lhs != rhs) ++failures;
          }
      r.inputs["window"] = syndrome_to_json(SyndromeConfig(group_, window))["sites"];
      r.expected = {{"failures", 0}};
      r.computed = {{"cases", cases}, {"failures", failures}};
      r.residual = static_cast<double>(failures);
      r.tolerance = 0.0;
    });
  }

  void transfer(double beta, std::size_t) {
    add("transfer/det_B", beta, [&](ReportRecord& r) {
      const DeterminantCheck d = det_closed_form_check(beta, group_);
      r.expected = d.det_B_formula;
      r.computed = d.det_B;
      r.residual = d.residual;
      r.tolerance = 1e-10;
      r.det_B_residual = d.residual;
    });
    if (beta == 0.0)
      add("transfer/singular_at_zero", beta, [&](ReportRecord& r) {
        const DeterminantCheck d = det_closed_form_check(beta, group_);
        r.expected = "singular";
        r.computed = {{"inverse_condition", d.inverse_condition}, {"det_A", d.det_A}};
        r.residual = d.inverse_condition;
        r.tolerance = 1e-12;
        r.det_B_residual = d.residual;
        r.note = "A_beta is expected to be singular at beta = 0";
      });
    const TransferMatrix tm = build_transfer(beta, group_);
    std::optional<PerronFrobenius> pf;
    auto get_pf = [&]() -> const PerronFrobenius& {
      if (!pf) pf = pf_eigen(tm.A);
      return *pf;
    };
    add("transfer/pf_vector", beta, [&](ReportRecord& r) {
      const auto& p = get_pf();
      const Eigen::VectorXd target = cylinder_vector(tm, 1);
      r.expected = "nu (x) nu~";
      r.computed = {{"iterations", p.iterations}};
      r.residual = (p.vector - target / target.sum()).cwiseAbs().maxCoeff();
      r.tolerance = 1e-10;
      r.pf_lambda = p.eigenvalue;
    });
    add("transfer/pf_eigenvalue", beta, [&](ReportRecord& r) {
      const auto& p = get_pf();
      const double expected = 1.0 / (tm.params.nu_neutral * tm.params.nu_neutral);
      r.expected = expected;
      r.computed = p.eigenvalue;
      r.residual = std::abs(p.eigenvalue - expected) / expected;
      r.tolerance = 1e-10;
      r.pf_lambda = p.eigenvalue;
      r.note = "relative residual";
    });
    add("transfer/pf_gap", beta, [&](ReportRecord& r) {
      const auto& p = get_pf();
      r.expected = "< 1";
      r.computed = p.gap_ratio;
      r.residual = p.gap_ratio < 1.0 ? 0.0 : p.gap_ratio;
      r.tolerance = 0.0;
      r.pf_lambda = p.eigenvalue;
    });
    add("transfer/recursion", beta, [&](ReportRecord& r) {
      const RecursionReport rep = recursion_check(beta, group_, 6);
      r.inputs["n_max"] = 6;
      r.expected = 0.0;
      r.computed = {{"recursion", rep.residual},
                    {"brute_force", rep.brute_force_residual},
                    {"entries", rep.entry_residual},
                    {"level_one_sum", rep.level_one_sum}};
      r.residual = std::max({rep.residual, rep.brute_force_residual, rep.entry_residual});
      r.tolerance = 1e-12;
      r.recursion_residual = rep.residual;
    });
  }

  OperatorSum random_two_edge_sum(std::mt19937_64& gen, const std::vector<EdgeId>& region) {
    std::uniform_int_distribution<std::size_t> pick_edge(0, region.size() - 1);
    std::uniform_int_distribution<std::uint32_t> pick_label(0, static_cast<std::uint32_t>(group_.order() - 1));
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::vector<Term> terms;
    for (int k = 0; k < 3; ++k) {
      Signature sig(space_->num_edges(), 0);
      for (int j = 0; j < 2; ++j)
        sig[patch().edge_index(region[pick_edge(gen)])] = space_->encode(pick_label(gen), pick_label(gen));
      const double re = coeff(gen), im = coeff(gen);
      terms.push_back({sig, {re, im}});
    }
    return OperatorSum::from_terms(space_, std::move(terms));
  }

  void ltqo_case(const std::string& id, const OperatorSum& x, const std::vector<SiteId>& delta,
                 const SyndromeConfig& omega, json inputs) {
    add(id, std::nullopt, [&](ReportRecord& r) {
      r.inputs = std::move(inputs);
      r.inputs["operator"] = operator_to_json(x);
      const LtqoResult res = ltqo_check(x, delta, omega);
      r.expected = 0.0;
      r.computed = {{"s", {res.s_value.real(), res.s_value.imag()}},
                    {"symbolic_zero", res.symbolic_zero},
                    {"surviving_terms", res.surviving_terms}};
      r.residual = res.residual;
      r.tolerance = 1e-10;
    });
  }

  void ltqo() {
    const auto region = ltqo_edges(patch());
    if (region.empty()) return;
    const auto delta = patch().interior_sites();
    const SyndromeConfig omega = neutral_syndrome(*space_);
    for (const auto& e : region)
      for (std::uint32_t a = 1; a < group_.order(); ++a) {
        const std::string tag = to_string(e) + "/" + std::to_string(a);
        ltqo_case("ltqo/T/" + tag, OperatorSum::from_monomial(space_, edge_translation(*space_, e, group_.element_at(a))),
                  delta, omega, base_inputs());
        ltqo_case("ltqo/M/" + tag,
                  OperatorSum::from_monomial(space_, edge_multiplication(*space_, e, group_.character_at(a))), delta,
                  omega, base_inputs());
      }
    auto gen = rng(0);
    for (int k = 0; k < 10; ++k) {
      json in = base_inputs(0);
      in["draw"] = k;
      ltqo_case("ltqo/random/" + std::to_string(k), random_two_edge_sum(gen, region), delta, omega, in);
    }
  }

  void gamma() {
    const SiteId base_v = patch().vertices().front(), base_f = patch().faces().front();
    const auto candidates = interleaved_sites(patch());
    auto gen = rng(0);
    for (int k = 0; k < 50; ++k) {
      const GammaElement g = random_gamma(gen, group_, candidates, 6);
      add("gamma/roundtrip/" + std::to_string(k), std::nullopt, [&](ReportRecord& r) {
        r.inputs = base_inputs(0);
        r.inputs["draw"] = k;
        r.inputs["gamma"] = syndrome_to_json(g.config());
        const auto factors = decompose_gamma(g, base_v, base_f, patch());
        std::size_t bad_factors = 0;
        for (const auto& d : factors)
          if (!in_gamma(elementary_delta(patch(), group_, d).config())) ++bad_factors;
        const bool recomposed = compose_deltas(factors, patch(), group_) == g;
        r.expected = {{"recomposed", true}, {"non_neutral_factors", 0}};
        r.computed = {{"recomposed", recomposed}, {"non_neutral_factors", bad_factors}, {"factors", factors.size()}};
        r.residual = static_cast<double>(bad_factors + (recomposed ? 0 : 1));
        r.tolerance = 0.0;
      });
    }
    dynamics(base_v, base_f);
  }

  void dynamics(const SiteId& base_v, const SiteId& base_f) {
    const auto interior = patch().interior_sites();
    if (saturating_power(space_->order(), space_->num_edges(), kDenseGuard) > kDenseGuard) return;
    if (saturating_power(space_->order(), interior.size(), kDynamicsConfigurations) > kDynamicsConfigurations) return;
    std::optional<GammaElement> g;
    for (const auto& e : patch().edges())
      if (patch().adjacent_faces(e).size() == 2) {
        g = elementary_delta(patch(), group_, e, group_.element_at(1));
        break;
      }
    for (const auto& w : interior)
      if (w.is_vertex()) {
        const auto charge = elementary_delta(patch(), group_, patch().incident_edges(w).front(), group_.character_at(1));
        g = g ? charge.compose(*g) : charge;
        break;
      }
    if (!g) return;
    std::optional<DynamicsCheck> check;
    auto get = [&]() -> const DynamicsCheck& {
      if (!check) check = dynamics_cocycle_check(space_, *g, base_v, base_f);
      return *check;
    };
    const json gamma_json = syndrome_to_json(g->config());
    add("gamma/dynamics/symbolic", std::nullopt, [&](ReportRecord& r) {
      r.inputs["gamma"] = gamma_json;
      r.expected = "sum_omega c_H(omega, gamma) P^omega";
      r.computed = {{"configurations", get().configurations}};
      r.residual = get().symbolic_residual;
      r.tolerance = 1e-10;
    });
    add("gamma/dynamics/sparse", std::nullopt, [&](ReportRecord& r) {
      r.inputs["gamma"] = gamma_json;
      r.expected = "sum_omega c_H(omega, gamma) P^omega";
      r.computed = {{"configurations", get().configurations}};
      r.residual = get().dense_residual;
      r.tolerance = 1e-10;
    });
  }

  void zerot() {
    std::vector<double> grid = cfg_.betas;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    ZeroTemperatureScan scan;
    try {
      scan = zero_t_scan(group_, grid);
    } catch (const std::exception& e) {
      add("zerot/scan", std::nullopt, [&](ReportRecord&) { throw std::runtime_error(e.what()); });
      return;
    }
    for (const auto& p : scan.points)
      add("zerot/defect", p.beta, [&](ReportRecord& r) {
        r.expected = {{"bound", p.bound}};
        r.computed = {{"defect", p.defect}};
        r.residual = std::max(0.0, p.defect - p.bound);
        r.tolerance = 0.0;
        r.label_class = "neutral";
        r.site_kind = "vertex";
        r.s_beta = p.s_beta;
      });
    add("zerot/strictly_decreasing", std::nullopt, [&](ReportRecord& r) {
      r.inputs["betas"] = grid;
      r.expected = true;
      r.computed = scan.strictly_decreasing;
      r.residual = scan.strictly_decreasing ? 0.0 : 1.0;
      r.tolerance = 0.0;
    });
  }
};

}  // namespace

std::vector<ReportRecord> run_suite(const RunConfig& cfg) {
  check_guards(cfg);
  return Runner(cfg).run();
}

// ---------------------------------------------------------------- emit

namespace {

const std::vector<std::string> kCsvColumns{"group",   "beta",     "label_class", "site_kind", "s_beta",
                                           "pf_lambda", "det_B_residual", "recursion_residual", "suite",
                                           "case_id", "inputs",   "expected",    "computed",  "residual",
                                           "tolerance", "passed",  "note"};

std::string number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return json(x).dump();
}

std::string optional_number(const std::optional<double>& x) { return x ? number(*x) : std::string(); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string group_name(const std::vector<int>& orders) {
  std::string out;
  for (std::size_t i = 0; i < orders.size(); ++i) out += (i ? "xZ" : "Z") + std::to_string(orders[i]);
  return out;
}

json optional_json(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

std::optional<double> optional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

}  // namespace

std::string records_to_csv(const std::vector<ReportRecord>& records) {
  std::string out;
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) out += (i ? "," : "") + kCsvColumns[i];
  out += "\n";
  for (const auto& r : records) {
    const std::vector<std::string> fields{group_name(r.group),
                                          optional_number(r.beta),
                                          r.label_class,
                                          r.site_kind,
                                          optional_number(r.s_beta),
                                          optional_number(r.pf_lambda),
                                          optional_number(r.det_B_residual),
                                          optional_number(r.recursion_residual),
                                          r.suite,
                                          r.case_id,
                                          r.inputs.dump(),
                                          r.expected.dump(),
                                          r.computed.dump(),
                                          number(r.residual),
                                          number(r.tolerance),
                                          r.passed ? "true" : "false",
                                          r.note};
    for (std::size_t i = 0; i < fields.size(); ++i) out += (i ? "," : "") + csv_field(fields[i]);
    out += "\n";
  }
  return out;
}

std::string records_to_json(const std::vector<ReportRecord>& records) {
  json arr = json::array();
  for (const auto& r : records) {
    arr.push_back({{"suite", r.suite},
                   {"case_id", r.case_id},
                   {"group", r.group},
                   {"beta", optional_json(r.beta)},
                   {"inputs", r.inputs},
                   {"expected", r.expected},
                   {"computed", r.computed},
                   {"residual", std::isfinite(r.residual) ? json(r.residual) : json(nullptr)},
                   {"tolerance", r.tolerance},
                   {"passed", r.passed},
                   {"note", r.note},
                   {"label_class", r.label_class},
                   {"site_kind", r.site_kind},
                   {"s_beta", optional_json(r.s_beta)},
                   {"pf_lambda", optional_json(r.pf_lambda)},
                   {"det_B_residual", optional_json(r.det_B_residual)},
                   {"recursion_residual", optional_json(r.recursion_residual)}});
  }
  return arr.dump(2) + "\n";
}

std::vector<ReportRecord> records_from_json(const std::string& text) {
  const json arr = json::parse(text);
  if (!arr.is_array()) throw std::invalid_argument("report JSON must be an array of records");
  std::vector<ReportRecord> out;
  for (const auto& j : arr) {
    ReportRecord r;
    r.suite = j.at("suite").get<std::string>();
    r.case_id = j.at("case_id").get<std::string>();
    r.group = j.at("group").get<std::vector<int>>();
    r.beta = optional_from(j.at("beta"));
    r.inputs = j.at("inputs");
    r.expected = j.at("expected");
    r.computed = j.at("computed");
    r.residual = j.at("residual").is_null() ? std::numeric_limits<double>::infinity() : j.at("residual").get<double>();
    r.tolerance = j.at("tolerance").get<double>();
    r.passed = j.at("passed").get<bool>();
    r.note = j.at("note").get<std::string>();
    r.label_class = j.at("label_class").get<std::string>();
    r.site_kind = j.at("site_kind").get<std::string>();
    r.s_beta = optional_from(j.at("s_beta"));
    r.pf_lambda = optional_from(j.at("pf_lambda"));
    r.det_B_residual = optional_from(j.at("det_B_residual"));
    r.recursion_residual = optional_from(j.at("recursion_residual"));
    out.push_back(std::move(r));
  }
  return out;
}

std::filesystem::path emit(const std::vector<ReportRecord>& records, ReportFormat format,
                           const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  const auto path = dir / (format == ReportFormat::csv ? "report.csv" : "report.json");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << (format == ReportFormat::csv ? records_to_csv(records) : records_to_json(records));
  out.close();
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
  return path;
}

}  // namespace kitaev
