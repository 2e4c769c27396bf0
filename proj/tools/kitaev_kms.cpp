#include <cstdio>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "kitaev/reports.hpp"

namespace {

const std::map<std::string, std::string> kDescriptions{
    {"algebra", "exact edge, star/plaquette and ribbon relations"},
    {"gibbs", "finite-volume Gibbs expectations of site projectors against s_beta"},
    {"measure", "KMS condition for the product measure on small windows, cocycle law"},
    {"transfer", "transfer matrix determinant, Perron-Frobenius data and cylinder recursion"},
    {"ltqo", "local topological order of the ground projector"},
    {"gamma", "Gamma decomposition round trip and the dynamics cocycle identity"},
    {"zerot", "zero-temperature defect bound and monotonicity"},
};

void print_summary(const std::vector<kitaev::ReportRecord>& records) {
  struct Tally {
    std::size_t passed = 0, total = 0;
    double seconds = 0;
  };
  std::map<std::string, Tally> by_suite;
  for (const auto& r : records) {
    auto& t = by_suite[r.suite];
    ++t.total;
    t.passed += r.passed ? 1 : 0;
    t.seconds += r.wall_seconds;
  }
  for (const auto& name : kitaev::kSuiteNames) {
    auto it = by_suite.find(name);
    if (it == by_suite.end()) continue;
    std::printf("%-9s %4zu/%-4zu passed  %8.3f s\n", name.c_str(), it->second.passed, it->second.total,
                it->second.seconds);
  }
  for (const auto& r : records)
    if (!r.passed)
      std::printf("FAIL %s beta=%s residual=%.3g tol=%.3g %s\n", r.case_id.c_str(),
                  r.beta ? std::to_string(*r.beta).c_str() : "-", r.residual, r.tolerance, r.note.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"KMS states of abelian quantum double models"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run the configured verification suites");
  std::string config_path, format = "json", out_dir;
  run->add_option("--config", config_path, "run config file")->required();
  run->add_option("--format", format, "report format")->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--out", out_dir, "report directory (overrides the output key)");

  auto* list = app.add_subcommand("list-suites", "print the available suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (list->parsed()) {
    for (const auto& name : kitaev::kSuiteNames) std::printf("%-9s %s\n", name.c_str(), kDescriptions.at(name).c_str());
    return 0;
  }

  kitaev::RunConfig cfg;
  try {
    cfg = kitaev::load_config(config_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }
  if (!out_dir.empty()) cfg.output = out_dir;

  const auto records = kitaev::run_suite(cfg);
  print_summary(records);
  try {
    const auto path =
        kitaev::emit(records, format == "csv" ? kitaev::ReportFormat::csv : kitaev::ReportFormat::json, cfg.output);
    std::printf("wrote %s\n", path.string().c_str());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "output error: %s\n", e.what());
    return 1;
  }
  return kitaev::all_passed(records) ? 0 : 1;
}
