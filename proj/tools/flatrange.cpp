#include <iostream>

#include <CLI11.hpp>

#include "flatrange/cli.hpp"
#include "flatrange/search.hpp"

namespace {

void add_spec_options(CLI::App* sub, flatrange::JobConfig& cfg) {
  sub->add_option("--coeffs", cfg.coeffs, "coefficients a_0..a_{n-1}, e.g. \"2+1i,-1-1i,2+3i\", or a JSON spec");
  sub->add_option("--file", cfg.file, "read the spec from a file");
}

void add_tolerances(CLI::App* sub, flatrange::JobConfig& cfg) {
  sub->add_option("--tol-uni", cfg.tol_uni, "unimodularity tolerance")->capture_default_str();
  sub->add_option("--tol-cond2", cfg.tol_cond2, "cond2 tolerance, scaled by 1 + max|a_k|")->capture_default_str();
  sub->add_option("--tol-confirm", cfg.tol_confirm, "non-scalar compression threshold")->capture_default_str();
}

void add_oracle(CLI::App* sub, flatrange::JobConfig& cfg) {
  sub->add_option("--gap-tol", cfg.gap_tol, "oracle eigengap tolerance, scaled by ||A||_F")->capture_default_str();
  sub->add_option("--samples", cfg.samples, "support function samples")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  flatrange::apply_thread_cap();
  flatrange::JobConfig cfg;

  CLI::App app{"Flat portions on the boundary of the numerical range of companion matrices"};
  app.require_subcommand(1);
  app.fallthrough();

  auto* analyze = app.add_subcommand("analyze", "detect and locate flat portions (JSON report)");
  add_spec_options(analyze, cfg);
  add_tolerances(analyze, cfg);
  add_oracle(analyze, cfg);

  auto* boundary = app.add_subcommand("boundary", "sample the boundary; CSV and optional SVG");
  add_spec_options(boundary, cfg);
  add_tolerances(boundary, cfg);
  add_oracle(boundary, cfg);
  boundary->add_option("--out", cfg.out, "CSV path (default: stdout)");
  boundary->add_option("--svg", cfg.svg, "SVG path");
  boundary->add_flag("--y-down", cfg.y_down, "screen orientation for the SVG");

  auto* check34 = app.add_subcommand("check34", "closed-form criteria for n = 3, 4");
  add_spec_options(check34, cfg);
  add_tolerances(check34, cfg);

  auto* reduce = app.add_subcommand("reduce", "unitary reducibility verdict");
  add_spec_options(reduce, cfg);

  auto* search = app.add_subcommand("search", "seeded random search for flat portion counts");
  search->add_option("--n", cfg.n, "matrix size")->capture_default_str();
  search->add_option("--trials", cfg.trials, "number of trials")->capture_default_str();
  search->add_option("--seed", cfg.seed, "PRNG seed")->capture_default_str();
  add_tolerances(search, cfg);

  app.add_flag("--pretty", cfg.pretty, "human-readable table instead of JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : flatrange::kExitUsage;
  }

  if (analyze->parsed()) cfg.command = flatrange::Command::Analyze;
  if (boundary->parsed()) cfg.command = flatrange::Command::Boundary;
  if (check34->parsed()) cfg.command = flatrange::Command::Check34;
  if (reduce->parsed()) cfg.command = flatrange::Command::Reduce;
  if (search->parsed()) cfg.command = flatrange::Command::Search;

  return flatrange::run(cfg, std::cout, std::cerr);
}
