#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "flatrange/analysis.hpp"
#include "flatrange/companion.hpp"

namespace flatrange {

enum class Command { Analyze, Boundary, Check34, Reduce, Search };

struct JobConfig {
  Command command = Command::Analyze;
  std::string coeffs;  // inline spec text
  std::string file;    // or a path to it
  double tol_uni = kDefaultUnimodularTol;
  double tol_cond2 = 1e-7;
  double tol_confirm = 1e-8;
  double gap_tol = 1e-6;
  int samples = 720;
  std::uint64_t seed = 42;
  std::int64_t trials = 10000;
  int n = 4;
  std::string out;
  std::string svg;
  bool pretty = false;
  bool y_down = false;

  /// Throws ConfigError on non-positive tolerances, samples < 8, trials < 1
  /// or a spec-taking command with neither or both of coeffs and file.
  void validate() const;
  FlatnessConfig flatness() const;
};

/// Accepts a comma-separated list of complex expressions (`2+1i`, `-1-1i`,
/// `1-sqrt2`, `(1+i)/2`, ...) or a JSON document {"n": 4, "a": [[re, im], ...]}.
CompanionSpec parse_coeffs(std::string_view text);

/// JSON form accepted by parse_coeffs; doubles round-trip exactly.
std::string render_json(const CompanionSpec& spec);

enum ExitCode : int {
  kExitOk = 0,
  kExitViolation = 1,
  kExitUsage = 2,
  kExitNumerical = 3,
};

/// Executes one command, writing the report to `out` and diagnostics to
/// `err`. Returns one of ExitCode.
int run(const JobConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace flatrange
