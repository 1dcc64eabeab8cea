#pragma once

#include <optional>
#include <vector>

#include "flatrange/flatness.hpp"
#include "flatrange/special.hpp"

namespace flatrange {

struct AnalysisReport {
  CompanionSpec spec;
  std::vector<FlatCandidate> candidates;
  std::vector<FlatPortion> portions;  // sorted by arg omega
  int flat_count = 0;                 // f(A)
  bool cond1_constant = false;        // a_0 = ... = a_{n-2} = 0
  ReducibilityVerdict reducible;
  std::optional<bool> oracle_agreement;
};

/// The full pipeline: candidates, confirmation, dedup by omega. For n = 2 a
/// normal matrix has W(A) a segment, counted as one flat portion.
AnalysisReport analyze(const CompanionSpec& spec, const FlatnessConfig& cfg = {});

}  // namespace flatrange
