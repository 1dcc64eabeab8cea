#pragma once

// Seeded random search over companion matrices. Besides generic coefficient
// distributions it samples the thin strata where flat portions live: specs
// built to satisfy the necessary conditions at chosen unimodular points,
// reducible spectra, and (n = 4) the stratum where the cond2 equation is a
// tautology, which is where a third flat portion would have to come from.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "flatrange/companion.hpp"
#include "flatrange/flatness.hpp"
#include "flatrange/rng.hpp"

namespace flatrange {

enum class Sampler {
  Gaussian05,
  Gaussian1,
  Gaussian2,
  Annulus,
  EngineeredFlat,
  Reducible,
  Unitary,
  Exceptional3,
  Tau4Random,
  Tau4OneRoot,
  Tau4TwoRoots,
  ThreeUnimodular,
  Biquadratic,
};

std::string_view sampler_name(Sampler s);
std::vector<Sampler> samplers_for(int n);
CompanionSpec sample_spec(int n, Sampler s, Xoshiro256& rng);

struct SearchConfig {
  int n = 4;
  std::int64_t trials = 10000;
  std::uint64_t seed = 42;
  FlatnessConfig flat;
};

struct TrialOutcome {
  Sampler sampler = Sampler::Gaussian1;
  int flat_count = 0;
  bool reducible = false;
  bool violation = false;
  bool failed = false;
};

struct SearchResult {
  int n = 0;
  std::int64_t trials = 0;
  std::map<int, std::int64_t> histogram;
  std::map<int, std::int64_t> irreducible_histogram;
  std::map<std::string, std::map<int, std::int64_t>> by_sampler;
  std::vector<std::int64_t> violations;  // trial indices, ascending
  std::vector<std::int64_t> failures;    // trials that threw

  bool ok() const { return violations.empty() && failures.empty(); }
  bool operator==(const SearchResult&) const = default;
};

/// Spec drawn for trial `index`; independent of thread count.
CompanionSpec trial_spec(const SearchConfig& cfg, std::int64_t index, Sampler* sampler = nullptr);

/// A trial violates the known bounds when f(A) > n, when n = 4 and
/// f(A) = 3, or when n = 3, A is irreducible and f(A) >= 2.
TrialOutcome run_trial(const SearchConfig& cfg, std::int64_t index);

SearchResult random_search(const SearchConfig& cfg);
SearchResult random_search_serial(const SearchConfig& cfg);

/// Applies FLATRANGE_THREADS (if set) as the OpenMP thread cap.
void apply_thread_cap();

}  // namespace flatrange
