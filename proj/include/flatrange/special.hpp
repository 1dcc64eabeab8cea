#pragma once

// Closed-form flat portion criteria for n = 2, 3, 4 and the root-of-unity
// test for unitary reducibility of a companion matrix.

#include <optional>
#include <utility>
#include <vector>

#include "flatrange/companion.hpp"
#include "flatrange/flatness.hpp"

namespace flatrange {

/// A is unitarily reducible iff its spectrum is
///   { eta w_j : j in J1 } u { conj(eta)^{-1} w_j : j in J2 },  w_j = e^{2 pi i j / n},
/// with J1, J2 a partition of {1..n} into nonempty parts. We report |eta| >= 1.
struct ReducibilityVerdict {
  bool reducible = false;
  bool unitary = false;
  std::optional<cplx> eta;
  std::optional<std::pair<std::vector<int>, std::vector<int>>> partition;  // 1-based indices j
  CVector eigenvalues;

  double r() const { return eta ? std::abs(*eta) : 0.0; }
};

ReducibilityVerdict reducibility(const CompanionSpec& spec, double tol = 1e-8);

/// |a_0| = 1 and (a_1 = 0 or 2 arg a_1 - arg a_0 = pi mod 2 pi). Throws
/// WrongDimension unless n = 2.
bool normality_2x2(const CompanionSpec& spec);

struct ClosedFormReport {
  int n = 0;
  CVector unimodular_solutions;
  bool tautology = false;
  bool exception_hit = false;       // n = 3 only
  bool necessary_inequality = true;
  int predicted_flat_count = 0;
};

/// n = 3: a_0 w^3 + a_1 w^2 = 1 together with 2 Re(a_2 w) = |a_0|^2 - 1,
/// solved from the second equation in closed form, minus the exceptional
/// family a_0 = -2 z^3, a_1 = 3 z^2 conj(v), a_2 = (3/2) z v (|z| = 1, v^3 = 1).
ClosedFormReport criterion_3x3(const CompanionSpec& spec, const FlatnessConfig& cfg = {});

/// n = 4: a_0 w^4 + sqrt2 a_1 w^3 + a_2 w^2 = 1 together with
/// sqrt2 Re((a_3 - a_0 conj(a_1)) w) = |a_0|^2 + |a_1|^2 - 1. Confirmation of
/// each surviving w is delegated to confirm_flat.
ClosedFormReport criterion_4x4(const CompanionSpec& spec, const FlatnessConfig& cfg = {});

/// True when a matches the n = 3 exceptional family within tol.
bool in_exceptional_family(const CompanionSpec& spec, double tol = 1e-9);

}  // namespace flatrange
