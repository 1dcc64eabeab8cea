#pragma once

// General-n flat portion detector. A flat portion of the boundary of W(A)
// with outer normal direction conj(omega) exists iff
//   (1) omega is a unimodular root of the cond1 polynomial,
//   (2) cos(pi/n) is a double eigenvalue of Re(omega A) (the cond2 equation), and
//   (3) the compression of Im(omega A) to that eigenspace is not scalar.
// Steps (1)-(2) produce FlatCandidates, step (3) is confirm_flat.

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "flatrange/companion.hpp"
#include "flatrange/numcore.hpp"

namespace flatrange {

struct FlatnessConfig {
  double tol_uni = kDefaultUnimodularTol;
  double tol_c1 = 1e-8;
  /// Relative; the absolute cond2 tolerance is tol_c2 * (1 + max_k |a_k|).
  double tol_c2 = 1e-7;
  double tol_confirm = 1e-8;
  double dedup = 1e-6;
  double tol_reduce = 1e-8;

  double cond2_tolerance(const CompanionSpec& spec) const { return tol_c2 * (1.0 + spec.coeff_max_norm()); }
};

struct FlatCandidate {
  cplx omega;
  double cond1_residual = 0.0;
  double cond2_residual = 0.0;
  GammaVector gamma;
  bool passed_necessary = false;
  bool marginal = false;  // cond2 residual within a factor 10 of its tolerance
  int multiplicity = 1;   // as a root of the cond1 polynomial
};

struct WitnessPair {
  CVector x1;
  CVector x2;
};

struct FlatPortion {
  cplx omega;
  cplx anchor;  // conj(omega) cos(pi/n)
  double slope = 0.0;  // (pi/2 - arg omega) mod pi, in [0, pi)
  std::array<cplx, 2> endpoints;
  cplx s12;  // <Im(omega A) x1, x2>
  cplx s22;  // <Im(omega A) x2, x2>
  WitnessPair witness;
};

/// sum_{j=0}^{n-2} a_j sin(pi(j+1)/n) w^{n-j} - sin(pi/n).
/// Throws ConstantPolynomial when a_0 = ... = a_{n-2} = 0.
Polynomial cond1_polynomial(const CompanionSpec& spec);

/// Right-hand side of the cond2 equation minus its left side, in absolute value.
double cond2_residual(const CompanionSpec& spec, const GammaVector& gamma);

/// All unimodular roots of the cond1 polynomial with their cond2 screening,
/// failed ones included. Requires n >= 3.
std::vector<FlatCandidate> necessary_candidates(const CompanionSpec& spec, const FlatnessConfig& cfg = {});

/// Basis x1, x2 of the cos(pi/n)-eigenspace of Re(omega A). Throws
/// NotAnEigenpair if either vector misses the eigen-equation.
WitnessPair witness_vectors(const CompanionSpec& spec, const FlatCandidate& candidate);

/// Endpoints conj(omega)(cos(pi/n) + i mu), mu the extreme eigenvalues of
/// the compression of Im(omega A) to span{x1, x2}; ordered by mu.
std::array<cplx, 2> flat_endpoints(const CompanionSpec& spec, cplx omega, const CVector& x1, const CVector& x2);

std::optional<FlatPortion> confirm_flat(const CompanionSpec& spec, const FlatCandidate& candidate,
                                        const FlatnessConfig& cfg = {});

double slope_of(cplx omega);

}  // namespace flatrange
