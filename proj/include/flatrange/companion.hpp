#pragma once

// Companion matrices and the structural objects built from them: the
// rotation similarity omega*A = Omega^{-1} B Omega, the sine eigenbasis of the
// tridiagonal block T, the coupling vector gamma and the arrowhead matrix H
// that is unitarily similar to Re(omega*A).

#include <vector>

#include "flatrange/numcore.hpp"

namespace flatrange {

/// Degree n and coefficients a_0..a_{n-1} of
///   det(lambda I - A) = lambda^n + a_{n-1} lambda^{n-1} + ... + a_0,
/// constant term first.
struct CompanionSpec {
  int n = 0;
  CVector a;

  /// Throws DimensionError unless n >= 2 and a.size() == n.
  void validate() const;
  double coeff_max_norm() const;
};

CompanionSpec make_spec(CVector a);

struct GammaVector {
  cplx omega;
  CVector gamma;  // gamma[j-1] holds gamma_j, j = 1..n-1

  cplx at(int j) const { return gamma[static_cast<std::size_t>(j - 1)]; }
};

struct ChebyshevBasis {
  std::vector<std::vector<double>> v;  // v[j-1][k-1] = sin(pi j k / n)
  ComplexMatrix V;                     // sqrt(2/n) [sin(pi j k / n)], an involution
};

ComplexMatrix build_matrix(const CompanionSpec& spec);
Polynomial char_coeffs(const CompanionSpec& spec);

/// Unit-modulus copy of omega; zero is rejected with DimensionError.
cplx unit(cplx omega);

/// b_j = a_j omega^{n-j}.
CompanionSpec rotate(const CompanionSpec& spec, cplx omega);

/// diag(1, omega, ..., omega^{n-1}).
ComplexMatrix omega_matrix(int n, cplx omega);

/// (n-1) x (n-1) tridiagonal matrix with ones on both off-diagonals.
ComplexMatrix tridiagonal_T(int n);

ChebyshevBasis chebyshev_basis(int n);

GammaVector gamma_vector(const CompanionSpec& spec, cplx omega);

/// Hermitian arrowhead matrix with diagonal cos(pi j/n), j=1..n-1, and
/// -Re(b_{n-1}); the last row carries gamma_j, the last column conj(gamma_j).
ComplexMatrix arrowhead_H(const CompanionSpec& spec, cplx omega);

}  // namespace flatrange
