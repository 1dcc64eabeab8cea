#pragma once

// Dense complex arithmetic for the small matrices used throughout the
// library: a row-major complex matrix, a cyclic Jacobi eigensolver for
// Hermitian input, and an Aberth-Ehrlich polynomial root finder.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace flatrange {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// <u, v> = sum_k u_k conj(v_k), linear in the first argument.
cplx inner(std::span<const cplx> u, std::span<const cplx> v);
double norm2(std::span<const cplx> v);

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const cplx> d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const cplx> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  double max_norm() const;
  double frobenius_norm() const;
  bool is_hermitian(double rel_tol = 1e-12) const;

  CVector operator*(std::span<const cplx> x) const;
  ComplexMatrix operator*(const ComplexMatrix& rhs) const;
  ComplexMatrix operator+(const ComplexMatrix& rhs) const;
  ComplexMatrix operator-(const ComplexMatrix& rhs) const;
  ComplexMatrix operator*(cplx s) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Re A = (A + A*) / 2
ComplexMatrix hermitian_part(const ComplexMatrix& a);
/// Im A = (A - A*) / (2i)
ComplexMatrix imaginary_part(const ComplexMatrix& a);

struct EigenSystem {
  std::vector<double> values;   // ascending
  std::vector<CVector> vectors;  // unit columns, vectors[k] pairs with values[k]
};

/// Full spectral decomposition of a Hermitian matrix by cyclic complex
/// Jacobi rotations. Throws NotHermitian / NoConvergence.
EigenSystem herm_eig(const ComplexMatrix& h);

/// Coefficients stored constant term first. Trailing (high-order) zeros are
/// stripped so the leading coefficient is nonzero unless the polynomial is
/// identically zero.
class Polynomial {
 public:
  Polynomial() : coeffs_{cplx{}} {}
  explicit Polynomial(std::vector<cplx> coeffs);

  static Polynomial from_roots(std::span<const cplx> roots, cplx leading = 1.0);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == cplx{}; }
  const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
  cplx leading() const noexcept { return coeffs_.back(); }

  cplx operator()(cplx z) const;
  cplx derivative_at(cplx z) const;
  double coeff_norm1() const;

  /// Contract bound on |p(r)|: 1e-9 * sum_k |c_k| max(1,|r|)^k.
  double residual_bound(cplx r, double rel = 1e-9) const;

 private:
  std::vector<cplx> coeffs_;
};

/// All deg(p) roots with multiplicity, Aberth-Ehrlich iteration followed by
/// Newton polishing. Throws DegreeZero for constant p.
std::vector<cplx> poly_roots(const Polynomial& p);

/// Roots with ||r| - 1| <= tol, renormalized to unit modulus, deduplicated.
std::vector<cplx> unimodular_filter(std::span<const cplx> roots, double tol);

inline constexpr double kDefaultUnimodularTol = 1e-8;

}  // namespace flatrange
