#include "flatrange/companion.hpp"

#include <cmath>
#include <numbers>

#include "flatrange/errors.hpp"

namespace flatrange {

using std::numbers::pi;

void CompanionSpec::validate() const {
  if (n < 2) throw DimensionError("companion matrix needs n >= 2, got " + std::to_string(n));
  if (a.size() != static_cast<std::size_t>(n))
    throw DimensionError("expected " + std::to_string(n) + " coefficients, got " + std::to_string(a.size()));
}

double CompanionSpec::coeff_max_norm() const {
  double m = 0.0;
  for (const auto& x : a) m = std::max(m, std::abs(x));
  return m;
}

CompanionSpec make_spec(CVector a) {
  CompanionSpec s{static_cast<int>(a.size()), std::move(a)};
  s.validate();
  return s;
}

ComplexMatrix build_matrix(const CompanionSpec& spec) {
  spec.validate();
  const auto n = static_cast<std::size_t>(spec.n);
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = 1.0;
  for (std::size_t k = 0; k < n; ++k) m(n - 1, k) = -spec.a[k];
  return m;
}

Polynomial char_coeffs(const CompanionSpec& spec) {
  spec.validate();
  CVector c = spec.a;
  c.push_back(1.0);
  return Polynomial(std::move(c));
}

cplx unit(cplx omega) {
  const double m = std::abs(omega);
  if (m == 0.0 || !std::isfinite(m)) throw DimensionError("rotation factor must be a nonzero finite complex");
  return omega / m;
}

CompanionSpec rotate(const CompanionSpec& spec, cplx omega) {
  spec.validate();
  const cplx w = unit(omega);
  CompanionSpec b = spec;
  for (int j = 0; j < spec.n; ++j) b.a[static_cast<std::size_t>(j)] *= std::pow(w, spec.n - j);
  return b;
}

ComplexMatrix omega_matrix(int n, cplx omega) {
  const cplx w = unit(omega);
  CVector d(static_cast<std::size_t>(n));
  cplx p = 1.0;
  for (auto& x : d) {
    x = p;
    p *= w;
  }
  return ComplexMatrix::diagonal(d);
}

ComplexMatrix tridiagonal_T(int n) {
  const auto m = static_cast<std::size_t>(n - 1);
  ComplexMatrix t(m, m);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    t(i, i + 1) = 1.0;
    t(i + 1, i) = 1.0;
  }
  return t;
}

ChebyshevBasis chebyshev_basis(int n) {
  if (n < 2) throw DimensionError("chebyshev_basis needs n >= 2");
  const auto m = static_cast<std::size_t>(n - 1);
  ChebyshevBasis b;
  b.v.assign(m, std::vector<double>(m));
  b.V = ComplexMatrix(m, m);
  const double scale = std::sqrt(2.0 / n);
  for (std::size_t j = 1; j <= m; ++j)
    for (std::size_t k = 1; k <= m; ++k) {
      const double s = std::sin(pi * static_cast<double>(j * k) / n);
      b.v[j - 1][k - 1] = s;
      b.V(k - 1, j - 1) = scale * s;
    }
  return b;
}

GammaVector gamma_vector(const CompanionSpec& spec, cplx omega) {
  spec.validate();
  const int n = spec.n;
  const cplx w = unit(omega);
  const CompanionSpec b = rotate(spec, w);
  GammaVector g{w, CVector(static_cast<std::size_t>(n - 1))};
  const double scale = 1.0 / std::sqrt(2.0 * n);
  for (int j = 1; j <= n - 1; ++j) {
    cplx s = std::sin(pi * j * (n - 1) / n);
    for (int k = 0; k <= n - 2; ++k) s -= b.a[static_cast<std::size_t>(k)] * std::sin(pi * j * (k + 1) / n);
    g.gamma[static_cast<std::size_t>(j - 1)] = scale * s;
  }
  return g;
}

ComplexMatrix arrowhead_H(const CompanionSpec& spec, cplx omega) {
  const GammaVector g = gamma_vector(spec, omega);
  const int n = spec.n;
  const auto last = static_cast<std::size_t>(n - 1);
  ComplexMatrix h(last + 1, last + 1);
  for (std::size_t j = 0; j < last; ++j) {
    h(j, j) = std::cos(pi * static_cast<double>(j + 1) / n);
    h(last, j) = g.gamma[j];
    h(j, last) = std::conj(g.gamma[j]);
  }
  h(last, last) = -(spec.a[last] * g.omega).real();
  return h;
}

}  // namespace flatrange
