#include "flatrange/numcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "flatrange/errors.hpp"

namespace flatrange {

cplx inner(std::span<const cplx> u, std::span<const cplx> v) {
  cplx s{};
  for (std::size_t k = 0; k < u.size(); ++k) s += u[k] * std::conj(v[k]);
  return s;
}

double norm2(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

double ComplexMatrix::max_norm() const {
  double m = 0.0;
  for (const auto& x : data_) m = std::max(m, std::abs(x));
  return m;
}

double ComplexMatrix::frobenius_norm() const { return norm2(data_); }

bool ComplexMatrix::is_hermitian(double rel_tol) const {
  if (!square()) return false;
  const double tol = rel_tol * max_norm();
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r; c < cols_; ++c)
      if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
  return true;
}

CVector ComplexMatrix::operator*(std::span<const cplx> x) const {
  CVector y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    cplx s{};
    for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c) * x[c];
    y[r] = s;
  }
  return y;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
  ComplexMatrix m(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const cplx a = (*this)(r, k);
      if (a == cplx{}) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) m(r, c) += a * rhs(k, c);
    }
  return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
  ComplexMatrix m = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] += rhs.data_[i];
  return m;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
  ComplexMatrix m = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] -= rhs.data_[i];
  return m;
}

ComplexMatrix ComplexMatrix::operator*(cplx s) const {
  ComplexMatrix m = *this;
  for (auto& x : m.data_) x *= s;
  return m;
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  ComplexMatrix h(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) h(r, c) = 0.5 * (a(r, c) + std::conj(a(c, r)));
  return h;
}

ComplexMatrix imaginary_part(const ComplexMatrix& a) {
  const cplx half_over_i{0.0, -0.5};
  ComplexMatrix h(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) h(r, c) = half_over_i * (a(r, c) - std::conj(a(c, r)));
  return h;
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver

namespace {

constexpr int kMaxSweeps = 30;
constexpr double kOffDiagonalRelTol = 1e-13;

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

// Rotate so the first component of largest modulus is real and positive.
void normalize_phase(CVector& v) {
  double big = 0.0;
  for (const auto& x : v) big = std::max(big, std::abs(x));
  if (big == 0.0) return;
  for (const auto& x : v) {
    if (std::abs(x) >= 0.5 * big) {
      const cplx phase = std::conj(x) / std::abs(x);
      for (auto& y : v) y *= phase;
      return;
    }
  }
}

bool lexicographically_less(const CVector& a, const CVector& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].real() != b[k].real()) return a[k].real() < b[k].real();
    if (a[k].imag() != b[k].imag()) return a[k].imag() < b[k].imag();
  }
  return false;
}

}  // namespace

EigenSystem herm_eig(const ComplexMatrix& h) {
  if (!h.square() || !h.is_hermitian()) throw NotHermitian("herm_eig: input is not Hermitian");
  const std::size_t n = h.rows();

  ComplexMatrix a = hermitian_part(h);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double threshold = kOffDiagonalRelTol * h.max_norm();
  bool converged = off_diagonal_norm(a) <= threshold;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx g = a(p, q);
        const double ag = std::abs(g);
        if (ag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * ag);
        const double t = std::abs(tau) > 1e150
                             ? 0.5 / tau
                             : std::copysign(1.0, tau) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx e = g / ag;
        const cplx ce = std::conj(e);

        // A <- A U with U = [[c, s], [-s conj(e), c conj(e)]] on columns p, q.
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = c * akp - s * ce * akq;
          a(k, q) = s * akp + c * ce * akq;
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = c * vkp - s * ce * vkq;
          v(k, q) = s * vkp + c * ce * vkq;
        }
        // A <- U* A on rows p, q.
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = c * apk - s * e * aqk;
          a(q, k) = s * apk + c * e * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * ag;
        a(q, q) = aqq + t * ag;
      }
    }
    converged = off_diagonal_norm(a) <= threshold;
  }
  if (!converged) throw NoConvergence("herm_eig: Jacobi sweep limit exceeded");

  struct Pair {
    double value;
    CVector vec;
  };
  std::vector<Pair> pairs(n);
  for (std::size_t k = 0; k < n; ++k) {
    pairs[k].value = a(k, k).real();
    pairs[k].vec.resize(n);
    for (std::size_t r = 0; r < n; ++r) pairs[k].vec[r] = v(r, k);
    normalize_phase(pairs[k].vec);
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    if (x.value != y.value) return x.value < y.value;
    return lexicographically_less(x.vec, y.vec);
  });

  EigenSystem es;
  es.values.reserve(n);
  es.vectors.reserve(n);
  for (auto& p : pairs) {
    es.values.push_back(p.value);
    es.vectors.push_back(std::move(p.vec));
  }
  return es;
}

// ---------------------------------------------------------------------------
// Polynomials

Polynomial::Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  while (coeffs_.size() > 1 && coeffs_.back() == cplx{}) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.push_back(cplx{});
}

Polynomial Polynomial::from_roots(std::span<const cplx> roots, cplx leading) {
  std::vector<cplx> c{leading};
  for (const auto& r : roots) {
    std::vector<cplx> next(c.size() + 1);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return Polynomial(std::move(c));
}

cplx Polynomial::operator()(cplx z) const {
  cplx s{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) s = s * z + *it;
  return s;
}

cplx Polynomial::derivative_at(cplx z) const {
  cplx s{};
  for (std::size_t k = coeffs_.size() - 1; k >= 1; --k) s = s * z + static_cast<double>(k) * coeffs_[k];
  return s;
}

double Polynomial::coeff_norm1() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::abs(c);
  return s;
}

double Polynomial::residual_bound(cplx r, double rel) const {
  const double m = std::max(1.0, std::abs(r));
  double s = 0.0;
  double pw = 1.0;
  for (const auto& c : coeffs_) {
    s += std::abs(c) * pw;
    pw *= m;
  }
  return rel * s;
}

namespace {

constexpr int kMaxAberthIterations = 200;
constexpr int kNewtonPolishSteps = 3;

std::vector<cplx> aberth(const Polynomial& q) {
  const int d = q.degree();
  const auto& c = q.coeffs();
  double radius = std::pow(std::abs(c.front() / c.back()), 1.0 / d);
  if (!std::isfinite(radius) || radius == 0.0) radius = 1.0;

  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<cplx> z(d);
  for (int k = 0; k < d; ++k) z[k] = std::polar(radius, 2.0 * std::numbers::pi * k / d + golden_angle * (k + 0.5));

  for (int iter = 0; iter < kMaxAberthIterations; ++iter) {
    bool done = true;
    for (int k = 0; k < d; ++k) {
      const cplx pk = q(z[k]);
      if (pk == cplx{}) continue;
      cplx dk = q.derivative_at(z[k]);
      if (dk == cplx{}) dk = std::numeric_limits<double>::epsilon() * q.coeff_norm1();
      const cplx ratio = pk / dk;
      cplx repulsion{};
      for (int j = 0; j < d; ++j)
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      const cplx step = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[k] -= step;
      if (std::abs(step) > 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z[k]))) done = false;
    }
    if (done) break;
  }
  return z;
}

void newton_polish(const Polynomial& q, cplx& z) {
  double res = std::abs(q(z));
  for (int i = 0; i < kNewtonPolishSteps && res > 0.0; ++i) {
    const cplx d = q.derivative_at(z);
    if (d == cplx{}) return;
    const cplx trial = z - q(z) / d;
    const double trial_res = std::abs(q(trial));
    if (!(trial_res < res)) return;
    z = trial;
    res = trial_res;
  }
}

// A cluster of m roots whose diameter is below (1e3 eps)^(1/m) is numerically
// an m-fold root; its centroid is well conditioned while the members are not.
void merge_multiple_roots(const Polynomial& q, std::vector<cplx>& z) {
  const std::size_t d = z.size();
  const double eps = std::numeric_limits<double>::epsilon();
  std::vector<bool> used(d, false);
  for (std::size_t i = 0; i < d; ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> near;
    for (std::size_t j = 0; j < d; ++j)
      if (!used[j]) near.push_back(j);
    std::sort(near.begin(), near.end(),
              [&](std::size_t a, std::size_t b) { return std::abs(z[a] - z[i]) < std::abs(z[b] - z[i]); });
    for (std::size_t m = near.size(); m >= 2; --m) {
      const double scale = std::max(1.0, std::abs(z[i]));
      const double limit = std::pow(1e3 * eps, 1.0 / static_cast<double>(m)) * scale;
      double diameter = 0.0;
      cplx centroid{};
      for (std::size_t a = 0; a < m; ++a) {
        centroid += z[near[a]];
        for (std::size_t b = a + 1; b < m; ++b) diameter = std::max(diameter, std::abs(z[near[a]] - z[near[b]]));
      }
      if (diameter > limit) continue;
      centroid /= static_cast<double>(m);
      if (std::abs(q(centroid)) > q.residual_bound(centroid)) continue;
      for (std::size_t a = 0; a < m; ++a) {
        z[near[a]] = centroid;
        used[near[a]] = true;
      }
      break;
    }
    used[i] = true;
  }
}

}  // namespace

std::vector<cplx> poly_roots(const Polynomial& p) {
  if (p.degree() < 1) throw DegreeZero("poly_roots: constant polynomial has no roots");
  const auto& c = p.coeffs();
  std::size_t zeros = 0;
  while (c[zeros] == cplx{}) ++zeros;

  std::vector<cplx> roots(zeros, cplx{});
  const Polynomial q(std::vector<cplx>(c.begin() + static_cast<std::ptrdiff_t>(zeros), c.end()));
  if (q.degree() == 1) {
    roots.push_back(-q.coeffs()[0] / q.coeffs()[1]);
  } else if (q.degree() > 1) {
    auto z = aberth(q);
    for (auto& r : z) newton_polish(q, r);
    merge_multiple_roots(q, z);
    roots.insert(roots.end(), z.begin(), z.end());
  }
  std::sort(roots.begin(), roots.end(), [](const cplx& x, const cplx& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return roots;
}

std::vector<cplx> unimodular_filter(std::span<const cplx> roots, double tol) {
  std::vector<cplx> out;
  for (const auto& r : roots) {
    const double m = std::abs(r);
    if (std::abs(m - 1.0) > tol) continue;
    // Already unit to rounding: dividing again would only add rounding.
    const cplx u = std::abs(m - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon() ? r : r / m;
    const bool dup = std::any_of(out.begin(), out.end(), [&](const cplx& w) { return std::abs(w - u) <= tol; });
    if (!dup) out.push_back(u);
  }
  return out;
}

}  // namespace flatrange
