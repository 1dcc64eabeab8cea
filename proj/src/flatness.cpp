#include "flatrange/flatness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "flatrange/errors.hpp"

namespace flatrange {

using std::numbers::pi;

namespace {

constexpr double kWitnessRelTol = 1e-8;

// Eigenvalues of a 2x2 Hermitian matrix [[p, q], [conj(q), r]], ascending.
std::pair<double, double> hermitian2_eigenvalues(double p, cplx q, double r) {
  const double mean = 0.5 * (p + r);
  const double half_gap = std::hypot(0.5 * (p - r), std::abs(q));
  return {mean - half_gap, mean + half_gap};
}

}  // namespace

Polynomial cond1_polynomial(const CompanionSpec& spec) {
  spec.validate();
  const int n = spec.n;
  std::vector<cplx> c(static_cast<std::size_t>(n + 1));
  c[0] = -std::sin(pi / n);
  bool all_zero = true;
  for (int j = 0; j <= n - 2; ++j) {
    const cplx aj = spec.a[static_cast<std::size_t>(j)];
    if (aj != cplx{}) all_zero = false;
    c[static_cast<std::size_t>(n - j)] = aj * std::sin(pi * (j + 1) / n);
  }
  if (all_zero) throw ConstantPolynomial("cond1 polynomial reduces to the nonzero constant -sin(pi/n)");
  return Polynomial(std::move(c));
}

double cond2_residual(const CompanionSpec& spec, const GammaVector& gamma) {
  const int n = spec.n;
  const double c = std::cos(pi / n);
  double rhs = -c;
  for (int j = 2; j <= n - 1; ++j) rhs += std::norm(gamma.at(j)) / (c - std::cos(pi * j / n));
  const double lhs = (spec.a[static_cast<std::size_t>(n - 1)] * gamma.omega).real();
  return std::abs(lhs - rhs);
}

std::vector<FlatCandidate> necessary_candidates(const CompanionSpec& spec, const FlatnessConfig& cfg) {
  spec.validate();
  if (spec.n < 3) throw WrongDimension("necessary_candidates needs n >= 3");

  Polynomial p;
  try {
    p = cond1_polynomial(spec);
  } catch (const ConstantPolynomial&) {
    return {};
  }
  const auto roots = poly_roots(p);
  const auto unimodular = unimodular_filter(roots, cfg.tol_uni);
  const double norm = p.coeff_norm1();
  const double tol_c2 = cfg.cond2_tolerance(spec);

  std::vector<FlatCandidate> out;
  out.reserve(unimodular.size());
  for (const auto& w : unimodular) {
    FlatCandidate cand;
    cand.omega = w;
    cand.cond1_residual = std::abs(p(w)) / norm;
    cand.gamma = gamma_vector(spec, w);
    cand.cond2_residual = cond2_residual(spec, cand.gamma);
    cand.passed_necessary = cand.cond1_residual <= cfg.tol_c1 && cand.cond2_residual <= tol_c2;
    cand.marginal = cand.cond2_residual >= 0.1 * tol_c2 && cand.cond2_residual <= 10.0 * tol_c2;
    cand.multiplicity = static_cast<int>(
        std::count_if(roots.begin(), roots.end(), [&](const cplx& r) { return std::abs(r - w) <= cfg.dedup; }));
    out.push_back(std::move(cand));
  }
  return out;
}

WitnessPair witness_vectors(const CompanionSpec& spec, const FlatCandidate& candidate) {
  const int n = spec.n;
  const auto m = static_cast<std::size_t>(n - 1);
  const cplx w = unit(candidate.omega);
  const double c = std::cos(pi / n);
  const ChebyshevBasis basis = chebyshev_basis(n);

  // xi = (0, xi_2, ..., xi_{n-1}, 1)
  CVector xi(static_cast<std::size_t>(n));
  for (int j = 2; j <= n - 1; ++j)
    xi[static_cast<std::size_t>(j - 1)] = std::conj(candidate.gamma.at(j)) / (c - std::cos(pi * j / n));
  xi[m] = 1.0;

  WitnessPair out{CVector(static_cast<std::size_t>(n)), CVector(static_cast<std::size_t>(n))};
  for (std::size_t k = 0; k < m; ++k) {
    out.x1[k] = basis.v[0][k];
    cplx s{};
    for (std::size_t j = 0; j < m; ++j) s += basis.V(k, j) * xi[j];
    out.x2[k] = s;
  }
  out.x2[m] = xi[m];

  // Omega^{-1} = diag(1, conj(w), ..., conj(w)^{n-1})
  cplx phase = 1.0;
  for (std::size_t k = 0; k < out.x1.size(); ++k) {
    out.x1[k] *= phase;
    out.x2[k] *= phase;
    phase *= std::conj(w);
  }

  // x2 misses the eigen-equation by exactly the cond2 residual in its last slot.
  const ComplexMatrix re = hermitian_part(build_matrix(spec) * w);
  const double scale = build_matrix(spec).frobenius_norm();
  for (const CVector* x : {&out.x1, &out.x2}) {
    CVector r = re * *x;
    for (std::size_t k = 0; k < r.size(); ++k) r[k] -= c * (*x)[k];
    const double allowed = kWitnessRelTol * scale * norm2(*x) + candidate.cond2_residual;
    if (norm2(r) > allowed)
      throw NotAnEigenpair("witness vector is not a cos(pi/n)-eigenvector of Re(omega A)");
  }
  return out;
}

std::array<cplx, 2> flat_endpoints(const CompanionSpec& spec, cplx omega, const CVector& x1, const CVector& x2) {
  const cplx w = unit(omega);
  const double c = std::cos(pi / spec.n);
  const ComplexMatrix im = imaginary_part(build_matrix(spec) * w);

  // Gram-Schmidt on {x1, x2}.
  CVector q1 = x1;
  const double n1 = norm2(q1);
  for (auto& z : q1) z /= n1;
  CVector q2 = x2;
  const cplx proj = inner(q2, q1);
  for (std::size_t k = 0; k < q2.size(); ++k) q2[k] -= proj * q1[k];
  const double n2 = norm2(q2);
  for (auto& z : q2) z /= n2;

  const CVector iq1 = im * q1;
  const CVector iq2 = im * q2;
  const double m11 = inner(iq1, q1).real();
  const double m22 = inner(iq2, q2).real();
  const cplx m12 = inner(iq2, q1);  // (Q* Im Q)_{12} = q1* Im q2
  const auto [lo, hi] = hermitian2_eigenvalues(m11, m12, m22);
  const cplx wbar = std::conj(w);
  return {wbar * cplx{c, lo}, wbar * cplx{c, hi}};
}

double slope_of(cplx omega) {
  double s = std::fmod(pi / 2.0 - std::arg(omega), pi);
  if (s < 0.0) s += pi;
  if (s >= pi) s -= pi;
  return s;
}

std::optional<FlatPortion> confirm_flat(const CompanionSpec& spec, const FlatCandidate& candidate,
                                        const FlatnessConfig& cfg) {
  const auto [x1, x2] = witness_vectors(spec, candidate);
  const cplx w = unit(candidate.omega);
  const ComplexMatrix a = build_matrix(spec);
  const ComplexMatrix im = imaginary_part(a * w);

  const CVector ix1 = im * x1;
  const CVector ix2 = im * x2;
  const cplx s12 = inner(ix1, x2);
  const cplx s22 = inner(ix2, x2);

  // Scale-free test: the witnesses are orthogonal but not normalized.
  const double n1 = norm2(x1);
  const double n2 = norm2(x2);
  const double spread = std::max(std::abs(s12) / (n1 * n2), std::abs(s22) / (n2 * n2));
  if (!(spread > cfg.tol_confirm * a.frobenius_norm())) return std::nullopt;

  FlatPortion portion;
  portion.omega = w;
  portion.anchor = std::conj(w) * std::cos(pi / spec.n);
  portion.slope = slope_of(w);
  portion.endpoints = flat_endpoints(spec, w, x1, x2);
  portion.s12 = s12;
  portion.s22 = s22;
  portion.witness = {x1, x2};
  return portion;
}

}  // namespace flatrange
