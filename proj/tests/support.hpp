#pragma once

// Shared fixtures and independent reference computations for the tests.
// Reference eigen-decompositions come from Eigen, not from numcore.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "flatrange/companion.hpp"
#include "flatrange/numcore.hpp"
#include "flatrange/rng.hpp"

namespace fr_test {

using flatrange::CompanionSpec;
using flatrange::ComplexMatrix;
using flatrange::cplx;
using flatrange::CVector;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSqrt2 = std::numbers::sqrt2;
inline const cplx I{0.0, 1.0};

inline CompanionSpec example1() { return flatrange::make_spec({{2, 1}, {-1, -1}, {2, 3}}); }

inline CompanionSpec example2() {
  return flatrange::make_spec({cplx(9, 12) / 25.0, 2.0 * kSqrt2 * cplx(7, 1) / 25.0, -4.0 * cplx(3, 4) / 25.0,
                               6.0 * kSqrt2 * cplx(1, 1) / 25.0});
}

inline CompanionSpec example3() { return flatrange::make_spec({0.0, 1.0, 1.0 - kSqrt2, 0.0}); }

inline CompanionSpec example4() { return flatrange::make_spec({0.0, 0.0, 0.0, 2.0}); }

inline CompanionSpec exceptional3() { return flatrange::make_spec({-2.0, 3.0, 1.5}); }

inline CompanionSpec random_spec(flatrange::Xoshiro256& rng, int n, double sigma = 1.0) {
  CVector a(static_cast<std::size_t>(n));
  for (auto& z : a) z = rng.complex_normal(sigma);
  return flatrange::make_spec(std::move(a));
}

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c);
  return out;
}

inline Eigen::VectorXcd to_eigen(const CVector& v) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) out(static_cast<Eigen::Index>(k)) = v[k];
  return out;
}

/// Ascending eigenvalues of a Hermitian matrix.
inline std::vector<double> ref_herm_values(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(h), Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  return out;
}

/// Eigenvalues of a general complex matrix, sorted by (re, im).
inline CVector ref_eigenvalues(const ComplexMatrix& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(to_eigen(m), false);
  CVector out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.begin(), out.end(),
            [](cplx x, cplx y) { return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag(); });
  return out;
}

/// Greedy matching distance between two multisets of complex numbers.
inline double multiset_distance(CVector x, CVector y) {
  if (x.size() != y.size()) return INFINITY;
  double worst = 0.0;
  for (const cplx& z : x) {
    auto it = std::min_element(y.begin(), y.end(), [&](cplx p, cplx q) { return std::abs(p - z) < std::abs(q - z); });
    worst = std::max(worst, std::abs(*it - z));
    y.erase(it);
  }
  return worst;
}

/// Max-entry distance between the orthogonal projectors onto span{u1, u2}
/// and span{w1, w2}.
inline double projector_distance(const CVector& u1, const CVector& u2, const CVector& w1, const CVector& w2) {
  auto projector = [](const CVector& p, const CVector& q) {
    Eigen::MatrixXcd b(static_cast<Eigen::Index>(p.size()), 2);
    b.col(0) = to_eigen(p);
    b.col(1) = to_eigen(q);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(b);
    const Eigen::MatrixXcd qm = qr.householderQ() * Eigen::MatrixXcd::Identity(b.rows(), 2);
    return Eigen::MatrixXcd(qm * qm.adjoint());
  };
  return (projector(u1, u2) - projector(w1, w2)).cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const ComplexMatrix& x, const ComplexMatrix& y) { return (x - y).max_norm(); }

/// Distance between two angles modulo pi.
inline double angle_mod_pi(double x, double y) { return std::abs(std::remainder(x - y, kPi)); }

}  // namespace fr_test
