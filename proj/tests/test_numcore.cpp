#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flatrange/errors.hpp"
#include "flatrange/numcore.hpp"
#include "support.hpp"

using namespace flatrange;
using namespace fr_test;

namespace {

ComplexMatrix random_hermitian(Xoshiro256& rng, std::size_t n) {
  ComplexMatrix h(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    h(r, r) = rng.normal();
    for (std::size_t c = r + 1; c < n; ++c) {
      h(r, c) = rng.complex_normal(1.0);
      h(c, r) = std::conj(h(r, c));
    }
  }
  return h;
}

void check_eigensystem(const ComplexMatrix& h, const EigenSystem& es) {
  const std::size_t n = h.rows();
  const double scale = std::max(h.max_norm(), 1e-300);
  REQUIRE(es.values.size() == n);
  REQUIRE(es.vectors.size() == n);
  for (std::size_t k = 0; k + 1 < n; ++k) CHECK(es.values[k] <= es.values[k + 1]);
  for (std::size_t k = 0; k < n; ++k) {
    const CVector hv = h * es.vectors[k];
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) res = std::max(res, std::abs(hv[i] - es.values[k] * es.vectors[k][i]));
    CHECK(res <= 1e-10 * scale);
    CHECK(std::abs(norm2(es.vectors[k]) - 1.0) <= 1e-12);
    for (std::size_t j = 0; j < k; ++j) CHECK(std::abs(inner(es.vectors[j], es.vectors[k])) <= 1e-10);
  }
  // V diag(values) V* reconstructs H.
  ComplexMatrix rec(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) rec(r, c) += es.values[k] * es.vectors[k][r] * std::conj(es.vectors[k][c]);
  CHECK(max_abs_diff(rec, h) <= 1e-9 * scale);
}

}  // namespace

TEST_CASE("matrix basics") {
  ComplexMatrix a(2, 2);
  a(0, 0) = 1.0;
  a(0, 1) = cplx(2, 1);
  a(1, 0) = cplx(0, -3);
  a(1, 1) = 4.0;
  CHECK(a.entries().size() == 4);
  CHECK(a.adjoint()(0, 1) == cplx(0, 3));
  CHECK(a.max_norm() == doctest::Approx(4.0));
  CHECK(a.frobenius_norm() == doctest::Approx(std::sqrt(1 + 5 + 9 + 16.0)));
  CHECK_FALSE(a.is_hermitian());
  CHECK(hermitian_part(a).is_hermitian());
  CHECK(imaginary_part(a).is_hermitian());
  CHECK(max_abs_diff(hermitian_part(a) + imaginary_part(a) * I, a) <= 1e-15);

  const CVector x{1.0, I};
  const CVector y = a * x;
  CHECK(std::abs(y[0] - (1.0 + cplx(2, 1) * I)) <= 1e-15);
  CHECK(std::abs(inner(x, x) - 2.0) <= 1e-15);
  CHECK(std::abs(inner(CVector{I, 0.0}, CVector{1.0, 0.0}) - I) <= 1e-15);
}

TEST_CASE("herm_eig on a diagonal matrix returns the standard basis") {
  const CVector d{1.0, 2.0, 3.0};
  const EigenSystem es = herm_eig(ComplexMatrix::diagonal(d));
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(es.values[k] == doctest::Approx(k + 1.0));
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(es.vectors[k][i] - (i == k ? 1.0 : 0.0)) <= 1e-15);
  }
}

TEST_CASE("herm_eig on the tridiagonal block for n = 4") {
  ComplexMatrix t(3, 3);
  t(0, 1) = t(1, 0) = t(1, 2) = t(2, 1) = 1.0;
  const EigenSystem es = herm_eig(t);
  CHECK(es.values[0] == doctest::Approx(-kSqrt2).epsilon(1e-14));
  CHECK(std::abs(es.values[1]) <= 1e-14);
  CHECK(es.values[2] == doctest::Approx(kSqrt2).epsilon(1e-14));
  check_eigensystem(t, es);
}

TEST_CASE("herm_eig rejects non-Hermitian input") {
  ComplexMatrix a(2, 2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(herm_eig(a), NotHermitian);
}

TEST_CASE("herm_eig matches the reference solver on random Hermitian matrices") {
  Xoshiro256 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 12);
    const ComplexMatrix h = random_hermitian(rng, n);
    const EigenSystem es = herm_eig(h);
    check_eigensystem(h, es);
    const auto ref = ref_herm_values(h);
    for (std::size_t k = 0; k < n; ++k) CHECK(es.values[k] == doctest::Approx(ref[k]).epsilon(1e-10).scale(h.max_norm()));
  }
}

TEST_CASE("herm_eig handles repeated eigenvalues and is deterministic") {
  // Re A of Example 3 has sqrt2/2 as a double top eigenvalue.
  const ComplexMatrix h = hermitian_part(build_matrix(example3()));
  const EigenSystem es = herm_eig(h);
  check_eigensystem(h, es);
  CHECK(es.values[3] == doctest::Approx(kSqrt2 / 2).epsilon(1e-13));
  CHECK(es.values[2] == doctest::Approx(kSqrt2 / 2).epsilon(1e-13));
  const EigenSystem again = herm_eig(h);
  CHECK(again.values == es.values);
  CHECK(again.vectors == es.vectors);

  const EigenSystem id = herm_eig(ComplexMatrix::identity(5));
  check_eigensystem(ComplexMatrix::identity(5), id);
}

TEST_CASE("polynomial basics") {
  const Polynomial p({1.0, 0.0, 2.0, 0.0, 0.0});
  CHECK(p.degree() == 2);
  CHECK(p.leading() == 2.0);
  CHECK(p(I) == cplx(-1.0));
  CHECK(p.derivative_at(1.0) == cplx(4.0));
  CHECK(Polynomial({0.0, 0.0}).is_zero());
  const CVector r{1.0, -2.0, I};
  const Polynomial q = Polynomial::from_roots(r, 3.0);
  CHECK(q.degree() == 3);
  for (const cplx& z : r) CHECK(std::abs(q(z)) <= 1e-14);
  CHECK(q.leading() == 3.0);
}

TEST_CASE("poly_roots on small fixtures") {
  auto roots = poly_roots(Polynomial({-1.0, 0.0, 1.0}));
  REQUIRE(roots.size() == 2);
  CHECK(multiset_distance(roots, {1.0, -1.0}) <= 1e-14);

  CHECK_THROWS_AS(poly_roots(Polynomial({3.0})), DegreeZero);

  // Quartic attached to Example 2: a0 w^4 + sqrt2 a1 w^3 + a2 w^2 - 1.
  const auto s = example2();
  const Polynomial quartic({-1.0, 0.0, s.a[2], kSqrt2 * s.a[1], s.a[0]});
  roots = poly_roots(quartic);
  CHECK(multiset_distance(roots, {1.0, I, cplx(-2, 1), cplx(-1.0 / 3, -2.0 / 3)}) <= 1e-12);

  // Exact zero roots and a double root.
  roots = poly_roots(Polynomial::from_roots(CVector{0.0, 0.0, 2.0, 2.0, I}));
  CHECK(multiset_distance(roots, {0.0, 0.0, 2.0, 2.0, I}) <= 1e-7);
}

TEST_CASE("poly_roots residuals and Vieta re-expansion on random polynomials") {
  Xoshiro256 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    CVector c(7);
    for (auto& z : c) z = rng.complex_normal(1.0);
    const Polynomial p(c);
    const auto roots = poly_roots(p);
    REQUIRE(roots.size() == 6);
    for (const cplx& r : roots) CHECK(std::abs(p(r)) <= p.residual_bound(r));
  }
  for (int trial = 0; trial < 100; ++trial) {
    const int deg = 1 + trial % 8;
    CVector r;
    // Well separated: perturbed points on distinct rings.
    for (int k = 0; k < deg; ++k) r.push_back(std::polar(0.5 + 0.3 * k, 2 * kPi * rng.uniform()));
    const Polynomial p = Polynomial::from_roots(r, rng.complex_normal(1.0) + 2.0);
    const auto found = poly_roots(p);
    const Polynomial back = Polynomial::from_roots(found, p.leading());
    for (std::size_t k = 0; k < p.coeffs().size(); ++k)
      CHECK(std::abs(back.coeffs()[k] - p.coeffs()[k]) <= 1e-7 * p.coeff_norm1());
  }
}

TEST_CASE("unimodular_filter") {
  const CVector roots{1.0, I, cplx(-2, 1), cplx(-1.0 / 3, -2.0 / 3)};
  auto kept = unimodular_filter(roots, 1e-8);
  CHECK(multiset_distance(kept, {1.0, I}) <= 1e-15);
  CHECK(unimodular_filter(CVector{}, 1e-8).empty());

  const cplx near = 0.9999999999 * std::polar(1.0, 0.3);
  kept = unimodular_filter(CVector{near}, 1e-8);
  REQUIRE(kept.size() == 1);
  CHECK(std::abs(std::abs(kept[0]) - 1.0) <= 1e-15);

  // Subset up to renormalization, and idempotent.
  Xoshiro256 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    CVector in;
    for (int k = 0; k < 6; ++k) in.push_back(std::polar(rng.below(2) ? 1.0 + 1e-10 : rng.uniform(0.5, 1.5), 6.0 * rng.uniform()));
    const auto once = unimodular_filter(in, 1e-8);
    const auto twice = unimodular_filter(once, 1e-8);
    CHECK(multiset_distance(once, twice) == 0.0);
    for (const cplx& z : once)
      CHECK(std::any_of(in.begin(), in.end(), [&](cplx w) { return std::abs(w / std::abs(w) - z) <= 1e-15; }));
  }
  // Coincident survivors collapse to one.
  CHECK(unimodular_filter(CVector{1.0, 1.0 + 1e-12}, 1e-8).size() == 1);
}
