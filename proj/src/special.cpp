#include "flatrange/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "flatrange/errors.hpp"

namespace flatrange {

using std::numbers::pi;
using std::numbers::sqrt2;

namespace {

constexpr double kAngleTol = 1e-9;
constexpr double kClosedFormTol = 1e-9;
constexpr double kOhMatchTol = 1e-8;

double wrap_angle(double x) {
  x = std::remainder(x, 2.0 * pi);
  return x;
}

void push_unique(CVector& out, cplx w, double tol) {
  if (std::none_of(out.begin(), out.end(), [&](const cplx& u) { return std::abs(u - w) <= tol; })) out.push_back(w);
}

}  // namespace

ReducibilityVerdict reducibility(const CompanionSpec& spec, double tol) {
  spec.validate();
  const int n = spec.n;
  ReducibilityVerdict v;
  v.eigenvalues = poly_roots(char_coeffs(spec));
  const auto& lam = v.eigenvalues;

  // A zero eigenvalue cannot be eta w_j nor conj(eta)^{-1} w_j.
  for (const auto& l : lam)
    if (std::abs(l) <= tol) return v;

  // Common phase by circular mean of lambda^n / |lambda|^n.
  cplx s{};
  for (const auto& l : lam) s += std::pow(l / std::abs(l), n);
  if (std::abs(s) < 0.5 * n) return v;
  const double theta = std::arg(s) / n;

  std::vector<int> index(lam.size());
  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  for (std::size_t k = 0; k < lam.size(); ++k) {
    const double t = (std::arg(lam[k]) - theta) * n / (2.0 * pi);
    const double j = std::round(t);
    if (std::abs(t - j) * 2.0 * pi / n > tol) return v;
    int idx = static_cast<int>(j) % n;
    if (idx < 0) idx += n;
    if (taken[static_cast<std::size_t>(idx)]) return v;
    taken[static_cast<std::size_t>(idx)] = true;
    index[k] = idx == 0 ? n : idx;
  }

  double rmax = 0.0;
  double rmin = std::abs(lam.front());
  for (const auto& l : lam) {
    rmax = std::max(rmax, std::abs(l));
    rmin = std::min(rmin, std::abs(l));
  }

  std::vector<int> j1;
  std::vector<int> j2;
  if (std::abs(rmax - rmin) <= tol * rmax) {
    // One modulus class: reducible only if it is the unit circle.
    if (std::abs(rmax - 1.0) > tol) return v;
    v.unitary = true;
    j1.push_back(index[0]);
    for (std::size_t k = 1; k < lam.size(); ++k) j2.push_back(index[k]);
    v.eta = std::polar(1.0, theta);
  } else {
    if (std::abs(rmax * rmin - 1.0) > tol * (1.0 + rmax * rmax)) return v;
    for (std::size_t k = 0; k < lam.size(); ++k) {
      const double m = std::abs(lam[k]);
      if (std::abs(m - rmax) <= tol * rmax)
        j1.push_back(index[k]);
      else if (std::abs(m - rmin) <= tol * rmax)
        j2.push_back(index[k]);
      else
        return v;
    }
    v.eta = std::polar(rmax, theta);
  }
  std::sort(j1.begin(), j1.end());
  std::sort(j2.begin(), j2.end());
  v.reducible = true;
  v.partition = std::make_pair(std::move(j1), std::move(j2));
  return v;
}

bool normality_2x2(const CompanionSpec& spec) {
  spec.validate();
  if (spec.n != 2) throw WrongDimension("normality_2x2 needs n = 2");
  const cplx a0 = spec.a[0];
  const cplx a1 = spec.a[1];
  if (std::abs(std::abs(a0) - 1.0) > kAngleTol) return false;
  if (std::abs(a1) <= kAngleTol) return true;
  return std::abs(wrap_angle(2.0 * std::arg(a1) - std::arg(a0) - pi)) <= kAngleTol;
}

bool in_exceptional_family(const CompanionSpec& spec, double tol) {
  if (spec.n != 3) return false;
  // With z v = 2 a_2 / 3 the family reads a_1 = (4/3) a_2^2, a_0 = -(16/27) a_2^3.
  const cplx a0 = spec.a[0];
  const cplx a1 = spec.a[1];
  const cplx a2 = spec.a[2];
  return std::abs(std::abs(a2) - 1.5) <= tol && std::abs(a1 - (4.0 / 3.0) * a2 * a2) <= tol * 3.0 &&
         std::abs(a0 + (16.0 / 27.0) * a2 * a2 * a2) <= tol * 2.0;
}

ClosedFormReport criterion_3x3(const CompanionSpec& spec, const FlatnessConfig& cfg) {
  spec.validate();
  if (spec.n != 3) throw WrongDimension("criterion_3x3 needs n = 3");
  const cplx a0 = spec.a[0];
  const cplx a1 = spec.a[1];
  const cplx a2 = spec.a[2];
  const double k = std::norm(a0) - 1.0;
  auto cond1 = [&](cplx w) { return a0 * w * w * w + a1 * w * w - 1.0; };
  const double cond1_scale = 1.0 + std::abs(a0) + std::abs(a1);

  ClosedFormReport rep;
  rep.n = 3;
  rep.exception_hit = in_exceptional_family(spec);

  if (std::abs(a2) <= kClosedFormTol) {
    if (std::abs(std::abs(a0) - 1.0) <= kClosedFormTol) {
      rep.tautology = true;
      const Polynomial p(std::vector<cplx>{-1.0, 0.0, a1, a0});
      if (p.degree() >= 1)
        for (const auto& w : unimodular_filter(poly_roots(p), cfg.tol_uni)) push_unique(rep.unimodular_solutions, w, cfg.dedup);
    } else {
      rep.necessary_inequality = false;
    }
  } else if (2.0 * std::abs(a2) < std::abs(k) - kClosedFormTol) {
    rep.necessary_inequality = false;
  } else {
    const double disc = std::sqrt(std::max(0.0, 4.0 * std::norm(a2) - k * k));
    for (const double sign : {1.0, -1.0}) {
      const cplx w = unit(cplx{k, sign * disc} / (2.0 * a2));
      if (std::abs(cond1(w)) <= kOhMatchTol * cond1_scale) push_unique(rep.unimodular_solutions, w, cfg.dedup);
    }
  }
  rep.predicted_flat_count = rep.exception_hit ? 0 : static_cast<int>(rep.unimodular_solutions.size());
  return rep;
}

ClosedFormReport criterion_4x4(const CompanionSpec& spec, const FlatnessConfig& cfg) {
  spec.validate();
  if (spec.n != 4) throw WrongDimension("criterion_4x4 needs n = 4");
  const cplx a0 = spec.a[0];
  const cplx a1 = spec.a[1];
  const cplx a2 = spec.a[2];
  const cplx a3 = spec.a[3];
  const cplx c = a3 - a0 * std::conj(a1);
  const double k = std::norm(a0) + std::norm(a1) - 1.0;

  ClosedFormReport rep;
  rep.n = 4;
  rep.necessary_inequality = std::abs(c) >= std::abs(k) / sqrt2 - kClosedFormTol;
  rep.tautology = std::abs(c) <= kClosedFormTol && std::abs(k) <= kClosedFormTol;

  const Polynomial quartic(std::vector<cplx>{-1.0, 0.0, a2, sqrt2 * a1, a0});
  if (quartic.degree() < 1 || !rep.necessary_inequality) return rep;
  const auto roots = unimodular_filter(poly_roots(quartic), cfg.tol_uni);

  CVector admissible;
  if (!rep.tautology) {
    const double disc = std::sqrt(std::max(0.0, 2.0 * std::norm(c) - k * k));
    for (const double sign : {1.0, -1.0}) admissible.push_back(unit(cplx{k, sign * disc} / (sqrt2 * c)));
  }

  for (const auto& w : roots) {
    if (!rep.tautology &&
        std::none_of(admissible.begin(), admissible.end(), [&](const cplx& u) { return std::abs(u - w) <= kOhMatchTol; }))
      continue;
    push_unique(rep.unimodular_solutions, w, cfg.dedup);
  }

  for (const auto& w : rep.unimodular_solutions) {
    FlatCandidate cand;
    cand.omega = w;
    cand.cond1_residual = std::abs(quartic(w)) / quartic.coeff_norm1();
    cand.cond2_residual = std::abs(sqrt2 * (c * w).real() - k);
    cand.gamma = gamma_vector(spec, w);
    cand.passed_necessary = true;
    if (confirm_flat(spec, cand, cfg)) ++rep.predicted_flat_count;
  }
  return rep;
}

}  // namespace flatrange
