#include "flatrange/search.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "flatrange/analysis.hpp"

namespace flatrange {

using std::numbers::pi;
using std::numbers::sqrt2;

std::string_view sampler_name(Sampler s) {
  switch (s) {
    case Sampler::Gaussian05: return "gaussian-0.5";
    case Sampler::Gaussian1: return "gaussian-1";
    case Sampler::Gaussian2: return "gaussian-2";
    case Sampler::Annulus: return "annulus";
    case Sampler::EngineeredFlat: return "engineered-flat";
    case Sampler::Reducible: return "reducible";
    case Sampler::Unitary: return "unitary";
    case Sampler::Exceptional3: return "exceptional-3";
    case Sampler::Tau4Random: return "tau4-random";
    case Sampler::Tau4OneRoot: return "tau4-one-root";
    case Sampler::Tau4TwoRoots: return "tau4-two-roots";
    case Sampler::ThreeUnimodular: return "three-unimodular";
    case Sampler::Biquadratic: return "biquadratic";
  }
  return "unknown";
}

std::vector<Sampler> samplers_for(int n) {
  std::vector<Sampler> s{Sampler::Gaussian05, Sampler::Gaussian1, Sampler::Gaussian2, Sampler::Annulus};
  if (n >= 3) s.push_back(Sampler::EngineeredFlat);
  s.push_back(Sampler::Reducible);
  s.push_back(Sampler::Unitary);
  if (n == 3) s.push_back(Sampler::Exceptional3);
  if (n == 4) {
    s.push_back(Sampler::Tau4Random);
    s.push_back(Sampler::Tau4OneRoot);
    s.push_back(Sampler::Tau4TwoRoots);
    s.push_back(Sampler::ThreeUnimodular);
    s.push_back(Sampler::Biquadratic);
  }
  return s;
}

namespace {

CVector coefficients_of(const Polynomial& monic, int n) {
  const auto& c = monic.coeffs();
  return CVector(c.begin(), c.begin() + n);
}

// Solve the cond1 equation for a_0 and the cond2 equation for a_{n-1} at w.
CompanionSpec engineered_flat(int n, Xoshiro256& rng) {
  const cplx w = rng.unit_complex();
  CVector a(static_cast<std::size_t>(n));
  for (int j = 1; j <= n - 2; ++j) a[static_cast<std::size_t>(j)] = rng.complex_normal(1.0);
  const double s1 = std::sin(pi / n);
  cplx rest{};
  for (int j = 1; j <= n - 2; ++j) rest += a[static_cast<std::size_t>(j)] * std::sin(pi * (j + 1) / n) * std::pow(w, n - j);
  a[0] = (s1 - rest) / (s1 * std::pow(w, n));

  CompanionSpec spec{n, a};
  const GammaVector g = gamma_vector(spec, w);
  const double c = std::cos(pi / n);
  double target = -c;
  for (int j = 2; j <= n - 1; ++j) target += std::norm(g.at(j)) / (c - std::cos(pi * j / n));
  spec.a[static_cast<std::size_t>(n - 1)] = cplx{target, rng.normal()} * std::conj(w);
  return spec;
}

CompanionSpec reducible(int n, Xoshiro256& rng, bool unitary) {
  double log_r = 0.0;
  if (!unitary) {
    do log_r = rng.uniform(-1.1, 1.1);
    while (std::abs(log_r) < 0.05);
  }
  const cplx eta = std::polar(std::exp(log_r), 2.0 * pi * rng.uniform());
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  const std::uint64_t mask = 1 + static_cast<std::uint64_t>(rng.uniform() * static_cast<double>(full - 1));
  CVector lam;
  for (int j = 1; j <= n; ++j) {
    const cplx wj = std::polar(1.0, 2.0 * pi * j / n);
    lam.push_back((mask >> (j - 1)) & 1 ? eta * wj : wj / std::conj(eta));
  }
  return CompanionSpec{n, coefficients_of(Polynomial::from_roots(lam), n)};
}

CompanionSpec exceptional3(Xoshiro256& rng) {
  const cplx z = rng.unit_complex();
  const cplx v = std::polar(1.0, 2.0 * pi * rng.below(3) / 3.0);
  return CompanionSpec{3, {-2.0 * z * z * z, 3.0 * z * z * std::conj(v), 1.5 * z * v}};
}

// |a_0|^2 + |a_1|^2 = 1 and a_3 = a_0 conj(a_1).
std::pair<cplx, cplx> unit_pair(Xoshiro256& rng) {
  const cplx x = rng.complex_normal(1.0);
  const cplx y = rng.complex_normal(1.0);
  const double r = std::sqrt(std::norm(x) + std::norm(y));
  return {x / r, y / r};
}

CompanionSpec tau4_random(Xoshiro256& rng) {
  const auto [a0, a1] = unit_pair(rng);
  return CompanionSpec{4, {a0, a1, rng.complex_normal(1.0), a0 * std::conj(a1)}};
}

cplx quartic_a2(cplx a0, cplx a1, cplx w) { return (1.0 - a0 * std::pow(w, 4) - sqrt2 * a1 * std::pow(w, 3)) / (w * w); }

CompanionSpec tau4_one_root(Xoshiro256& rng) {
  const auto [a0, a1] = unit_pair(rng);
  const cplx w = rng.unit_complex();
  return CompanionSpec{4, {a0, a1, quartic_a2(a0, a1, w), a0 * std::conj(a1)}};
}

// Two prescribed unimodular roots w1, w2 of the quartic leave a one-parameter
// family a_0 = t, a_1 = (R - s t)/sqrt2; |a_0|^2 + |a_1|^2 = 1 is a circle in t.
CompanionSpec tau4_two_roots(Xoshiro256& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    const cplx w1 = rng.unit_complex();
    const cplx w2 = rng.unit_complex();
    if (std::abs(w1 - w2) < 0.1) continue;
    const cplx s = w1 + w2;
    const cplx r = (std::conj(w1 * w1) - std::conj(w2 * w2)) / (w1 - w2);
    const double alpha = 1.0 + std::norm(s) / 2.0;
    const cplx t0 = std::conj(std::conj(r) * s) / (2.0 * alpha);
    const double rho2 = std::norm(t0) + (1.0 - std::norm(r) / 2.0) / alpha;
    if (rho2 <= 1e-6) continue;
    const cplx a0 = t0 + std::sqrt(rho2) * rng.unit_complex();
    const cplx a1 = (r - s * a0) / sqrt2;
    return CompanionSpec{4, {a0, a1, quartic_a2(a0, a1, w1), a0 * std::conj(a1)}};
  }
  return tau4_one_root(rng);
}

// Quartic with three prescribed unimodular roots (the fourth is forced by the
// missing linear term); a_3 then makes the cond2 equation hold at two of them.
CompanionSpec three_unimodular(Xoshiro256& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    const cplx u = rng.unit_complex();
    const cplx v = rng.unit_complex();
    const cplx w = rng.unit_complex();
    const cplx z = u + v + w;
    if (std::abs(z) < 1e-3 || std::abs(u - v) < 0.1) continue;
    const CVector roots{u, v, w, -1.0 / std::conj(z)};
    const cplx a0 = -1.0 / (u * v * w * roots[3]);
    const auto& c = Polynomial::from_roots(roots, a0).coeffs();
    const cplx a1 = c[3] / sqrt2;
    const cplx a2 = c[2];
    const double k = std::norm(a0) + std::norm(a1) - 1.0;
    // sqrt2 Re(x w) = k at w = u, v: [Re u, -Im u; Re v, -Im v] (Re x, Im x) = k/sqrt2.
    const double det = -u.real() * v.imag() + u.imag() * v.real();
    if (std::abs(det) < 1e-3) continue;
    const double rhs = k / sqrt2;
    const double xr = (rhs * -v.imag() - -u.imag() * rhs) / det;
    const double xi = (u.real() * rhs - v.real() * rhs) / det;
    return CompanionSpec{4, {a0, a1, a2, cplx{xr, xi} + a0 * std::conj(a1)}};
  }
  return tau4_random(rng);
}

CompanionSpec biquadratic(Xoshiro256& rng) {
  const cplx u = rng.unit_complex();
  const cplx v = rng.unit_complex();
  const cplx iu2 = 1.0 / (u * u);
  const cplx iv2 = 1.0 / (v * v);
  return CompanionSpec{4, {-iu2 * iv2, 0.0, iu2 + iv2, 0.0}};
}

}  // namespace

CompanionSpec sample_spec(int n, Sampler s, Xoshiro256& rng) {
  auto gaussian = [&](double sigma) {
    CVector a(static_cast<std::size_t>(n));
    for (auto& x : a) x = rng.complex_normal(sigma);
    return CompanionSpec{n, a};
  };
  switch (s) {
    case Sampler::Gaussian05: return gaussian(0.5);
    case Sampler::Gaussian1: return gaussian(1.0);
    case Sampler::Gaussian2: return gaussian(2.0);
    case Sampler::Annulus: {
      CVector a(static_cast<std::size_t>(n));
      for (auto& x : a) x = std::polar(rng.uniform(0.5, 2.0), 2.0 * pi * rng.uniform());
      return CompanionSpec{n, a};
    }
    case Sampler::EngineeredFlat: return engineered_flat(n, rng);
    case Sampler::Reducible: return reducible(n, rng, false);
    case Sampler::Unitary: return reducible(n, rng, true);
    case Sampler::Exceptional3: return exceptional3(rng);
    case Sampler::Tau4Random: return tau4_random(rng);
    case Sampler::Tau4OneRoot: return tau4_one_root(rng);
    case Sampler::Tau4TwoRoots: return tau4_two_roots(rng);
    case Sampler::ThreeUnimodular: return three_unimodular(rng);
    case Sampler::Biquadratic: return biquadratic(rng);
  }
  return gaussian(1.0);
}

CompanionSpec trial_spec(const SearchConfig& cfg, std::int64_t index, Sampler* sampler) {
  const auto all = samplers_for(cfg.n);
  const Sampler s = all[static_cast<std::size_t>(index) % all.size()];
  if (sampler) *sampler = s;
  Xoshiro256 rng = Xoshiro256::for_trial(cfg.seed, static_cast<std::uint64_t>(index));
  return sample_spec(cfg.n, s, rng);
}

TrialOutcome run_trial(const SearchConfig& cfg, std::int64_t index) {
  TrialOutcome out;
  try {
    const CompanionSpec spec = trial_spec(cfg, index, &out.sampler);
    const AnalysisReport rep = analyze(spec, cfg.flat);
    out.flat_count = rep.flat_count;
    out.reducible = rep.reducible.reducible;
    out.violation = rep.flat_count > cfg.n || (cfg.n == 4 && rep.flat_count == 3) ||
                    (cfg.n == 3 && !out.reducible && rep.flat_count >= 2);
  } catch (const std::exception&) {
    out.failed = true;
  }
  return out;
}

namespace {

void record(SearchResult& res, std::int64_t index, const TrialOutcome& t) {
  if (t.failed) {
    res.failures.push_back(index);
    return;
  }
  ++res.histogram[t.flat_count];
  if (!t.reducible) ++res.irreducible_histogram[t.flat_count];
  ++res.by_sampler[std::string(sampler_name(t.sampler))][t.flat_count];
  if (t.violation) res.violations.push_back(index);
}

void merge(SearchResult& into, const SearchResult& part) {
  for (const auto& [k, c] : part.histogram) into.histogram[k] += c;
  for (const auto& [k, c] : part.irreducible_histogram) into.irreducible_histogram[k] += c;
  for (const auto& [name, h] : part.by_sampler)
    for (const auto& [k, c] : h) into.by_sampler[name][k] += c;
  into.violations.insert(into.violations.end(), part.violations.begin(), part.violations.end());
  into.failures.insert(into.failures.end(), part.failures.begin(), part.failures.end());
}

}  // namespace

SearchResult random_search_serial(const SearchConfig& cfg) {
  SearchResult res;
  res.n = cfg.n;
  res.trials = cfg.trials;
  for (std::int64_t i = 0; i < cfg.trials; ++i) record(res, i, run_trial(cfg, i));
  return res;
}

SearchResult random_search(const SearchConfig& cfg) {
  SearchResult res;
  res.n = cfg.n;
  res.trials = cfg.trials;
#pragma omp parallel
  {
    SearchResult local;
#pragma omp for schedule(dynamic, 64) nowait
    for (std::int64_t i = 0; i < cfg.trials; ++i) record(local, i, run_trial(cfg, i));
#pragma omp critical(flatrange_search_merge)
    merge(res, local);
  }
  std::sort(res.violations.begin(), res.violations.end());
  std::sort(res.failures.begin(), res.failures.end());
  return res;
}

void apply_thread_cap() {
  if (const char* env = std::getenv("FLATRANGE_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) omp_set_num_threads(std::min(cap, omp_get_num_procs()));
  }
}

}  // namespace flatrange
