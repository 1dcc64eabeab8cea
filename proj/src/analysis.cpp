#include "flatrange/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "flatrange/errors.hpp"

namespace flatrange {

namespace {

// W(A) of a normal 2x2 companion matrix is the segment between its
// eigenvalues; the supporting rotation solves a_0 w^2 = 1.
std::optional<FlatPortion> segment_portion(const CompanionSpec& spec) {
  if (!normality_2x2(spec)) return std::nullopt;
  const cplx w = unit(std::conj(std::sqrt(spec.a[0])));
  const CVector e1{1.0, 0.0};
  const CVector e2{0.0, 1.0};
  const ComplexMatrix im = imaginary_part(build_matrix(spec) * w);
  FlatPortion p;
  p.omega = w;
  p.anchor = 0.0;
  p.slope = slope_of(w);
  p.endpoints = flat_endpoints(spec, w, e1, e2);
  p.s12 = inner(im * e1, e2);
  p.s22 = inner(im * e2, e2);
  p.witness = {e1, e2};
  return p;
}

}  // namespace

AnalysisReport analyze(const CompanionSpec& spec, const FlatnessConfig& cfg) {
  spec.validate();
  AnalysisReport rep;
  rep.spec = spec;
  rep.reducible = reducibility(spec, cfg.tol_reduce);

  if (spec.n == 2) {
    if (auto p = segment_portion(spec)) rep.portions.push_back(*p);
  } else {
    try {
      (void)cond1_polynomial(spec);
    } catch (const ConstantPolynomial&) {
      rep.cond1_constant = true;
    }
    rep.candidates = necessary_candidates(spec, cfg);
    for (const auto& cand : rep.candidates) {
      if (!cand.passed_necessary) continue;
      auto portion = confirm_flat(spec, cand, cfg);
      if (!portion) continue;
      const bool dup = std::any_of(rep.portions.begin(), rep.portions.end(),
                                   [&](const FlatPortion& q) { return std::abs(q.omega - portion->omega) <= cfg.dedup; });
      if (!dup) rep.portions.push_back(*portion);
    }
    std::sort(rep.portions.begin(), rep.portions.end(),
              [](const FlatPortion& x, const FlatPortion& y) { return std::arg(x.omega) < std::arg(y.omega); });
  }
  rep.flat_count = static_cast<int>(rep.portions.size());
  return rep;
}

}  // namespace flatrange
