#pragma once

// Brute-force picture of the boundary of W(A) from its support function
// theta -> lambda_max(Re(e^{-i theta} A)). Knows nothing about the companion
// structure; it is the independent check on the flat portion detector.

#include <array>
#include <string>
#include <vector>

#include "flatrange/analysis.hpp"
#include "flatrange/companion.hpp"

namespace flatrange {

struct BoundarySample {
  double theta = 0.0;
  double support = 0.0;
  cplx point;  // <A x, x> for a top eigenvector x
  double eigengap = 0.0;
};

struct EmpiricalFlat {
  double theta_star = 0.0;
  std::array<cplx, 2> segment;
  double length = 0.0;
  double gap = 0.0;  // eigengap at theta_star after refinement

  double slope() const;
};

struct OracleConfig {
  int samples = 720;
  /// Relative; absolute gap tolerance is gap_tol * ||A||_F.
  double gap_tol = 1e-6;
  /// Segments shorter than this times ||A||_F are scalar compressions.
  double min_length = 1e-6;
};

BoundarySample support(const CompanionSpec& spec, double theta);

/// m samples at theta_k = 2 pi k / m, computed in parallel.
std::vector<BoundarySample> sample_boundary(const CompanionSpec& spec, int m);
std::vector<BoundarySample> sample_boundary_serial(const CompanionSpec& spec, int m);

/// Flat portions seen by the sampler: local minima of the eigengap refined
/// by golden-section search, then measured by compressing Im(e^{-i theta} A)
/// to the top two-dimensional eigenspace.
std::vector<EmpiricalFlat> empirical_flats(const std::vector<BoundarySample>& samples, const CompanionSpec& spec,
                                           double gap_tol);

std::vector<EmpiricalFlat> empirical_flats(const CompanionSpec& spec, const OracleConfig& cfg = {});

struct OracleComparison {
  bool agree = false;
  int detector_count = 0;
  int oracle_count = 0;
  double max_slope_error = 0.0;
  double max_endpoint_error = 0.0;
};

/// Count must match; every portion must pair with a flat within the slope
/// and endpoint tolerances.
OracleComparison compare_with_oracle(const AnalysisReport& report, const std::vector<EmpiricalFlat>& flats,
                                     double slope_tol = 1e-3, double endpoint_tol = 1e-3);

/// Header `theta,re,im,support,eigengap`, 12 significant digits, LF endings.
std::string emit_csv(const std::vector<BoundarySample>& samples);

struct SvgOptions {
  bool y_down = false;
  int pixels = 600;
};

/// Closed boundary polyline, unit circle, eigenvalue markers and each flat
/// segment as a `<line class="flat">` element.
std::string emit_svg(const std::vector<BoundarySample>& samples, const std::vector<std::array<cplx, 2>>& flats,
                     const CVector& eigenvalues, const SvgOptions& opts = {});

}  // namespace flatrange
