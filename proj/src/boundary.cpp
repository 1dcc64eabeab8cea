#include "flatrange/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "flatrange/errors.hpp"

namespace flatrange {

using std::numbers::pi;

namespace {

constexpr int kMaxRefineIterations = 60;
constexpr double kRefineWidth = 1e-14;

struct TopPair {
  double mean = 0.0;
  double gap = 0.0;
  double mu_lo = 0.0;
  double mu_hi = 0.0;
};

// Top two eigenvalues of Re(e^{-i theta} A) and the spectrum of the
// compression of Im(e^{-i theta} A) to their eigenvectors.
TopPair top_pair(const ComplexMatrix& a, double theta) {
  const ComplexMatrix rotated = a * std::polar(1.0, -theta);
  const EigenSystem es = herm_eig(hermitian_part(rotated));
  const std::size_t n = es.values.size();
  const ComplexMatrix im = imaginary_part(rotated);
  const CVector& q1 = es.vectors[n - 1];
  const CVector& q2 = es.vectors[n - 2];
  const double m11 = inner(im * q1, q1).real();
  const double m22 = inner(im * q2, q2).real();
  const cplx m12 = inner(im * q2, q1);
  const double mid = 0.5 * (m11 + m22);
  const double half = std::hypot(0.5 * (m11 - m22), std::abs(m12));
  return {0.5 * (es.values[n - 1] + es.values[n - 2]), es.values[n - 1] - es.values[n - 2], mid - half, mid + half};
}

double eigengap_at(const ComplexMatrix& a, double theta) {
  const EigenSystem es = herm_eig(hermitian_part(a * std::polar(1.0, -theta)));
  const std::size_t n = es.values.size();
  return es.values[n - 1] - es.values[n - 2];
}

double cyclic_distance(double x, double y) {
  const double d = std::abs(std::remainder(x - y, 2.0 * pi));
  return d;
}

double wrap_0_2pi(double t) {
  t = std::fmod(t, 2.0 * pi);
  if (t < 0.0) t += 2.0 * pi;
  return t;
}

// Golden-section minimization of the eigengap on [lo, hi]. No early exit on a
// small gap: where the compression is scalar the gap vanishes quadratically,
// and stopping at gap ~ 1e-11 would leave theta off by ~1e-6 and report a
// spurious segment of that length.
std::pair<double, double> refine_gap_minimum(const ComplexMatrix& a, double lo, double hi) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = eigengap_at(a, x1);
  double f2 = eigengap_at(a, x2);
  for (int it = 0; it < kMaxRefineIterations; ++it) {
    if (hi - lo <= kRefineWidth) break;
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = eigengap_at(a, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = eigengap_at(a, x2);
    }
  }
  return f1 <= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

}  // namespace

double EmpiricalFlat::slope() const {
  double s = std::fmod(theta_star + pi / 2.0, pi);
  if (s < 0.0) s += pi;
  return s;
}

BoundarySample support(const CompanionSpec& spec, double theta) {
  const ComplexMatrix a = build_matrix(spec);
  const EigenSystem es = herm_eig(hermitian_part(a * std::polar(1.0, -theta)));
  const std::size_t n = es.values.size();
  const CVector& x = es.vectors[n - 1];
  BoundarySample s;
  s.theta = theta;
  s.support = es.values[n - 1];
  s.point = inner(a * x, x);
  s.eigengap = es.values[n - 1] - es.values[n - 2];
  return s;
}

std::vector<BoundarySample> sample_boundary_serial(const CompanionSpec& spec, int m) {
  if (m < 8) throw DimensionError("sample_boundary needs m >= 8");
  std::vector<BoundarySample> out(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) out[static_cast<std::size_t>(k)] = support(spec, 2.0 * pi * k / m);
  return out;
}

std::vector<BoundarySample> sample_boundary(const CompanionSpec& spec, int m) {
  if (m < 8) throw DimensionError("sample_boundary needs m >= 8");
  spec.validate();
  std::vector<BoundarySample> out(static_cast<std::size_t>(m));
  bool failed = false;
#pragma omp parallel for schedule(static)
  for (int k = 0; k < m; ++k) {
    try {
      out[static_cast<std::size_t>(k)] = support(spec, 2.0 * pi * k / m);
    } catch (...) {
#pragma omp atomic write
      failed = true;
    }
  }
  if (failed) throw NoConvergence("sample_boundary: eigensolver failed");
  return out;
}

std::vector<EmpiricalFlat> empirical_flats(const std::vector<BoundarySample>& samples, const CompanionSpec& spec,
                                           double gap_tol) {
  const ComplexMatrix a = build_matrix(spec);
  const double scale = a.frobenius_norm();
  const auto m = samples.size();
  if (m < 3) return {};
  const double h = 2.0 * pi / static_cast<double>(m);

  std::vector<EmpiricalFlat> found;
  for (std::size_t k = 0; k < m; ++k) {
    const double g = samples[k].eigengap;
    const double prev = samples[(k + m - 1) % m].eigengap;
    const double next = samples[(k + 1) % m].eigengap;
    const bool local_min = g < prev && g <= next;
    if (!local_min && g > gap_tol) continue;

    const double t = samples[k].theta;
    auto [theta, gap] = refine_gap_minimum(a, t - h, t + h);
    if (samples[k].eigengap <= gap) {
      theta = t;
      gap = samples[k].eigengap;
    }
    if (gap > gap_tol) continue;

    const TopPair tp = top_pair(a, theta);
    const double length = tp.mu_hi - tp.mu_lo;
    if (length <= 1e-6 * scale) continue;

    const cplx e = std::polar(1.0, theta);
    EmpiricalFlat f;
    f.theta_star = wrap_0_2pi(theta);
    f.segment = {e * cplx{tp.mean, tp.mu_lo}, e * cplx{tp.mean, tp.mu_hi}};
    f.length = length;
    f.gap = gap;

    bool merged = false;
    for (auto& other : found) {
      if (cyclic_distance(other.theta_star, f.theta_star) < h) {
        if (f.gap < other.gap) other = f;
        merged = true;
        break;
      }
    }
    if (!merged) found.push_back(f);
  }

  // A segment-shaped W(A) is supported by the same segment from both sides.
  std::vector<EmpiricalFlat> out;
  for (const auto& f : found) {
    const bool same = std::any_of(out.begin(), out.end(), [&](const EmpiricalFlat& o) {
      const double direct = std::max(std::abs(o.segment[0] - f.segment[0]), std::abs(o.segment[1] - f.segment[1]));
      const double swapped = std::max(std::abs(o.segment[0] - f.segment[1]), std::abs(o.segment[1] - f.segment[0]));
      return std::min(direct, swapped) <= 1e-6 * scale;
    });
    if (!same) out.push_back(f);
  }
  std::sort(out.begin(), out.end(), [](const EmpiricalFlat& x, const EmpiricalFlat& y) { return x.theta_star < y.theta_star; });
  return out;
}

std::vector<EmpiricalFlat> empirical_flats(const CompanionSpec& spec, const OracleConfig& cfg) {
  const auto samples = sample_boundary(spec, cfg.samples);
  return empirical_flats(samples, spec, cfg.gap_tol * build_matrix(spec).frobenius_norm());
}

OracleComparison compare_with_oracle(const AnalysisReport& report, const std::vector<EmpiricalFlat>& flats,
                                     double slope_tol, double endpoint_tol) {
  OracleComparison c;
  c.detector_count = report.flat_count;
  c.oracle_count = static_cast<int>(flats.size());
  bool all_matched = c.detector_count == c.oracle_count;

  std::vector<bool> used(flats.size(), false);
  for (const auto& p : report.portions) {
    double best_slope = INFINITY;
    double best_end = INFINITY;
    std::size_t best = flats.size();
    for (std::size_t i = 0; i < flats.size(); ++i) {
      if (used[i]) continue;
      const double ds = std::abs(std::remainder(p.slope - flats[i].slope(), pi));
      const auto& s = flats[i].segment;
      const double direct = std::max(std::abs(p.endpoints[0] - s[0]), std::abs(p.endpoints[1] - s[1]));
      const double swapped = std::max(std::abs(p.endpoints[0] - s[1]), std::abs(p.endpoints[1] - s[0]));
      const double de = std::min(direct, swapped);
      if (best == flats.size() || de < best_end) {
        best = i;
        best_end = de;
        best_slope = ds;
      }
    }
    if (best == flats.size()) {
      all_matched = false;
      continue;
    }
    used[best] = true;
    c.max_slope_error = std::max(c.max_slope_error, best_slope);
    c.max_endpoint_error = std::max(c.max_endpoint_error, best_end);
    if (best_slope > slope_tol || best_end > endpoint_tol) all_matched = false;
  }
  c.agree = all_matched;
  return c;
}

std::string emit_csv(const std::vector<BoundarySample>& samples) {
  if (samples.empty()) throw EmptyInput("emit_csv: no samples");
  std::string out = "theta,re,im,support,eigengap\n";
  for (const auto& s : samples) {
    out += fmt("%.12g", s.theta) + ',' + fmt("%.12g", s.point.real()) + ',' + fmt("%.12g", s.point.imag()) + ',' +
           fmt("%.12g", s.support) + ',' + fmt("%.12g", s.eigengap) + '\n';
  }
  return out;
}

std::string emit_svg(const std::vector<BoundarySample>& samples, const std::vector<std::array<cplx, 2>>& flats,
                     const CVector& eigenvalues, const SvgOptions& opts) {
  if (samples.empty()) throw EmptyInput("emit_svg: no samples");
  const double flip = opts.y_down ? 1.0 : -1.0;

  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  auto extend = [&](cplx z) {
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, flip * z.imag());
    ymax = std::max(ymax, flip * z.imag());
  };
  for (const auto& s : samples) extend(s.point);
  for (const auto& l : eigenvalues) extend(l);
  for (const auto& f : flats) {
    extend(f[0]);
    extend(f[1]);
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-9});
  const double margin = 0.05 * span;
  const double w = xmax - xmin + 2.0 * margin;
  const double hgt = ymax - ymin + 2.0 * margin;
  const double px = opts.pixels;
  const double scale = px / std::max(w, hgt);
  auto num = [](double x) { return fmt("%.6g", x + 0.0); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(xmin - margin) << ' ' << num(ymin - margin) << ' '
     << num(w) << ' ' << num(hgt) << "\" width=\"" << num(w * scale) << "\" height=\"" << num(hgt * scale) << "\">\n";
  os << "  <circle class=\"unit-circle\" cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#bbbbbb\" "
        "stroke-dasharray=\"4 3\" vector-effect=\"non-scaling-stroke\"/>\n";
  os << "  <polygon class=\"boundary\" fill=\"#dde8f6\" stroke=\"#1f4e8c\" vector-effect=\"non-scaling-stroke\" points=\"";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (i) os << ' ';
    os << num(samples[i].point.real()) << ',' << num(flip * samples[i].point.imag());
  }
  os << "\"/>\n";
  for (const auto& f : flats) {
    os << "  <line class=\"flat\" x1=\"" << num(f[0].real()) << "\" y1=\"" << num(flip * f[0].imag()) << "\" x2=\""
       << num(f[1].real()) << "\" y2=\"" << num(flip * f[1].imag())
       << "\" stroke=\"#d62728\" stroke-width=\"3\" vector-effect=\"non-scaling-stroke\"/>\n";
  }
  for (const auto& l : eigenvalues) {
    os << "  <circle class=\"eigenvalue\" cx=\"" << num(l.real()) << "\" cy=\"" << num(flip * l.imag()) << "\" r=\""
       << num(0.01 * span) << "\" fill=\"black\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace flatrange
