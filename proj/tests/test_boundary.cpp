#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <regex>

#include "flatrange/analysis.hpp"
#include "flatrange/boundary.hpp"
#include "flatrange/errors.hpp"
#include "flatrange/search.hpp"
#include "support.hpp"

using namespace flatrange;
using namespace fr_test;

namespace {

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++count;
  return count;
}

std::vector<std::array<cplx, 2>> segments_of(const AnalysisReport& rep) {
  std::vector<std::array<cplx, 2>> out;
  for (const auto& p : rep.portions) out.push_back(p.endpoints);
  return out;
}

}  // namespace

TEST_CASE("support function fixtures") {
  const auto j4 = make_spec({0.0, 0.0, 0.0, 0.0});
  // Re J_4 has eigenvalues cos(pi k / 5), so W(J_4) is the disk of radius cos(pi/5).
  const auto re_j4 = ref_herm_values(hermitian_part(build_matrix(j4)));
  CHECK(re_j4.back() == doctest::Approx(std::cos(kPi / 5)).epsilon(1e-14));
  for (double t : {0.0, 0.4, 2.0, 5.5}) CHECK(support(j4, t).support == doctest::Approx(std::cos(kPi / 5)).epsilon(1e-12));

  const auto s3 = support(example3(), 0.0);
  CHECK(s3.support == doctest::Approx(kSqrt2 / 2).epsilon(1e-12));
  CHECK(s3.eigengap <= 1e-9);

  const auto s2 = support(example2(), -kPi / 2);
  CHECK(s2.support == doctest::Approx(kSqrt2 / 2).epsilon(1e-12));
  CHECK(s2.eigengap <= 1e-9);
}

TEST_CASE("sampled points lie on their supporting lines and inside every half-plane") {
  Xoshiro256 rng(51);
  std::vector<CompanionSpec> specs{example1(), example2(), example3(), example4()};
  for (int k = 0; k < 12; ++k) specs.push_back(random_spec(rng, 2 + k % 5));
  for (const auto& spec : specs) {
    const double norm_a = build_matrix(spec).frobenius_norm();
    const auto samples = sample_boundary(spec, 180);
    for (const auto& s : samples) {
      CHECK(std::abs((std::polar(1.0, -s.theta) * s.point).real() - s.support) <= 1e-9 * norm_a);
      CHECK(s.eigengap >= 0.0);
    }
    for (const auto& s : samples) {
      double worst = -INFINITY;
      for (const auto& q : samples) worst = std::max(worst, (std::polar(1.0, -s.theta) * q.point).real() - s.support);
      CHECK(worst <= 1e-8 * norm_a);
    }
    // Spectrum containment.
    for (const cplx& lam : ref_eigenvalues(build_matrix(spec))) {
      for (const auto& s : samples) CHECK((std::polar(1.0, -s.theta) * lam).real() <= s.support + 1e-8 * norm_a);
    }
  }
}

TEST_CASE("sample_boundary fixtures") {
  const auto j4 = sample_boundary(make_spec({0.0, 0.0, 0.0, 0.0}), 720);
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& s : j4) {
    lo = std::min(lo, s.support);
    hi = std::max(hi, s.support);
  }
  CHECK(hi - lo <= 1e-10);

  const auto e1 = example1();
  double bound = 1.0;
  for (const cplx& a : e1.a) bound += std::abs(a);
  for (const auto& s : sample_boundary(e1, 720)) CHECK(std::abs(s.point) <= bound);

  // Normal matrix: W is the convex hull of the cube roots of unity.
  for (const auto& s : sample_boundary(make_spec({-1.0, 0.0, 0.0}), 90)) {
    double expect = -INFINITY;
    for (int k = 0; k < 3; ++k) expect = std::max(expect, std::cos(s.theta - 2 * kPi * k / 3));
    CHECK(s.support == doctest::Approx(expect).epsilon(1e-12));
  }

  const auto a = sample_boundary(example2(), 64);
  REQUIRE(a.size() == 64);
  CHECK(a[16].theta == doctest::Approx(kPi / 2));
  CHECK_THROWS_AS(sample_boundary(example2(), 7), DimensionError);
}

TEST_CASE("parallel and serial sampling agree exactly") {
  for (const auto& spec : {example1(), example2(), example3()}) {
    const auto p = sample_boundary(spec, 360);
    const auto s = sample_boundary_serial(spec, 360);
    REQUIRE(p.size() == s.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
      CHECK(p[k].theta == s[k].theta);
      CHECK(p[k].point == s[k].point);
      CHECK(p[k].support == s[k].support);
      CHECK(p[k].eigengap == s[k].eigengap);
    }
  }
}

TEST_CASE("empirical flats on the examples") {
  const auto f2 = empirical_flats(example2());
  REQUIRE(f2.size() == 2);
  // theta = 0: vertical segment on Re z = sqrt2/2; theta = 3 pi/2: horizontal on Im z = -sqrt2/2.
  CHECK(std::abs(std::remainder(f2[0].theta_star, 2 * kPi)) <= 1e-6);
  CHECK(f2[0].segment[0].real() == doctest::Approx(kSqrt2 / 2).epsilon(1e-8));
  CHECK(f2[0].segment[1].real() == doctest::Approx(kSqrt2 / 2).epsilon(1e-8));
  CHECK(f2[1].theta_star == doctest::Approx(3 * kPi / 2).epsilon(1e-6));
  CHECK(f2[1].segment[0].imag() == doctest::Approx(-kSqrt2 / 2).epsilon(1e-8));
  CHECK(f2[1].slope() == doctest::Approx(0.0).epsilon(1e-6).scale(1.0));

  CHECK(empirical_flats(example4()).empty());
  CHECK(empirical_flats(make_spec({0.0, 0.0, 0.0, 0.0})).empty());
  CHECK(empirical_flats(example1()).size() == 1);
  CHECK(empirical_flats(example3()).size() == 1);
}

TEST_CASE("boundary samples near a flat lie on its supporting line") {
  const auto spec = example2();
  const double norm_a = build_matrix(spec).frobenius_norm();
  const auto samples = sample_boundary(spec, 720);
  const auto flats = empirical_flats(samples, spec, 1e-6 * norm_a);
  REQUIRE(flats.size() == 2);
  for (const auto& f : flats) {
    const cplx e = std::polar(1.0, f.theta_star);
    const double level = (std::conj(e) * f.segment[0]).real();
    for (const auto& s : samples) {
      // Points attributed to the flat: those whose support direction hits its θ*.
      if (std::abs(std::remainder(s.theta - f.theta_star, 2 * kPi)) > 1e-9) continue;
      CHECK(std::abs((std::conj(e) * s.point).real() - level) <= 1e-6 * norm_a);
    }
    CHECK(std::abs((std::conj(e) * f.segment[1]).real() - level) <= 1e-9);
    CHECK(f.length > 0.1);
  }
}

TEST_CASE("oracle agrees with the detector") {
  std::vector<CompanionSpec> specs{example1(), example2(), example3(), example4(), make_spec({-1.0, 0.0, 0.0}),
                                   make_spec({1.0, 0.0, 0.0, 0.0}), make_spec({-1.0, 0.5})};
  Xoshiro256 rng(61);
  for (int k = 0; k < 30; ++k) {
    const int n = 3 + k % 2;
    const auto pool = samplers_for(n);
    specs.push_back(sample_spec(n, pool[static_cast<std::size_t>(k) % pool.size()], rng));
  }
  for (const auto& spec : specs) {
    const auto rep = analyze(spec);
    const auto cmp = compare_with_oracle(rep, empirical_flats(spec));
    CHECK(cmp.agree);
    CHECK(cmp.detector_count == cmp.oracle_count);
    CHECK(cmp.max_slope_error <= 1e-3);
    CHECK(cmp.max_endpoint_error <= 1e-3);
    // Anchors: every portion's anchor lies on an oracle segment.
    for (const auto& p : rep.portions) {
      bool on_segment = false;
      for (const auto& f : empirical_flats(spec)) {
        const cplx d = f.segment[1] - f.segment[0];
        const cplx rel = (p.anchor - f.segment[0]) / d;
        if (std::abs(rel.imag()) * std::abs(d) <= 1e-4 && rel.real() >= -1e-4 && rel.real() <= 1 + 1e-4) on_segment = true;
      }
      CHECK(on_segment);
    }
  }
}

TEST_CASE("csv output") {
  const auto j2 = make_spec({0.0, 0.0});
  const auto samples = sample_boundary(j2, 8);
  const std::vector<BoundarySample> four(samples.begin(), samples.begin() + 4);
  const std::string csv = emit_csv(four);
  CHECK(count_of(csv, "\n") == 5);
  CHECK(csv.rfind("theta,re,im,support,eigengap\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(csv.find("\n0,0.5,") != std::string::npos);  // theta = 0: boundary point 1/2
  CHECK_THROWS_AS(emit_csv({}), EmptyInput);
}

TEST_CASE("svg output") {
  const auto r1 = analyze(example1());
  const auto s1 = sample_boundary(example1(), 720);
  const std::string svg1 = emit_svg(s1, segments_of(r1), r1.reducible.eigenvalues);
  CHECK(count_of(svg1, "class=\"flat\"") == 1);
  CHECK(count_of(svg1, "class=\"boundary\"") == 1);
  CHECK(count_of(svg1, "class=\"unit-circle\"") == 1);
  CHECK(count_of(svg1, "class=\"eigenvalue\"") == 3);

  const auto r2 = analyze(example2());
  const std::string svg2 = emit_svg(sample_boundary(example2(), 720), segments_of(r2), r2.reducible.eigenvalues);
  CHECK(count_of(svg2, "class=\"flat\"") == 2);
  // One vertical (x1 == x2) and one horizontal (y1 == y2) line.
  const std::regex line("<line class=\"flat\" x1=\"([^\"]+)\" y1=\"([^\"]+)\" x2=\"([^\"]+)\" y2=\"([^\"]+)\"");
  int vertical = 0, horizontal = 0;
  for (auto it = std::sregex_iterator(svg2.begin(), svg2.end(), line); it != std::sregex_iterator(); ++it) {
    const double x1 = std::stod((*it)[1]), y1 = std::stod((*it)[2]), x2 = std::stod((*it)[3]), y2 = std::stod((*it)[4]);
    if (std::abs(x1 - x2) <= 1e-5) ++vertical;
    if (std::abs(y1 - y2) <= 1e-5) ++horizontal;
    // Mathematical orientation: the horizontal flat sits at Im z = -sqrt2/2, drawn at y = +sqrt2/2.
    if (std::abs(y1 - y2) <= 1e-5) CHECK(y1 == doctest::Approx(kSqrt2 / 2).epsilon(1e-5));
  }
  CHECK(vertical == 1);
  CHECK(horizontal == 1);

  SvgOptions down;
  down.y_down = true;
  const std::string svg3 = emit_svg(sample_boundary(example2(), 720), segments_of(r2), r2.reducible.eigenvalues, down);
  CHECK(svg3.find("y1=\"-0.707107\"") != std::string::npos);
  CHECK_THROWS_AS(emit_svg({}, {}, {}), EmptyInput);
}
