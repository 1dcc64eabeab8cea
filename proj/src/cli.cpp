#include "flatrange/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "flatrange/boundary.hpp"
#include "flatrange/errors.hpp"
#include "flatrange/search.hpp"
#include "flatrange/special.hpp"

namespace flatrange {

using nlohmann::json;

void JobConfig::validate() const {
  if (!(tol_uni > 0.0) || !(tol_cond2 > 0.0) || !(tol_confirm > 0.0) || !(gap_tol > 0.0))
    throw ConfigError("tolerances must be positive");
  if (samples < 8) throw ConfigError("--samples must be at least 8");
  if (command == Command::Search) {
    if (trials < 1) throw ConfigError("--trials must be at least 1");
    if (n < 2) throw ConfigError("--n must be at least 2");
    return;
  }
  if (coeffs.empty() == file.empty()) throw ConfigError("give exactly one of --coeffs and --file");
}

FlatnessConfig JobConfig::flatness() const {
  FlatnessConfig f;
  f.tol_uni = tol_uni;
  f.tol_c2 = tol_cond2;
  f.tol_confirm = tol_confirm;
  return f;
}

// ---------------------------------------------------------------------------
// Coefficient parsing

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  CVector list() {
    CVector out;
    out.push_back(expr());
    skip_ws();
    while (peek() == ',') {
      ++pos_;
      out.push_back(expr());
      skip_ws();
    }
    if (pos_ != s_.size()) fail("unexpected character");
    return out;
  }

 private:
  cplx expr() {
    cplx v = term();
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c == '+') {
        ++pos_;
        v += term();
      } else if (c == '-') {
        ++pos_;
        v -= term();
      } else {
        return v;
      }
    }
  }

  cplx term() {
    cplx v = unary();
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c == '*') {
        ++pos_;
        v *= unary();
      } else if (c == '/') {
        ++pos_;
        const std::size_t at = pos_;
        const cplx d = unary();
        if (d == cplx{}) fail("division by zero", at);
        v /= d;
      } else if (starts_primary()) {
        v *= primary();
      } else {
        return v;
      }
    }
  }

  cplx unary() {
    skip_ws();
    if (peek() == '-') {
      ++pos_;
      return -unary();
    }
    if (peek() == '+') {
      ++pos_;
      return unary();
    }
    return primary();
  }

  bool starts_primary() const {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(' || c == 'i' || c == 's';
  }

  cplx primary() {
    skip_ws();
    const char c = peek();
    if (c == '(') {
      ++pos_;
      const cplx v = expr();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return v;
    }
    if (s_.substr(pos_, 5) == "sqrt2") {
      pos_ += 5;
      return std::numbers::sqrt2;
    }
    if (c == 'i') {
      ++pos_;
      return {0.0, 1.0};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double x = 0.0;
      const char* first = s_.data() + pos_;
      const auto [ptr, ec] = std::from_chars(first, s_.data() + s_.size(), x);
      if (ec != std::errc{}) fail("malformed number");
      pos_ += static_cast<std::size_t>(ptr - first);
      return x;
    }
    if (pos_ >= s_.size()) fail("unexpected end of input");
    fail("unexpected character");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& what) const { fail(what, pos_); }
  [[noreturn]] void fail(const std::string& what, std::size_t at) const { throw ParseError(what, at); }

  std::string_view s_;
  std::size_t pos_ = 0;
};

CompanionSpec parse_json_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte == 0 ? 0 : e.byte - 1);
  }
  if (!doc.is_object() || !doc.contains("a") || !doc["a"].is_array())
    throw ParseError("JSON spec needs an array field \"a\"", 0);
  CVector a;
  for (const auto& item : doc["a"]) {
    if (item.is_number()) {
      a.emplace_back(item.get<double>(), 0.0);
    } else if (item.is_array() && item.size() == 2 && item[0].is_number() && item[1].is_number()) {
      a.emplace_back(item[0].get<double>(), item[1].get<double>());
    } else {
      throw ParseError("coefficients must be [re, im] pairs", 0);
    }
  }
  if (doc.contains("n")) {
    if (!doc["n"].is_number_integer()) throw ParseError("\"n\" must be an integer", 0);
    if (doc["n"].get<long long>() != static_cast<long long>(a.size()))
      throw DimensionError("\"n\" does not match the number of coefficients");
  }
  return make_spec(std::move(a));
}

}  // namespace

CompanionSpec parse_coeffs(std::string_view text) {
  std::size_t first = 0;
  while (first < text.size() && std::isspace(static_cast<unsigned char>(text[first]))) ++first;
  if (first == text.size()) throw ParseError("empty coefficient list", first);
  CompanionSpec spec = text[first] == '{' ? parse_json_spec(text) : make_spec(ExprParser(text).list());
  spec.validate();
  return spec;
}

std::string render_json(const CompanionSpec& spec) {
  json a = json::array();
  for (const cplx& z : spec.a) a.push_back({z.real(), z.imag()});
  return json{{"n", spec.n}, {"a", a}}.dump();
}

// ---------------------------------------------------------------------------
// Reports

namespace {

json cj(cplx z) { return json::array({z.real(), z.imag()}); }

json cvec(const CVector& v) {
  json out = json::array();
  for (const cplx& z : v) out.push_back(cj(z));
  return out;
}

std::string fmt_c(cplx z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.6f%+.6fi", z.real(), z.imag());
  return buf;
}

std::string fmt_d(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

json reducibility_json(const ReducibilityVerdict& v) {
  json j{{"reducible", v.reducible}, {"unitary", v.unitary}, {"eigenvalues", cvec(v.eigenvalues)}};
  j["eta"] = v.eta ? cj(*v.eta) : json(nullptr);
  j["r"] = v.eta ? json(v.r()) : json(nullptr);
  if (v.partition) {
    j["partition"] = {{"J1", v.partition->first}, {"J2", v.partition->second}};
  } else {
    j["partition"] = nullptr;
  }
  return j;
}

json analysis_json(const AnalysisReport& rep, const std::optional<OracleComparison>& oracle) {
  json portions = json::array();
  for (const auto& p : rep.portions) {
    portions.push_back({
        {"omega", cj(p.omega)},
        {"anchor", cj(p.anchor)},
        {"slope_rad", p.slope},
        {"endpoints", json::array({cj(p.endpoints[0]), cj(p.endpoints[1])})},
        {"witnesses", {{"x1", cvec(p.witness.x1)}, {"x2", cvec(p.witness.x2)}, {"s12", cj(p.s12)}, {"s22", cj(p.s22)}}},
    });
  }
  json candidates = json::array();
  json marginal = json::array();
  for (const auto& c : rep.candidates) {
    const bool confirmed = std::any_of(rep.portions.begin(), rep.portions.end(),
                                       [&](const FlatPortion& p) { return std::abs(p.omega - unit(c.omega)) <= 1e-9; });
    candidates.push_back({
        {"omega", cj(c.omega)},
        {"cond1_residual", c.cond1_residual},
        {"cond2_residual", c.cond2_residual},
        {"passed_necessary", c.passed_necessary},
        {"multiplicity", c.multiplicity},
        {"marginal", c.marginal},
        {"confirmed", confirmed},
    });
    marginal.push_back(c.marginal);
  }
  json j{
      {"spec", json::parse(render_json(rep.spec))},
      {"flat_count", rep.flat_count},
      {"portions", portions},
      {"reducible", rep.reducible.reducible},
      {"reducibility", reducibility_json(rep.reducible)},
      {"cond1_constant", rep.cond1_constant},
      {"marginal_flags", marginal},
      {"candidates", candidates},
  };
  if (oracle) {
    j["oracle_agreement"] = oracle->agree;
    j["oracle"] = {{"flat_count", oracle->oracle_count},
                   {"max_slope_error", oracle->max_slope_error},
                   {"max_endpoint_error", oracle->max_endpoint_error}};
  } else {
    j["oracle_agreement"] = nullptr;
  }
  return j;
}

void pretty_spec(std::ostream& out, const CompanionSpec& spec) {
  out << "n = " << spec.n << "\na = (";
  for (std::size_t k = 0; k < spec.a.size(); ++k) out << (k ? ", " : "") << fmt_c(spec.a[k]);
  out << ")\n";
}

void pretty_analysis(std::ostream& out, const AnalysisReport& rep, const std::optional<OracleComparison>& oracle) {
  pretty_spec(out, rep.spec);
  out << "flat portions: " << rep.flat_count << '\n';
  for (std::size_t k = 0; k < rep.portions.size(); ++k) {
    const auto& p = rep.portions[k];
    out << "  [" << k + 1 << "] omega " << fmt_c(p.omega) << "  slope " << fmt_d(p.slope) << "  from "
        << fmt_c(p.endpoints[0]) << " to " << fmt_c(p.endpoints[1]) << '\n';
  }
  out << "candidates: " << rep.candidates.size() << '\n';
  for (const auto& c : rep.candidates) {
    out << "  omega " << fmt_c(c.omega) << "  cond2 residual " << c.cond2_residual
        << (c.passed_necessary ? "  passed" : "  failed") << (c.marginal ? "  (marginal)" : "") << '\n';
  }
  out << "reducible: " << (rep.reducible.reducible ? "yes" : "no");
  if (rep.reducible.unitary) out << " (unitary)";
  out << '\n';
  if (oracle) {
    out << "oracle: " << (oracle->agree ? "agrees" : "DISAGREES") << " (" << oracle->oracle_count << " flats)\n";
  }
}

void pretty_reducibility(std::ostream& out, const ReducibilityVerdict& v) {
  out << "reducible: " << (v.reducible ? "yes" : "no") << '\n';
  if (v.reducible) {
    out << "unitary: " << (v.unitary ? "yes" : "no") << '\n';
    out << "eta: " << fmt_c(*v.eta) << "  (r = " << fmt_d(v.r()) << ")\n";
  }
  out << "eigenvalues:\n";
  for (const cplx& z : v.eigenvalues) out << "  " << fmt_c(z) << '\n';
}

json histogram_json(const std::map<int, std::int64_t>& h) {
  json j = json::object();
  for (const auto& [k, v] : h) j[std::to_string(k)] = v;
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path);
  f << text;
  if (!f) throw ConfigError("cannot write " + path);
}

CompanionSpec load_spec(const JobConfig& cfg) {
  return parse_coeffs(cfg.file.empty() ? cfg.coeffs : read_file(cfg.file));
}

OracleConfig oracle_config(const JobConfig& cfg) {
  OracleConfig oc;
  oc.samples = cfg.samples;
  oc.gap_tol = cfg.gap_tol;
  return oc;
}

int cmd_analyze(const JobConfig& cfg, std::ostream& out) {
  const CompanionSpec spec = load_spec(cfg);
  AnalysisReport rep = analyze(spec, cfg.flatness());
  const OracleComparison oracle = compare_with_oracle(rep, empirical_flats(spec, oracle_config(cfg)));
  rep.oracle_agreement = oracle.agree;
  if (cfg.pretty) {
    pretty_analysis(out, rep, oracle);
  } else {
    out << analysis_json(rep, oracle).dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_boundary(const JobConfig& cfg, std::ostream& out) {
  const CompanionSpec spec = load_spec(cfg);
  const auto samples = sample_boundary(spec, cfg.samples);
  const AnalysisReport rep = analyze(spec, cfg.flatness());
  const std::string csv = emit_csv(samples);
  if (cfg.out.empty()) {
    out << csv;
  } else {
    write_file(cfg.out, csv);
  }
  if (!cfg.svg.empty()) {
    std::vector<std::array<cplx, 2>> segments;
    for (const auto& p : rep.portions) segments.push_back(p.endpoints);
    SvgOptions opts;
    opts.y_down = cfg.y_down;
    write_file(cfg.svg, emit_svg(samples, segments, rep.reducible.eigenvalues, opts));
  }
  if (!cfg.out.empty()) {
    if (cfg.pretty) {
      out << "wrote " << samples.size() << " samples to " << cfg.out << '\n';
    } else {
      out << json{{"samples", samples.size()}, {"flat_count", rep.flat_count}, {"csv", cfg.out},
                  {"svg", cfg.svg.empty() ? json(nullptr) : json(cfg.svg)}}
                 .dump(2)
          << '\n';
    }
  }
  return kExitOk;
}

int cmd_check34(const JobConfig& cfg, std::ostream& out) {
  const CompanionSpec spec = load_spec(cfg);
  if (spec.n != 3 && spec.n != 4) throw ConfigError("check34 needs n = 3 or n = 4");
  const FlatnessConfig fc = cfg.flatness();
  const ClosedFormReport cf = spec.n == 3 ? criterion_3x3(spec, fc) : criterion_4x4(spec, fc);
  const AnalysisReport rep = analyze(spec, fc);
  const bool agree = cf.predicted_flat_count == rep.flat_count;
  if (cfg.pretty) {
    pretty_spec(out, spec);
    out << "unimodular solutions: " << cf.unimodular_solutions.size() << '\n';
    for (const cplx& w : cf.unimodular_solutions) out << "  " << fmt_c(w) << '\n';
    out << "tautology: " << (cf.tautology ? "yes" : "no") << '\n';
    if (spec.n == 3) out << "exceptional family: " << (cf.exception_hit ? "yes" : "no") << '\n';
    out << "predicted flat portions: " << cf.predicted_flat_count << '\n';
    out << "general detector: " << rep.flat_count << (agree ? " (agree)" : " (DISAGREE)") << '\n';
  } else {
    out << json{{"n", cf.n},
                {"unimodular_solutions", cvec(cf.unimodular_solutions)},
                {"tautology", cf.tautology},
                {"exception_hit", cf.exception_hit},
                {"necessary_inequality", cf.necessary_inequality},
                {"predicted_flat_count", cf.predicted_flat_count},
                {"detector_flat_count", rep.flat_count},
                {"agreement", agree}}
                   .dump(2)
        << '\n';
  }
  return kExitOk;
}

int cmd_reduce(const JobConfig& cfg, std::ostream& out) {
  const CompanionSpec spec = load_spec(cfg);
  const ReducibilityVerdict v = reducibility(spec, cfg.flatness().tol_reduce);
  if (cfg.pretty) {
    pretty_reducibility(out, v);
  } else {
    out << reducibility_json(v).dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_search(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  SearchConfig sc;
  sc.n = cfg.n;
  sc.trials = cfg.trials;
  sc.seed = cfg.seed;
  sc.flat = cfg.flatness();
  const SearchResult res = random_search(sc);
  if (cfg.pretty) {
    out << "n = " << res.n << ", trials = " << res.trials << ", seed = " << cfg.seed << '\n';
    out << "flat_count  trials  irreducible\n";
    for (const auto& [f, count] : res.histogram) {
      const auto it = res.irreducible_histogram.find(f);
      char line[96];
      std::snprintf(line, sizeof line, "%10d  %6lld  %11lld\n", f, static_cast<long long>(count),
                    static_cast<long long>(it == res.irreducible_histogram.end() ? 0 : it->second));
      out << line;
    }
    out << "violations: " << res.violations.size() << ", failures: " << res.failures.size() << '\n';
  } else {
    json by_sampler = json::object();
    for (const auto& [name, h] : res.by_sampler) by_sampler[name] = histogram_json(h);
    out << json{{"n", res.n},
                {"trials", res.trials},
                {"seed", cfg.seed},
                {"histogram", histogram_json(res.histogram)},
                {"irreducible_histogram", histogram_json(res.irreducible_histogram)},
                {"by_sampler", by_sampler},
                {"violations", res.violations},
                {"failures", res.failures}}
                   .dump(2)
        << '\n';
  }
  if (!res.violations.empty()) {
    err << "error: " << res.violations.size() << " trial(s) violate the flat portion bounds\n";
    return kExitViolation;
  }
  if (!res.failures.empty()) {
    err << "error: " << res.failures.size() << " trial(s) failed numerically\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace

int run(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.validate();
    switch (cfg.command) {
      case Command::Analyze:
        return cmd_analyze(cfg, out);
      case Command::Boundary:
        return cmd_boundary(cfg, out);
      case Command::Check34:
        return cmd_check34(cfg, out);
      case Command::Reduce:
        return cmd_reduce(cfg, out);
      case Command::Search:
        return cmd_search(cfg, out, err);
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const WrongDimension& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace flatrange
