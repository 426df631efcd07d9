#include "parabend/report.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace parabend::report {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ParseError("config: bad number for '" + key + "': " + value);
  }
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ParseError("config: bad integer for '" + key + "': " + value);
  }
}

}  // namespace

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("config: cannot open " + path);
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "seed")
        cfg.seed = static_cast<std::uint64_t>(parse_long(key, value));
      else if (key == "out_dir")
        cfg.out_dir = value;
      else if (key == "parallel")
        cfg.parallel = value == "true" || value == "1";
      else if (key == "end.alpha1")
        cfg.alpha1 = Rational::parse(value);
      else if (key == "end.alpha2")
        cfg.alpha2 = Rational::parse(value);
      else if (key == "end.a")
        cfg.end_a = parse_double(key, value);
      else if (key == "end.c")
        cfg.fiber_curvature = parse_double(key, value);
      else if (key == "end.c_list") {
        cfg.curvature_values.clear();
        for (const auto& item : split(value, ','))
          cfg.curvature_values.push_back(parse_double(key, item));
      } else if (key == "cap.j_list") {
        cfg.j_list.clear();
        for (const auto& item : split(value, ','))
          cfg.j_list.push_back(static_cast<int>(parse_long(key, item)));
      } else if (key == "cap.delta_scale")
        cfg.delta_scale = parse_double(key, value);
      else if (key == "cap.eps")
        cfg.cap_eps = parse_double(key, value);
      else if (key == "grid.fd_step")
        cfg.fd_step = parse_double(key, value);
      else if (key == "grid.sample_points")
        cfg.sample_points = static_cast<int>(parse_long(key, value));
      else if (key == "grid.spectral")
        cfg.spectral_grid = static_cast<int>(parse_long(key, value));
      else if (key == "grid.max_mode")
        cfg.max_mode = static_cast<int>(parse_long(key, value));
      else if (key == "grid.quad_n")
        cfg.quad_n = static_cast<int>(parse_long(key, value));
      else if (key == "grid.holonomy_steps")
        cfg.holonomy_steps = static_cast<int>(parse_long(key, value));
      else if (key == "grid.mode_gap_max_q")
        cfg.mode_gap_max_q = static_cast<int>(parse_long(key, value));
      else if (key == "tol.scalar")
        cfg.tol_scalar = parse_double(key, value);
      else if (key == "tol.sectional")
        cfg.tol_sectional = parse_double(key, value);
      else if (key == "tol.killing")
        cfg.tol_killing = parse_double(key, value);
      else if (key == "tol.pullback")
        cfg.tol_pullback = parse_double(key, value);
      else if (key == "tol.holonomy")
        cfg.tol_holonomy = parse_double(key, value);
      else if (key == "tol.pairing")
        cfg.tol_pairing = parse_double(key, value);
      else if (key == "tol.margin")
        cfg.tol_margin = parse_double(key, value);
      else if (key == "tol.exact")
        cfg.tol_exact = parse_double(key, value);
      else if (key == "tol.spectral")
        cfg.tol_spectral = parse_double(key, value);
      else
        throw ParseError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    } catch (const std::invalid_argument& e) {
      throw ParseError("config line " + std::to_string(lineno) + ": " + e.what());
    } catch (const std::overflow_error& e) {
      throw ParseError("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  for (double tol : {cfg.tol_scalar, cfg.tol_killing, cfg.tol_pullback, cfg.tol_holonomy,
                     cfg.tol_pairing, cfg.tol_margin, cfg.tol_exact, cfg.tol_spectral})
    if (!(tol > 0.0)) throw ParseError("config: tolerances must be positive");
  return cfg;
}

std::string provenance_label(Provenance p) {
  switch (p) {
    case Provenance::kPaper:
      return "paper";
    case Provenance::kTrivial:
      return "trivial";
    case Provenance::kDerived:
      return "derived";
  }
  return "?";
}

CheckResult make_check(std::string id, std::string suite, double computed, double expected,
                       double tolerance, CheckKind kind, Provenance provenance,
                       std::string anchor) {
  CheckResult r;
  r.id = std::move(id);
  r.suite = std::move(suite);
  r.computed = computed;
  r.expected = expected;
  r.tolerance = tolerance;
  r.kind = kind;
  r.provenance = provenance;
  r.anchor = std::move(anchor);
  r.pass = kind == CheckKind::kAbsolute ? std::abs(computed - expected) <= tolerance
                                        : computed >= expected - tolerance;
  return r;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void emit_report(const std::vector<CheckResult>& results, const std::string& path) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json item;
    item["id"] = r.id;
    item["suite"] = r.suite;
    item["computed"] = r.computed;
    item["expected"] = r.expected;
    item["tolerance"] = r.tolerance;
    item["kind"] = r.kind == CheckKind::kAbsolute ? "absolute" : "lower_bound";
    item["pass"] = r.pass;
    item["provenance"] = provenance_label(r.provenance);
    item["anchor"] = r.anchor;
    arr.push_back(item);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_report: cannot write " + path);
  out << arr.dump(2) << "\n";
}

}  // namespace parabend::report
