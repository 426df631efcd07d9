#ifndef PARABEND_REPORT_HPP
#define PARABEND_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "parabend/rational.hpp"
#include "parabend/scan.hpp"

namespace parabend::report {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnknownSuite : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Everything a run depends on lives here; no environment state. Weights are
// exact rationals, grids and tolerances are explicit.
struct RunConfig {
  std::uint64_t seed = 20260810;
  std::string out_dir = "out";
  bool parallel = false;

  // parabolic end
  Rational alpha1{0, 1};
  Rational alpha2{1, 3};
  double end_a = 1.0;
  double fiber_curvature = 1.0;
  std::vector<double> curvature_values = {0.5, 1.0, 2.0, 4.0};

  // cap profiles
  std::vector<int> j_list = {1, 2, 3, 4, 5, 6, 7, 8};
  double delta_scale = 0.1;  // delta_j = delta_scale * e^{-j}
  double cap_eps = 0.1;

  // discretization
  double fd_step = 1e-3;
  int sample_points = 50;
  int spectral_grid = 300;
  int max_mode = 6;
  int quad_n = 4000;
  int holonomy_steps = 512;
  int mode_gap_max_q = 50;

  // tolerances
  double tol_scalar = 1e-3;
  double tol_sectional = 1e-4;
  double tol_killing = 1e-5;
  double tol_pullback = 1e-5;
  double tol_holonomy = 1e-8;
  double tol_pairing = 1e-9;
  double tol_margin = 1e-10;
  double tol_exact = 1e-12;
  double tol_spectral = 1e-3;

  Exec exec() const { return parallel ? Exec::kParallel : Exec::kSerial; }
};

RunConfig parse_config(const std::string& path);

enum class Provenance { kPaper, kTrivial, kDerived };
std::string provenance_label(Provenance p);

// absolute: |computed - expected| <= tolerance
// lower bound: computed >= expected - tolerance
enum class CheckKind { kAbsolute, kLowerBound };

struct CheckResult {
  std::string id;
  std::string suite;
  double computed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  CheckKind kind = CheckKind::kAbsolute;
  bool pass = false;
  Provenance provenance = Provenance::kDerived;
  std::string anchor;  // the identity or bound being verified
};

CheckResult make_check(std::string id, std::string suite, double computed, double expected,
                       double tolerance, CheckKind kind, Provenance provenance,
                       std::string anchor);

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"stability", "geometry", "smoothing",
                                                 "spectrum", "cohomology"};
  return names;
}

// Runs one suite (or "all"). Deterministic for a fixed config; side tables
// (CSV / JSON) land in config.out_dir.
std::vector<CheckResult> run_suite(const RunConfig& config, const std::string& suite);

// JSON array with stable key order; 17 significant digits via the CSV
// companions, exact roundtrip numbers in the JSON.
void emit_report(const std::vector<CheckResult>& results, const std::string& path);

std::string format_double(double v);  // %.17g

}  // namespace parabend::report

#endif  // PARABEND_REPORT_HPP
