// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Tolerances are pinned here, not configurable.

#include <cmath>
#include <complex>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#include "parabend/bundles.hpp"
#include "parabend/cap.hpp"
#include "parabend/cohomology.hpp"
#include "parabend/geometry.hpp"
#include "parabend/scan.hpp"
#include "parabend/spectral.hpp"

using namespace parabend;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::uint64_t kSeed = 20260810ULL;

int g_index = 0;
int g_failures = 0;

void criterion(const std::string& name, bool pass, const std::string& detail) {
  ++g_index;
  if (!pass) ++g_failures;
  std::printf("[%s] %2d. %-38s %s\n", pass ? "PASS" : "FAIL", g_index, name.c_str(),
              detail.c_str());
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

geometry::Vec4 random_chart_point(Rng& rng) {
  const double rho = 0.8 * std::sqrt(rng.uniform());
  const double psi = rng.uniform(0.0, 2.0 * kPi);
  return {rng.uniform(0.3, 2.5), rng.uniform(0.0, 2.0 * kPi), rho * std::cos(psi),
          rho * std::sin(psi)};
}

std::vector<cap::CapProfile> build_profiles(int j_max) {
  std::vector<cap::CapProfile> out;
  for (int j = 1; j <= j_max; ++j) out.push_back(cap::build_cap_profile(j));
  return out;
}

void model_scalar_curvature() {
  double worst = 0.0;
  for (double c : {0.5, 1.0, 2.0, 4.0}) {
    geometry::ParabolicEnd end;
    end.alpha2 = 1.0 / 3.0;
    end.c = c;
    const auto field = geometry::model_metric_field(end);
    Rng rng(kSeed ^ 1);
    for (int i = 0; i < 20; ++i) {
      const auto p = random_chart_point(rng);
      worst = std::max(worst,
                       std::abs(geometry::scalar_curvature(field, p, 1e-3) - 2.0 * (c - 1.0)));
    }
  }
  criterion("model scalar curvature s = 2(c-1)", worst <= 1e-3, "max dev " + fmt(worst));
}

void mean_curvature(const std::vector<cap::CapProfile>& profiles) {
  double cusp_dev = 0.0, cone_dev = 0.0;
  for (const auto& p : profiles) {
    const auto warp = p.warp();
    for (double t : {0.0, 0.3 * p.j(), p.j() + 0.9}) {
      cusp_dev = std::max(cusp_dev, std::abs(geometry::mean_curvature_slice(warp, t) - 0.5));
    }
    const double t0 = p.pieces().back().t0;
    const double phi2 = p.pieces().back().coeffs[0];
    for (double frac : {0.1, 0.5, 0.9}) {
      const double t = t0 + frac * (p.T() - t0);
      // T - t evaluated in its cancellation-free form phi2 - (t - t0)
      const double expected = 0.5 / (phi2 - (t - t0));
      cone_dev = std::max(cone_dev, std::abs(geometry::mean_curvature_slice(warp, t) -
                                             expected) /
                                        expected);
    }
  }
  criterion("mean curvature h = 1/2 and 1/(2(T-t))", cusp_dev == 0.0 && cone_dev <= 1e-12,
            "cusp dev " + fmt(cusp_dev) + ", cone dev " + fmt(cone_dev));
}

void cap_curvature_lemma(const std::vector<cap::CapProfile>& profiles) {
  const double alpha = 1.0 / 3.0;
  const double c = 2.0;
  double worst = 0.0;
  for (const auto& p : profiles) {
    if (p.j() > 6) continue;
    Rng rng(kSeed ^ static_cast<std::uint64_t>(100 + p.j()));
    const auto twisted = cap::cap_metric_field(p, alpha, c);
    const double collar_lo = p.j() + 1.0 - 5e-3;
    const double bubble_hi = p.pieces().back().t0 + 5e-3;
    for (int i = 0; i < 6; ++i) {
      double t = rng.uniform(0.5, p.T() - 0.05);
      while (t > collar_lo && t < bubble_hi) t = rng.uniform(0.5, p.T() - 0.05);
      const geometry::Vec4 x(t, rng.uniform(0.0, 2.0 * kPi), rng.uniform(-0.5, 0.5),
                             rng.uniform(-0.5, 0.5));
      const double fd = geometry::scalar_curvature(twisted, x, 1e-3);
      worst = std::max(worst, std::abs(fd - cap::cap_scalar_curvature(p, c, t)));
    }
    // inside the bubble the feature width shrinks like e^{-j}: scale the
    // step with the piece and compare relative to the (large) exact value
    const auto product = cap::cap_metric_field(p, 0.0, c);
    for (int i = 0; i < 4; ++i) {
      const auto& piece = p.pieces()[1 + (i % 2)];
      const double width = piece.t1 - piece.t0;
      const double t = piece.t0 + width * rng.uniform(0.25, 0.75);
      const geometry::Vec4 x(t, rng.uniform(0.0, 2.0 * kPi), 0.2, -0.1);
      const double fd = geometry::scalar_curvature(product, x, width / 30.0);
      const double exact = cap::cap_scalar_curvature(p, c, t);
      worst = std::max(worst, std::abs(fd - exact) / std::max(1.0, std::abs(exact)));
    }
  }
  criterion("cap scalar curvature cross-check", worst <= 1e-3, "max dev " + fmt(worst));
}

void profile_feasibility(const std::vector<cap::CapProfile>& profiles) {
  double min_ratio = 1e300, min_mono = 1e300, env = -1e300, c2 = 0.0;
  for (const auto& p : profiles) {
    double prev = 1.0;
    const int n = 10000;
    for (int i = 0; i <= n; ++i) {
      const double t = (p.T() - 1e-7) * i / n;
      const double ratio = -p.dphi(t) / p.phi(t);
      min_ratio = std::min(min_ratio, ratio);
      min_mono = std::min(min_mono, ratio - prev);
      prev = ratio;
      env = std::max(env, p.phi(t) - std::exp(-t));
    }
    for (std::size_t k = 0; k + 1 < p.pieces().size(); ++k) {
      const double t = p.pieces()[k].t1;
      c2 = std::max({c2, std::abs(p.pieces()[k].eval(t) - p.pieces()[k + 1].eval(t)),
                     std::abs(p.pieces()[k].deriv(t) - p.pieces()[k + 1].deriv(t)),
                     std::abs(p.pieces()[k].deriv2(t) - p.pieces()[k + 1].deriv2(t))});
    }
  }
  const bool pass = min_ratio >= 1.0 - 1e-9 && min_mono >= -1e-9 && env <= 1e-12 && c2 < 1e-9;
  criterion("cap profile feasibility j = 1..8", pass,
            "min ratio " + fmt(min_ratio) + ", C2 residual " + fmt(c2));
}

void volume_control(const std::vector<cap::CapProfile>& profiles) {
  const double c = 1.0;
  int K = 1;
  bool found = false;
  for (; K <= 60 && !found; ++K) {
    double worst = cap::end_volume_model(K, c);
    for (const auto& p : profiles) worst = std::max(worst, cap::end_volume(p, K, c));
    found = worst <= 1e-3;
  }
  criterion("volume control, uniform tail", found, "K = " + std::to_string(K - 1));
}

void chern_holonomy() {
  Rng rng(kSeed ^ 6);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const long den = rng.uniform_int(2, 16);
    const long n1 = rng.uniform_int(0, den - 1);
    const long n2 = rng.uniform_int(n1, den - 1);
    const double a1 = static_cast<double>(n1) / den, a2 = static_cast<double>(n2) / den;
    const auto hol = geometry::chern_connection_holonomy(a1, a2, 0.25, 512);
    Eigen::Matrix2cd expect = Eigen::Matrix2cd::Zero();
    expect(0, 0) = std::exp(std::complex<double>(0, -2.0 * kPi * a1));
    expect(1, 1) = std::exp(std::complex<double>(0, -2.0 * kPi * a2));
    worst = std::max(worst, (hol - expect).norm());
  }
  criterion("Chern connection holonomy", worst <= 1e-8, "max dev " + fmt(worst));
}

void cover_isometry() {
  Rng rng(kSeed ^ 7);
  double worst = 0.0;
  for (double alpha : {0.0, 1.0 / 3.0, 1.0 / std::sqrt(2.0)}) {
    geometry::ParabolicEnd end;
    end.alpha2 = alpha;
    for (int i = 0; i < 50; ++i) {
      const std::complex<double> xi(rng.uniform(-2, 2), rng.uniform(std::exp(0.3), std::exp(2.0)));
      const std::complex<double> u =
          std::polar(0.7 * std::sqrt(rng.uniform()), rng.uniform(0, 2 * kPi));
      worst = std::max(worst, geometry::pullback_metric_check(end, xi, u, 1e-3));
    }
  }
  criterion("covering map is a local isometry", worst <= 1e-5, "max dev " + fmt(worst));
}

void killing_invariance() {
  geometry::ParabolicEnd end;
  end.alpha2 = 1.0 / 3.0;
  end.c = 2.0;
  const auto field = geometry::model_metric_field(end);
  const geometry::VectorField xtheta = [&end](const geometry::Vec4& x) {
    return geometry::Vec4(0.0, 1.0, -end.alpha() * x[3], end.alpha() * x[2]);
  };
  Rng rng(kSeed ^ 8);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto p = random_chart_point(rng);
    worst = std::max(worst,
                     geometry::lie_derivative_metric(field, xtheta, p, 1e-3).cwiseAbs().maxCoeff());
  }
  criterion("Killing invariance of X_theta", worst <= 1e-5, "max |L_X g| " + fmt(worst));
}

void poincare_inequality() {
  using namespace parabend::spectral;
  WarpFn cusp{[](double t) { return std::exp(-t); }, [](double t) { return -std::exp(-t); },
              [](double t) { return std::exp(-t); }};
  WeightedInterval above{0.0, 5.0, cusp, 0.5, 0.0};
  WeightedInterval below{0.0, 5.0, cusp, 0.7, 0.9};
  Rng rng(kSeed ^ 9);
  double min_margin = 1e300;
  for (int trial = 0; trial < 100; ++trial) {
    double a[5], w[5], ph[5];
    for (int k = 0; k < 5; ++k) {
      a[k] = rng.uniform(-1, 1);
      w[k] = rng.uniform(0.1, 3.0);
      ph[k] = rng.uniform(0, 2 * kPi);
    }
    const auto f = [=](double t) {
      double s = 0;
      for (int k = 0; k < 5; ++k) s += a[k] * std::sin(w[k] * t + ph[k]);
      return s;
    };
    const auto df = [=](double t) {
      double s = 0;
      for (int k = 0; k < 5; ++k) s += a[k] * w[k] * std::cos(w[k] * t + ph[k]);
      return s;
    };
    min_margin = std::min(min_margin,
                          poincare_1d_check(trial % 2 ? below : above, f, df, 4000).margin);
  }
  criterion("weighted Poincare inequality", min_margin >= -1e-10,
            "min margin " + fmt(min_margin));
}

void spectral_gap(const std::vector<cap::CapProfile>& profiles) {
  using namespace parabend::spectral;
  double min_lambda = 1e300, refine = 0.0;
  for (const auto& p : profiles) {
    if (p.j() > 6) continue;
    const auto coarse = lambda1_cap_surface(p, 6, 300);
    const auto fine = lambda1_cap_surface(p, 6, 600);
    min_lambda = std::min(min_lambda, fine.lambda1);
    refine = std::max(refine, std::abs(fine.lambda1 - coarse.lambda1));
  }
  WarpFn sphere{[](double t) { return std::sin(t); }, [](double t) { return std::cos(t); },
                [](double t) { return -std::sin(t); }};
  const double sph = revolution_lambda1(sphere, 0.0, kPi, 2, 600).lambda1;
  const bool pass = min_lambda > 0.0 && refine <= 1e-3 && std::abs(sph - 2.0) <= 1e-2;
  criterion("uniform spectral gap witness", pass,
            "min lambda1 " + fmt(min_lambda) + ", sphere " + fmt(sph));
}

void mode_gaps() {
  using namespace parabend::spectral;
  bool exact = true;
  for (long q = 1; q <= 50; ++q)
    for (long r = 0; r < q; ++r) {
      if (std::gcd(r, q) != 1) continue;
      if (mode_gap_rational(r, q) != Rational(1, q)) exact = false;
    }
  bool positive = true;
  for (double alpha : {(std::sqrt(5.0) - 1.0) / 2.0, 1.0 / std::sqrt(2.0), kPi - 3.0})
    for (int K = 1; K <= 20; ++K)
      if (!(epsilon_for_K(alpha, K).eps > 0.0)) positive = false;
  const auto rational = epsilon_for_K(0.5, 3);
  criterion("Fourier mode gaps", exact && positive && rational.degenerate,
            std::string("gap = 1/q for q <= 50; epsilon ") +
                (positive ? "positive" : "degenerate"));
}

void continued_fractions() {
  using namespace parabend::spectral;
  bool quality = true;
  for (double alpha : {(std::sqrt(5.0) - 1.0) / 2.0, 1.0 / std::sqrt(2.0), 0.2834723}) {
    for (const auto& [r, q] : cf_convergents(alpha, 14))
      if (std::abs(alpha - static_cast<double>(r) / q) > 1.0 / (static_cast<double>(q) * q))
        quality = false;
  }
  bool fibonacci = true;
  long fa = 1, fb = 1;
  for (const auto& [r, q] : cf_convergents((std::sqrt(5.0) - 1.0) / 2.0, 10)) {
    if (r != fa || q != fb) fibonacci = false;
    const long next = fa + fb;
    fa = fb;
    fb = next;
  }
  criterion("continued-fraction convergents", quality && fibonacci,
            fibonacci ? "golden ratio gives Fibonacci ratios" : "mismatch");
}

void intersection_calculus() {
  using namespace parabend::cohomology;
  const CohClass h{1, 0}, F{0, 1};
  bool basis = true, contracts = true, cones = true, chamber = true;

  for (long d = -10; d <= 10; ++d) {
    const IntersectionForm form{d};
    if (intersect(h, F, form) != 1.0 || intersect(F, F, form) != 0.0 ||
        intersect(h, h, form) != static_cast<double>(d))
      basis = false;
    if (signature(form) != std::pair<int, int>(1, 1)) basis = false;
  }

  Rng rng(kSeed ^ 13);
  for (int trial = 0; trial < 300; ++trial) {
    const IntersectionForm form{rng.uniform_int(-10, 10)};
    CohClass w{1.0, std::abs(static_cast<double>(form.d)) + rng.uniform(0.5, 2.0)};
    const CohClass a{rng.uniform(-3, 3), rng.uniform(-3, 3)};
    const CohClass ap = selfdual_part(a, w, form);
    if ((selfdual_part(ap, w, form) - ap).norm() > 1e-10) contracts = false;
    if (std::abs(intersect(a - ap, w, form)) > 1e-10) contracts = false;
    if (intersect(ap, ap, form) < -1e-10) contracts = false;
    if (intersect(a - ap, a - ap, form) > 1e-10) contracts = false;
  }

  for (long d : {-5L, 0L, 9L}) {
    const IntersectionForm form{d};
    const auto iota = standard_involution(form);
    std::vector<CohClass> samples;
    for (int i = 0; i < 1000; ++i) samples.push_back({rng.uniform(-5, 5), rng.uniform(-5, 5)});
    const auto rep = antipodal_check(iota, form, samples);
    if (!rep.cones_exchanged || rep.max_self_pairing > 1e-10) cones = false;
  }

  {
    const IntersectionForm form{0};
    const CohClass omega = h + F;
    for (double s : {-2.0, -0.1}) {
      const double required = scalar_pairing_required(s, omega, form);
      const CohClass l2c1 = (required / intersect(omega, omega, form)) * omega;
      if (!chamber_condition(l2c1, omega, form).satisfied) chamber = false;
    }
    const CohClass zero{0, 0};  // s = 0
    if (chamber_condition(zero, omega, form).satisfied) chamber = false;
  }

  criterion("intersection calculus", basis && contracts && cones && chamber,
            "basis, projection, light cones, chamber sign");
}

void bj_pairing(const std::vector<cap::CapProfile>& profiles) {
  double integer_dev = 0.0, agree = 0.0;
  for (const auto& p : profiles) {
    const auto pairing = cap::chern_pairing(p);
    integer_dev = std::max(integer_dev, std::abs(std::abs(pairing.quadrature) - 1.0));
    agree = std::max(agree, std::abs(pairing.quadrature - pairing.stokes));
  }
  criterion("B_j Chern pairing", integer_dev <= 1e-9 && agree <= 1e-9,
            "integer dev " + fmt(integer_dev) + ", route dev " + fmt(agree));
}

void stability_suite() {
  using namespace parabend::bundles;
  bool pass = true;

  const auto pt = [](const char* l, Rational a1, Rational a2) {
    return ParabolicPoint{l, a1, a2};
  };
  ParabolicBundle e;
  e.degree = 0;
  e.base.points = {pt("P", {0, 1}, {1, 2})};
  pass = pass && par_degree(e) == Rational(1, 2) && slope(e) == Rational(1, 4);
  pass = pass && sub_slope(e, SubLineData{0, {{"P", true}}}) == Rational(1, 2);
  pass = pass && stability_verdict(e, {SubLineData{0, {{"P", true}}}}) == Verdict::kUnstable;
  pass = pass && stability_verdict(e, {SubLineData{-1, {{"P", true}}}}) == Verdict::kStable;

  ParabolicBundle three_halves;
  three_halves.degree = 1;
  three_halves.base.points = {pt("P", {1, 4}, {1, 4})};
  const auto [norm, log] = normalize_degree_zero(three_halves);
  pass = pass && par_degree(norm) == Rational(0) && log.tensor_degree == -1 &&
         log.added.size() == 1 && log.added.front().alpha1 == Rational(1, 4);

  Rng rng(kSeed ^ 15);
  for (int trial = 0; trial < 100; ++trial) {
    ParabolicBundle eb;
    eb.degree = rng.uniform_int(-4, 4);
    const int npts = static_cast<int>(rng.uniform_int(0, 3));
    for (int i = 0; i < npts; ++i) {
      const long den = rng.uniform_int(2, 9);
      const long n1 = rng.uniform_int(0, den - 1);
      const long n2 = rng.uniform_int(n1, den - 1);
      eb.base.points.push_back(
          pt(("P" + std::to_string(i)).c_str(), Rational(n1, den), Rational(n2, den)));
    }
    std::vector<SubLineData> certs;
    for (int k = 0; k < 3; ++k) {
      SubLineData sub;
      sub.degree = rng.uniform_int(-2, 2);
      for (const auto& q : eb.base.points)
        if (!q.trivial()) sub.flag_choice[q.label] = rng.uniform() < 0.5;
      certs.push_back(sub);
    }
    const auto before = stability_verdict(eb, certs);
    const auto [nb, lg] = normalize_degree_zero(eb);
    std::vector<SubLineData> moved;
    for (const auto& cert : certs) moved.push_back(transform_certificate(cert, lg));
    if (par_degree(nb) != Rational(0) || stability_verdict(nb, moved) != before) pass = false;
  }

  criterion("stability suite with normalization", pass,
            "exact rational examples and transported verdicts");
}

}  // namespace

int main() {
  std::printf("acceptance criteria\n");
  const auto profiles = build_profiles(8);

  model_scalar_curvature();
  mean_curvature(profiles);
  cap_curvature_lemma(profiles);
  profile_feasibility(profiles);
  volume_control(profiles);
  chern_holonomy();
  cover_isometry();
  killing_invariance();
  poincare_inequality();
  spectral_gap(profiles);
  mode_gaps();
  continued_fractions();
  intersection_calculus();
  bj_pairing(profiles);
  stability_suite();

  std::printf("%d/%d criteria passed\n", g_index - g_failures, g_index);
  return g_failures == 0 ? 0 : 1;
}
