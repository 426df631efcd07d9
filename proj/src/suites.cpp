#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "parabend/bundles.hpp"
#include "parabend/cap.hpp"
#include "parabend/cohomology.hpp"
#include "parabend/geometry.hpp"
#include "parabend/quadrature.hpp"
#include "parabend/report.hpp"
#include "parabend/spectral.hpp"

namespace parabend::report {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct SuiteBuilder {
  const RunConfig& cfg;
  std::string suite;
  std::vector<CheckResult> results;

  void abs(const std::string& id, double computed, double expected, double tol, Provenance prov,
           const std::string& anchor) {
    results.push_back(make_check(id, suite, computed, expected, tol, CheckKind::kAbsolute, prov,
                                 anchor));
  }
  void lower(const std::string& id, double computed, double bound, double tol, Provenance prov,
             const std::string& anchor) {
    results.push_back(make_check(id, suite, computed, bound, tol, CheckKind::kLowerBound, prov,
                                 anchor));
  }
  void boolean(const std::string& id, bool value, bool expected, Provenance prov,
               const std::string& anchor) {
    abs(id, value ? 1.0 : 0.0, expected ? 1.0 : 0.0, 0.5, prov, anchor);
  }
};

geometry::ParabolicEnd end_from(const RunConfig& cfg, double c) {
  geometry::ParabolicEnd end;
  end.alpha1 = cfg.alpha1.to_double();
  end.alpha2 = cfg.alpha2.to_double();
  end.a = cfg.end_a;
  end.c = c;
  return end;
}

std::vector<geometry::Vec4> sample_points(Rng& rng, int n) {
  std::vector<geometry::Vec4> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double t = rng.uniform(0.3, 2.5);
    const double theta = rng.uniform(0.0, 2.0 * kPi);
    const double rho = 0.8 * std::sqrt(rng.uniform());
    const double psi = rng.uniform(0.0, 2.0 * kPi);
    pts.emplace_back(t, theta, rho * std::cos(psi), rho * std::sin(psi));
  }
  return pts;
}

std::ofstream open_table(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  std::ofstream out(cfg.out_dir + "/" + name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + cfg.out_dir + "/" + name);
  return out;
}

// ---------------------------------------------------------------- stability

void run_stability(SuiteBuilder& b) {
  using namespace parabend::bundles;

  const auto point = [](const std::string& label, Rational a1, Rational a2) {
    return ParabolicPoint{label, a1, a2};
  };
  const auto bundle_with = [&](long deg, std::vector<ParabolicPoint> pts) {
    ParabolicBundle e;
    e.degree = deg;
    e.base.genus = 0;
    e.base.points = std::move(pts);
    return e;
  };

  {
    const auto e = bundle_with(0, {point("P1", {0, 1}, {1, 2})});
    b.abs("par_degree.nontrivial", par_degree(e).to_double(), 0.5, 0.0, Provenance::kTrivial,
          "deg par = deg E + sum d_j alpha_j");
    b.abs("slope.nontrivial", slope(e).to_double(), 0.25, 0.0, Provenance::kTrivial,
          "mu = deg par / 2");
  }
  {
    const auto e = bundle_with(-1, {point("P1", {1, 2}, {1, 2})});
    b.abs("par_degree.trivial_mult2", par_degree(e).to_double(), 0.0, 0.0, Provenance::kTrivial,
          "trivial point counts its weight twice");
  }
  b.abs("par_degree.empty", par_degree(bundle_with(3, {})).to_double(), 3.0, 0.0,
        Provenance::kTrivial, "empty weight sum");
  {
    const auto e = bundle_with(2, {point("P1", {1, 4}, {3, 4})});
    b.abs("slope.weighted", slope(e).to_double(), 1.5, 0.0, Provenance::kTrivial,
          "(2 + 1/4 + 3/4) / 2");
  }

  {
    const auto e = bundle_with(0, {point("P1", {0, 1}, {1, 2})});
    SubLineData flag_line{0, {{"P1", true}}};
    SubLineData off_line{0, {{"P1", false}}};
    b.abs("sub_slope.flag", sub_slope(e, flag_line).to_double(), 0.5, 0.0, Provenance::kTrivial,
          "line through the flag inherits alpha2");
    b.abs("sub_slope.generic", sub_slope(e, off_line).to_double(), 0.0, 0.0, Provenance::kTrivial,
          "generic line inherits alpha1");
    b.boolean("stability.unstable", stability_verdict(e, {flag_line}) == Verdict::kUnstable, true,
              Provenance::kDerived, "mu(L) = 1/2 > mu(E) = 1/4");
    SubLineData deep{-1, {{"P1", true}}};
    b.boolean("stability.stable_rel", stability_verdict(e, {deep}) == Verdict::kStable, true,
              Provenance::kDerived, "mu(L) = -1/2 < 1/4, relative to certificate");
  }
  {
    const auto e = bundle_with(0, {});
    b.boolean("stability.semistable", stability_verdict(e, {SubLineData{0, {}}}) ==
                                          Verdict::kSemistableOnly,
              true, Provenance::kTrivial, "equality mu(L) = mu(E) = 0");
  }
  {
    const auto e = bundle_with(0, {point("P1", {1, 3}, {1, 3})});
    b.abs("sub_slope.trivial_point", sub_slope(e, SubLineData{-1, {}}).to_double(), -2.0 / 3.0,
          0.0, Provenance::kTrivial, "-1 + 1/3 at a trivial point");
  }

  {
    const auto e = bundle_with(0, {point("P1", {1, 2}, {1, 2})});
    b.boolean("polystable.equal_slopes",
              is_polystable_decomposable(SubLineData{0, {}}, SubLineData{0, {}}, e), true,
              Provenance::kTrivial, "equal slopes at a trivial point");
    const auto e2 = bundle_with(0, {point("P1", {0, 1}, {1, 2})});
    b.boolean("polystable.unequal",
              is_polystable_decomposable(SubLineData{0, {{"P1", true}}},
                                         SubLineData{0, {{"P1", false}}}, e2),
              false, Provenance::kTrivial, "slopes 1/2 vs 0");
    b.boolean("polystable.shifted",
              is_polystable_decomposable(SubLineData{-1, {{"P1", true}}},
                                         SubLineData{0, {{"P1", false}}}, e2),
              false, Provenance::kDerived, "slopes -1/2 vs 0");
  }

  {
    // par degree 3/2: twist once, then one trivial point of weight 1/4
    const auto e = bundle_with(1, {point("P1", {1, 4}, {1, 4})});
    const auto [norm, log] = normalize_degree_zero(e);
    b.abs("normalize.par_degree_zero", par_degree(norm).to_double(), 0.0, 0.0,
          Provenance::kDerived, "deg par E' = 0 exactly");
    b.abs("normalize.tensor_degree", static_cast<double>(log.tensor_degree), -1.0, 0.0,
          Provenance::kDerived, "twist by degree -1");
    b.abs("normalize.added_weight",
          log.added.empty() ? -1.0 : log.added.front().alpha1.to_double(), 0.25, 0.0,
          Provenance::kDerived, "one trivial point of weight deficit/2");
  }
  {
    const auto e = bundle_with(0, {});
    const auto [norm, log] = normalize_degree_zero(e);
    b.boolean("normalize.identity", log.tensor_degree == 0 && log.added.empty() &&
                                        par_degree(norm) == Rational(0),
              true, Provenance::kTrivial, "already at degree zero");
  }

  {
    // verdicts survive the normalization when certificates are transported
    Rng rng(b.cfg.seed ^ 0x5741ULL);
    bool all_match = true;
    for (int trial = 0; trial < 40; ++trial) {
      ParabolicBundle e;
      e.degree = rng.uniform_int(-3, 3);
      e.base.genus = 1;
      const int npts = static_cast<int>(rng.uniform_int(1, 3));
      for (int i = 0; i < npts; ++i) {
        const long den = rng.uniform_int(2, 8);
        const long n1 = rng.uniform_int(0, den - 1);
        const long n2 = rng.uniform_int(n1, den - 1);
        e.base.points.push_back({"P" + std::to_string(i + 1), Rational(n1, den),
                                 Rational(n2, den)});
      }
      std::vector<SubLineData> certs;
      for (int k = 0; k < 3; ++k) {
        SubLineData sub;
        sub.degree = rng.uniform_int(-2, 2);
        for (const auto& p : e.base.points)
          if (!p.trivial()) sub.flag_choice[p.label] = rng.uniform() < 0.5;
        certs.push_back(sub);
      }
      const auto before = stability_verdict(e, certs);
      const auto [norm, log] = normalize_degree_zero(e);
      std::vector<SubLineData> moved;
      for (const auto& c : certs) moved.push_back(transform_certificate(c, log));
      if (stability_verdict(norm, moved) != before) all_match = false;
    }
    b.boolean("normalize.verdict_invariant", all_match, true, Provenance::kDerived,
              "verdict(E, C) = verdict(E', C') for transported certificates");
  }

  b.boolean("hyperbolic.g0k3", is_hyperbolic(MarkedSurface{0, {{"P1", {}, {}}, {"P2", {}, {}},
                                                               {"P3", {}, {}}}}),
            true, Provenance::kPaper, "2g - 2 + k > 0");
  b.boolean("hyperbolic.g0k2",
            is_hyperbolic(MarkedSurface{0, {{"P1", {}, {}}, {"P2", {}, {}}}}), false,
            Provenance::kTrivial, "2g - 2 + k = 0");
  b.boolean("hyperbolic.g2k0", is_hyperbolic(MarkedSurface{2, {}}), true, Provenance::kTrivial,
            "2g - 2 = 2");

  {
    const auto id = puncture_holonomy(ParabolicPoint{"P", {0, 1}, {0, 1}});
    b.abs("holonomy.puncture_identity", (id - Eigen::Matrix2cd::Identity()).norm(), 0.0, 1e-15,
          Provenance::kTrivial, "zero weights give the identity");
    const auto half = puncture_holonomy(ParabolicPoint{"P", {0, 1}, {1, 2}});
    Eigen::Matrix2cd expect;
    expect << 1.0, 0.0, 0.0, -1.0;
    b.abs("holonomy.puncture_half", (half - expect).norm(), 0.0, 1e-14, Provenance::kTrivial,
          "e^{i pi} = -1");
    const auto quarter = puncture_holonomy(ParabolicPoint{"P", {1, 4}, {3, 4}});
    Eigen::Matrix2cd expect_q = Eigen::Matrix2cd::Zero();
    expect_q(0, 0) = std::complex<double>(0.0, 1.0);
    expect_q(1, 1) = std::complex<double>(0.0, -1.0);
    b.abs("holonomy.puncture_quarter", (quarter - expect_q).norm(), 0.0, 1e-14,
          Provenance::kTrivial, "quarter rotations");
  }

  {
    Eigen::Matrix2cd diag;
    diag << 1.0, 0.0, 0.0, -1.0;
    Eigen::Matrix2cd swap;
    swap << 0.0, 1.0, 1.0, 0.0;
    b.boolean("irreducible.pair", is_irreducible(UnitaryRepData{{diag, swap}}), true,
              Provenance::kDerived, "no common eigenline of diag(1,-1) and the swap");
    b.boolean("irreducible.single_diag", is_irreducible(UnitaryRepData{{diag}}), false,
              Provenance::kTrivial, "coordinate axes stay invariant");
    b.boolean("irreducible.identity",
              is_irreducible(UnitaryRepData{{Eigen::Matrix2cd::Identity()}}), false,
              Provenance::kTrivial, "scalar generators");
  }

  {
    // additivity of the parabolic degree under new trivial points
    Rng rng(b.cfg.seed ^ 0xADD1ULL);
    bool additive = true;
    for (int trial = 0; trial < 25; ++trial) {
      ParabolicBundle e;
      e.degree = rng.uniform_int(-4, 4);
      const long den = rng.uniform_int(2, 9);
      const long num = rng.uniform_int(1, den - 1);
      const Rational w(num, den);
      const Rational before = par_degree(e);
      e.base.points.push_back({"Q", w, w});
      if (par_degree(e) != before + Rational(2) * w) additive = false;
    }
    b.boolean("par_degree.additive", additive, true, Provenance::kTrivial,
              "adding a trivial point of weight w adds exactly 2w");
  }
}

// ----------------------------------------------------------------- geometry

void run_geometry(SuiteBuilder& b) {
  using namespace parabend::geometry;
  const RunConfig& cfg = b.cfg;

  auto csv = open_table(cfg, "curvature.csv");
  csv << "c,t,theta,re_u,im_u,s_computed,s_expected,ricci_asymmetry,bianchi_residual\n";

  for (double c : cfg.curvature_values) {
    const ParabolicEnd end = end_from(cfg, c);
    const MetricField field = model_metric_field(end);
    Rng rng(cfg.seed ^ 0x6E0ULL);
    const auto pts = sample_points(rng, 20);
    const auto values = map_index<double>(pts.size(), cfg.exec(), [&](std::size_t i) {
      return scalar_curvature(field, pts[i], cfg.fd_step);
    });
    double worst = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      worst = std::max(worst, std::abs(values[i] - 2.0 * (c - 1.0)));
      const auto rep = curvature_report(field, pts[i], cfg.fd_step);
      char line[256];
      std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.3g,%.3g\n",
                    c, pts[i][0], pts[i][1], pts[i][2], pts[i][3], values[i], 2.0 * (c - 1.0),
                    rep.ricci_asymmetry, rep.bianchi_residual);
      csv << line;
    }
    char id[64];
    std::snprintf(id, sizeof(id), "scalar_curvature.c_%g", c);
    b.abs(id, worst, 0.0, cfg.tol_scalar, Provenance::kPaper, "s = 2(c - 1) at every point");
  }

  const ParabolicEnd end = end_from(cfg, cfg.fiber_curvature);
  const MetricField field = model_metric_field(end);
  Rng rng(cfg.seed ^ 0x6E1ULL);

  {
    // positive definite + Killing field + X norm, over the sample set
    const auto pts = sample_points(rng, cfg.sample_points);
    double killing = 0.0, spd = 1.0, xnorm_dev = 0.0, dclosed = 0.0;
    const auto dev = map_index<double>(pts.size(), cfg.exec(), [&](std::size_t i) {
      const VectorField vf = [&end](const Vec4& x) {
        return Vec4(0.0, 1.0, -end.alpha() * x[3], end.alpha() * x[2]);
      };
      return lie_derivative_metric(field, vf, pts[i], cfg.fd_step).cwiseAbs().maxCoeff();
    });
    for (std::size_t i = 0; i < pts.size(); ++i) {
      killing = std::max(killing, dev[i]);
      const Mat4 g = field(pts[i]);
      Eigen::LLT<Mat4> llt(g);
      if (llt.info() != Eigen::Success) spd = 0.0;
      const Vec4 X(0.0, 1.0, -end.alpha() * pts[i][3], end.alpha() * pts[i][2]);
      xnorm_dev = std::max(xnorm_dev,
                           std::abs(X.dot(g * X) - std::exp(-2.0 * pts[i][0])));
      dclosed = std::max(dclosed, kahler_closedness_residual(end, pts[i], cfg.fd_step));
    }
    b.abs("metric.positive_definite", spd, 1.0, 0.0, Provenance::kTrivial,
          "Cholesky succeeds at all sampled points");
    b.abs("killing.lie_derivative", killing, 0.0, cfg.tol_killing, Provenance::kPaper,
          "L_X g = 0 for X = d_theta + alpha d_theta2");
    b.abs("killing.xtheta_norm", xnorm_dev, 0.0, 1e-12, Provenance::kDerived,
          "|X|^2_g = e^{-2t}");
    b.abs("kahler.closed", dclosed, 0.0, cfg.tol_killing, Provenance::kDerived,
          "d omega = 0 by central differences");
  }

  {
    // covering map is a local isometry, three weight differences
    const double alphas[3] = {0.0, 1.0 / 3.0, 1.0 / std::sqrt(2.0)};
    const char* names[3] = {"zero", "third", "irrational"};
    for (int k = 0; k < 3; ++k) {
      ParabolicEnd e2 = end;
      e2.alpha1 = 0.0;
      e2.alpha2 = alphas[k];
      std::vector<std::pair<Complex, Complex>> samples;
      for (int i = 0; i < cfg.sample_points; ++i) {
        const double X = rng.uniform(-2.0, 2.0);
        const double Y = rng.uniform(std::exp(0.3), std::exp(2.0));
        const double rho = 0.8 * std::sqrt(rng.uniform());
        const double psi = rng.uniform(0.0, 2.0 * kPi);
        samples.emplace_back(Complex(X, Y), std::polar(rho, psi));
      }
      const auto devs = map_index<double>(samples.size(), cfg.exec(), [&](std::size_t i) {
        return pullback_metric_check(e2, samples[i].first, samples[i].second, cfg.fd_step);
      });
      double worst = 0.0;
      for (double d : devs) worst = std::max(worst, d);
      b.abs(std::string("cover.pullback_") + names[k], worst, 0.0, cfg.tol_pullback,
            Provenance::kPaper, "p* g = g_H + g_FS");
    }
  }

  {
    // deck equivariance of the covering
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const Complex xi(rng.uniform(-3.0, 3.0), rng.uniform(1.5, 6.0));
      const Complex u = std::polar(0.7 * std::sqrt(rng.uniform()), rng.uniform(0.0, 2.0 * kPi));
      const Complex deck = std::exp(Complex(0.0, -2.0 * kPi * end.alpha()));
      const auto lhs = covering_map(end, xi + 2.0 * kPi, deck * u);
      const auto rhs = covering_map(end, xi, u);
      worst = std::max(worst, std::abs(lhs.first - rhs.first));
      worst = std::max(worst, std::abs(lhs.second - rhs.second));
    }
    b.abs("cover.deck_equivariance", worst, 0.0, 1e-12, Provenance::kDerived,
          "p(xi + 2pi, e^{-2 pi i alpha} u) = p(xi, u)");
  }

  {
    // cusp coordinate roundtrip
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double t = rng.uniform(0.0, 3.0);
      const double theta = rng.uniform(-kPi, kPi);
      const auto z = cusp_coordinates_inverse(t, theta);
      const auto [t2, theta2] = cusp_coordinates(z, end.a * 0.5);
      worst = std::max({worst, std::abs(t - t2), std::abs(theta - theta2)});
    }
    b.abs("cusp.roundtrip", worst, 0.0, 1e-12, Provenance::kTrivial,
          "t = ln(-ln|z|) inverts exactly");
  }

  {
    // Chern connection holonomy over a spread of weight pairs
    Rng wrng(cfg.seed ^ 0xC0FFULL);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const long den = wrng.uniform_int(2, 12);
      const long n1 = wrng.uniform_int(0, den - 1);
      const long n2 = wrng.uniform_int(n1, den - 1);
      const double a1 = static_cast<double>(n1) / den;
      const double a2 = static_cast<double>(n2) / den;
      const auto hol = chern_connection_holonomy(a1, a2, 0.2, cfg.holonomy_steps);
      Eigen::Matrix2cd expect = Eigen::Matrix2cd::Zero();
      expect(0, 0) = std::exp(Complex(0.0, -2.0 * kPi * a1));
      expect(1, 1) = std::exp(Complex(0.0, -2.0 * kPi * a2));
      worst = std::max(worst, (hol - expect).norm());
    }
    b.abs("holonomy.chern_transport", worst, 0.0, cfg.tol_holonomy, Provenance::kPaper,
          "transport of d + diag(alpha) dz/z gives diag(e^{-2 pi i alpha})");
  }

  {
    // q-fold factorization data for the configured weights
    const Rational alpha = cfg.alpha2 - cfg.alpha1;
    try {
      const auto data = qfold_cover_data(alpha);
      std::vector<std::pair<Complex, Complex>> samples;
      for (int i = 0; i < 20; ++i)
        samples.emplace_back(Complex(rng.uniform(-2.0, 2.0), rng.uniform(1.5, 5.0)),
                             std::polar(0.5, rng.uniform(0.0, 2.0 * kPi)));
      b.abs("qfold.composite", qfold_composite_residual(end, data, samples), 0.0, 1e-12,
            Provenance::kPaper, "pi o p = pi_1 = pi^q o p~");
      b.abs("qfold.deck_order", std::abs(std::pow(data.deck, static_cast<double>(data.q)) -
                                         Complex(1.0, 0.0)),
            0.0, 1e-12, Provenance::kTrivial, "deck rotation has order q");
    } catch (const DomainError&) {
      b.boolean("qfold.requires_rational", true, true, Provenance::kTrivial,
                "irrational weight difference has no finite factorization");
    }
  }

  {
    // fiber area: the curvature-c sphere measures 4 pi / c; quadrature over
    // |u| <= R plus the exact tail 4 pi / (c (1 + R^2))
    const double c = cfg.fiber_curvature;
    const double R = 60.0;
    const double area =
        adaptive_simpson(
            [c](double r) {
              return 2.0 * kPi * r * (4.0 / c) / ((1.0 + r * r) * (1.0 + r * r));
            },
            0.0, R, 1e-12) +
        4.0 * kPi / (c * (1.0 + R * R));
    b.abs("fiber.area", area, 4.0 * kPi / c, 1e-9, Provenance::kDerived,
          "vol(CP^1, curvature c) = 4 pi / c");
  }
}

// ---------------------------------------------------------------- smoothing

void run_smoothing(SuiteBuilder& b) {
  using namespace parabend::cap;
  const RunConfig& cfg = b.cfg;
  const double alpha = (cfg.alpha2 - cfg.alpha1).to_double();
  const double c = cfg.fiber_curvature;

  auto csv = open_table(cfg, "profiles.csv");
  csv << "j,delta,eps,T,min_ratio,max_c2_residual,min_sectional\n";

  std::vector<CapProfile> profiles;
  for (int j : cfg.j_list) profiles.push_back(build_cap_profile(j, cfg.delta_scale * std::exp(-j),
                                                                cfg.cap_eps));

  double worst_ratio = 2.0, worst_mono = 1.0, worst_env = 0.0, worst_c2 = 0.0, worst_sec = 1e9;
  for (const auto& p : profiles) {
    double min_ratio = 1e9, min_mono = 1e9, env = 0.0, min_sec = 1e9;
    double prev = 1.0;
    const int n = 10000;
    const double hi = p.T() - 1e-7;
    for (int i = 0; i <= n; ++i) {
      const double t = hi * i / n;
      const double ratio = -p.dphi(t) / p.phi(t);
      min_ratio = std::min(min_ratio, ratio);
      min_mono = std::min(min_mono, ratio - prev);
      prev = ratio;
      env = std::max(env, p.phi(t) - std::exp(-t));
      min_sec = std::min(min_sec, -p.ddphi(t) / p.phi(t));
    }
    double c2 = 0.0;
    for (std::size_t k = 0; k + 1 < p.pieces().size(); ++k) {
      const double t = p.pieces()[k].t1;
      c2 = std::max({c2, std::abs(p.pieces()[k].eval(t) - p.pieces()[k + 1].eval(t)),
                     std::abs(p.pieces()[k].deriv(t) - p.pieces()[k + 1].deriv(t)),
                     std::abs(p.pieces()[k].deriv2(t) - p.pieces()[k + 1].deriv2(t))});
    }
    char line[160];
    std::snprintf(line, sizeof(line), "%d,%.17g,%.17g,%.17g,%.17g,%.3g,%.17g\n", p.j(),
                  p.delta(), p.eps(), p.T(), min_ratio, c2, min_sec);
    csv << line;
    worst_ratio = std::min(worst_ratio, min_ratio);
    worst_mono = std::min(worst_mono, min_mono);
    worst_env = std::max(worst_env, env);
    worst_c2 = std::max(worst_c2, c2);
    worst_sec = std::min(worst_sec, min_sec);
  }
  b.lower("profile.ratio_min", worst_ratio, 1.0, 1e-9, Provenance::kPaper,
          "-phi'/phi stays >= 1");
  b.lower("profile.ratio_monotone", worst_mono, 0.0, 1e-9, Provenance::kPaper,
          "-phi'/phi nondecreasing");
  b.abs("profile.under_envelope", worst_env, 0.0, 1e-12, Provenance::kPaper, "phi <= e^{-t}");
  b.abs("profile.c2_residual", worst_c2, 0.0, 1e-9, Provenance::kTrivial,
        "C^2 continuity at breakpoints");
  b.lower("profile.sectional_min", worst_sec, -1.0, 1e-9, Provenance::kPaper,
          "-phi''/phi >= -1 everywhere");

  {
    // mean curvature plateaux
    double cusp_dev = 0.0, cone_dev = 0.0;
    for (const auto& p : profiles) {
      for (double t : {0.25 * p.j(), 0.5 * p.j(), static_cast<double>(p.j())}) {
        cusp_dev = std::max(cusp_dev,
                            std::abs(geometry::mean_curvature_slice(p.warp(), t) - 0.5));
      }
      const double t0 = p.pieces().back().t0;
      const double phi2 = p.pieces().back().coeffs[0];
      for (double frac : {0.2, 0.5, 0.8}) {
        const double t = t0 + frac * (p.T() - t0);
        // T - t in the cancellation-free form phi2 - (t - t0)
        const double expected = 0.5 / (phi2 - (t - t0));
        cone_dev = std::max(cone_dev, std::abs(geometry::mean_curvature_slice(p.warp(), t) -
                                               expected) /
                                          expected);
      }
    }
    b.abs("mean_curvature.cusp", cusp_dev, 0.0, 0.0, Provenance::kPaper,
          "h = 1/2 on the cusp region");
    b.abs("mean_curvature.cone", cone_dev, 0.0, 1e-12, Provenance::kPaper,
          "h = 1/(2(T - t)) on the terminal region");
  }

  {
    // scalar curvature of the capped metric against the 4-D pipeline: six
    // points per j in the wide regions; four inside the transition bubble,
    // where the step must shrink with the piece width and the comparison is
    // relative (the curvature there grows like e^{2j})
    double worst_wide = 0.0, worst_bubble = 0.0;
    for (const auto& p : profiles) {
      if (p.j() > 6) continue;
      Rng rng(cfg.seed ^ static_cast<std::uint64_t>(p.j()));
      const MetricField capped = cap_metric_field(p, alpha, c);
      const double collar_lo = p.j() + 1.0 - 5.0 * cfg.fd_step;
      const double bubble_hi = p.pieces().back().t0;  // start of the cone
      for (int i = 0; i < 6; ++i) {
        double t = rng.uniform(0.5, p.T() - 0.05);
        while (t > collar_lo - 5.0 * cfg.fd_step && t < bubble_hi + 5.0 * cfg.fd_step)
          t = rng.uniform(0.5, p.T() - 0.05);
        const double rho = 0.7 * std::sqrt(rng.uniform());
        const double psi = rng.uniform(0.0, 2.0 * kPi);
        const geometry::Vec4 x(t, rng.uniform(0.0, 2.0 * kPi), rho * std::cos(psi),
                               rho * std::sin(psi));
        const double fd = geometry::scalar_curvature(capped, x, cfg.fd_step);
        worst_wide = std::max(worst_wide, std::abs(fd - cap_scalar_curvature(p, c, t)));
      }
      const MetricField product = cap_metric_field(p, 0.0, c);
      for (int i = 0; i < 4; ++i) {
        const auto& piece = p.pieces()[1 + (i % 2)];  // bend, then plunge
        const double width = piece.t1 - piece.t0;
        const double t = piece.t0 + width * rng.uniform(0.25, 0.75);
        const double h = width / 30.0;
        const geometry::Vec4 x(t, rng.uniform(0.0, 2.0 * kPi), 0.2, 0.1);
        const double fd = geometry::scalar_curvature(product, x, h);
        const double exact = cap_scalar_curvature(p, c, t);
        worst_bubble = std::max(worst_bubble,
                                std::abs(fd - exact) / std::max(1.0, std::abs(exact)));
      }
    }
    b.abs("cap.scalar_cross_check", worst_wide, 0.0, cfg.tol_scalar, Provenance::kPaper,
          "s = 2(c - phi''/phi) matches finite differences");
    b.abs("cap.scalar_cross_check_bubble", worst_bubble, 0.0, cfg.tol_scalar,
          Provenance::kPaper, "same identity across the high-curvature bubble, relative");
  }

  {
    // glued metric endpoints and volumes
    const geometry::ParabolicEnd end = end_from(cfg, c);
    const MetricField base = geometry::model_metric_field(end);
    double endpoint_dev = 0.0;
    for (const auto& p : profiles) {
      const auto glued = glue_metric(base, p, alpha, c);
      const geometry::Vec4 before(p.j() - 1.0, 0.3, 0.2, 0.1);
      const geometry::Vec4 after(p.j() + 1.0, 0.3, 0.2, 0.1);
      endpoint_dev = std::max(endpoint_dev,
                              (glued.field(before) - base(before)).cwiseAbs().maxCoeff());
      const MetricField capped = cap_metric_field(p, alpha, c);
      endpoint_dev = std::max(endpoint_dev,
                              (glued.field(after) - capped(after)).cwiseAbs().maxCoeff());
    }
    b.abs("glue.endpoints", endpoint_dev, 0.0, 0.0, Provenance::kTrivial,
          "g_j equals g below the collar and the capped metric above it");

    double vol_excess = 0.0;
    for (const auto& p : profiles)
      vol_excess = std::max(vol_excess, end_volume(p, 0.0, c) - end_volume_model(0.0, c));
    b.abs("volume.contracted", std::max(vol_excess, 0.0), 0.0, 1e-10, Provenance::kPaper,
          "capped volume never exceeds the model volume");

    int K = 1;
    const double target = 1e-3;
    while (K < 60) {
      double worst = end_volume_model(K, c);
      for (const auto& p : profiles) worst = std::max(worst, end_volume(p, K, c));
      if (worst <= target) break;
      ++K;
    }
    b.abs("volume.uniform_tail", K < 60 ? 1.0 : 0.0, 1.0, 0.0, Provenance::kPaper,
          "one compact K pushes every end volume below 1e-3 (K = " + std::to_string(K) + ")");
  }

  {
    // B_j connection and curvature split
    double plateau = 0.0, trivialization = 0.0, bound = 0.0;
    for (const auto& p : profiles) {
      plateau = std::max(plateau, std::abs(bj_connection_coeff(p, p.j() - 0.5)));
      trivialization = std::max(trivialization,
                                std::abs(bj_connection_coeff(p, p.T() - 1e-9) - 1.0));
      const int n = 4000;
      for (int i = 0; i <= n; ++i) {
        const double t = (p.T() - 1e-7) * i / n;
        bound = std::max(bound, bj_curvature_decomposition(p, t).remainder_norm);
      }
    }
    b.abs("bj.vanishes_below_collar", plateau, 0.0, 0.0, Provenance::kTrivial,
          "chi = 0 kills the form for t <= j");
    b.abs("bj.trivializes_at_cap", trivialization, 0.0, 1e-12, Provenance::kPaper,
          "coefficient +1 where phi' = -1");
    // sup |chi'| for the ramp rescaled to [0, 1/2] is 2 * 15/8
    b.abs("bj.remainder_bound", std::max(bound - 3.75, 0.0), 0.0, 1e-12, Provenance::kDerived,
          "|F^b| <= sup|chi'| sup|phi'/phi| uniformly in j");

    double int_dev = 0.0, stokes_dev = 0.0;
    for (const auto& p : profiles) {
      const auto pairing = chern_pairing(p);
      int_dev = std::max(int_dev, std::abs(pairing.quadrature - pairing.stokes));
      stokes_dev = std::max(stokes_dev, std::abs(std::abs(pairing.stokes) - 1.0));
    }
    b.abs("bj.pairing_integer", stokes_dev, 0.0, cfg.tol_pairing, Provenance::kDerived,
          "(i/2pi) int F_{B_j} has magnitude 1");
    b.abs("bj.pairing_quadrature", int_dev, 0.0, cfg.tol_pairing, Provenance::kDerived,
          "quadrature agrees with the Stokes evaluation");
  }
}

// ----------------------------------------------------------------- spectrum

void run_spectrum(SuiteBuilder& b) {
  using namespace parabend::spectral;
  const RunConfig& cfg = b.cfg;

  auto csv = open_table(cfg, "spectrum.csv");
  csv << "j,mode,lambda1\n";

  {
    double min_lambda = 1e9, refine_dev = 0.0;
    for (int j : cfg.j_list) {
      if (j > 6) continue;
      const auto profile = cap::build_cap_profile(j, cfg.delta_scale * std::exp(-j), cfg.cap_eps);
      const auto coarse = lambda1_cap_surface(profile, cfg.max_mode, cfg.spectral_grid,
                                              cfg.exec());
      const auto fine = lambda1_cap_surface(profile, cfg.max_mode, 2 * cfg.spectral_grid,
                                            cfg.exec());
      for (const auto& ms : coarse.modes) {
        char line[96];
        std::snprintf(line, sizeof(line), "%d,%d,%.17g\n", j, ms.mode, ms.first_nonzero);
        csv << line;
      }
      min_lambda = std::min(min_lambda, fine.lambda1);
      refine_dev = std::max(refine_dev, std::abs(fine.lambda1 - coarse.lambda1));
    }
    b.lower("lambda1.uniform_witness", min_lambda, 0.05, 0.0, Provenance::kDerived,
            "first eigenvalue stays above a j-independent constant");
    b.abs("lambda1.grid_stable", refine_dev, 0.0, cfg.tol_spectral, Provenance::kTrivial,
          "grid doubling moves lambda1 by < 1e-3");

    WarpFn sphere{[](double t) { return std::sin(t); }, [](double t) { return std::cos(t); },
                  [](double t) { return -std::sin(t); }};
    const auto sph = revolution_lambda1(sphere, 0.0, kPi, 2, 2 * cfg.spectral_grid, cfg.exec());
    b.abs("lambda1.sphere_sanity", sph.lambda1, 2.0, 1e-2, Provenance::kDerived,
          "round sphere has lambda1 = 2");
  }

  {
    // weighted Poincare inequality, both hypothesis branches
    Rng rng(cfg.seed ^ 0x90CULL);
    WarpFn cusp{[](double t) { return std::exp(-t); }, [](double t) { return -std::exp(-t); },
                [](double t) { return std::exp(-t); }};
    WeightedInterval above{0.0, 5.0, cusp, 0.5, 0.0};
    WeightedInterval below{0.0, 5.0, cusp, 0.7, 0.9};  // delta > h0 >= h = 1/2

    double min_margin = 1e9;
    for (int trial = 0; trial < 100; ++trial) {
      double a[4], w[4], ph[4];
      for (int k = 0; k < 4; ++k) {
        a[k] = rng.uniform(-1.0, 1.0);
        w[k] = rng.uniform(0.2, 2.5);
        ph[k] = rng.uniform(0.0, 2.0 * kPi);
      }
      const auto f = [=](double t) {
        double s = 0.0;
        for (int k = 0; k < 4; ++k) s += a[k] * std::sin(w[k] * t + ph[k]);
        return s;
      };
      const auto df = [=](double t) {
        double s = 0.0;
        for (int k = 0; k < 4; ++k) s += a[k] * w[k] * std::cos(w[k] * t + ph[k]);
        return s;
      };
      const auto& iv = trial % 2 == 0 ? above : below;
      min_margin = std::min(min_margin, poincare_1d_check(iv, f, df, cfg.quad_n).margin);
    }
    b.lower("poincare.random_suite", min_margin, 0.0, cfg.tol_margin, Provenance::kDerived,
            "lhs >= rhs for band-limited f on both branches");

    // equality witness f = e^{h0 t} with h = h0 and delta = 0
    const auto r = poincare_1d_check(above, [](double t) { return std::exp(0.5 * t); },
                                     [](double t) { return 0.5 * std::exp(0.5 * t); },
                                     cfg.quad_n);
    b.abs("poincare.equality_witness", r.margin, 0.0, 1e-8, Provenance::kDerived,
          "f = e^{h0 t} saturates the inequality at delta = 0");
  }

  {
    // rational mode gaps over all coprime pairs up to max_q
    double worst = 0.0;
    for (long q = 1; q <= cfg.mode_gap_max_q; ++q)
      for (long r = 0; r < q; ++r) {
        if (std::gcd(r, q) != 1) continue;
        const Rational gap = mode_gap_rational(r, q, cfg.exec());
        worst = std::max(worst, std::abs((gap - Rational(1, q)).to_double()));
      }
    b.abs("mode_gap.rational_exact", worst, 0.0, 0.0, Provenance::kPaper,
          "min |k + (r/q) l| = 1/q for coprime r, q");
  }

  {
    nlohmann::ordered_json gaps;
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    const double irr[3] = {golden, 1.0 / std::sqrt(2.0), kPi - 3.0};
    const char* names[3] = {"golden", "inv_sqrt2", "pi_frac"};
    double min_eps = 1e9;
    bool monotone = true;
    for (int k = 0; k < 3; ++k) {
      double prev = 1e18;
      for (int K = 1; K <= 20; ++K) {
        const auto r = epsilon_for_K(irr[k], K, cfg.exec());
        min_eps = std::min(min_eps, r.eps);
        if (r.eps > prev + 1e-18) monotone = false;
        prev = r.eps;
        gaps[names[k]].push_back(r.eps);
      }
    }
    b.lower("epsilon.irrational_positive", min_eps, 1e-300, 0.0, Provenance::kPaper,
            "epsilon(K) > 0 for irrational weights, K <= 20");
    b.boolean("epsilon.nonincreasing", monotone, true, Provenance::kTrivial,
              "epsilon(K) cannot grow with the window");
    const auto degenerate = epsilon_for_K(0.5, 3, cfg.exec());
    b.boolean("epsilon.rational_degenerate", degenerate.degenerate, true, Provenance::kTrivial,
              "alpha = 1/2 resonates at (1, -2)");

    // continued-fraction convergents: quality bound and shrinking gaps
    bool quality = true, gaps_shrink = true;
    double prev_gap = 2.0;
    const auto conv = cf_convergents(golden, 12);
    for (const auto& [r, q] : conv) {
      if (std::abs(golden - static_cast<double>(r) / q) > 1.0 / (static_cast<double>(q) * q))
        quality = false;
      const double gap = mode_gap_rational(r % q == 0 ? 0 : r % q, q).to_double();
      if (gap > prev_gap + 1e-15) gaps_shrink = false;
      prev_gap = gap;
      gaps["golden_convergents"].push_back({r, q});
    }
    b.boolean("cf.quality_bound", quality, true, Provenance::kDerived,
              "|alpha - r/q| <= 1/q^2 for every convergent");
    b.boolean("cf.gaps_shrink", gaps_shrink, true, Provenance::kDerived,
              "rational gaps 1/q_j decrease along the convergents");

    std::ofstream out(cfg.out_dir + "/gaps.json", std::ios::binary);
    out << gaps.dump(2) << "\n";
  }

  {
    const auto report = mode_inequality_check(2, 5, 50, cfg.seed ^ 0x1234ULL);
    b.boolean("mode_inequality.random", report.all_hold, true, Provenance::kDerived,
              "sum |c|^2 (k + a l)^2 >= (1/q^2) sum |c|^2 off resonance");
    const auto single = xtheta_mode_action(0, 1, 0.5);
    b.abs("mode_action.single", std::norm(single), 0.25, 1e-15, Provenance::kTrivial,
          "mode (0,1) at alpha = 1/2 has ratio exactly 1/q^2");
    b.abs("mode_action.resonant", std::abs(xtheta_mode_action(1, -2, 0.5)), 0.0, 1e-15,
          Provenance::kTrivial, "mode (1,-2) resonates at alpha = 1/2");
    b.abs("mode_action.third", std::abs(xtheta_mode_action(1, 1, 1.0 / 3.0) -
                                        std::complex<double>(0.0, 4.0 / 3.0)),
          0.0, 1e-15, Provenance::kTrivial, "i (k + alpha l) = 4i/3");
  }
}

// --------------------------------------------------------------- cohomology

void run_cohomology(SuiteBuilder& b) {
  using namespace parabend::cohomology;
  const RunConfig& cfg = b.cfg;

  const CohClass h{1.0, 0.0};
  const CohClass F{0.0, 1.0};

  {
    double worst = 0.0;
    bool sig_ok = true;
    for (long d = -10; d <= 10; ++d) {
      const IntersectionForm form{d};
      worst = std::max(worst, std::abs(intersect(h, F, form) - 1.0));
      worst = std::max(worst, std::abs(intersect(F, F, form)));
      worst = std::max(worst, std::abs(intersect(h, h, form) - static_cast<double>(d)));
      if (signature(form) != std::pair<int, int>(1, 1)) sig_ok = false;
      if (std::abs(form.matrix().determinant() + 1.0) > 1e-12) sig_ok = false;
    }
    b.abs("intersection.basis_relations", worst, 0.0, 0.0, Provenance::kPaper,
          "h.F = 1, F^2 = 0, h^2 = d");
    b.boolean("intersection.signature", sig_ok, true, Provenance::kPaper,
              "signature (1,1), determinant -1, for all d in [-10, 10]");
  }

  {
    // self-dual projection contracts on random data
    Rng rng(cfg.seed ^ 0xC040ULL);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const IntersectionForm form{rng.uniform_int(-10, 10)};
      CohClass omega{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
      if (intersect(omega, omega, form) <= 0.1) {
        omega = CohClass{1.0, rng.uniform(0.5, 2.0)};  // h + s F is always positive for s > d/2
        if (intersect(omega, omega, form) <= 0.0) omega.x_F += std::abs(form.d) + 1.0;
      }
      const CohClass a{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
      const CohClass ap = selfdual_part(a, omega, form);
      const CohClass app = selfdual_part(ap, omega, form);
      worst = std::max(worst, (app - ap).norm());                          // idempotent
      worst = std::max(worst, std::abs(intersect(a - ap, omega, form)));   // residual Q-orth
      worst = std::max(worst, std::max(0.0, -intersect(ap, ap, form)));    // (a^+)^2 >= 0
      worst = std::max(worst,
                       std::max(0.0, intersect(a - ap, a - ap, form)));    // (a - a^+)^2 <= 0
      const CohClass b2{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
      const double sym = intersect(selfdual_part(b2, omega, form), a, form) -
                         intersect(b2, selfdual_part(a, omega, form), form);
      worst = std::max(worst, std::abs(sym));                              // Q-self-adjoint
    }
    b.abs("projection.contracts", worst, 0.0, 1e-9, Provenance::kDerived,
          "orthogonal projection onto the omega line");
  }

  {
    // convergence of the projections along omega_j -> omega
    const IntersectionForm form{0};
    const CohClass omega = h + F;
    std::vector<CohClass> seq;
    std::vector<double> js = {1e0, 1e1, 1e2, 1e3, 1e4, 1e5, 1e6, 1e7};
    for (double j : js) seq.push_back(omega + (1.0 / j) * F);
    const auto steps = selfdual_convergence(h, seq, omega, form);
    bool monotone = true;
    for (std::size_t i = 1; i < steps.size(); ++i)
      if (steps[i].deviation > steps[i - 1].deviation) monotone = false;
    b.boolean("convergence.monotone", monotone, true, Provenance::kDerived,
              "deviations decrease along omega_j = omega + F/j");
    b.abs("convergence.tail", steps.back().deviation, 0.0, 1e-6, Provenance::kDerived,
          "|b^{+_j} - b^+| < 1e-6 at j = 1e7");
  }

  {
    const IntersectionForm form{0};
    const CohClass omega = h + F;
    const auto direct = chamber_condition(-1.0 * omega, omega, form);
    b.boolean("chamber.negative", direct.satisfied && std::abs(direct.pairing + 2.0) < 1e-12,
              true, Provenance::kTrivial, "l2c1 = -omega pairs to -2 < 0");
    const CohClass orth =
        h - (intersect(h, omega, form) / intersect(omega, omega, form)) * omega;
    const auto on_wall = chamber_condition(orth, omega, form);
    b.boolean("chamber.boundary", !on_wall.satisfied && std::abs(on_wall.pairing) < 1e-12, true,
              Provenance::kTrivial, "zero pairing sits on the wall");

    // scalar identity feeding the chamber sign
    bool composed = true;
    for (double s : {-2.0, -0.5, 0.0}) {
      const double required = scalar_pairing_required(s, omega, form);
      const CohClass l2c1 = (required / intersect(omega, omega, form)) * omega;
      if (!scalar_pairing_consistent(l2c1, s, omega, form)) composed = false;
      const auto res = chamber_condition(l2c1, omega, form);
      if (s < 0.0 && !res.satisfied) composed = false;
      if (s == 0.0 && (res.satisfied || std::abs(res.pairing) > 1e-12)) composed = false;
    }
    b.boolean("chamber.scalar_identity", composed, true, Provenance::kDerived,
              "l2c1.[w] = (s/8pi) w^2: s < 0 lands in the chamber, s = 0 on the wall");
    b.abs("scalar.required_value",
          scalar_pairing_required(-2.0, omega, form), -1.0 / (2.0 * kPi), 1e-15,
          Provenance::kDerived, "s = -2, w^2 = 2 gives -1/(2 pi)");

    // rescaling invariance of the chamber verdict
    Rng rng(cfg.seed ^ 0x5CA1EULL);
    bool scale_ok = true;
    for (int trial = 0; trial < 100; ++trial) {
      const CohClass cls{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
      const double lam = rng.uniform(0.1, 10.0);
      if (chamber_condition(cls, omega, form).satisfied !=
          chamber_condition(cls, lam * omega, form).satisfied)
        scale_ok = false;
    }
    b.boolean("chamber.scale_invariant", scale_ok, true, Provenance::kTrivial,
              "satisfied(lambda w) = satisfied(w) for lambda > 0");
  }

  {
    Rng rng(cfg.seed ^ 0x107AULL);
    bool exchanged = true;
    double worst_pairing = 0.0;
    for (long d : {-3L, 0L, 7L}) {
      const IntersectionForm form{d};
      const auto iota = standard_involution(form);
      std::vector<CohClass> samples;
      for (int i = 0; i < 1000; ++i)
        samples.push_back({rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)});
      const auto report = antipodal_check(iota, form, samples);
      worst_pairing = std::max(worst_pairing, report.max_self_pairing);
      if (!report.cones_exchanged) exchanged = false;
    }
    b.abs("antipodal.self_pairing", worst_pairing, 0.0, 1e-9, Provenance::kPaper,
          "a . iota(a) = 0 for every class");
    b.boolean("antipodal.cone_exchange", exchanged, true, Provenance::kPaper,
              "iota maps the positive cone onto the negative cone");
  }

  {
    const auto w = weight_from_strict_transform(0.5, 1.0);
    b.boolean("strict_transform.half", w.valid && std::abs(w.value - 0.5) < 1e-15, true,
              Provenance::kPaper, "alpha = (w.E)/(w.F) = 1/2");
    b.boolean("strict_transform.zero_boundary", !weight_from_strict_transform(0.0, 1.0).valid,
              true, Provenance::kTrivial, "alpha = 0 flagged as boundary");
    b.boolean("strict_transform.too_large", !weight_from_strict_transform(3.0, 2.0).valid, true,
              Provenance::kTrivial, "ratio >= 1 flagged invalid");
  }

  {
    const BasisClass x{"h,F", {2.0, -1.0}};
    const BasisClass y{"h,F", {0.0, -1.0}};
    const BasisClass z{"h,F", {-2.0, 1.0}};
    const auto sum = l2_chern_sum({x, y});
    b.boolean("chern_sum.vector_add", sum.coords == std::vector<double>({2.0, -2.0}), true,
              Provenance::kTrivial, "(2,-1) + (0,-1) = (2,-2)");
    const auto cancel = l2_chern_sum({x, z});
    b.boolean("chern_sum.cancellation", cancel.coords == std::vector<double>({0.0, 0.0}), true,
              Provenance::kTrivial, "a class plus its negation vanishes");
    const auto assoc1 = l2_chern_sum({l2_chern_sum({x, y}), z});
    const auto assoc2 = l2_chern_sum({x, l2_chern_sum({y, z})});
    b.boolean("chern_sum.associative", assoc1.coords == assoc2.coords, true,
              Provenance::kTrivial, "component order does not matter");

    nlohmann::ordered_json doc;
    doc["basis"] = "h,F";
    doc["samples"] = {{{"name", "omega"}, {"coords", {1.0, 1.0}}},
                      {{"name", "l2c1_model"}, {"coords", {-1.0, -1.0}}}};
    std::ofstream out(cfg.out_dir + "/cohomology.json", std::ios::binary);
    out << doc.dump(2) << "\n";
  }
}

}  // namespace

std::vector<CheckResult> run_suite(const RunConfig& config, const std::string& suite) {
  std::filesystem::create_directories(config.out_dir);
  const auto dispatch = [&](const std::string& name) {
    SuiteBuilder b{config, name, {}};
    if (name == "stability")
      run_stability(b);
    else if (name == "geometry")
      run_geometry(b);
    else if (name == "smoothing")
      run_smoothing(b);
    else if (name == "spectrum")
      run_spectrum(b);
    else if (name == "cohomology")
      run_cohomology(b);
    else
      throw UnknownSuite("unknown suite '" + name + "'");
    return b.results;
  };

  if (suite == "all") {
    std::vector<CheckResult> all;
    for (const auto& name : suite_names()) {
      auto part = dispatch(name);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  return dispatch(suite);
}

}  // namespace parabend::report
