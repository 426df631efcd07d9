#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "parabend/cap.hpp"
#include "parabend/quadrature.hpp"
#include "parabend/scan.hpp"

using namespace parabend;
using namespace parabend::cap;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("profile construction and invariants") {
  for (int j = 1; j <= 8; ++j) {
    const auto p = build_cap_profile(j);

    CHECK(p.phi(static_cast<double>(j)) == std::exp(-static_cast<double>(j)));  // exact
    CHECK(p.phi(0.0) == 1.0);
    CHECK(p.T() > j + 1.0);

    // terminal slope is exactly -1
    const double t_cone = 0.5 * (p.pieces().back().t0 + p.T());
    CHECK(p.dphi(t_cone) == -1.0);
    CHECK(p.ddphi(t_cone) == 0.0);

    // dense grid: ratio >= 1 nondecreasing, envelope, curvature floor
    double prev = 1.0;
    const int n = 10000;
    const double hi = p.T() - 1e-7;
    for (int i = 0; i <= n; ++i) {
      const double t = hi * i / n;
      const double phi = p.phi(t);
      REQUIRE(phi > 0.0);
      REQUIRE(phi <= std::exp(-t) * (1.0 + 1e-12));
      const double ratio = -p.dphi(t) / phi;
      REQUIRE(ratio >= 1.0 - 1e-9);
      REQUIRE(ratio >= prev - 1e-9 * std::max(1.0, prev));
      prev = ratio;
    }

    // C^2 joints
    for (std::size_t k = 0; k + 1 < p.pieces().size(); ++k) {
      const double t = p.pieces()[k].t1;
      CHECK(std::abs(p.pieces()[k].eval(t) - p.pieces()[k + 1].eval(t)) < 1e-9);
      CHECK(std::abs(p.pieces()[k].deriv(t) - p.pieces()[k + 1].deriv(t)) < 1e-9);
      CHECK(std::abs(p.pieces()[k].deriv2(t) - p.pieces()[k + 1].deriv2(t)) < 1e-9);
    }
  }

  CHECK_THROWS_AS(build_cap_profile(0), InfeasibleProfile);
  CHECK_THROWS_AS(build_cap_profile(1, 0.1, -1.0), InfeasibleProfile);

  // an absurd delta is repaired by halving rather than rejected
  const auto repaired = build_cap_profile(2, 10.0, 0.1);
  CHECK(repaired.delta() < 10.0);
}

TEST_CASE("mean curvature of the profile") {
  for (int j : {1, 4, 7}) {
    const auto p = build_cap_profile(j);
    const auto warp = p.warp();
    // cusp region: exactly 1/2
    for (double t : {0.0, 0.4 * j, static_cast<double>(j) + 0.5}) {
      CHECK(geometry::mean_curvature_slice(warp, t) == 0.5);
    }
    // terminal region: 1/(2(T-t)), with T - t evaluated in its stable form
    // phi2 - (t - t0) so the b2-scale cancellation does not pollute the check
    const double t0 = p.pieces().back().t0;
    const double phi2 = p.pieces().back().coeffs[0];
    for (double frac : {0.1, 0.5, 0.9}) {
      const double t = t0 + frac * (p.T() - t0);
      const double dist = phi2 - (t - t0);
      CHECK(geometry::mean_curvature_slice(warp, t) ==
            doctest::Approx(0.5 / dist).epsilon(1e-12));
      CHECK(std::abs(dist - (p.T() - t)) < 1e-13);
    }
    // h >= 1/2 and nondecreasing across the whole profile
    double prev = 0.5;
    for (int i = 0; i <= 5000; ++i) {
      const double t = (p.T() - 1e-7) * i / 5000;
      const double h = geometry::mean_curvature_slice(warp, t);
      REQUIRE(h >= 0.5 - 1e-10);
      REQUIRE(h >= prev - 1e-9 * std::max(1.0, prev));
      prev = h;
    }
  }
}

TEST_CASE("sectional and scalar curvature of the cap") {
  const auto p = build_cap_profile(2);

  // cusp region: exactly -1
  CHECK(cap_sectional_curvature(p, 1.0) == -1.0);
  CHECK(cap_sectional_curvature(p, 2.9) == -1.0);

  // terminal region: flat
  const double t_cone = 0.5 * (p.pieces().back().t0 + p.T());
  CHECK(cap_sectional_curvature(p, t_cone) == 0.0);

  // transition: never below -1, and strongly positive somewhere
  double max_curv = -2.0;
  for (int i = 0; i <= 20000; ++i) {
    const double t = (p.T() - 1e-7) * i / 20000;
    const double k = cap_sectional_curvature(p, t);
    REQUIRE(k >= -1.0 - 1e-9);
    max_curv = std::max(max_curv, k);
  }
  CHECK(max_curv > 10.0);

  for (double c : {0.5, 2.0}) {
    CHECK(cap_scalar_curvature(p, c, 1.0) == 2.0 * (c - 1.0));
    CHECK(cap_scalar_curvature(p, c, t_cone) == 2.0 * c);
  }
  CHECK_THROWS_AS(cap_sectional_curvature(p, p.T()), geometry::DomainError);
}

TEST_CASE("capped 4-metric agrees with the 1-D curvature formula") {
  const auto p = build_cap_profile(1);
  const double c = 2.0;

  SUBCASE("wide regions with the twisted fiber") {
    const auto field = cap_metric_field(p, 1.0 / 3.0, c);
    Rng rng(3);
    for (int i = 0; i < 8; ++i) {
      const double t = rng.uniform(0.5, 1.8);  // inside the cusp region
      const geometry::Vec4 x(t, rng.uniform(0.0, 2 * kPi), rng.uniform(-0.5, 0.5),
                             rng.uniform(-0.5, 0.5));
      const double fd = geometry::scalar_curvature(field, x, 1e-3);
      CHECK(fd == doctest::Approx(cap_scalar_curvature(p, c, t)).epsilon(1e-3).scale(1.0));
    }
  }

  SUBCASE("transition bubble with locally scaled steps") {
    const auto product = cap_metric_field(p, 0.0, c);
    for (std::size_t piece_idx : {1u, 2u}) {
      const auto& piece = p.pieces()[piece_idx];
      const double width = piece.t1 - piece.t0;
      for (double frac : {0.3, 0.6}) {
        const double t = piece.t0 + frac * width;
        const geometry::Vec4 x(t, 0.7, 0.2, -0.1);
        const double fd = geometry::scalar_curvature(product, x, width / 30.0);
        const double exact = cap_scalar_curvature(p, c, t);
        CHECK(std::abs(fd - exact) / std::max(1.0, std::abs(exact)) < 1e-3);
      }
    }
  }
}

TEST_CASE("glued metric interpolates the model and the cap") {
  const auto p = build_cap_profile(3);
  geometry::ParabolicEnd end;
  end.alpha2 = 1.0 / 3.0;
  end.c = 2.0;
  const auto base = geometry::model_metric_field(end);
  const auto glued = glue_metric(base, p, end.alpha(), end.c);

  const geometry::Vec4 below(2.0, 0.4, 0.3, -0.2);
  CHECK((glued.field(below) - base(below)).norm() == 0.0);

  const auto capped = cap_metric_field(p, end.alpha(), end.c);
  const geometry::Vec4 above(4.0, 0.4, 0.3, -0.2);
  CHECK((glued.field(above) - capped(above)).norm() == 0.0);

  // in the collar the eigenvalues sit inside the union of the endpoints' range
  Rng rng(17);
  for (int i = 0; i < 30; ++i) {
    const geometry::Vec4 mid(rng.uniform(3.0, 3.5), rng.uniform(0, 2 * kPi),
                             rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5));
    Eigen::SelfAdjointEigenSolver<geometry::Mat4> eg(glued.field(mid)), ea(base(mid)),
        eb(capped(mid));
    const double lo =
        std::min(ea.eigenvalues().minCoeff(), eb.eigenvalues().minCoeff()) - 1e-12;
    const double hi =
        std::max(ea.eigenvalues().maxCoeff(), eb.eigenvalues().maxCoeff()) + 1e-12;
    CHECK(eg.eigenvalues().minCoeff() >= lo);
    CHECK(eg.eigenvalues().maxCoeff() <= hi);
  }
}

TEST_CASE("end volumes") {
  const double c = 2.0;

  SUBCASE("model closed form") {
    for (double t0 : {0.0, 1.0, 2.5})
      CHECK(end_volume_model(t0, c) ==
            doctest::Approx(2.0 * kPi * (4.0 * kPi / c) * std::exp(-t0)).epsilon(1e-15));
  }

  SUBCASE("capped volume never exceeds the model") {
    for (int j : {1, 3, 6, 8}) {
      const auto p = build_cap_profile(j);
      for (double t0 : {0.0, 1.0, static_cast<double>(j)})
        CHECK(end_volume(p, t0, c) <= end_volume_model(t0, c) + 1e-12);
    }
  }

  SUBCASE("quadrature matches the cusp closed form below the cap") {
    const auto p = build_cap_profile(5);
    const double quad = end_volume(p, 0.0, c) - end_volume(p, 4.0, c);
    const double closed = 2.0 * kPi * (4.0 * kPi / c) * (1.0 - std::exp(-4.0));
    CHECK(quad == doctest::Approx(closed).epsilon(1e-10));
  }

  SUBCASE("volume form does not see the twist") {
    geometry::ParabolicEnd e0, e3;
    e0.alpha2 = 0.0;
    e3.alpha2 = 1.0 / 3.0;
    Rng rng(19);
    for (int i = 0; i < 30; ++i) {
      const geometry::Vec4 x(rng.uniform(0.2, 2.0), rng.uniform(0, 2 * kPi),
                             rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6));
      const double d0 = geometry::model_metric_field(e0)(x).determinant();
      const double d3 = geometry::model_metric_field(e3)(x).determinant();
      CHECK(d0 == doctest::Approx(d3).epsilon(1e-13));
    }
  }

  SUBCASE("uniform tail decay") {
    std::vector<CapProfile> profiles;
    for (int j = 1; j <= 8; ++j) profiles.push_back(build_cap_profile(j));
    for (double eps : {1e-2, 1e-4}) {
      int K = 1;
      bool found = false;
      for (; K <= 60 && !found; ++K) {
        double worst = end_volume_model(K, c);
        for (const auto& p : profiles) worst = std::max(worst, end_volume(p, K, c));
        found = worst <= eps;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("B_j connection form") {
  const auto p = build_cap_profile(2);

  CHECK(bj_connection_coeff(p, 1.5) == 0.0);
  CHECK(bj_connection_coeff(p, 2.0) == 0.0);

  // near the cap the coefficient is +1, the flat trivialization
  CHECK(bj_connection_coeff(p, p.T() - 1e-9) == doctest::Approx(1.0).epsilon(1e-12));

  // inside the ramp: -chi(t - j) phi'(t) from the built profile
  const double t = 2.25;
  const double chi_expect = ((6.0 * 0.5 - 15.0) * 0.5 + 10.0) * 0.5 * 0.5 * 0.5;  // ramp(1/2)
  CHECK(bj_connection_coeff(p, t) ==
        doctest::Approx(-chi_expect * p.dphi(t)).epsilon(1e-15));
  CHECK(bj_connection_coeff(p, t) == doctest::Approx(0.5 * std::exp(-t)).epsilon(1e-13));
}

TEST_CASE("B_j curvature decomposition") {
  for (int j = 1; j <= 8; ++j) {
    const auto p = build_cap_profile(j);

    const auto below = bj_curvature_decomposition(p, 0.5 * j);
    CHECK(below.principal == 0.0);
    CHECK(below.remainder == 0.0);

    // above the ramp the remainder vanishes identically
    const auto above = bj_curvature_decomposition(p, j + 1.0);
    CHECK(above.remainder == 0.0);

    // remainder bounded by sup|chi'| * sup |phi'/phi| on [j, j+1/2] = 3.75
    double sup = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      const double t = (p.T() - 1e-7) * i / 2000;
      sup = std::max(sup, bj_curvature_decomposition(p, t).remainder_norm);
    }
    CHECK(sup <= 3.75 + 1e-12);
    CHECK(sup > 0.0);
  }
}

TEST_CASE("Chern pairing of B_j") {
  for (int j : {1, 2, 5, 8}) {
    const auto p = build_cap_profile(j);
    const auto pairing = chern_pairing(p);
    CHECK(pairing.stokes == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(std::abs(pairing.quadrature - pairing.stokes) < 1e-9);
    CHECK(std::abs(std::abs(pairing.quadrature) - 1.0) < 1e-9);
  }

  // without any cutoff there is no class to pair against
  const auto p = build_cap_profile(2);
  const auto none = chern_pairing(p, 100);
  CHECK(none.stokes == 0.0);
  CHECK(std::abs(none.quadrature) < 1e-12);
}

TEST_CASE("profile serialization table") {
  const auto p = build_cap_profile(3);
  const auto text = p.dump();
  CHECK(text.find("exp") != std::string::npos);
  CHECK(text.find("poly") != std::string::npos);
  // one header plus one line per piece
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + static_cast<long>(p.pieces().size()));
}
