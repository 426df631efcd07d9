#include "parabend/geometry.hpp"

#include <cmath>

namespace parabend::geometry {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kChartLimit = 1.25;

double sq(double x) { return x * x; }

}  // namespace

void validate(const ParabolicEnd& end) {
  if (!(end.alpha1 >= 0.0 && end.alpha1 <= end.alpha2 && end.alpha2 < 1.0))
    throw DomainError("parabolic end: need 0 <= alpha1 <= alpha2 < 1");
  if (!(end.a > 0.0)) throw DomainError("parabolic end: need a > 0");
  if (!(end.c > 0.0)) throw DomainError("parabolic end: need c > 0");
}

EndPoint make_end_point(double t, double theta, Complex fiber, FiberChart chart) {
  if (t < 0.0) throw DomainError("end point: t must be >= 0");
  if (std::abs(fiber) > kChartLimit)
    throw ChartError("end point: |fiber| exceeds the chart of validity; switch charts");
  return EndPoint{t, theta, fiber, chart};
}

Vec4 to_coords(const EndPoint& p) {
  return Vec4(p.t, p.theta, p.fiber.real(), p.fiber.imag());
}

namespace {

// twist = +alpha in the affine chart, -alpha in the inverse chart
Mat4 end_metric(double c, double twist, const Vec4& x) {
  const double t = x[0];
  const double fx = x[2];
  const double fy = x[3];
  const double rho2 = fx * fx + fy * fy;
  const double w = (4.0 / c) / sq(1.0 + rho2);

  // coframe expansion of |du - i alpha u dtheta|^2:
  //   (dx + a y dtheta)^2 + (dy - a x dtheta)^2  with a = twist
  Mat4 g = Mat4::Zero();
  g(0, 0) = 1.0;
  g(1, 1) = std::exp(-2.0 * t) + w * twist * twist * rho2;
  g(2, 2) = w;
  g(3, 3) = w;
  g(1, 2) = g(2, 1) = w * twist * fy;
  g(1, 3) = g(3, 1) = -w * twist * fx;
  return g;
}

}  // namespace

Mat4 model_metric_at(const ParabolicEnd& end, const EndPoint& point) {
  validate(end);
  if (std::abs(point.fiber) > kChartLimit)
    throw ChartError("model_metric_at: point outside chart of validity");
  const double twist = point.chart == FiberChart::kAffine ? end.alpha() : -end.alpha();
  return end_metric(end.c, twist, to_coords(point));
}

MetricField model_metric_field(const ParabolicEnd& end, FiberChart chart) {
  validate(end);
  const double twist = chart == FiberChart::kAffine ? end.alpha() : -end.alpha();
  const double c = end.c;
  MetricField field;
  field.eval = [c, twist](const Vec4& x) { return end_metric(c, twist, x); };
  return field;
}

namespace {

struct MetricJets {
  Mat4 g;
  Mat4 ginv;
  std::array<Mat4, 4> dg;                  // dg[k](i,j) = d_k g_ij
  std::array<std::array<Mat4, 4>, 4> d2g;  // d2g[k][l] = d_k d_l g
};

MetricJets metric_jets(const MetricField& field, const Vec4& x, double h) {
  MetricJets jets;
  jets.g = field(x);
  jets.ginv = jets.g.inverse();
  std::array<Mat4, 4> gp, gm;
  for (int k = 0; k < 4; ++k) {
    Vec4 xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    gp[k] = field(xp);
    gm[k] = field(xm);
    jets.dg[k] = (gp[k] - gm[k]) / (2.0 * h);
  }
  for (int k = 0; k < 4; ++k) {
    jets.d2g[k][k] = (gp[k] - 2.0 * jets.g + gm[k]) / (h * h);
    for (int l = k + 1; l < 4; ++l) {
      Vec4 xpp = x, xpm = x, xmp = x, xmm = x;
      xpp[k] += h;
      xpp[l] += h;
      xpm[k] += h;
      xpm[l] -= h;
      xmp[k] -= h;
      xmp[l] += h;
      xmm[k] -= h;
      xmm[l] -= h;
      const Mat4 mixed = (field(xpp) - field(xpm) - field(xmp) + field(xmm)) / (4.0 * h * h);
      jets.d2g[k][l] = mixed;
      jets.d2g[l][k] = mixed;
    }
  }
  return jets;
}

}  // namespace

CurvatureReport curvature_report(const MetricField& field, const Vec4& x, double step) {
  const MetricJets jets = metric_jets(field, x, step);
  const Mat4& g = jets.g;
  const Mat4& ginv = jets.ginv;

  Eigen::LLT<Mat4> llt(g);
  if (llt.info() != Eigen::Success)
    throw DomainError("curvature_report: metric not positive definite at stencil point");

  // Gamma^i_jk = 1/2 g^il (d_j g_lk + d_k g_lj - d_l g_jk)
  std::array<std::array<std::array<double, 4>, 4>, 4> gamma{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        double s = 0.0;
        for (int l = 0; l < 4; ++l)
          s += ginv(i, l) * (jets.dg[j](l, k) + jets.dg[k](l, j) - jets.dg[l](j, k));
        gamma[i][j][k] = 0.5 * s;
      }

  // d_m g^il = -g^ia (d_m g_ab) g^bl
  std::array<Mat4, 4> dginv;
  for (int m = 0; m < 4; ++m) dginv[m] = -ginv * jets.dg[m] * ginv;

  std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4> dgamma{};  // [m][i][j][k]
  for (int m = 0; m < 4; ++m)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
          double s = 0.0;
          for (int l = 0; l < 4; ++l) {
            s += dginv[m](i, l) * (jets.dg[j](l, k) + jets.dg[k](l, j) - jets.dg[l](j, k));
            s += ginv(i, l) *
                 (jets.d2g[m][j](l, k) + jets.d2g[m][k](l, j) - jets.d2g[m][l](j, k));
          }
          dgamma[m][i][j][k] = 0.5 * s;
        }

  // R^i_jkl = d_k Gamma^i_lj - d_l Gamma^i_kj + Gamma^i_km Gamma^m_lj
  //           - Gamma^i_lm Gamma^m_kj
  std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4> riem{};  // [i][j][k][l]
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          double s = dgamma[k][i][l][j] - dgamma[l][i][k][j];
          for (int m = 0; m < 4; ++m)
            s += gamma[i][k][m] * gamma[m][l][j] - gamma[i][l][m] * gamma[m][k][j];
          riem[i][j][k][l] = s;
        }

  CurvatureReport report;
  report.christoffel = gamma;

  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          double s = 0.0;
          for (int m = 0; m < 4; ++m) s += g(i, m) * riem[m][j][k][l];
          report.riemann_low[i][j][k][l] = s;
        }

  for (int j = 0; j < 4; ++j)
    for (int l = 0; l < 4; ++l) {
      double s = 0.0;
      for (int i = 0; i < 4; ++i) s += riem[i][j][i][l];
      report.ricci(j, l) = s;
    }

  report.scalar = 0.0;
  for (int j = 0; j < 4; ++j)
    for (int l = 0; l < 4; ++l) report.scalar += ginv(j, l) * report.ricci(j, l);

  int plane = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      const double denom = g(a, a) * g(b, b) - sq(g(a, b));
      report.sectional[plane++] = report.riemann_low[a][b][a][b] / denom;
    }

  report.ricci_asymmetry = (report.ricci - report.ricci.transpose()).cwiseAbs().maxCoeff();

  double bianchi = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          const double r = report.riemann_low[i][j][k][l] + report.riemann_low[i][k][l][j] +
                           report.riemann_low[i][l][j][k];
          bianchi = std::max(bianchi, std::abs(r));
        }
  report.bianchi_residual = bianchi;
  return report;
}

double scalar_curvature(const MetricField& field, const Vec4& x, double step) {
  const double coarse = curvature_report(field, x, step).scalar;
  const double fine = curvature_report(field, x, step / 2.0).scalar;
  return (4.0 * fine - coarse) / 3.0;
}

double scalar_curvature_model(const ParabolicEnd& end, const EndPoint& point, double step) {
  return scalar_curvature(model_metric_field(end, point.chart), to_coords(point), step);
}

double mean_curvature_slice(const WarpFn& warp, double t) {
  const double phi = warp.phi(t);
  if (!(phi > 0.0)) throw DomainError("mean_curvature_slice: warp must be positive");
  return -0.5 * warp.dphi(t) / phi;
}

Vec4 xtheta_at(const ParabolicEnd& end, const EndPoint& point) {
  validate(end);
  const double a = point.chart == FiberChart::kAffine ? end.alpha() : -end.alpha();
  return Vec4(0.0, 1.0, -a * point.fiber.imag(), a * point.fiber.real());
}

Mat4 lie_derivative_metric(const MetricField& field, const VectorField& vf, const Vec4& x,
                           double step) {
  const Mat4 g = field(x);
  std::array<Mat4, 4> dg;
  std::array<Vec4, 4> dX;
  for (int k = 0; k < 4; ++k) {
    Vec4 xp = x, xm = x;
    xp[k] += step;
    xm[k] -= step;
    dg[k] = (field(xp) - field(xm)) / (2.0 * step);
    dX[k] = (vf(xp) - vf(xm)) / (2.0 * step);
  }
  const Vec4 X = vf(x);
  Mat4 lie = Mat4::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k)
        s += X[k] * dg[k](i, j) + g(k, j) * dX[i][k] + g(i, k) * dX[j][k];
      lie(i, j) = s;
    }
  return lie;
}

std::pair<Complex, Complex> covering_map(const ParabolicEnd& end, Complex xi, Complex u_tilde) {
  validate(end);
  if (!(xi.imag() > end.a)) throw DomainError("covering_map: need Im xi > a");
  const Complex i(0.0, 1.0);
  const Complex z = std::exp(i * xi);
  const Complex u = std::exp(i * end.alpha() * xi.real()) * u_tilde;
  return {z, u};
}

Vec4 covering_map_coords(const ParabolicEnd& end, const Vec4& up) {
  // (X, Y, p, q) -> (t, theta, x, y); theta kept on the real line so finite
  // differences see a smooth map
  const double X = up[0];
  const double Y = up[1];
  if (!(Y > end.a)) throw DomainError("covering_map: need Im xi > a");
  const Complex u = std::exp(Complex(0.0, end.alpha() * X)) * Complex(up[2], up[3]);
  return Vec4(std::log(Y), X, u.real(), u.imag());
}

double pullback_metric_check(const ParabolicEnd& end, Complex xi, Complex u_tilde, double step) {
  validate(end);
  const Vec4 up(xi.real(), xi.imag(), u_tilde.real(), u_tilde.imag());

  Eigen::Matrix4d jac;
  for (int k = 0; k < 4; ++k) {
    Vec4 p = up, m = up;
    p[k] += step;
    m[k] -= step;
    jac.col(k) = (covering_map_coords(end, p) - covering_map_coords(end, m)) / (2.0 * step);
  }

  const MetricField field = model_metric_field(end);
  const Mat4 downstairs = field(covering_map_coords(end, up));
  const Mat4 pulled = jac.transpose() * downstairs * jac;

  // product metric on the cover: (dX^2 + dY^2)/Y^2 + Fubini-Study in u~
  Mat4 target = Mat4::Zero();
  const double Y = xi.imag();
  target(0, 0) = target(1, 1) = 1.0 / (Y * Y);
  const double rho2 = std::norm(u_tilde);
  const double w = (4.0 / end.c) / sq(1.0 + rho2);
  target(2, 2) = target(3, 3) = w;

  return (pulled - target).norm();
}

std::pair<double, double> cusp_coordinates(Complex z, double a) {
  const double r = std::abs(z);
  if (!(r > 0.0) || !(r < std::exp(-a)))
    throw DomainError("cusp_coordinates: need 0 < |z| < e^{-a}");
  return {std::log(-std::log(r)), std::arg(z)};
}

Complex cusp_coordinates_inverse(double t, double theta) {
  const double r = std::exp(-std::exp(t));
  return std::polar(r, theta);
}

QFoldData qfold_cover_data(const Rational& alpha) {
  if (alpha < Rational(0) || alpha >= Rational(1))
    throw DomainError("qfold_cover_data: weight difference must lie in [0,1)");
  QFoldData data;
  data.r = alpha.num();
  data.q = alpha.den();
  data.deck = std::polar(1.0, 2.0 * kPi / static_cast<double>(data.q));
  return data;
}

QFoldData qfold_cover_data(double alpha, long max_q) {
  // continued-fraction reconstruction; only exact small rationals qualify
  double x = alpha;
  long p0 = 1, q0 = 0, p1 = 0, q1 = 1;  // convergents of [0; a1, a2, ...]
  for (int iter = 0; iter < 64; ++iter) {
    if (q1 > max_q) break;
    if (std::abs(alpha - static_cast<double>(p1) / static_cast<double>(q1)) < 1e-12 / q1)
      return qfold_cover_data(Rational(p1, q1));
    x = x - std::floor(x);
    if (x < 1e-15) break;
    x = 1.0 / x;
    const long a = static_cast<long>(std::floor(x));
    const long p2 = a * p1 + p0;
    const long q2 = a * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  throw DomainError("qfold_cover_data: weight difference is not rational (no finite factorization)");
}

double qfold_composite_residual(const ParabolicEnd& end, const QFoldData& data,
                                const std::vector<std::pair<Complex, Complex>>& samples) {
  const Complex i(0.0, 1.0);
  double worst = 0.0;
  for (const auto& [xi, u_tilde] : samples) {
    const auto [z, u] = covering_map(end, xi, u_tilde);
    (void)u;
    const Complex pi1 = std::exp(i * xi);
    // intermediate cover coordinate e^{i xi / q}, then pi^q : w -> w^q
    const Complex w = std::exp(i * xi / static_cast<double>(data.q));
    const Complex via_q = std::pow(w, static_cast<double>(data.q));
    worst = std::max(worst, std::abs(z - pi1));
    worst = std::max(worst, std::abs(via_q - pi1));
  }
  return worst;
}

Eigen::Matrix2cd chern_connection_holonomy(double alpha1, double alpha2, double radius,
                                           int steps) {
  if (!(radius > 0.0)) throw DomainError("holonomy: radius must be positive");
  if (steps < 64) throw DomainError("holonomy: need at least 64 steps");
  const Complex i(0.0, 1.0);
  Eigen::Matrix2cd coeff = Eigen::Matrix2cd::Zero();
  coeff(0, 0) = alpha1;
  coeff(1, 1) = alpha2;

  // transport equation V' = -Gamma (z'/z) V along z(s) = r e^{is}
  const auto rhs = [&](double s) -> Eigen::Matrix2cd {
    const Complex z = std::polar(radius, s);
    const Complex zdot = i * z;
    return -(zdot / z) * coeff;
  };

  Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
  const double h = 2.0 * kPi / steps;
  for (int n = 0; n < steps; ++n) {
    const double s = n * h;
    const Eigen::Matrix2cd k1 = rhs(s) * m;
    const Eigen::Matrix2cd k2 = rhs(s + 0.5 * h) * (m + 0.5 * h * k1);
    const Eigen::Matrix2cd k3 = rhs(s + 0.5 * h) * (m + 0.5 * h * k2);
    const Eigen::Matrix2cd k4 = rhs(s + h) * (m + h * k3);
    m += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return m;
}

namespace {

// The adapted fiber coordinate is not holomorphic (it differs from the
// holomorphic one by |z|^{-alpha}), so the complex structure is the standard
// block J of the cover conjugated through the local inverse of the covering,
//   G(t, theta, u) = (X, Y, u~) = (theta, e^t, e^{-i alpha theta} u).
Mat4 complex_structure(double alpha, const Vec4& x) {
  const double t = x[0], theta = x[1], fx = x[2], fy = x[3];
  const double c = std::cos(alpha * theta), s = std::sin(alpha * theta);
  const double re_u = fx * c + fy * s;
  const double im_u = fy * c - fx * s;

  Mat4 dG = Mat4::Zero();
  dG(0, 1) = 1.0;            // X = theta
  dG(1, 0) = std::exp(t);    // Y = e^t
  dG(2, 1) = alpha * im_u;   // d(Re u~)/dtheta
  dG(2, 2) = c;
  dG(2, 3) = s;
  dG(3, 1) = -alpha * re_u;  // d(Im u~)/dtheta
  dG(3, 2) = -s;
  dG(3, 3) = c;

  Mat4 Jstd = Mat4::Zero();  // product structure: J d_X = d_Y, J d_Re = d_Im
  Jstd(1, 0) = 1.0;
  Jstd(0, 1) = -1.0;
  Jstd(3, 2) = 1.0;
  Jstd(2, 3) = -1.0;

  return dG.inverse() * Jstd * dG;
}

Mat4 kahler_form(const ParabolicEnd& end, const Vec4& x) {
  const Mat4 g = model_metric_field(end)(x);
  const Mat4 J = complex_structure(end.alpha(), x);
  // w_ij = w(d_i, d_j) = g(J d_i, d_j) = J^k_i g_kj
  return J.transpose() * g;
}

}  // namespace

Mat4 kahler_form_at(const ParabolicEnd& end, const Vec4& x) { return kahler_form(end, x); }

double kahler_closedness_residual(const ParabolicEnd& end, const Vec4& x, double step) {
  std::array<Mat4, 4> dw;
  for (int k = 0; k < 4; ++k) {
    Vec4 p = x, m = x;
    p[k] += step;
    m[k] -= step;
    dw[k] = (kahler_form(end, p) - kahler_form(end, m)) / (2.0 * step);
  }
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k) {
        const double r = dw[i](j, k) + dw[j](k, i) + dw[k](i, j);
        worst = std::max(worst, std::abs(r));
      }
  return worst;
}

}  // namespace parabend::geometry
