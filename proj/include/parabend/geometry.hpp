#ifndef PARABEND_GEOMETRY_HPP
#define PARABEND_GEOMETRY_HPP

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "parabend/rational.hpp"

namespace parabend::geometry {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using Complex = std::complex<double>;

struct ChartError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parameters of one parabolic end: weights alpha1 <= alpha2 in [0,1), start
// height a of the end, and sectional curvature c > 0 of the fiber sphere.
struct ParabolicEnd {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double a = 1.0;
  double c = 1.0;

  double alpha() const { return alpha2 - alpha1; }
};

void validate(const ParabolicEnd& end);

// Affine chart v = 1 carries the coordinate u; past |u| = 1 we switch to the
// chart u = 1 with coordinate v = 1/u, where the twist term flips sign.
enum class FiberChart { kAffine, kInverse };

struct EndPoint {
  double t = 0.0;
  double theta = 0.0;
  Complex fiber{0.0, 0.0};
  FiberChart chart = FiberChart::kAffine;
};

// Throws unless t >= 0 and |fiber| stays within the chart of validity
// (|fiber| <= 1.25, leaving room for finite-difference stencils).
EndPoint make_end_point(double t, double theta, Complex fiber,
                        FiberChart chart = FiberChart::kAffine);

// Pointwise metric in real coordinates (t, theta, Re fiber, Im fiber).
struct MetricField {
  std::function<Mat4(const Vec4&)> eval;
  double step = 1e-3;

  Mat4 operator()(const Vec4& x) const { return eval(x); }
};

//   g = dt^2 + e^{-2t} dtheta^2 + (4/c)(1+|u|^2)^{-2} |du - i alpha u dtheta|^2
// expanded over (t, theta, x, y) with u = x + iy; in the inverse chart the
// cross term is |dv + i alpha v dtheta|^2.
Mat4 model_metric_at(const ParabolicEnd& end, const EndPoint& point);

// Same metric as a field over a fixed chart.
MetricField model_metric_field(const ParabolicEnd& end, FiberChart chart = FiberChart::kAffine);

struct CurvatureReport {
  std::array<std::array<std::array<double, 4>, 4>, 4> christoffel{};  // [i][j][k]
  std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4> riemann_low{};
  Mat4 ricci = Mat4::Zero();
  double scalar = 0.0;
  std::array<double, 6> sectional{};  // coordinate planes 01,02,03,12,13,23
  double ricci_asymmetry = 0.0;
  double bianchi_residual = 0.0;
};

// Central-difference Christoffel/Riemann pipeline. The stencil reaches
// +-2*step in every coordinate and must stay inside the field's chart.
CurvatureReport curvature_report(const MetricField& field, const Vec4& x, double step);

// Scalar curvature with one Richardson extrapolation (steps h and h/2).
double scalar_curvature(const MetricField& field, const Vec4& x, double step);
double scalar_curvature_model(const ParabolicEnd& end, const EndPoint& point, double step = 1e-3);

// Warp function with derivatives, shared with the cap and spectral modules.
struct WarpFn {
  std::function<double(double)> phi;
  std::function<double(double)> dphi;
  std::function<double(double)> ddphi;
};

// h(t) = -phi'(t) / (2 phi(t)); the slice volume is phi(t) * (constant).
double mean_curvature_slice(const WarpFn& warp, double t);

// X_theta = d_theta + alpha d_theta2 = (0, 1, -alpha y, alpha x) in the
// affine chart; the fiber rotation reverses in the inverse chart.
Vec4 xtheta_at(const ParabolicEnd& end, const EndPoint& point);

using VectorField = std::function<Vec4(const Vec4&)>;

// (L_X g)_ij = X^k d_k g_ij + g_kj d_i X^k + g_ik d_j X^k, all derivatives
// by central differences.
Mat4 lie_derivative_metric(const MetricField& field, const VectorField& vf, const Vec4& x,
                           double step);

// Covering p(xi, u~) = (e^{i xi}, e^{i alpha Re xi} u~) in the charts v~ = 1,
// v = 1. Requires Im xi > a.
std::pair<Complex, Complex> covering_map(const ParabolicEnd& end, Complex xi, Complex u_tilde);

// p in real coordinates (Re xi, Im xi, Re u~, Im u~) -> (t, theta, x, y).
Vec4 covering_map_coords(const ParabolicEnd& end, const Vec4& upstairs);

// || J^T (g o p) J - (g_H + g_FS) ||_F with J the finite-difference Jacobian
// of the covering and g_H = (dX^2 + dY^2) / Y^2 the cusp cover metric.
double pullback_metric_check(const ParabolicEnd& end, Complex xi, Complex u_tilde, double step);

// t = ln(-ln |z|), theta = arg z, defined for 0 < |z| < e^{-a}.
std::pair<double, double> cusp_coordinates(Complex z, double a);
Complex cusp_coordinates_inverse(double t, double theta);

struct QFoldData {
  long q = 1;
  long r = 0;
  Complex deck;  // rotation e^{2 pi i / q} acting on the disk coordinate
};

// Finite factorization data of the covering for rational alpha = r/q.
QFoldData qfold_cover_data(const Rational& alpha);
// Floating entry point; throws DomainError unless alpha matches a rational
// with denominator <= max_q to within 1e-12.
QFoldData qfold_cover_data(double alpha, long max_q = 1000000);

// max over the samples of |pi(p(xi,u)) - pi1(xi)| and |pi^q(p~(xi)) - pi1(xi)|.
double qfold_composite_residual(const ParabolicEnd& end, const QFoldData& data,
                                const std::vector<std::pair<Complex, Complex>>& samples);

// Path-ordered transport of d + diag(alpha1, alpha2) dz/z around |z| = radius
// (4th-order Runge-Kutta on the loop). Expected diag(e^{-2 pi i alpha_k}).
Eigen::Matrix2cd chern_connection_holonomy(double alpha1, double alpha2, double radius,
                                           int steps = 512);

// Kahler form w(X,Y) = g(JX, Y) of the model in chart coordinates, and the
// max component of dw by central differences (expected ~0).
Mat4 kahler_form_at(const ParabolicEnd& end, const Vec4& x);
double kahler_closedness_residual(const ParabolicEnd& end, const Vec4& x, double step);

Vec4 to_coords(const EndPoint& p);

}  // namespace parabend::geometry

#endif  // PARABEND_GEOMETRY_HPP
