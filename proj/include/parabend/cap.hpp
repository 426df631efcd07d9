#ifndef PARABEND_CAP_HPP
#define PARABEND_CAP_HPP

#include <string>
#include <vector>

#include "parabend/geometry.hpp"

namespace parabend::cap {

using geometry::MetricField;
using geometry::ParabolicEnd;
using geometry::WarpFn;

struct InfeasibleProfile : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One segment of the warp profile: either the exact cusp exponential e^{-t}
// or a polynomial in (t - t0).
struct Piece {
  enum class Kind { kExp, kPoly };
  Kind kind = Kind::kExp;
  double t0 = 0.0;
  double t1 = 0.0;
  std::vector<double> coeffs;  // ascending powers of (t - t0), kPoly only

  double eval(double t) const;
  double deriv(double t) const;
  double deriv2(double t) const;
};

// Warp function phi_j closing the cusp at t = T:
//   phi = e^{-t}              for t <= j+1
//   phi = T - t               on the terminal interval
// joined by two C^2 polynomial segments. Throughout, phi > 0, phi <= e^{-t}
// and -phi'/phi is nondecreasing and >= 1.
class CapProfile {
 public:
  int j() const { return j_; }
  double delta() const { return delta_; }
  double eps() const { return eps_; }
  double T() const { return T_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  double phi(double t) const;
  double dphi(double t) const;
  double ddphi(double t) const;

  WarpFn warp() const;

  // breakpoint/coefficient table, one line per piece
  std::string dump() const;

  friend CapProfile build_cap_profile(int j, double delta, double eps);

 private:
  int j_ = 0;
  double delta_ = 0.0;
  double eps_ = 0.0;
  double T_ = 0.0;
  std::vector<Piece> pieces_;
};

// Default widths: delta_j = e^{-j}/10 and eps = 1/10. Construction validates
// the profile invariants on a dense grid and halves delta on failure (at most
// 20 times) before reporting the violated invariant.
CapProfile build_cap_profile(int j, double delta = -1.0, double eps = 0.1);

// smooth ramp: 0 for t <= j, 1 for t >= j + 1/2, C^2 and nondecreasing
struct Cutoff {
  int j = 0;

  double chi(double t) const;
  double dchi(double t) const;
};

// K = -phi''/phi, the sectional curvature of dt^2 + phi^2 dtheta^2.
double cap_sectional_curvature(const CapProfile& profile, double t);

// s = 2(c - phi''/phi) for the capped 4-metric.
double cap_scalar_curvature(const CapProfile& profile, double c, double t);

// Capped 4-metric dt^2 + phi^2 dtheta^2 + twisted fiber term, on [0, T).
MetricField cap_metric_field(const CapProfile& profile, double alpha, double c);

// g_j = (1 - chi_j) g + chi_j g_j^cap, pointwise convex combination.
struct GluedMetric {
  MetricField field;
  int j = 0;
};
GluedMetric glue_metric(const MetricField& g, const CapProfile& profile, double alpha, double c);

// 2 pi (4 pi / c) * integral of phi over [t0, T]; the twist does not change
// the volume form.
double end_volume(const CapProfile& profile, double t0, double c);
// same for the uncapped model phi = e^{-t}: closed form 2 pi (4 pi / c) e^{-t0}
double end_volume_model(double t0, double c);

// connection B_j = d + i b(t) dtheta with b = -chi_j phi_j'
double bj_connection_coeff(const CapProfile& profile, double t);

// F_{B_j} = -i chi (phi''/phi) dt ^ (phi dtheta) + F^b,
// F^b = -i chi' phi' dt ^ dtheta
struct BjCurvature {
  double principal;       // chi phi''/phi, coefficient on -i dt ^ (phi dtheta)
  double remainder;       // chi' phi',    coefficient on -i dt ^ dtheta
  double remainder_norm;  // |F^b| in the capped frame = |chi' phi'| / phi
};
BjCurvature bj_curvature_decomposition(const CapProfile& profile, double t);

// (i / 2 pi) * integral of F_{B_j} over [0,T] x S^1, evaluated two ways.
// cutoff_j < 0 means the profile's own j; a shift past T makes chi vanish.
struct ChernPairing {
  double quadrature;
  double stokes;  // chi phi' at T minus at 0
};
ChernPairing chern_pairing(const CapProfile& profile, int cutoff_j = -1);

}  // namespace parabend::cap

#endif  // PARABEND_CAP_HPP
