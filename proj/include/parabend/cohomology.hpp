#ifndef PARABEND_COHOMOLOGY_HPP
#define PARABEND_COHOMOLOGY_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace parabend::cohomology {

// Degree-2 class in the (h, F) basis.
struct CohClass {
  double x_h = 0.0;
  double x_F = 0.0;

  CohClass() = default;
  CohClass(double h, double f) : x_h(h), x_F(f) {}

  Eigen::Vector2d vec() const { return {x_h, x_F}; }
  double norm() const { return vec().norm(); }

  friend CohClass operator+(const CohClass& a, const CohClass& b) {
    return {a.x_h + b.x_h, a.x_F + b.x_F};
  }
  friend CohClass operator-(const CohClass& a, const CohClass& b) {
    return {a.x_h - b.x_h, a.x_F - b.x_F};
  }
  friend CohClass operator*(double s, const CohClass& a) { return {s * a.x_h, s * a.x_F}; }
};

// h^2 = d (= deg E), F^2 = 0, h.F = 1; determinant -1, signature (1,1).
struct IntersectionForm {
  long d = 0;

  Eigen::Matrix2d matrix() const {
    Eigen::Matrix2d q;
    q << static_cast<double>(d), 1.0, 1.0, 0.0;
    return q;
  }
};

double intersect(const CohClass& a, const CohClass& b, const IntersectionForm& form);

std::pair<int, int> signature(const IntersectionForm& form);

// b^+ = (b.w / w^2) w; requires w^2 > 0 (the self-dual line is spanned by w
// when b_2^+ = 1)
CohClass selfdual_part(const CohClass& b, const CohClass& omega, const IntersectionForm& form);

struct ConvergenceStep {
  CohClass projection;
  double deviation;  // |b^{+_j} - b^+| in coordinates
};

std::vector<ConvergenceStep> selfdual_convergence(const CohClass& b,
                                                  const std::vector<CohClass>& omegas,
                                                  const CohClass& omega_limit,
                                                  const IntersectionForm& form);

struct ChamberResult {
  double pairing = 0.0;  // (l2c1)^+ . w = l2c1 . w
  bool satisfied = false;
};

ChamberResult chamber_condition(const CohClass& l2c1, const CohClass& omega,
                                const IntersectionForm& form);

// constant-scalar-curvature pairing: l2c1 . w = (s / 8 pi) w^2
double scalar_pairing_required(double s, const CohClass& omega, const IntersectionForm& form);
bool scalar_pairing_consistent(const CohClass& l2c1, double s, const CohClass& omega,
                               const IntersectionForm& form, double tol = 1e-12);

struct InvolutionAction {
  Eigen::Matrix2d iota = Eigen::Matrix2d::Identity();
};

// [[1, 0], [-d, -1]]: conjugate of diag(1,-1) through a basis change taking
// the form to its d = 0 shape
InvolutionAction standard_involution(const IntersectionForm& form);

struct AntipodalReport {
  double involution_residual = 0.0;   // |iota^2 - I|
  double antiisometry_residual = 0.0; // |iota^T Q iota + Q|
  double max_self_pairing = 0.0;      // max |a . iota a| over samples
  bool cones_exchanged = false;       // every sampled a with a^2 > 0 has (iota a)^2 < 0
};

AntipodalReport antipodal_check(const InvolutionAction& iota, const IntersectionForm& form,
                                const std::vector<CohClass>& samples, double tol = 1e-10);

struct StrictTransformWeight {
  double value = 0.0;
  bool valid = false;  // 0 < value < 1
};

// alpha recovered as the ratio (w^ . E) / (w^ . F) of strict-transform pairings
StrictTransformWeight weight_from_strict_transform(double pairing_E, double pairing_F);

// purely additive class ledger over a declared basis
struct BasisClass {
  std::string basis;
  std::vector<double> coords;
};

BasisClass l2_chern_sum(const std::vector<BasisClass>& components);

}  // namespace parabend::cohomology

#endif  // PARABEND_COHOMOLOGY_HPP
