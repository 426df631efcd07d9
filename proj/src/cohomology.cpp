#include "parabend/cohomology.hpp"

#include <cmath>
#include <stdexcept>

namespace parabend::cohomology {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double intersect(const CohClass& a, const CohClass& b, const IntersectionForm& form) {
  return a.vec().dot(form.matrix() * b.vec());
}

std::pair<int, int> signature(const IntersectionForm& form) {
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(form.matrix());
  int pos = 0, neg = 0;
  for (int i = 0; i < 2; ++i) {
    if (es.eigenvalues()[i] > 0) ++pos;
    if (es.eigenvalues()[i] < 0) ++neg;
  }
  return {pos, neg};
}

CohClass selfdual_part(const CohClass& b, const CohClass& omega, const IntersectionForm& form) {
  const double w2 = intersect(omega, omega, form);
  if (!(w2 > 0.0))
    throw std::domain_error("selfdual_part: omega^2 must be positive");
  return (intersect(b, omega, form) / w2) * omega;
}

std::vector<ConvergenceStep> selfdual_convergence(const CohClass& b,
                                                  const std::vector<CohClass>& omegas,
                                                  const CohClass& omega_limit,
                                                  const IntersectionForm& form) {
  const CohClass limit = selfdual_part(b, omega_limit, form);
  std::vector<ConvergenceStep> out;
  out.reserve(omegas.size());
  for (const auto& w : omegas) {
    ConvergenceStep step;
    step.projection = selfdual_part(b, w, form);
    step.deviation = (step.projection - limit).norm();
    out.push_back(step);
  }
  return out;
}

ChamberResult chamber_condition(const CohClass& l2c1, const CohClass& omega,
                                const IntersectionForm& form) {
  // (l2c1)^+ . w = (l2c1 . w / w^2) w . w = l2c1 . w; the projection check is
  // kept to surface a bad omega
  (void)selfdual_part(l2c1, omega, form);
  ChamberResult out;
  out.pairing = intersect(l2c1, omega, form);
  out.satisfied = out.pairing < 0.0;
  return out;
}

double scalar_pairing_required(double s, const CohClass& omega, const IntersectionForm& form) {
  return s / (8.0 * kPi) * intersect(omega, omega, form);
}

bool scalar_pairing_consistent(const CohClass& l2c1, double s, const CohClass& omega,
                               const IntersectionForm& form, double tol) {
  return std::abs(intersect(l2c1, omega, form) - scalar_pairing_required(s, omega, form)) < tol;
}

InvolutionAction standard_involution(const IntersectionForm& form) {
  InvolutionAction a;
  a.iota << 1.0, 0.0, -static_cast<double>(form.d), -1.0;
  return a;
}

AntipodalReport antipodal_check(const InvolutionAction& iota, const IntersectionForm& form,
                                const std::vector<CohClass>& samples, double tol) {
  const Eigen::Matrix2d I = Eigen::Matrix2d::Identity();
  const Eigen::Matrix2d Q = form.matrix();
  AntipodalReport report;
  report.involution_residual = (iota.iota * iota.iota - I).norm();
  report.antiisometry_residual = (iota.iota.transpose() * Q * iota.iota + Q).norm();
  if (report.involution_residual > tol || report.antiisometry_residual > tol)
    throw std::domain_error("antipodal_check: matrix is not a sign-reversing involution");

  report.cones_exchanged = true;
  for (const auto& a : samples) {
    const Eigen::Vector2d ia = iota.iota * a.vec();
    const CohClass image{ia[0], ia[1]};
    report.max_self_pairing =
        std::max(report.max_self_pairing, std::abs(intersect(a, image, form)));
    const double a2 = intersect(a, a, form);
    const double i2 = intersect(image, image, form);
    if (a2 > 0.0 && !(i2 < 0.0)) report.cones_exchanged = false;
  }
  return report;
}

StrictTransformWeight weight_from_strict_transform(double pairing_E, double pairing_F) {
  if (pairing_F == 0.0)
    throw std::domain_error("weight_from_strict_transform: fiber pairing must be nonzero");
  StrictTransformWeight out;
  out.value = pairing_E / pairing_F;
  out.valid = out.value > 0.0 && out.value < 1.0;
  return out;
}

BasisClass l2_chern_sum(const std::vector<BasisClass>& components) {
  if (components.empty()) return BasisClass{"", {}};
  BasisClass total = components.front();
  for (std::size_t i = 1; i < components.size(); ++i) {
    const auto& c = components[i];
    if (c.basis != total.basis || c.coords.size() != total.coords.size())
      throw std::domain_error("l2_chern_sum: basis mismatch");
    for (std::size_t k = 0; k < total.coords.size(); ++k) total.coords[k] += c.coords[k];
  }
  return total;
}

}  // namespace parabend::cohomology
