#include "parabend/cap.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "parabend/quadrature.hpp"

namespace parabend::cap {

namespace {

constexpr double kPi = 3.14159265358979323846;

// smoothstep ramp 6s^5 - 15s^4 + 10s^3 on [0,1]
double ramp(double s) { return ((6.0 * s - 15.0) * s + 10.0) * s * s * s; }
double dramp(double s) { return ((30.0 * s - 60.0) * s + 30.0) * s * s; }

// quintic on [0,h] matching value/first/second derivative at both ends
std::vector<double> quintic_hermite(double h, double f0, double d0, double s0, double f1,
                                    double d1, double s1) {
  const double c0 = f0;
  const double c1 = d0;
  const double c2 = 0.5 * s0;
  const double r0 = f1 - (c0 + c1 * h + c2 * h * h);
  const double r1 = d1 - (c1 + 2.0 * c2 * h);
  const double r2 = s1 - 2.0 * c2;
  const double h2 = h * h, h3 = h2 * h, h4 = h3 * h, h5 = h4 * h;
  const double c3 = 10.0 * r0 / h3 - 4.0 * r1 / h2 + 0.5 * r2 / h;
  const double c4 = -15.0 * r0 / h4 + 7.0 * r1 / h3 - r2 / h2;
  const double c5 = 6.0 * r0 / h5 - 3.0 * r1 / h4 + 0.5 * r2 / h3;
  return {c0, c1, c2, c3, c4, c5};
}

}  // namespace

double Piece::eval(double t) const {
  if (kind == Kind::kExp) return std::exp(-t);
  const double tau = t - t0;
  double v = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) v = v * tau + coeffs[k];
  return v;
}

double Piece::deriv(double t) const {
  if (kind == Kind::kExp) return -std::exp(-t);
  const double tau = t - t0;
  double v = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 1;) v = v * tau + coeffs[k] * static_cast<double>(k);
  return v;
}

double Piece::deriv2(double t) const {
  if (kind == Kind::kExp) return std::exp(-t);
  const double tau = t - t0;
  double v = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 2;)
    v = v * tau + coeffs[k] * static_cast<double>(k) * static_cast<double>(k - 1);
  return v;
}

namespace {

const Piece& piece_at(const std::vector<Piece>& pieces, double t, double T) {
  if (t < 0.0 || t > T) throw geometry::DomainError("cap profile: t outside [0, T]");
  for (const auto& p : pieces)
    if (t <= p.t1) return p;
  return pieces.back();
}

struct BuildAttempt {
  std::vector<Piece> pieces;
  double T;
};

BuildAttempt assemble(int j, double delta, double eps) {
  const double b0 = j + 1.0;
  const double amp = std::exp(-b0);
  const double b1 = b0 + delta;
  // the slope ramp to -1 must fit inside the remaining slice height, so its
  // width shrinks with e^{-(j+1)} even though eps stays fixed
  const double w = std::min(eps, amp);
  const double b2 = b1 + w;

  BuildAttempt out;
  Piece cusp;
  cusp.kind = Piece::Kind::kExp;
  cusp.t0 = 0.0;
  cusp.t1 = b0;
  out.pieces.push_back(cusp);

  // flatten phi'' from amp to 0 while the slope stays -amp
  Piece bend;
  bend.kind = Piece::Kind::kPoly;
  bend.t0 = b0;
  bend.t1 = b1;
  bend.coeffs = quintic_hermite(delta, amp, -amp, amp, amp * (1.0 - delta), -amp, 0.0);
  out.pieces.push_back(bend);

  // drive phi' from -amp down to -1: phi' = -amp - (1-amp) ramp(s), integrated
  const double phi1 = amp * (1.0 - delta);
  Piece plunge;
  plunge.kind = Piece::Kind::kPoly;
  plunge.t0 = b1;
  plunge.t1 = b2;
  {
    const double a = 1.0 - amp;
    const double w3 = w * w * w, w4 = w3 * w, w5 = w4 * w;
    // integral of ramp: s^6 - 3 s^5 + 2.5 s^4 in s = tau / w
    plunge.coeffs = {phi1, -amp, 0.0, 0.0, -2.5 * a / w3, 3.0 * a / w4, -a / w5};
  }
  out.pieces.push_back(plunge);

  const double phi2 = phi1 - w * (1.0 + amp) / 2.0;
  out.T = b2 + phi2;

  Piece cone;
  cone.kind = Piece::Kind::kPoly;
  cone.t0 = b2;
  cone.t1 = out.T;
  cone.coeffs = {phi2, -1.0};
  out.pieces.push_back(cone);
  return out;
}

// grid validation of the profile invariants; returns the violated one or ""
std::string validate_profile(const BuildAttempt& b, int grid_n) {
  // a plunge that overshoots leaves no room for the cone at all
  if (!(b.T > b.pieces.back().t0)) return "phi > 0 on [0, T)";

  const auto phi = [&](double t) { return piece_at(b.pieces, t, b.T).eval(t); };
  const auto dphi = [&](double t) { return piece_at(b.pieces, t, b.T).deriv(t); };
  const auto ddphi = [&](double t) { return piece_at(b.pieces, t, b.T).deriv2(t); };

  for (std::size_t k = 0; k + 1 < b.pieces.size(); ++k) {
    const double t = b.pieces[k].t1;
    if (std::abs(b.pieces[k].eval(t) - b.pieces[k + 1].eval(t)) > 1e-9 ||
        std::abs(b.pieces[k].deriv(t) - b.pieces[k + 1].deriv(t)) > 1e-9 ||
        std::abs(b.pieces[k].deriv2(t) - b.pieces[k + 1].deriv2(t)) > 1e-9)
      return "C^2 continuity at breakpoints";
  }

  const double margin = std::min(1e-6, (b.T - b.pieces.back().t0) * 0.5);
  const double hi = b.T - margin;
  double prev_m = 1.0;
  for (int i = 0; i <= grid_n; ++i) {
    const double t = hi * static_cast<double>(i) / grid_n;
    const double p = phi(t);
    if (!(p > 0.0)) return "phi > 0 on [0, T)";
    if (p > std::exp(-t) * (1.0 + 1e-12) + 1e-300) return "phi <= e^{-t}";
    const double m = -dphi(t) / p;
    if (m < 1.0 - 1e-9) return "-phi'/phi >= 1";
    if (m < prev_m - 1e-9 * std::max(1.0, std::abs(prev_m))) return "-phi'/phi nondecreasing";
    prev_m = m;
    if (-ddphi(t) / p < -1.0 - 1e-9) return "sectional curvature >= -1";
  }
  return "";
}

}  // namespace

double CapProfile::phi(double t) const { return piece_at(pieces_, t, T_).eval(t); }
double CapProfile::dphi(double t) const { return piece_at(pieces_, t, T_).deriv(t); }
double CapProfile::ddphi(double t) const { return piece_at(pieces_, t, T_).deriv2(t); }

WarpFn CapProfile::warp() const {
  CapProfile copy = *this;
  return WarpFn{[copy](double t) { return copy.phi(t); },
                [copy](double t) { return copy.dphi(t); },
                [copy](double t) { return copy.ddphi(t); }};
}

std::string CapProfile::dump() const {
  std::ostringstream os;
  os << "# cap profile j=" << j_ << " delta=" << delta_ << " eps=" << eps_ << " T=" << T_ << "\n";
  char buf[64];
  for (const auto& p : pieces_) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g", p.t0, p.t1);
    os << (p.kind == Piece::Kind::kExp ? "exp " : "poly ") << buf;
    for (double c : p.coeffs) {
      std::snprintf(buf, sizeof(buf), " %.17g", c);
      os << buf;
    }
    os << "\n";
  }
  return os.str();
}

CapProfile build_cap_profile(int j, double delta, double eps) {
  if (j < 1) throw InfeasibleProfile("cap profile: need j >= 1");
  if (delta < 0.0) delta = std::exp(-j) / 10.0;
  if (!(delta > 0.0) || !(eps > 0.0))
    throw InfeasibleProfile("cap profile: widths must be positive");

  std::string violated;
  for (int attempt = 0; attempt <= 20; ++attempt) {
    const BuildAttempt built = assemble(j, delta, eps);
    violated = validate_profile(built, 10000);
    if (violated.empty()) {
      CapProfile profile;
      profile.j_ = j;
      profile.delta_ = delta;
      profile.eps_ = eps;
      profile.T_ = built.T;
      profile.pieces_ = built.pieces;
      return profile;
    }
    delta *= 0.5;
  }
  throw InfeasibleProfile("cap profile: invariant violated after delta shrinking: " + violated);
}

double Cutoff::chi(double t) const {
  const double s = 2.0 * (t - j);
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  return ramp(s);
}

double Cutoff::dchi(double t) const {
  const double s = 2.0 * (t - j);
  if (s <= 0.0 || s >= 1.0) return 0.0;
  return 2.0 * dramp(s);
}

double cap_sectional_curvature(const CapProfile& profile, double t) {
  if (t >= profile.T()) throw geometry::DomainError("cap curvature: t >= T");
  return -profile.ddphi(t) / profile.phi(t);
}

double cap_scalar_curvature(const CapProfile& profile, double c, double t) {
  if (t >= profile.T()) throw geometry::DomainError("cap curvature: t >= T");
  return 2.0 * (c - profile.ddphi(t) / profile.phi(t));
}

namespace {

geometry::Mat4 warped_metric(double phi, double c, double alpha, const geometry::Vec4& x) {
  const double fx = x[2];
  const double fy = x[3];
  const double rho2 = fx * fx + fy * fy;
  const double w = (4.0 / c) / ((1.0 + rho2) * (1.0 + rho2));
  geometry::Mat4 g = geometry::Mat4::Zero();
  g(0, 0) = 1.0;
  g(1, 1) = phi * phi + w * alpha * alpha * rho2;
  g(2, 2) = w;
  g(3, 3) = w;
  g(1, 2) = g(2, 1) = w * alpha * fy;
  g(1, 3) = g(3, 1) = -w * alpha * fx;
  return g;
}

}  // namespace

MetricField cap_metric_field(const CapProfile& profile, double alpha, double c) {
  CapProfile copy = profile;
  MetricField field;
  field.eval = [copy, alpha, c](const geometry::Vec4& x) {
    return warped_metric(copy.phi(x[0]), c, alpha, x);
  };
  return field;
}

GluedMetric glue_metric(const MetricField& g, const CapProfile& profile, double alpha, double c) {
  const MetricField capped = cap_metric_field(profile, alpha, c);
  const Cutoff cutoff{profile.j()};
  GluedMetric out;
  out.j = profile.j();
  out.field.eval = [g, capped, cutoff](const geometry::Vec4& x) {
    const double s = cutoff.chi(x[0]);
    geometry::Mat4 mix;
    if (s <= 0.0)
      mix = g(x);
    else if (s >= 1.0)
      mix = capped(x);
    else
      mix = (1.0 - s) * g(x) + s * capped(x);
    Eigen::LLT<geometry::Mat4> llt(mix);
    if (llt.info() != Eigen::Success)
      throw geometry::DomainError("glued metric: combination not positive definite");
    return mix;
  };
  return out;
}

double end_volume(const CapProfile& profile, double t0, double c) {
  if (t0 >= profile.T()) return 0.0;
  double integral = 0.0;
  for (const auto& p : profile.pieces()) {
    const double lo = std::max(t0, p.t0);
    const double hi = p.t1;
    if (lo >= hi) continue;
    integral += adaptive_simpson([&](double t) { return p.eval(t); }, lo, hi);
  }
  return 2.0 * kPi * (4.0 * kPi / c) * integral;
}

double end_volume_model(double t0, double c) {
  return 2.0 * kPi * (4.0 * kPi / c) * std::exp(-t0);
}

double bj_connection_coeff(const CapProfile& profile, double t) {
  const Cutoff cutoff{profile.j()};
  return -cutoff.chi(t) * profile.dphi(t);
}

BjCurvature bj_curvature_decomposition(const CapProfile& profile, double t) {
  const Cutoff cutoff{profile.j()};
  const double phi = profile.phi(t);
  BjCurvature out;
  out.principal = cutoff.chi(t) * profile.ddphi(t) / phi;
  out.remainder = cutoff.dchi(t) * profile.dphi(t);
  out.remainder_norm = std::abs(out.remainder) / phi;
  return out;
}

ChernPairing chern_pairing(const CapProfile& profile, int cutoff_j) {
  const Cutoff cutoff{cutoff_j < 0 ? profile.j() : cutoff_j};
  ChernPairing out;

  // d(chi phi') integrated in t, theta integrated out; split at the kinks of
  // chi and of the profile pieces
  std::vector<double> cuts = {0.0, std::clamp(static_cast<double>(cutoff.j), 0.0, profile.T()),
                              std::clamp(cutoff.j + 0.5, 0.0, profile.T())};
  for (const auto& p : profile.pieces()) cuts.push_back(p.t1);
  std::sort(cuts.begin(), cuts.end());
  double integral = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    if (cuts[k + 1] <= cuts[k]) continue;
    integral += adaptive_simpson(
        [&](double t) {
          return cutoff.dchi(t) * profile.dphi(t) + cutoff.chi(t) * profile.ddphi(t);
        },
        cuts[k], cuts[k + 1]);
  }
  out.quadrature = integral;
  out.stokes = cutoff.chi(profile.T()) * profile.dphi(profile.T()) -
               cutoff.chi(0.0) * profile.dphi(0.0);
  return out;
}

}  // namespace parabend::cap
