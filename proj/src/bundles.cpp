#include "parabend/bundles.hpp"

#include <cmath>
#include <complex>
#include <set>

namespace parabend::bundles {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kUnitaryTol = 1e-12;
}  // namespace

std::string verdict_label(Verdict v) {
  switch (v) {
    case Verdict::kStable:
      return "stable (relative to supplied certificates)";
    case Verdict::kSemistableOnly:
      return "semistable-only (relative to supplied certificates)";
    case Verdict::kUnstable:
      return "unstable (relative to supplied certificates)";
  }
  return "?";
}

void validate(const ParabolicPoint& p) {
  const Rational zero(0), one(1);
  if (p.alpha1 < zero || p.alpha2 < p.alpha1 || p.alpha2 >= one)
    throw ConfigError("parabolic point '" + p.label + "': need 0 <= alpha1 <= alpha2 < 1");
}

void validate(const MarkedSurface& s) {
  if (s.genus < 0) throw ConfigError("genus must be non-negative");
  std::set<std::string> seen;
  for (const auto& p : s.points) {
    validate(p);
    if (!seen.insert(p.label).second)
      throw ConfigError("duplicate point label '" + p.label + "'");
  }
}

Rational par_degree(const ParabolicBundle& bundle) {
  validate(bundle.base);
  Rational total(bundle.degree);
  for (const auto& p : bundle.base.points) {
    if (p.trivial())
      total += Rational(2) * p.alpha1;
    else
      total += p.alpha1 + p.alpha2;
  }
  return total;
}

Rational slope(const ParabolicBundle& bundle) {
  return par_degree(bundle) / Rational(ParabolicBundle::kRank);
}

Rational sub_slope(const ParabolicBundle& bundle, const SubLineData& sub) {
  validate(bundle.base);
  Rational total(sub.degree);
  for (const auto& p : bundle.base.points) {
    if (p.trivial()) {
      total += p.alpha1;
      continue;
    }
    const auto it = sub.flag_choice.find(p.label);
    if (it == sub.flag_choice.end())
      throw ConfigError("certificate is missing a flag choice at point '" + p.label + "'");
    total += it->second ? p.alpha2 : p.alpha1;
  }
  return total;
}

Verdict stability_verdict(const ParabolicBundle& bundle,
                          const std::vector<SubLineData>& candidates) {
  if (candidates.empty())
    throw ConfigError("stability verdict requires at least one certificate");
  const Rational mu = slope(bundle);
  bool equality_seen = false;
  for (const auto& sub : candidates) {
    const Rational mu_sub = sub_slope(bundle, sub);
    if (mu_sub > mu) return Verdict::kUnstable;
    if (mu_sub == mu) equality_seen = true;
  }
  return equality_seen ? Verdict::kSemistableOnly : Verdict::kStable;
}

bool is_polystable_decomposable(const SubLineData& l1, const SubLineData& l2,
                                const ParabolicBundle& bundle) {
  for (const auto& p : bundle.base.points) {
    if (p.trivial()) continue;
    const auto a = l1.flag_choice.find(p.label);
    const auto b = l2.flag_choice.find(p.label);
    if (a == l1.flag_choice.end() || b == l2.flag_choice.end())
      throw ConfigError("decomposition certificate missing flag at '" + p.label + "'");
    if (a->second == b->second)
      throw ConfigError("decomposition flags are not complementary at '" + p.label + "'");
  }
  return sub_slope(bundle, l1) == sub_slope(bundle, l2);
}

std::pair<ParabolicBundle, NormalizationLog> normalize_degree_zero(const ParabolicBundle& bundle) {
  ParabolicBundle out = bundle;
  NormalizationLog log;

  // a positive degree is twisted by d0 = -ceil(deg par / 2), the largest
  // shift landing at deg par <= 0; deg E moves by rank * d0 = 2 d0
  const Rational pd = par_degree(bundle);
  if (pd > Rational(0)) {
    const Rational half = pd / Rational(2);
    long ceil_half = half.num() / half.den();
    if (Rational(ceil_half) < half) ++ceil_half;
    log.tensor_degree = -ceil_half;
    out.degree += 2 * log.tensor_degree;
  }

  // split the deficit equally over the minimum number of trivial points with
  // weights in (0,1): n points absorb 2n alpha, so n = floor(D/2) + 1
  const Rational deficit = -par_degree(out);
  if (deficit > Rational(0)) {
    const long n_points = deficit.num() / (2 * deficit.den()) + 1;
    const Rational weight = deficit / Rational(2 * n_points);
    for (long k = 0; k < n_points; ++k) {
      ParabolicPoint q;
      q.label = "Q" + std::to_string(out.base.points.size() + 1);
      q.alpha1 = weight;
      q.alpha2 = weight;
      validate(q);
      out.base.points.push_back(q);
      log.added.push_back(q);
    }
  }
  return {out, log};
}

SubLineData transform_certificate(const SubLineData& sub, const NormalizationLog& log) {
  SubLineData out = sub;
  out.degree += log.tensor_degree;
  // added points are trivial, so no flag choice is needed there
  return out;
}

bool is_hyperbolic(const MarkedSurface& surface) {
  return 2 * surface.genus - 2 + static_cast<long>(surface.points.size()) > 0;
}

Eigen::Matrix2cd puncture_holonomy(const ParabolicPoint& point) {
  validate(point);
  const std::complex<double> i(0.0, 1.0);
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = std::exp(2.0 * kPi * i * point.alpha1.to_double());
  m(1, 1) = std::exp(2.0 * kPi * i * point.alpha2.to_double());
  return m;
}

namespace {

bool approx_scalar(const Eigen::Matrix2cd& m, double tol) {
  const std::complex<double> mean = 0.5 * (m(0, 0) + m(1, 1));
  return (m - mean * Eigen::Matrix2cd::Identity()).norm() <= tol;
}

bool line_invariant(const Eigen::Vector2cd& v, const std::vector<Eigen::Matrix2cd>& gens,
                    double tol) {
  for (const auto& g : gens) {
    const Eigen::Vector2cd w = g * v;
    // component of w orthogonal to span(v); v is unit, generators unitary
    const std::complex<double> c = v.dot(w);
    if ((w - c * v).norm() > tol) return false;
  }
  return true;
}

}  // namespace

bool is_irreducible(const UnitaryRepData& rep, double tol) {
  for (const auto& g : rep.generators) {
    if ((g.adjoint() * g - Eigen::Matrix2cd::Identity()).norm() > kUnitaryTol)
      throw ConfigError("is_irreducible: generator is not unitary");
  }
  for (const auto& g : rep.generators) {
    if (approx_scalar(g, tol)) continue;
    // a non-scalar unitary 2x2 matrix has two distinct eigenlines; any common
    // invariant line must be one of them
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(g);
    for (int k = 0; k < 2; ++k) {
      Eigen::Vector2cd v = es.eigenvectors().col(k);
      v.normalize();
      if (line_invariant(v, rep.generators, tol)) return false;
    }
    return true;
  }
  return false;  // every generator scalar: all lines invariant
}

}  // namespace parabend::bundles
