#ifndef PARABEND_BUNDLES_HPP
#define PARABEND_BUNDLES_HPP

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "parabend/rational.hpp"

namespace parabend::bundles {

// A marked point with weights 0 <= alpha1 <= alpha2 < 1. The point is
// "trivial" when the two weights coincide; it then carries the single weight
// with multiplicity two and no flag line.
struct ParabolicPoint {
  std::string label;
  Rational alpha1;
  Rational alpha2;

  bool trivial() const { return alpha1 == alpha2; }
};

struct MarkedSurface {
  int genus = 0;
  std::vector<ParabolicPoint> points;
};

// Rank-2 holomorphic bundle with a parabolic structure over the marked points.
struct ParabolicBundle {
  MarkedSurface base;
  long degree = 0;

  static constexpr int kRank = 2;
};

// Certificate describing a holomorphic line subbundle with its induced
// parabolic structure: at each non-trivial point the line either coincides
// with the flag line (inherits alpha2) or not (inherits alpha1).
struct SubLineData {
  long degree = 0;
  std::map<std::string, bool> flag_choice;  // keyed by point label
};

enum class Verdict { kStable, kSemistableOnly, kUnstable };

// Verdicts are always relative to the supplied certificate list; quantifying
// over all subbundles is not possible from finite data.
std::string verdict_label(Verdict v);

struct NormalizationLog {
  long tensor_degree = 0;                 // degree of the twisting line bundle
  std::vector<ParabolicPoint> added;      // trivial points appended
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void validate(const ParabolicPoint& p);
void validate(const MarkedSurface& s);

// deg E + sum over points of the weights counted with multiplicity:
// trivial points contribute 2*alpha1, non-trivial ones alpha1 + alpha2.
Rational par_degree(const ParabolicBundle& bundle);

Rational slope(const ParabolicBundle& bundle);

// Rank-1 slope of the certificate line: deg L plus the induced weights.
Rational sub_slope(const ParabolicBundle& bundle, const SubLineData& sub);

Verdict stability_verdict(const ParabolicBundle& bundle,
                          const std::vector<SubLineData>& candidates);

// Two line certificates with complementary flag choices split the bundle;
// the splitting is polystable exactly when the slopes agree.
bool is_polystable_decomposable(const SubLineData& l1, const SubLineData& l2,
                                const ParabolicBundle& bundle);

// Twist by a line bundle so the parabolic degree drops to <= 0, then restore
// zero exactly with one added trivial point of weight deficit/2.
std::pair<ParabolicBundle, NormalizationLog> normalize_degree_zero(const ParabolicBundle& bundle);

// Transport a certificate through a normalization so verdicts can be compared.
SubLineData transform_certificate(const SubLineData& sub, const NormalizationLog& log);

// 2g - 2 + k > 0.
bool is_hyperbolic(const MarkedSurface& surface);

// diag(e^{2 pi i alpha1}, e^{2 pi i alpha2})
Eigen::Matrix2cd puncture_holonomy(const ParabolicPoint& point);

struct UnitaryRepData {
  std::vector<Eigen::Matrix2cd> generators;
};

// True iff no complex line is invariant under every generator. Candidate
// lines are the eigenlines of the first non-scalar generator; a list of
// scalar matrices is reducible. Generators must be unitary to 1e-12.
bool is_irreducible(const UnitaryRepData& rep, double tol = 1e-9);

}  // namespace parabend::bundles

#endif  // PARABEND_BUNDLES_HPP
