#ifndef PARABEND_SPECTRAL_HPP
#define PARABEND_SPECTRAL_HPP

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "parabend/cap.hpp"
#include "parabend/geometry.hpp"
#include "parabend/rational.hpp"
#include "parabend/scan.hpp"

namespace parabend::spectral {

using geometry::WarpFn;

struct HypothesisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Interval [t1, t2] with slice measure phi(t) dt, a mean-curvature bound h0
// and exponential weight delta. Admissible when h >= h0 > delta or
// delta > h0 >= h holds across the interval (checked on a grid).
struct WeightedInterval {
  double t1 = 0.0;
  double t2 = 1.0;
  WarpFn warp;
  double h0 = 0.5;
  double delta = 0.0;
};

// which branch of the hypothesis the interval satisfies
enum class Branch { kAbove, kBelow };
Branch check_hypothesis(const WeightedInterval& iv, int grid_n = 2000);

struct PoincareResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // lhs - rhs
  bool holds = false;
};

// lhs = int |e^{dt} f'|^2 phi dt
// rhs = (h0-d)^2 int |f e^{dt}|^2 phi dt
//       + (h0-d) [ |f e^{dt}|^2 phi at t2  -  same at t1 ]
PoincareResult poincare_1d_check(const WeightedInterval& iv,
                                 const std::function<double(double)>& f,
                                 const std::function<double(double)>& df, int quad_n = 4000);

struct ModeSpectrum {
  int mode = 0;
  std::vector<double> eigenvalues;  // ascending
  double first_nonzero = 0.0;
};

struct Lambda1Result {
  double lambda1 = 0.0;
  std::vector<ModeSpectrum> modes;
};

// First nonzero Laplace eigenvalue of the surface of revolution
// ([t0, t1] x S^1, dt^2 + phi^2 dtheta^2), computed per Fourier mode with the
// Sturm-Liouville operator -phi^{-1} (phi f')' + m^2 phi^{-2} f.  Ends where
// phi vanishes are smooth tips (natural condition for m = 0, Dirichlet for
// m >= 1); other ends are Neumann. Mode 0 discards the constant eigenfunction.
Lambda1Result revolution_lambda1(const WarpFn& warp, double t0, double t1, int max_mode,
                                 int grid_n, Exec exec = Exec::kSerial);

Lambda1Result lambda1_cap_surface(const cap::CapProfile& profile, int max_mode, int grid_n,
                                  Exec exec = Exec::kSerial);

// min over integer modes with k + (r/q) l != 0 of |k + (r/q) l|, by brute
// force over the window |k|, |l| <= 2q. Equals 1/q for coprime (r, q).
Rational mode_gap_rational(long r, long q, Exec exec = Exec::kSerial);

struct EpsilonResult {
  double eps = 0.0;
  bool degenerate = false;  // an exact resonance inside the window
  long k = 0;
  long l = 0;
};

// eps = min over (k,l) != (0,0), |k| <= K, |l| <= K of |k + alpha l|^2; any
// mode with |k + alpha l|^2 < eps therefore sits outside the window.
EpsilonResult epsilon_for_K(double alpha, int K, Exec exec = Exec::kSerial);

// first n continued-fraction convergents of alpha in (0,1); terminates early
// when the expansion does (rational input)
std::vector<std::pair<long, long>> cf_convergents(double alpha, int n);

// eigenvalue of the slice vector field on the mode e^{i(k theta + l theta2)}
std::complex<double> xtheta_mode_action(long k, long l, double alpha);

struct ModeInequalityReport {
  double min_ratio = 0.0;  // min over samples of sum |c|^2 (k + a l)^2 / sum |c|^2
  double bound = 0.0;      // 1 / q^2
  bool all_hold = false;
  int resonant_skipped = 0;
};

// For random trigonometric polynomials supported on non-resonant modes,
// verify sum |c_kl|^2 (k + (r/q) l)^2 >= (1/q^2) sum |c_kl|^2.
ModeInequalityReport mode_inequality_check(long r, long q, int samples, std::uint64_t seed);

}  // namespace parabend::spectral

#endif  // PARABEND_SPECTRAL_HPP
