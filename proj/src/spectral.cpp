#include "parabend/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "parabend/quadrature.hpp"

namespace parabend::spectral {

Branch check_hypothesis(const WeightedInterval& iv, int grid_n) {
  if (!(iv.t2 > iv.t1)) throw HypothesisError("weighted interval: need t1 < t2");
  bool above = true, below = true;
  for (int i = 0; i <= grid_n; ++i) {
    const double t = iv.t1 + (iv.t2 - iv.t1) * static_cast<double>(i) / grid_n;
    const double phi = iv.warp.phi(t);
    if (!(phi > 0.0)) throw HypothesisError("weighted interval: phi must be positive");
    const double h = -0.5 * iv.warp.dphi(t) / phi;
    if (!(h >= iv.h0)) above = false;
    if (!(h <= iv.h0)) below = false;
  }
  if (above && iv.h0 > iv.delta) return Branch::kAbove;
  if (below && iv.delta > iv.h0) return Branch::kBelow;
  throw HypothesisError("weighted interval: neither h >= h0 > delta nor delta > h0 >= h holds");
}

PoincareResult poincare_1d_check(const WeightedInterval& iv,
                                 const std::function<double(double)>& f,
                                 const std::function<double(double)>& df, int quad_n) {
  check_hypothesis(iv);
  const double d = iv.delta;
  const double h0 = iv.h0;

  // composite Simpson on a fixed grid keeps the check deterministic
  if (quad_n % 2 != 0) ++quad_n;
  const double h = (iv.t2 - iv.t1) / quad_n;
  double lhs = 0.0, l2 = 0.0;
  for (int i = 0; i <= quad_n; ++i) {
    const double t = iv.t1 + h * i;
    const double wgt = (i == 0 || i == quad_n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    const double phi = iv.warp.phi(t);
    const double e = std::exp(d * t);
    lhs += wgt * e * e * df(t) * df(t) * phi;
    l2 += wgt * e * e * f(t) * f(t) * phi;
  }
  lhs *= h / 3.0;
  l2 *= h / 3.0;

  const auto boundary = [&](double t) {
    const double e = std::exp(d * t);
    return e * e * f(t) * f(t) * iv.warp.phi(t);
  };

  PoincareResult out;
  out.lhs = lhs;
  out.rhs = (h0 - d) * (h0 - d) * l2 + (h0 - d) * (boundary(iv.t2) - boundary(iv.t1));
  out.margin = out.lhs - out.rhs;
  out.holds = out.margin >= -1e-10;
  return out;
}

namespace {

// P1 finite elements for -phi^{-1}(phi f')' + m^2 phi^{-2} f on [t0, t1],
// midpoint rule for the coefficient phi
ModeSpectrum mode_spectrum(const WarpFn& warp, double t0, double t1, int mode, int grid_n) {
  const double dt = (t1 - t0) / grid_n;
  const int n_nodes = grid_n + 1;

  const double pole_tol = 1e-9;
  const bool left_pole = warp.phi(t0) < pole_tol;
  const bool right_pole = warp.phi(t1) < pole_tol;
  const bool drop_left = left_pole && mode >= 1;
  const bool drop_right = right_pole && mode >= 1;

  std::vector<int> index(n_nodes, -1);
  int dof = 0;
  for (int i = 0; i < n_nodes; ++i) {
    if ((i == 0 && drop_left) || (i == n_nodes - 1 && drop_right)) continue;
    index[i] = dof++;
  }

  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(dof, dof);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dof, dof);
  for (int e = 0; e < grid_n; ++e) {
    const double mid = t0 + dt * (e + 0.5);
    const double phi_mid = warp.phi(mid);
    const double k_grad = phi_mid / dt;
    const double k_pot = mode * mode / phi_mid * dt * 0.25;  // midpoint hats = 1/2
    const double m_same = phi_mid * dt / 3.0;
    const double m_cross = phi_mid * dt / 6.0;
    const int ia = index[e];
    const int ib = index[e + 1];
    if (ia >= 0) {
      K(ia, ia) += k_grad + k_pot;
      M(ia, ia) += m_same;
    }
    if (ib >= 0) {
      K(ib, ib) += k_grad + k_pot;
      M(ib, ib) += m_same;
    }
    if (ia >= 0 && ib >= 0) {
      K(ia, ib) += -k_grad + k_pot;
      K(ib, ia) += -k_grad + k_pot;
      M(ia, ib) += m_cross;
      M(ib, ia) += m_cross;
    }
  }

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(K, M);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("mode spectrum: eigensolver failed to converge");

  ModeSpectrum out;
  out.mode = mode;
  out.eigenvalues.assign(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + solver.eigenvalues().size());
  // mode 0 keeps the constants in the kernel; skip them
  const double zero_tol = 1e-8;
  for (double ev : out.eigenvalues) {
    if (ev > zero_tol) {
      out.first_nonzero = ev;
      break;
    }
  }
  return out;
}

}  // namespace

Lambda1Result revolution_lambda1(const WarpFn& warp, double t0, double t1, int max_mode,
                                 int grid_n, Exec exec) {
  if (grid_n < 200) throw std::invalid_argument("revolution_lambda1: need grid_n >= 200");
  Lambda1Result out;
  out.modes = map_index<ModeSpectrum>(static_cast<std::size_t>(max_mode + 1), exec,
                                      [&](std::size_t m) {
                                        return mode_spectrum(warp, t0, t1, static_cast<int>(m),
                                                             grid_n);
                                      });
  out.lambda1 = out.modes.front().first_nonzero;
  for (const auto& ms : out.modes) out.lambda1 = std::min(out.lambda1, ms.first_nonzero);
  return out;
}

Lambda1Result lambda1_cap_surface(const cap::CapProfile& profile, int max_mode, int grid_n,
                                  Exec exec) {
  return revolution_lambda1(profile.warp(), 0.0, profile.T(), max_mode, grid_n, exec);
}

Rational mode_gap_rational(long r, long q, Exec exec) {
  if (q < 1 || std::gcd(r, q) != 1)
    throw std::invalid_argument("mode_gap_rational: need coprime r, q with q >= 1");
  // |k + (r/q) l| = |k q + r l| / q; scan rows of the window in parallel and
  // reduce the per-row minima in index order
  const long window = 2 * q;
  const auto row_min = map_index<long>(
      static_cast<std::size_t>(2 * window + 1), exec, [&](std::size_t idx) {
        const long k = static_cast<long>(idx) - window;
        long best = 0;
        for (long l = -window; l <= window; ++l) {
          const long v = std::labs(k * q + r * l);
          if (v != 0 && (best == 0 || v < best)) best = v;
        }
        return best;
      });
  long best = 0;
  for (long v : row_min)
    if (v != 0 && (best == 0 || v < best)) best = v;
  return Rational(best, q);
}

EpsilonResult epsilon_for_K(double alpha, int K, Exec exec) {
  if (K < 1) throw std::invalid_argument("epsilon_for_K: need K >= 1");
  struct RowBest {
    double val;
    long k, l;
  };
  const auto rows = map_index<RowBest>(
      static_cast<std::size_t>(2 * K + 1), exec, [&](std::size_t idx) {
        const long k = static_cast<long>(idx) - K;
        RowBest best{std::numeric_limits<double>::infinity(), 0, 0};
        for (long l = -K; l <= K; ++l) {
          if (k == 0 && l == 0) continue;
          const double v = k + alpha * l;
          if (v * v < best.val) best = {v * v, k, l};
        }
        return best;
      });
  EpsilonResult out;
  out.eps = std::numeric_limits<double>::infinity();
  for (const auto& rb : rows) {
    if (rb.val < out.eps) {
      out.eps = rb.val;
      out.k = rb.k;
      out.l = rb.l;
    }
  }
  out.degenerate = out.eps == 0.0;
  return out;
}

std::vector<std::pair<long, long>> cf_convergents(double alpha, int n) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("cf_convergents: need alpha in (0,1)");
  std::vector<std::pair<long, long>> out;
  long p0 = 1, q0 = 0, p1 = 0, q1 = 1;  // h_{-1}/k_{-1}, h_0/k_0 for a0 = 0
  double x = alpha;
  for (int i = 0; i < n; ++i) {
    const double frac = x - std::floor(x);
    if (frac < 1e-14) break;  // expansion terminated: alpha was rational
    x = 1.0 / frac;
    const long a = static_cast<long>(std::floor(x));
    const long p2 = a * p1 + p0;
    const long q2 = a * q1 + q0;
    out.emplace_back(p2, q2);
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (q2 > (1L << 40)) break;
  }
  return out;
}

std::complex<double> xtheta_mode_action(long k, long l, double alpha) {
  return std::complex<double>(0.0, static_cast<double>(k) + alpha * static_cast<double>(l));
}

ModeInequalityReport mode_inequality_check(long r, long q, int samples, std::uint64_t seed) {
  if (q < 1 || std::gcd(r, q) != 1)
    throw std::invalid_argument("mode_inequality_check: need coprime r, q");
  Rng rng(seed);
  const double alpha = static_cast<double>(r) / static_cast<double>(q);
  const double bound = 1.0 / static_cast<double>(q * q);

  ModeInequalityReport report;
  report.bound = bound;
  report.min_ratio = std::numeric_limits<double>::infinity();
  report.all_hold = true;

  const long window = 3 * q;
  for (int s = 0; s < samples; ++s) {
    double num = 0.0, den = 0.0;
    int placed = 0;
    while (placed < 6) {
      const long k = rng.uniform_int(-window, window);
      const long l = rng.uniform_int(-window, window);
      if (k * q + r * l == 0) {  // resonant or constant: excluded from the span
        ++report.resonant_skipped;
        continue;
      }
      const double re = rng.uniform(-1.0, 1.0);
      const double im = rng.uniform(-1.0, 1.0);
      const double c2 = re * re + im * im;
      const double ev = static_cast<double>(k) + alpha * static_cast<double>(l);
      num += c2 * ev * ev;
      den += c2;
      ++placed;
    }
    const double ratio = num / den;
    report.min_ratio = std::min(report.min_ratio, ratio);
    if (ratio < bound - 1e-12) report.all_hold = false;
  }
  return report;
}

}  // namespace parabend::spectral
