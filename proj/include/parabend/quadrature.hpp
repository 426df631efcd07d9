#ifndef PARABEND_QUADRATURE_HPP
#define PARABEND_QUADRATURE_HPP

#include <cmath>
#include <functional>

namespace parabend {

// Adaptive Simpson with Richardson correction on the accepted panels.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int max_depth = 40) {
  struct Impl {
    const std::function<double(double)>& f;
    int max_depth;
    double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol,
                   int depth) const {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m);
      const double rm = 0.5 * (m + b);
      const double flm = f(lm);
      const double frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      const double delta = left + right - whole;
      if (depth >= max_depth || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
      return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
             recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
  };
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return Impl{f, max_depth}.recurse(a, b, fa, fm, fb, whole, tol, 0);
}

}  // namespace parabend

#endif  // PARABEND_QUADRATURE_HPP
