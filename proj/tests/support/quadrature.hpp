#pragma once

#include <cmath>
#include <functional>

namespace asymparb::testing {

/// Adaptive Simpson quadrature; the independence oracle for the closed-form
/// integrals. Recursion splits until the local Richardson estimate meets the
/// tolerance or the depth cap is hit.
inline double adaptive_simpson_step(const std::function<double(double)>& f,
                                    double a, double b, double fa, double fm,
                                    double fb, double whole, double tol,
                                    int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int max_depth = 60) {
  if (a == b) return 0.0;
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace asymparb::testing
