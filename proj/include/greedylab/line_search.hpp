#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "greedylab/error.hpp"

namespace greedylab {

struct LineSearchOptions {
  double width_tol = 1e-12;  // absolute bracket width at which the search stops
  int max_iterations = 500;
  int max_expansions = 200;
};

struct LineMinimum {
  double arg = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Minimizes a convex function of one real variable.
///
/// The bracket starts as [center - half_width, center + half_width] and each
/// endpoint that is not strictly worse than the center is pushed out
/// geometrically. Once both endpoints exceed the center value the minimizer
/// lies inside, and a golden-section ternary search shrinks the bracket to
/// `width_tol` (or a few ulps of the bracket magnitude, whichever is larger).
/// The best point ever evaluated is returned. Exceeding either cap throws
/// ConvergenceFailure; for coercive convex functions neither cap is reachable.
template <typename F>
LineMinimum minimize_convex(F&& f, double center, double half_width,
                            const LineSearchOptions& opts = {}) {
  LineMinimum best{center, f(center), 1};
  auto eval = [&](double t) {
    const double v = f(t);
    ++best.evaluations;
    if (v < best.value) {
      best.value = v;
      best.arg = t;
    }
    return v;
  };

  const double f_mid = best.value;
  double lo = center - half_width;
  double hi = center + half_width;
  double f_lo = eval(lo);
  double f_hi = eval(hi);
  int expansions = 0;
  while (!(f_lo > f_mid)) {
    if (++expansions > opts.max_expansions) {
      throw Error(ErrorKind::ConvergenceFailure, "bracket expansion did not terminate");
    }
    lo = center - 2.0 * (center - lo);
    f_lo = eval(lo);
  }
  while (!(f_hi > f_mid)) {
    if (++expansions > opts.max_expansions) {
      throw Error(ErrorKind::ConvergenceFailure, "bracket expansion did not terminate");
    }
    hi = center + 2.0 * (hi - center);
    f_hi = eval(hi);
  }

  constexpr double kInvPhi = 0.6180339887498948482;  // 1 / golden ratio
  double a = lo;
  double b = hi;
  double c = b - (b - a) * kInvPhi;
  double d = a + (b - a) * kInvPhi;
  double fc = eval(c);
  double fd = eval(d);
  for (int it = 0;; ++it) {
    const double floor = 4.0 * std::numeric_limits<double>::epsilon() *
                         std::max(std::abs(a), std::abs(b));
    if (b - a <= std::max(opts.width_tol, floor)) break;
    if (it >= opts.max_iterations) {
      throw Error(ErrorKind::ConvergenceFailure,
                  "ternary search exceeded " + std::to_string(opts.max_iterations) + " iterations");
    }
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * kInvPhi;
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * kInvPhi;
      fd = eval(d);
    }
  }
  return best;
}

}  // namespace greedylab
