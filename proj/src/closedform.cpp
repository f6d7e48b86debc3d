#include "greedylab/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "greedylab/error.hpp"
#include "greedylab/line_search.hpp"

namespace greedylab {

namespace {

void check_lemma_domain(double p, std::size_t m, std::size_t n) {
  if (!(p > 1.0) || std::isinf(p)) {
    throw Error(ErrorKind::DomainError, "exponent must satisfy 1 < p < inf");
  }
  if (n < 1) throw Error(ErrorKind::DomainError, "N must be >= 1");
  if (m < n) {
    throw Error(ErrorKind::DomainError,
                "requires m >= N (m = " + std::to_string(m) + ", N = " + std::to_string(n) + ")");
  }
}

// Coarse scan then ternary search of a convex function of alpha.
template <typename F>
LineMinimum minimize_scanned(F&& f, std::size_t grid) {
  grid = std::max<std::size_t>(grid, 2);
  const double lo = -2.0;
  const double hi = 2.0;
  const double step = (hi - lo) / static_cast<double>(grid);
  double best_t = lo;
  double best_v = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= grid; ++i) {
    const double t = lo + step * static_cast<double>(i);
    const double v = f(t);
    if (v < best_v) {
      best_v = v;
      best_t = t;
    }
  }
  LineMinimum refined = minimize_convex(f, best_t, step);
  if (best_v < refined.value) {
    refined.value = best_v;
    refined.arg = best_t;
  }
  return refined;
}

}  // namespace

LpIndicatorCase LpIndicatorCase::make(double p, std::size_t n, std::size_t m) {
  if (!(p > 1.0) || std::isinf(p)) {
    throw Error(ErrorKind::DomainError, "exponent must satisfy 1 < p < inf");
  }
  if (n < 1 || m < 1) throw Error(ErrorKind::DomainError, "N and m must be >= 1");
  return LpIndicatorCase{p, n, m};
}

double lemma_min(double p, std::size_t m, std::size_t n) {
  check_lemma_domain(p, m, n);
  if (m == n) return 0.0;  // H(1, N) = 0; the formula's 0^{-1/(p-1)} limit
  const double nn = static_cast<double>(n);
  const double ratio = static_cast<double>(m - n) / nn;
  return nn * std::pow(1.0 + std::pow(ratio, -1.0 / (p - 1.0)), -(p - 1.0));
}

LemmaBruteForce lemma_min_bruteforce(double p, std::size_t m, std::size_t n, std::size_t grid) {
  check_lemma_domain(p, m, n);
  const double md = static_cast<double>(m);
  const double nd = static_cast<double>(n);

  LemmaBruteForce out;
  out.h_min = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    auto h = [&](double a) {
      return std::pow(std::abs(1.0 - a), p) * kd + std::pow(std::abs(a), p) * (md - kd) +
             (nd - kd);
    };
    const LineMinimum lm = minimize_scanned(h, grid);
    if (lm.value < out.h_min) {
      out.h_min = lm.value;
      out.h_alpha = lm.arg;
      out.h_k = k;
    }
  }

  out.l_min = std::numeric_limits<double>::infinity();
  for (std::size_t k1 = 0; k1 <= n; ++k1) {
    for (std::size_t k2 = 0; k1 + k2 <= n; ++k2) {
      const double a1 = static_cast<double>(k1);
      const double a2 = static_cast<double>(k2);
      auto l = [&](double a) {
        return std::pow(std::abs(1.0 - a), p) * a1 + std::pow(std::abs(1.0 + a), p) * a2 +
               std::pow(std::abs(a), p) * (md - a1 - a2) + (nd - a1 - a2);
      };
      out.l_min = std::min(out.l_min, minimize_scanned(l, grid).value);
    }
  }
  out.value = std::min(out.h_min, out.l_min);
  return out;
}

double lp_indicator_distance(const LpIndicatorCase& c) {
  const LpIndicatorCase v = LpIndicatorCase::make(c.p, c.n, c.m);
  const double n = static_cast<double>(v.n);
  const double m = static_cast<double>(v.m);
  if (v.m <= v.n) return std::pow(n - m, 1.0 / v.p);
  const double p_conj = v.p / (v.p - 1.0);
  return std::pow(n, 1.0 / v.p) *
         std::pow(1.0 + std::pow(m / n - 1.0, -1.0 / (v.p - 1.0)), -1.0 / p_conj);
}

double l1_indicator_distance(std::size_t n, std::size_t m) {
  if (m <= n) return static_cast<double>(n - m);
  if (m <= 2 * n) return static_cast<double>(m - n);
  return static_cast<double>(n);
}

}  // namespace greedylab
