#pragma once

// Shared numeric kernel: stable elementary forms, series truncation rule,
// adaptive quadrature, and the special functions needed by the statistical
// tests (regularized incomplete gamma, chi-square quantile, Kolmogorov
// distribution).

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>

namespace planckian {

// Series truncation rule shared across all modules: a running sum stops once
// the next term's absolute value drops below this factor times the sum.
inline constexpr double kSeriesTailCutoff = 1e-18;

// 1 / (1 + e^-x), evaluated on the safe side of the exponential.
inline double logistic(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// Occupation probability 1 / (e^x + 1) for x >= 0; underflows to zero
// gracefully for large x instead of overflowing e^x.
inline double fermi_occupation(double x) { return logistic(-x); }

// log(1 / (1 + e^-x)) without forming the ratio.
inline double log_fermi_vacancy(double x) { return -std::log1p(std::exp(-x)); }

namespace detail {

inline double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f,
                                   double a, double b, double fa, double fm,
                                   double fb, double whole, double tol,
                                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol,
                              depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol,
                              depth - 1);
}

}  // namespace detail

// Adaptive Simpson quadrature on [a, b] to absolute tolerance tol.
inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-12) {
  if (!(a < b)) throw std::domain_error("integrate: empty interval");
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = detail::simpson(fa, fm, fb, b - a);
  return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Regularized lower incomplete gamma P(a, x); Q(a, x) = 1 - P(a, x).
// Series expansion for x < a + 1, Lentz continued fraction otherwise.
inline double regularized_gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0) {
    throw std::domain_error("regularized_gamma_p: a > 0 and x >= 0 required");
  }
  if (x == 0.0) return 0.0;
  const double lg = std::lgamma(a);
  if (x < a + 1.0) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < 10000; ++i) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - lg);
  }
  // Continued fraction for Q(a, x).
  const double tiny = std::numeric_limits<double>::min() / 1e-30;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  const double q = std::exp(-x + a * std::log(x) - lg) * h;
  return 1.0 - q;
}

inline double regularized_gamma_q(double a, double x) {
  return 1.0 - regularized_gamma_p(a, x);
}

// Chi-square CDF with dof degrees of freedom.
inline double chi_square_cdf(double x, int dof) {
  if (dof < 1) throw std::domain_error("chi_square_cdf: dof >= 1 required");
  if (x <= 0.0) return 0.0;
  return regularized_gamma_p(0.5 * dof, 0.5 * x);
}

// Quantile of the chi-square distribution (bisection on the CDF).
inline double chi_square_quantile(double prob, int dof) {
  if (!(prob > 0.0 && prob < 1.0)) {
    throw std::domain_error("chi_square_quantile: prob in (0,1) required");
  }
  double lo = 0.0;
  double hi = dof + 10.0;
  while (chi_square_cdf(hi, dof) < prob) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (chi_square_cdf(mid, dof) < prob) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Survival function of the Kolmogorov distribution,
// Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2).
inline double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j < 200; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += sign * term;
    if (term < kSeriesTailCutoff * std::abs(sum)) break;
    sign = -sign;
  }
  const double q = 2.0 * sum;
  return q < 0.0 ? 0.0 : (q > 1.0 ? 1.0 : q);
}

// Critical value of the asymptotic Kolmogorov-Smirnov statistic:
// the lambda with Q(lambda) = alpha (e.g. 1.6276 at the 1% level).
inline double kolmogorov_critical(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("kolmogorov_critical: alpha in (0,1) required");
  }
  double lo = 1e-3;
  double hi = 4.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (kolmogorov_survival(mid) > alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Standard normal CDF.
inline double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

}  // namespace planckian
