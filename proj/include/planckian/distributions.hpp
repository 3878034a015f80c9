#pragma once

// Exact densities, mass functions, characteristic functions, moments and
// entropies of the five families. All quantities are dimensionless (energies
// in units of the quantum, entropies over k); unit conversion happens at the
// callers.

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

#include "planckian/families.hpp"
#include "planckian/mode_params.hpp"
#include "planckian/numerics.hpp"

namespace planckian::distributions {

// f(y) = beta e^{-beta y} on [0, inf).
inline double gauss_density(double y, const ModeParams& p) {
  if (!(y >= 0.0)) throw std::domain_error("gauss_density: y >= 0 required");
  return p.beta() * std::exp(-p.beta() * y);
}

inline double gauss_cdf(double y, const ModeParams& p) {
  if (!(y >= 0.0)) throw std::domain_error("gauss_cdf: y >= 0 required");
  return -std::expm1(-p.beta() * y);
}

// f(z) = beta e^{-beta z} / (1 - b) on [0, 1).
inline double dark_density(double z, const ModeParams& p) {
  if (!(z >= 0.0 && z < 1.0)) {
    throw std::domain_error("dark_density: z in [0,1) required");
  }
  return p.beta() * std::exp(-p.beta() * z) / -std::expm1(-p.beta());
}

inline double dark_cdf(double z, const ModeParams& p) {
  if (!(z >= 0.0 && z < 1.0)) {
    throw std::domain_error("dark_cdf: z in [0,1) required");
  }
  return std::expm1(-p.beta() * z) / std::expm1(-p.beta());
}

// P(xi = n) = (1 - b) b^n.
inline double planck_pmf(std::int64_t n, const ModeParams& p) {
  if (n < 0) throw std::domain_error("planck_pmf: n >= 0 required");
  return -std::expm1(-p.beta()) * std::exp(-p.beta() * static_cast<double>(n));
}

// log P(xi = n); stays exact far beyond where the pmf itself underflows.
inline double planck_log_pmf(std::int64_t n, const ModeParams& p) {
  if (n < 0) throw std::domain_error("planck_log_pmf: n >= 0 required");
  return std::log1p(-p.b()) - p.beta() * static_cast<double>(n);
}

// Occupation of the s-th binary component: P(A_s) = 1 / (e^{2^s beta} + 1).
// Evaluated through the logistic form; b^(2^s) is never formed directly, so
// 2^s beta up to ~1e6 and beyond only underflows, never overflows.
struct BinaryOccupation {
  double p_empty;
  double p_occupied;
};

inline BinaryOccupation binary_occupation(int s, const ModeParams& p) {
  if (s < 0) throw std::domain_error("binary_occupation: s >= 0 required");
  const double x = std::ldexp(p.beta(), s);  // 2^s beta
  const double occ = fermi_occupation(x);
  return {1.0 - occ, occ};
}

// nbar_s = 1 / (e^{2^s beta} + 1).
inline double binary_mean_occupation(int s, const ModeParams& p) {
  return binary_occupation(s, p).p_occupied;
}

// Poisson rate of the m-th multiplet component, lambda_m = b^m / m.
inline double multiplet_rate(int m, const ModeParams& p) {
  if (m < 1) throw std::domain_error("multiplet_rate: m >= 1 required");
  return std::exp(-p.beta() * m) / m;
}

// P(x_m = l m) = lambda_m^l e^{-lambda_m} / l!.
inline double multiplet_pmf(int m, std::int64_t l, const ModeParams& p) {
  if (m < 1) throw std::domain_error("multiplet_pmf: m >= 1 required");
  if (l < 0) throw std::domain_error("multiplet_pmf: l >= 0 required");
  const double lambda = multiplet_rate(m, p);
  if (l == 0) return std::exp(-lambda);
  const double ld = static_cast<double>(l);
  return std::exp(ld * std::log(lambda) - lambda - std::lgamma(ld + 1.0));
}

// Characteristic function phi(t) = <e^{i t X}> of the given family.
inline std::complex<double> characteristic_function(const VariableFamily& f,
                                                    double t,
                                                    const ModeParams& p) {
  using namespace std::complex_literals;
  const double beta = p.beta();
  const double b = p.b();
  switch (f.kind()) {
    case VariableFamily::Kind::Gauss:
      return 1.0 / (1.0 - 1i * (t / beta));
    case VariableFamily::Kind::Dark:
      return (1.0 - b * std::polar(1.0, t)) /
             ((1.0 - 1i * (t / beta)) * (1.0 - b));
    case VariableFamily::Kind::Planck:
      return (1.0 - b) / (1.0 - b * std::polar(1.0, t));
    case VariableFamily::Kind::Binary: {
      const double n = std::ldexp(1.0, f.binary_index());  // 2^s
      const double q = std::exp(-beta * n);                // b^(2^s)
      return (1.0 + q * std::polar(1.0, n * t)) / (1.0 + q);
    }
    case VariableFamily::Kind::Multiplet: {
      const int m = f.multiplet_order();
      const double lambda = multiplet_rate(m, p);
      return std::exp(lambda * (std::polar(1.0, m * t) - 1.0));
    }
  }
  throw std::logic_error("characteristic_function: unknown family");
}

// Entropy over k, closed form per family. The Gauss and Dark entropies are
// differential entropies of the dimensionless densities.
inline double entropy_over_k(const VariableFamily& f, const ModeParams& p) {
  const double beta = p.beta();
  switch (f.kind()) {
    case VariableFamily::Kind::Gauss:
      return 1.0 - std::log(beta);
    case VariableFamily::Kind::Dark:
      // S_eta - S_xi: 1 - ln beta - beta nbar + ln(1 - b).
      return 1.0 - std::log(beta) - beta * p.mean_occupation() +
             std::log1p(-p.b());
    case VariableFamily::Kind::Planck: {
      const double n = p.mean_occupation();
      return (1.0 + n) * std::log1p(n) - n * std::log(n);
    }
    case VariableFamily::Kind::Binary: {
      // log(1 + q) + x q / (1 + q) with x = 2^s beta, q = e^-x.
      const double x = std::ldexp(beta, f.binary_index());
      const double q = std::exp(-x);
      return std::log1p(q) + x * q / (1.0 + q);
    }
    case VariableFamily::Kind::Multiplet: {
      // (xbar - xbar ln xbar) / m with xbar = b^m, ln xbar = -m beta.
      const int m = f.multiplet_order();
      const double xbar = std::exp(-beta * m);
      return xbar * (1.0 / m + beta);
    }
  }
  throw std::logic_error("entropy_over_k: unknown family");
}

// Closed-form mean/variance (units of the energy quantum) plus entropy.
inline MomentSummary moments(const VariableFamily& f, const ModeParams& p) {
  const double beta = p.beta();
  const double nbar = p.mean_occupation();
  MomentSummary m{0.0, 0.0, entropy_over_k(f, p)};
  switch (f.kind()) {
    case VariableFamily::Kind::Gauss:
      m.mean = 1.0 / beta;
      m.variance = 1.0 / (beta * beta);
      break;
    case VariableFamily::Kind::Dark:
      m.mean = 1.0 / beta - nbar;
      m.variance = 1.0 / (beta * beta) - nbar - nbar * nbar;
      break;
    case VariableFamily::Kind::Planck:
      m.mean = nbar;
      m.variance = nbar + nbar * nbar;
      break;
    case VariableFamily::Kind::Binary: {
      const double two_s = std::ldexp(1.0, f.binary_index());
      const double occ = binary_mean_occupation(f.binary_index(), p);
      m.mean = two_s * occ;
      m.variance = two_s * two_s * occ * (1.0 - occ);
      break;
    }
    case VariableFamily::Kind::Multiplet: {
      const int order = f.multiplet_order();
      const double lambda = multiplet_rate(order, p);
      m.mean = order * lambda;
      m.variance = static_cast<double>(order) * order * lambda;
      break;
    }
  }
  return m;
}

}  // namespace planckian::distributions
