#pragma once

// One spectral mode's parameterization. Everything dimensionless runs off the
// ratio beta = h nu / k T and its exponential b = e^-beta; the physical
// handles (nu, T, energy quantum) are kept only when the mode was constructed
// from physical inputs and are used at unit-conversion boundaries.

#include <cmath>
#include <optional>
#include <stdexcept>

#include "planckian/constants.hpp"

namespace planckian {

class ModeParams {
 public:
  static ModeParams from_beta(double beta) { return ModeParams(beta); }

  static ModeParams from_physical(double nu_hz, double temperature_k,
                                  const PhysicalConstants& pc) {
    if (!(nu_hz > 0.0) || !(temperature_k > 0.0)) {
      throw std::domain_error("ModeParams: nu and T must be positive");
    }
    ModeParams p(pc.h * nu_hz / (pc.k * temperature_k));
    p.nu_hz_ = nu_hz;
    p.temperature_k_ = temperature_k;
    p.energy_quantum_erg_ = pc.h * nu_hz;
    return p;
  }

  double beta() const { return beta_; }
  double b() const { return b_; }

  // Mean photon occupation number 1 / (e^beta - 1).
  double mean_occupation() const { return 1.0 / std::expm1(beta_); }

  bool has_physical() const { return nu_hz_.has_value(); }
  double nu_hz() const { return require(nu_hz_); }
  double temperature_k() const { return require(temperature_k_); }
  double energy_quantum_erg() const { return require(energy_quantum_erg_); }

 private:
  explicit ModeParams(double beta) : beta_(beta), b_(std::exp(-beta)) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
      throw std::domain_error("ModeParams: beta must be positive and finite");
    }
  }

  static double require(const std::optional<double>& v) {
    if (!v) {
      throw std::logic_error("ModeParams: physical quantities not set");
    }
    return *v;
  }

  double beta_;
  double b_;
  std::optional<double> nu_hz_;
  std::optional<double> temperature_k_;
  std::optional<double> energy_quantum_erg_;
};

}  // namespace planckian
