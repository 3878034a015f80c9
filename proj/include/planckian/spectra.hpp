#pragma once

// Physical-unit spectral laws (CGS), the Wien displacement peak, and the
// natural system of units built from h, k, c and G.

#include <cmath>
#include <stdexcept>

#include "planckian/constants.hpp"
#include "planckian/mode_params.hpp"
#include "planckian/thermodynamics.hpp"

namespace planckian::spectra {

enum class SpectralLaw { Planck, RayleighJeans, Wien, Schweikert };

// Spectral mode density Z_nu = 8 pi nu^2 / c^3, cm^-3 Hz^-1.
inline double mode_density(double nu_hz, const PhysicalConstants& pc) {
  if (!(nu_hz > 0.0)) throw std::domain_error("mode_density: nu > 0 required");
  return 8.0 * M_PI * nu_hz * nu_hz / (pc.c * pc.c * pc.c);
}

// Spectral energy density u(nu, T) in erg cm^-3 Hz^-1.
//   Planck        Z hnu / (e^x - 1)
//   RayleighJeans Z kT
//   Wien          Z hnu e^-x
//   Schweikert    Z (kT + hnu) e^-x,  x = hnu / kT
// The exponential laws are evaluated through e^-x, which underflows to
// denormal-or-zero instead of overflowing for x beyond ~700.
inline double spectral_density(SpectralLaw law, double nu_hz,
                               double temperature_k,
                               const PhysicalConstants& pc) {
  if (!(nu_hz > 0.0) || !(temperature_k > 0.0)) {
    throw std::domain_error("spectral_density: nu > 0 and T > 0 required");
  }
  const double z = mode_density(nu_hz, pc);
  const double hnu = pc.h * nu_hz;
  const double kt = pc.k * temperature_k;
  const double x = hnu / kt;
  switch (law) {
    case SpectralLaw::Planck:
      return z * hnu * std::exp(-x) / -std::expm1(-x);
    case SpectralLaw::RayleighJeans:
      return z * kt;
    case SpectralLaw::Wien:
      return z * hnu * std::exp(-x);
    case SpectralLaw::Schweikert:
      return z * (kt + hnu) * std::exp(-x);
  }
  throw std::logic_error("spectral_density: unknown law");
}

// Root of x = 3 (1 - e^-x), the dimensionless Wien displacement constant in
// frequency form; Newton from the classic starting guess.
inline double wien_displacement_root() {
  double x = 2.8;
  for (int i = 0; i < 60; ++i) {
    const double g = x - 3.0 * -std::expm1(-x);
    const double dg = 1.0 - 3.0 * std::exp(-x);
    const double step = g / dg;
    x -= step;
    if (std::abs(step) < 1e-15) break;
  }
  return x;
}

// Frequency of the Planck-law maximum, nu_max = x* k T / h.
inline double wien_peak(double temperature_k, const PhysicalConstants& pc) {
  if (!(temperature_k > 0.0)) {
    throw std::domain_error("wien_peak: T > 0 required");
  }
  return wien_displacement_root() * pc.k * temperature_k / pc.h;
}

struct NaturalUnits {
  double length_cm;      // sqrt(hbar G / c^3)
  double time_s;         // length / c
  double mass_g;         // sqrt(hbar c / G)
  double temperature_k;  // mass c^2 / k
};

inline NaturalUnits natural_units(const PhysicalConstants& pc) {
  const double hbar = pc.h / (2.0 * M_PI);
  const double length = std::sqrt(hbar * pc.G / (pc.c * pc.c * pc.c));
  const double mass = std::sqrt(hbar * pc.c / pc.G);
  return {length, length / pc.c, mass, mass * pc.c * pc.c / pc.k};
}

struct BandStatistics {
  double mode_count;
  double mean_energy_erg;
  double energy_variance_erg2;
  bool narrow_band_warning;  // mode count below 1
};

// Mode count, mean band energy and its fluctuation; the variance split is
// delegated to the Einstein decomposition.
inline BandStatistics band_statistics(const thermo::BandSpec& band,
                                      double temperature_k,
                                      const PhysicalConstants& pc) {
  const ModeParams p =
      ModeParams::from_physical(band.nu_hz, temperature_k, pc);
  const thermo::EinsteinSplit split = thermo::einstein_split(band, p);
  return {band.mode_count, split.mean_energy_erg, split.total_erg2,
          band.mode_count < 1.0};
}

}  // namespace planckian::spectra
