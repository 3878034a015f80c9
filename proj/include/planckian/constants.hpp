#pragma once

// Physical constants in CGS units (erg, cm, s, g, K).
//
// Two sets are provided. The "paper" set carries the rounded values of h and
// k quoted in the classic radiation literature; the "modern" set carries the
// CODATA 2018 values (h, k and c are exact in the 2019 SI). Dimensionless
// radiation statistics never touch these; they only enter when converting to
// physical spectra, energies and entropies.

namespace planckian {

enum class ConstantsSet { Paper, Modern };

struct PhysicalConstants {
  double h;  // Planck constant, erg s
  double k;  // Boltzmann constant, erg/K
  double c;  // speed of light, cm/s
  double G;  // gravitational constant, cm^3 g^-1 s^-2
  ConstantsSet provenance;

  static constexpr PhysicalConstants paper() {
    return {6.626e-27, 1.381e-16, 2.99792458e10, 6.67430e-8,
            ConstantsSet::Paper};
  }

  static constexpr PhysicalConstants modern() {
    return {6.62607015e-27, 1.380649e-16, 2.99792458e10, 6.67430e-8,
            ConstantsSet::Modern};
  }

  static constexpr PhysicalConstants select(ConstantsSet set) {
    return set == ConstantsSet::Paper ? paper() : modern();
  }
};

}  // namespace planckian
