#pragma once

// Entropies, mean energies, fluctuation decompositions, the temperature
// consistency check T dS/dE = 1, combinatorial and sub-volume counting, the
// pair-exchange kinetics whose fixed point is the Fermi occupation, and the
// volume dependence of the multiplet-gas entropy.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "planckian/constants.hpp"
#include "planckian/distributions.hpp"
#include "planckian/families.hpp"
#include "planckian/mode_params.hpp"
#include "planckian/numerics.hpp"
#include "planckian/random.hpp"

namespace planckian::thermo {

// Entropy over k. Closed forms:
//   Gauss         1 - ln beta
//   Dark          S_gauss - S_planck
//   Planck        (1 + nbar) ln(1 + nbar) - nbar ln nbar
//   Binary(s)     binary entropy of the occupation nbar_s
//   Multiplet(m)  (xbar - xbar ln xbar) / m with xbar = b^m
inline double entropy_of(const VariableFamily& f, const ModeParams& p) {
  return distributions::entropy_over_k(f, p);
}

// Mean energy in units of the quantum.
inline double mean_energy_of(const VariableFamily& f, const ModeParams& p) {
  return distributions::moments(f, p).mean;
}

struct AdditivityResiduals {
  double gauss_split;    // |S_gauss - S_planck - S_dark|
  double binary_sum;     // |S_planck - sum_{s<=s_max} S_s|
  double multiplet_sum;  // |S_planck - sum_{m<=m_max} S_m|
};

inline AdditivityResiduals entropy_additivity_residuals(const ModeParams& p,
                                                        int s_max, int m_max) {
  if (s_max < 0 || m_max < 1) {
    throw std::domain_error("entropy_additivity_residuals: bad truncations");
  }
  const double s_gauss = entropy_of(VariableFamily::gauss(), p);
  const double s_dark = entropy_of(VariableFamily::dark(), p);
  const double s_planck = entropy_of(VariableFamily::planck(), p);

  double binary_total = 0.0;
  for (int s = 0; s <= s_max; ++s) {
    const double term = entropy_of(VariableFamily::binary(s), p);
    binary_total += term;
    if (term < kSeriesTailCutoff * binary_total) break;
  }
  double multiplet_total = 0.0;
  for (int m = 1; m <= m_max; ++m) {
    const double term = entropy_of(VariableFamily::multiplet(m), p);
    multiplet_total += term;
    if (term < kSeriesTailCutoff * multiplet_total) break;
  }
  return {std::abs(s_gauss - s_planck - s_dark),
          std::abs(s_planck - binary_total),
          std::abs(s_planck - multiplet_total)};
}

enum class FluctuationSeriesKind { Binary, Multiplet };

struct FluctuationSeries {
  std::vector<double> partial_sums;  // monotone non-decreasing
  double total;                      // converges to nbar + nbar^2
};

// Binary: sum_s (2^s ubar_s - ubar_s^2), the fermion wave-particle terms.
// Multiplet: sum_m m^2 lambda_m, pure particle terms.
inline FluctuationSeries fluctuation_series(FluctuationSeriesKind kind,
                                            const ModeParams& p,
                                            int truncation) {
  if (truncation < 1) {
    throw std::domain_error("fluctuation_series: truncation >= 1 required");
  }
  FluctuationSeries out;
  out.partial_sums.reserve(static_cast<std::size_t>(truncation));
  double sum = 0.0;
  if (kind == FluctuationSeriesKind::Binary) {
    for (int s = 0; s < truncation; ++s) {
      sum += distributions::moments(VariableFamily::binary(s), p).variance;
      out.partial_sums.push_back(sum);
    }
  } else {
    for (int m = 1; m <= truncation; ++m) {
      sum += distributions::moments(VariableFamily::multiplet(m), p).variance;
      out.partial_sums.push_back(sum);
    }
  }
  out.total = sum;
  return out;
}

// A spectral band: m_nu = V Z_nu dnu modes around nu.
struct BandSpec {
  double volume_cm3;
  double nu_hz;
  double bandwidth_hz;
  double mode_density;  // Z_nu, cm^-3 Hz^-1
  double mode_count;    // m_nu

  static BandSpec make(double volume_cm3, double nu_hz, double bandwidth_hz,
                       const PhysicalConstants& pc) {
    if (!(volume_cm3 > 0.0) || !(nu_hz > 0.0) || !(bandwidth_hz > 0.0)) {
      throw std::domain_error("BandSpec: positive V, nu, dnu required");
    }
    const double z = 8.0 * M_PI * nu_hz * nu_hz / (pc.c * pc.c * pc.c);
    return {volume_cm3, nu_hz, bandwidth_hz, z, volume_cm3 * z * bandwidth_hz};
  }
};

struct EinsteinSplit {
  double mean_energy_erg;  // Ebar = m_nu h nu nbar
  double particle_erg2;    // h nu Ebar
  double wave_erg2;        // Ebar^2 / m_nu
  double total_erg2;       // m_nu (h nu)^2 (nbar + nbar^2)
};

// Band-energy fluctuation split into particle-like and wave-like terms.
inline EinsteinSplit einstein_split(const BandSpec& band, const ModeParams& p) {
  if (!(band.mode_count > 0.0)) {
    throw std::domain_error("einstein_split: mode count must be positive");
  }
  const double hnu = p.energy_quantum_erg();
  const double mean = band.mode_count * hnu * p.mean_occupation();
  const double particle = hnu * mean;
  const double wave = mean * mean / band.mode_count;
  return {mean, particle, wave, particle + wave};
}

// |T dS/dE - 1| by central differences in T at fixed nu. The closed-form
// entropies and energies satisfy dS/dE = 1/T identically for all five
// families, so this doubles as a cross-check of both sets of formulas.
inline double thermo_consistency(const VariableFamily& f, double nu_hz,
                                 double temperature_k, double delta,
                                 const PhysicalConstants& pc) {
  if (!(delta >= 1e-7 && delta <= 1e-2)) {
    throw std::domain_error("thermo_consistency: delta in [1e-7, 1e-2]");
  }
  auto entropy_and_energy = [&](double t) {
    const ModeParams p = ModeParams::from_physical(nu_hz, t, pc);
    const double s = pc.k * entropy_of(f, p);
    const double e = p.energy_quantum_erg() * mean_energy_of(f, p);
    return std::pair{s, e};
  };
  const auto [s_hi, e_hi] = entropy_and_energy(temperature_k * (1.0 + delta));
  const auto [s_lo, e_lo] = entropy_and_energy(temperature_k * (1.0 - delta));
  const double de = e_hi - e_lo;
  if (std::abs(de) < 1e-30) {
    throw std::domain_error("thermo_consistency: degenerate energy step");
  }
  return std::abs(temperature_k * (s_hi - s_lo) / de - 1.0);
}

// Per-mode entropy over k of distributing P excitations among M modes,
// (1/M) ln C(M, P). Converges to the binary entropy of P/M as M grows.
inline double combinatorial_entropy(std::uint64_t modes,
                                    std::uint64_t excitations) {
  if (modes == 0) throw std::domain_error("combinatorial_entropy: M >= 1");
  if (excitations > modes) {
    throw std::domain_error("combinatorial_entropy: P <= M required");
  }
  const double m = static_cast<double>(modes);
  const double p = static_cast<double>(excitations);
  return (std::lgamma(m + 1.0) - std::lgamma(p + 1.0) -
          std::lgamma(m - p + 1.0)) /
         m;
}

// Binomial probability of finding N of N0 independent particles inside the
// sub-volume V of V0.
inline double subvolume_count_pmf(std::uint64_t n_total, double v, double v0,
                                  std::uint64_t n) {
  if (!(v > 0.0) || !(v0 > 0.0) || v > v0) {
    throw std::domain_error("subvolume_count_pmf: 0 < V <= V0 required");
  }
  if (n > n_total) return 0.0;
  const double ratio = v / v0;
  if (ratio == 1.0) return n == n_total ? 1.0 : 0.0;
  const double nt = static_cast<double>(n_total);
  const double nn = static_cast<double>(n);
  const double log_choose = std::lgamma(nt + 1.0) - std::lgamma(nn + 1.0) -
                            std::lgamma(nt - nn + 1.0);
  return std::exp(log_choose + nn * std::log(ratio) +
                  (nt - nn) * std::log1p(-ratio));
}

// Total variation distance between Binomial(N0, lambda/N0) and
// Poisson(lambda); vanishes in the N0 -> inf limit.
inline double poisson_limit_distance(std::uint64_t n_total, double lambda) {
  if (!(lambda > 0.0) || static_cast<double>(n_total) <= lambda) {
    throw std::domain_error("poisson_limit_distance: need N0 > lambda > 0");
  }
  const double v0 = static_cast<double>(n_total);
  double sum = 0.0;
  double log_pois = -lambda;  // log pmf at N = 0
  for (std::uint64_t n = 0; n <= n_total; ++n) {
    const double pb = subvolume_count_pmf(n_total, lambda, v0, n);
    const double pp = std::exp(log_pois);
    sum += std::abs(pb - pp);
    if (static_cast<double>(n) > lambda + 10.0 && pb < 1e-30 && pp < 1e-30) {
      break;
    }
    log_pois += std::log(lambda) - std::log1p(static_cast<double>(n));
  }
  return 0.5 * sum;
}

// Discrete energy levels with pair-exchange kinetics: quadruples name two
// source levels and two target levels with equal total energy.
struct KineticSystem {
  struct Quadruple {
    int in1, in2, out1, out2;
  };

  std::vector<double> level_energies;  // units of the quantum, positive
  double beta = 1.0;
  std::vector<Quadruple> quadruples;
  std::vector<double> occupations;  // strictly inside (0, 1)

  static KineticSystem fermi_equilibrium(std::vector<double> levels,
                                         double beta,
                                         std::vector<Quadruple> quadruples) {
    KineticSystem ks;
    ks.level_energies = std::move(levels);
    ks.beta = beta;
    ks.quadruples = std::move(quadruples);
    ks.occupations.reserve(ks.level_energies.size());
    for (double eps : ks.level_energies) {
      ks.occupations.push_back(fermi_occupation(beta * eps));
    }
    ks.validate();
    return ks;
  }

  void validate() const {
    if (occupations.size() != level_energies.size()) {
      throw std::invalid_argument("KineticSystem: occupation/level mismatch");
    }
    for (double eps : level_energies) {
      if (!(eps > 0.0)) {
        throw std::domain_error("KineticSystem: level energies must be > 0");
      }
    }
    for (double n : occupations) {
      if (!(n > 0.0 && n < 1.0)) {
        throw std::domain_error(
            "KineticSystem: occupations must lie strictly inside (0,1)");
      }
    }
    for (const auto& q : quadruples) {
      check_index(q.in1);
      check_index(q.in2);
      check_index(q.out1);
      check_index(q.out2);
      const double e_in = level_energies[q.in1] + level_energies[q.in2];
      const double e_out = level_energies[q.out1] + level_energies[q.out2];
      if (std::abs(e_in - e_out) > 1e-9 * std::max(e_in, e_out)) {
        throw std::domain_error(
            "KineticSystem: quadruple violates energy conservation");
      }
    }
  }

 private:
  void check_index(int i) const {
    if (i < 0 || static_cast<std::size_t>(i) >= level_energies.size()) {
      throw std::domain_error("KineticSystem: quadruple index out of range");
    }
  }
};

// Detailed-balance residual max |q1 q2 - q3 q4| with q = n / (1 - n).
// Exactly zero (to rounding) at Fermi occupations for energy-conserving
// quadruples.
inline double kinetic_balance_residual(const KineticSystem& ks) {
  ks.validate();
  auto q = [&](int i) { return ks.occupations[i] / (1.0 - ks.occupations[i]); };
  double worst = 0.0;
  for (const auto& quad : ks.quadruples) {
    worst = std::max(worst,
                     std::abs(q(quad.in1) * q(quad.in2) -
                              q(quad.out1) * q(quad.out2)));
  }
  return worst;
}

// Stochastic pair-exchange relaxation over an ensemble of binary slots.
// Each move picks a quadruple and a direction with equal probability (the
// forward and backward transition rates are equal) and succeeds with the
// product of occupation/vacancy fractions of the four slots involved.
// Returns occupations time-averaged over the second half of the run.
inline std::vector<double> kinetic_relaxation(const KineticSystem& ks,
                                              std::uint64_t moves,
                                              RandomStream rs,
                                              std::uint64_t slots_per_level) {
  ks.validate();
  if (ks.quadruples.empty()) {
    throw std::invalid_argument("kinetic_relaxation: no quadruples");
  }
  if (slots_per_level == 0 || moves == 0) {
    throw std::domain_error("kinetic_relaxation: empty ensemble or run");
  }
  const double slots = static_cast<double>(slots_per_level);
  std::vector<double> count(ks.occupations.size());
  for (std::size_t i = 0; i < count.size(); ++i) {
    count[i] = std::round(ks.occupations[i] * slots);
  }
  SplitMix64 gen(rs);
  std::vector<double> accum(count.size(), 0.0);
  const std::uint64_t burn_in = moves / 2;
  std::uint64_t averaged = 0;
  for (std::uint64_t step = 0; step < moves; ++step) {
    const auto& quad =
        ks.quadruples[gen.next() % ks.quadruples.size()];
    int src1 = quad.in1, src2 = quad.in2, dst1 = quad.out1, dst2 = quad.out2;
    if (gen.next_bool()) {
      std::swap(src1, dst1);
      std::swap(src2, dst2);
    }
    const double accept = (count[src1] / slots) * (count[src2] / slots) *
                          (1.0 - count[dst1] / slots) *
                          (1.0 - count[dst2] / slots);
    if (gen.next_unit() < accept) {
      count[src1] -= 1.0;
      count[src2] -= 1.0;
      count[dst1] += 1.0;
      count[dst2] += 1.0;
    }
    if (step >= burn_in) {
      for (std::size_t i = 0; i < count.size(); ++i) accum[i] += count[i];
      ++averaged;
    }
  }
  for (double& a : accum) a /= (static_cast<double>(averaged) * slots);
  return accum;
}

// Entropy difference of the m-th multiplet gas between volumes V and V0 at
// equal energy: k (E / m h nu) ln(V / V0), the geometrical-probability form.
struct VolumeComparison {
  double v_cm3;
  double v0_cm3;
  int multiplet_order;
  double band_energy_erg;  // E(m), total energy of the gas in the band
};

inline double volume_entropy_difference(const VolumeComparison& vc,
                                        double nu_hz,
                                        const PhysicalConstants& pc) {
  if (!(vc.v_cm3 > 0.0) || !(vc.v0_cm3 > 0.0) || vc.v_cm3 > vc.v0_cm3) {
    throw std::domain_error("volume_entropy_difference: 0 < V <= V0 required");
  }
  if (vc.multiplet_order < 1) {
    throw std::domain_error("volume_entropy_difference: m >= 1 required");
  }
  const double quanta = vc.band_energy_erg / (vc.multiplet_order * pc.h * nu_hz);
  return pc.k * quanta * std::log(vc.v_cm3 / vc.v0_cm3);
}

}  // namespace planckian::thermo
