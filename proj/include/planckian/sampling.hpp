#pragma once

// Seeded Monte Carlo generation of the five families, the coupled
// integer/fraction/bit decomposition sampler, central-limit amplitude
// synthesis, and goodness-of-fit statistics (chi-square for the discrete
// laws, Kolmogorov-Smirnov for the continuous ones).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "planckian/decomposition.hpp"
#include "planckian/distributions.hpp"
#include "planckian/families.hpp"
#include "planckian/mode_params.hpp"
#include "planckian/numerics.hpp"
#include "planckian/random.hpp"

namespace planckian::sampling {

enum class AmplitudeBase { Uniform, Rademacher };

// One synthesized chaotic amplitude: the two quadratures are normalized sums
// of n_terms iid zero-mean unit-variance draws, so they approach standard
// Gaussians by the central limit theorem.
struct ChaoticAmplitude {
  double cosine;  // a_c, units of the scale parameter
  double sine;    // a_s
  double phase;   // arg(a_c + i a_s), in [0, 2 pi)
  double scale;   // root-mean-square amplitude a
};

namespace detail {

inline double base_draw(AmplitudeBase base, SplitMix64& gen) {
  if (base == AmplitudeBase::Rademacher) {
    return gen.next_bool() ? 1.0 : -1.0;
  }
  // Uniform on [-sqrt(3), sqrt(3)]: zero mean, unit variance.
  return (2.0 * gen.next_unit() - 1.0) * 1.7320508075688772;
}

inline double quadrature(int n_terms, AmplitudeBase base, SplitMix64 gen) {
  double sum = 0.0;
  for (int i = 0; i < n_terms; ++i) sum += base_draw(base, gen);
  return sum / std::sqrt(static_cast<double>(n_terms));
}

// Exponential with rate beta; 1 - u never hits zero because u < 1.
inline double exponential_draw(double beta, SplitMix64& gen) {
  return -std::log1p(-gen.next_unit()) / beta;
}

// Inverse CDF of the truncated exponential on [0, 1).
inline double dark_draw(const ModeParams& p, SplitMix64& gen) {
  const double one_minus_b = -std::expm1(-p.beta());
  return -std::log1p(-gen.next_unit() * one_minus_b) / p.beta();
}

// Poisson by sequential-search inversion; every multiplet rate is below 1,
// so the search terminates after a couple of steps.
inline std::int64_t poisson_draw(double lambda, SplitMix64& gen) {
  const double u = gen.next_unit();
  double pmf = std::exp(-lambda);
  double cdf = pmf;
  std::int64_t l = 0;
  while (u >= cdf && l < 1000000) {
    ++l;
    pmf *= lambda / static_cast<double>(l);
    cdf += pmf;
  }
  return l;
}

}  // namespace detail

// The quadratures consume substreams 2k and 2k+1 of the caller's stream, so
// distinct caller substreams stay disjoint.
inline ChaoticAmplitude sample_chaotic_amplitude(int n_terms,
                                                 AmplitudeBase base,
                                                 RandomStream rs,
                                                 double scale = 1.0) {
  if (n_terms < 1) {
    throw std::domain_error("sample_chaotic_amplitude: n_terms >= 1 required");
  }
  const RandomStream base_stream{rs.seed, rs.substream * 2};
  const double a_c =
      scale * detail::quadrature(n_terms, base, SplitMix64(base_stream));
  const double a_s = scale * detail::quadrature(n_terms, base,
                                                SplitMix64(base_stream.child(1)));
  double phase = std::atan2(a_s, a_c);
  if (phase < 0.0) phase += 2.0 * M_PI;
  return {a_c, a_s, phase, scale};
}

enum class BatchKind { Single, BinarySum, MultipletSum, Coupled };

struct SampleBatch {
  VariableFamily family;
  ModeParams params;
  BatchKind kind = BatchKind::Single;
  RandomStream stream;
  std::vector<double> values;
  bool truncation_warning = false;

  // Coupled decomposition, filled by sample_coupled: values hold the Gauss
  // draws, and element-wise value = integer_part + fraction with
  // bit_words the dyadic bits of the integer part.
  std::vector<std::uint64_t> integer_parts;
  std::vector<double> fractions;
  std::vector<std::uint64_t> bit_words;
};

// Smallest s_max with 2^s_max beta > 50, so the dropped binary components
// carry occupation below e^-50.
inline int default_binary_truncation(const ModeParams& p) {
  int s = 0;
  while (std::ldexp(p.beta(), s) <= 50.0 && s < 62) ++s;
  return s;
}

// Smallest m_max with b^m_max / (m_max (1 - b)) < 1e-12, bounding the total
// rate of the dropped Poisson components.
inline int default_multiplet_truncation(const ModeParams& p) {
  const double one_minus_b = -std::expm1(-p.beta());
  int m = 1;
  while (std::exp(-p.beta() * m) / (m * one_minus_b) >= 1e-12 && m < 1000000) {
    ++m;
  }
  return m;
}

// Draws with the family's exact law: exponential inversion for Gauss,
// truncated-exponential inversion for Dark, the floor of an exponential for
// Planck, a Bernoulli two-point draw for Binary(s), and Poisson inversion
// for Multiplet(m) (values l m).
inline SampleBatch sample_family(const VariableFamily& f, const ModeParams& p,
                                 std::size_t count, RandomStream rs) {
  if (count == 0) throw std::domain_error("sample_family: count >= 1");
  SampleBatch batch{f, p, BatchKind::Single, rs, {}, false, {}, {}, {}};
  batch.values.reserve(count);
  SplitMix64 gen(rs);
  switch (f.kind()) {
    case VariableFamily::Kind::Gauss:
      for (std::size_t i = 0; i < count; ++i) {
        batch.values.push_back(detail::exponential_draw(p.beta(), gen));
      }
      break;
    case VariableFamily::Kind::Dark:
      for (std::size_t i = 0; i < count; ++i) {
        batch.values.push_back(detail::dark_draw(p, gen));
      }
      break;
    case VariableFamily::Kind::Planck:
      for (std::size_t i = 0; i < count; ++i) {
        batch.values.push_back(
            std::floor(detail::exponential_draw(p.beta(), gen)));
      }
      break;
    case VariableFamily::Kind::Binary: {
      const double occ =
          distributions::binary_mean_occupation(f.binary_index(), p);
      const double value = std::ldexp(1.0, f.binary_index());
      for (std::size_t i = 0; i < count; ++i) {
        batch.values.push_back(gen.next_unit() < occ ? value : 0.0);
      }
      break;
    }
    case VariableFamily::Kind::Multiplet: {
      const int m = f.multiplet_order();
      const double lambda = distributions::multiplet_rate(m, p);
      for (std::size_t i = 0; i < count; ++i) {
        batch.values.push_back(
            static_cast<double>(m * detail::poisson_draw(lambda, gen)));
      }
      break;
    }
  }
  return batch;
}

// Sum of the binary components u_s for s <= s_max; distributed as the Planck
// variable up to the truncated tail.
inline SampleBatch sample_binary_sum(const ModeParams& p, std::size_t count,
                                     RandomStream rs, int s_max) {
  if (count == 0) throw std::domain_error("sample_binary_sum: count >= 1");
  if (s_max < 0 || s_max > 62) {
    throw std::domain_error("sample_binary_sum: s_max in [0, 62]");
  }
  SampleBatch batch{VariableFamily::planck(), p, BatchKind::BinarySum,
                    rs,                       {}, false,
                    {},                       {}, {}};
  // Tail mass: P(any component beyond s_max occupied).
  double tail = 0.0;
  for (int s = s_max + 1; s < s_max + 64 && s <= 62; ++s) {
    tail += distributions::binary_mean_occupation(s, p);
    if (tail > 0.0 &&
        distributions::binary_mean_occupation(s, p) < kSeriesTailCutoff * tail)
      break;
  }
  batch.truncation_warning = tail > 1e-12;

  std::vector<double> occ(static_cast<std::size_t>(s_max) + 1);
  for (int s = 0; s <= s_max; ++s) {
    occ[s] = distributions::binary_mean_occupation(s, p);
  }
  batch.values.reserve(count);
  batch.bit_words.reserve(count);
  SplitMix64 gen(rs);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t word = 0;
    double sum = 0.0;
    for (int s = 0; s <= s_max; ++s) {
      if (gen.next_unit() < occ[s]) {
        word |= std::uint64_t{1} << s;
        sum += std::ldexp(1.0, s);
      }
    }
    batch.values.push_back(sum);
    batch.bit_words.push_back(word);
  }
  return batch;
}

// Sum of the Poisson components m x_m for m <= m_max; distributed as the
// Planck variable up to the truncated tail.
inline SampleBatch sample_multiplet_sum(const ModeParams& p, std::size_t count,
                                        RandomStream rs, int m_max) {
  if (count == 0) throw std::domain_error("sample_multiplet_sum: count >= 1");
  if (m_max < 1) throw std::domain_error("sample_multiplet_sum: m_max >= 1");
  SampleBatch batch{VariableFamily::planck(), p, BatchKind::MultipletSum,
                    rs,                       {}, false,
                    {},                       {}, {}};
  const double one_minus_b = -std::expm1(-p.beta());
  batch.truncation_warning =
      std::exp(-p.beta() * (m_max + 1)) / ((m_max + 1) * one_minus_b) > 1e-12;

  std::vector<double> lambda(static_cast<std::size_t>(m_max) + 1, 0.0);
  for (int m = 1; m <= m_max; ++m) {
    lambda[m] = distributions::multiplet_rate(m, p);
  }
  batch.values.reserve(count);
  SplitMix64 gen(rs);
  for (std::size_t i = 0; i < count; ++i) {
    double sum = 0.0;
    for (int m = 1; m <= m_max; ++m) {
      const std::int64_t l = detail::poisson_draw(lambda[m], gen);
      if (l != 0) sum += static_cast<double>(m) * static_cast<double>(l);
    }
    batch.values.push_back(sum);
  }
  return batch;
}

// One exponential draw per sample, split into integer part, fraction and the
// dyadic bits of the integer part. The marginals follow the Gauss, Planck,
// Dark and Bernoulli laws respectively.
inline SampleBatch sample_coupled(const ModeParams& p, std::size_t count,
                                  RandomStream rs) {
  if (count == 0) throw std::domain_error("sample_coupled: count >= 1");
  SampleBatch batch{VariableFamily::gauss(), p, BatchKind::Coupled,
                    rs,                      {}, false,
                    {},                      {}, {}};
  batch.values.reserve(count);
  batch.integer_parts.reserve(count);
  batch.fractions.reserve(count);
  batch.bit_words.reserve(count);
  SplitMix64 gen(rs);
  for (std::size_t i = 0; i < count; ++i) {
    const double eta = detail::exponential_draw(p.beta(), gen);
    const auto split = decomposition::split_integer_fraction(eta);
    batch.values.push_back(eta);
    batch.integer_parts.push_back(split.integer_part);
    batch.fractions.push_back(split.fraction);
    batch.bit_words.push_back(split.integer_part);
  }
  return batch;
}

enum class GofMethod { ChiSquare, KolmogorovSmirnov };

struct GofResult {
  double statistic;
  double threshold;  // 1% asymptotic critical value
  bool pass;
  GofMethod method;
  int dof;  // chi-square only; 0 marks a vacuous single-class test
};

namespace detail {

// Exact pmf of the reference law on its value grid. For Multiplet(m) class
// index l corresponds to the value l m.
inline double reference_pmf(const VariableFamily& f, const ModeParams& p,
                            std::int64_t index) {
  switch (f.kind()) {
    case VariableFamily::Kind::Planck:
      return distributions::planck_pmf(index, p);
    case VariableFamily::Kind::Binary: {
      const auto occ = distributions::binary_occupation(f.binary_index(), p);
      if (index == 0) return occ.p_empty;
      if (index == 1) return occ.p_occupied;
      return 0.0;
    }
    case VariableFamily::Kind::Multiplet:
      return distributions::multiplet_pmf(f.multiplet_order(), index, p);
    default:
      throw std::logic_error("reference_pmf: discrete family required");
  }
}

inline std::int64_t class_index(const VariableFamily& f, double value) {
  if (f.kind() == VariableFamily::Kind::Binary) {
    return value == 0.0 ? 0 : 1;
  }
  if (f.kind() == VariableFamily::Kind::Multiplet) {
    return static_cast<std::int64_t>(
        std::llround(value / f.multiplet_order()));
  }
  return static_cast<std::int64_t>(std::llround(value));
}

inline GofResult chi_square_gof(const std::vector<double>& values,
                                const VariableFamily& f, const ModeParams& p) {
  const double n = static_cast<double>(values.size());
  std::int64_t max_index = 0;
  for (double v : values) {
    max_index = std::max(max_index, class_index(f, v));
  }
  std::vector<double> observed(static_cast<std::size_t>(max_index) + 1, 0.0);
  for (double v : values) {
    observed[static_cast<std::size_t>(class_index(f, v))] += 1.0;
  }
  // Merge classes from the left until the remaining tail expectation drops
  // below 5; everything beyond goes into one tail class.
  std::vector<double> obs_merged;
  std::vector<double> exp_merged;
  double cum = 0.0;
  std::int64_t index = 0;
  const std::int64_t hard_stop =
      f.kind() == VariableFamily::Kind::Binary ? 1 : max_index + 1000;
  while (index <= hard_stop) {
    const double pmf = reference_pmf(f, p, index);
    const double tail_expect = n * (1.0 - cum - pmf);
    const double expect = n * pmf;
    if (expect >= 5.0 && tail_expect >= 5.0) {
      const double o = index < static_cast<std::int64_t>(observed.size())
                           ? observed[static_cast<std::size_t>(index)]
                           : 0.0;
      obs_merged.push_back(o);
      exp_merged.push_back(expect);
      cum += pmf;
      ++index;
    } else {
      break;
    }
  }
  // Tail class: everything not yet classified.
  double tail_obs = 0.0;
  for (std::int64_t i = index; i < static_cast<std::int64_t>(observed.size());
       ++i) {
    tail_obs += observed[static_cast<std::size_t>(i)];
  }
  obs_merged.push_back(tail_obs);
  exp_merged.push_back(n * (1.0 - cum));
  // The tail class itself must respect the merge rule.
  while (exp_merged.size() > 1 && exp_merged.back() < 5.0) {
    exp_merged[exp_merged.size() - 2] += exp_merged.back();
    obs_merged[obs_merged.size() - 2] += obs_merged.back();
    exp_merged.pop_back();
    obs_merged.pop_back();
  }

  if (obs_merged.size() < 2) {
    // Nearly all mass in a single class: the merged test is vacuous.
    return {0.0, 0.0, true, GofMethod::ChiSquare, 0};
  }
  double stat = 0.0;
  for (std::size_t i = 0; i < obs_merged.size(); ++i) {
    const double d = obs_merged[i] - exp_merged[i];
    stat += d * d / exp_merged[i];
  }
  const int dof = static_cast<int>(obs_merged.size()) - 1;
  const double threshold = chi_square_quantile(0.99, dof);
  return {stat, threshold, stat <= threshold, GofMethod::ChiSquare, dof};
}

inline GofResult ks_gof(const std::vector<double>& values,
                        const VariableFamily& f, const ModeParams& p) {
  std::vector<double> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = f.kind() == VariableFamily::Kind::Gauss
                           ? distributions::gauss_cdf(sorted[i], p)
                           : distributions::dark_cdf(sorted[i], p);
    d = std::max(d, std::max((i + 1.0) / n - cdf, cdf - i / n));
  }
  const double threshold = kolmogorov_critical(0.01) / std::sqrt(n);
  return {d, threshold, d <= threshold, GofMethod::KolmogorovSmirnov, 0};
}

}  // namespace detail

// Pearson chi-square (classes merged so every expected count is at least 5)
// for the discrete laws, Kolmogorov-Smirnov distance for the continuous
// ones; thresholds at the 1% asymptotic critical value.
inline GofResult goodness_of_fit(const SampleBatch& batch,
                                 const VariableFamily& reference,
                                 const ModeParams& ref_params) {
  if (batch.values.empty()) {
    throw std::domain_error("goodness_of_fit: empty batch");
  }
  if (reference.is_discrete()) {
    return detail::chi_square_gof(batch.values, reference, ref_params);
  }
  return detail::ks_gof(batch.values, reference, ref_params);
}

// Test a batch against its own law (the Planck law for the composite sums).
inline GofResult goodness_of_fit(const SampleBatch& batch) {
  return goodness_of_fit(batch, batch.family, batch.params);
}

}  // namespace planckian::sampling
