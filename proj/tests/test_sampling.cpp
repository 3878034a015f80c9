#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "planckian/sampling.hpp"

using namespace planckian;
using namespace planckian::sampling;

TEST_CASE("bit generator reproduces the published reference outputs") {
  // SplitMix64 from seed 0 (reference implementation outputs).
  SplitMix64 zero(RandomStream{0, 0});
  CHECK(zero.next() == 0xE220A8397B1DCDAFull);
  CHECK(zero.next() == 0x6E789E6AA1B965F4ull);
  CHECK(zero.next() == 0x06C45D188009454Full);

  SplitMix64 g42(RandomStream{42, 0});
  CHECK(g42.next() == 0xBDD732262FEB6E95ull);
  CHECK(g42.next() == 0x28EFE333B266F103ull);
  CHECK(g42.next() == 0x47526757130F9F52ull);

  // Substream origins.
  SplitMix64 sub1(RandomStream{42, 1});
  CHECK(sub1.next() == 0x9533F6C0A8845A26ull);
  CHECK(sub1.next() == 0xC009BAE4829EA116ull);
  SplitMix64 sub2(RandomStream{42, 2});
  CHECK(sub2.next() == 0xABCCB92F2CE5A710ull);
  CHECK(sub2.next() == 0x4EFB76ED7892CD46ull);

  // Unit doubles are the top 53 bits scaled by 2^-53, exactly.
  SplitMix64 u42(RandomStream{42, 0});
  CHECK(u42.next_unit() == 0.74156487877182331);
  CHECK(u42.next_unit() == 0.15991039287692010);
  CHECK(u42.next_unit() == 0.27860113025513866);
}

TEST_CASE("batches are reproducible bit for bit") {
  const auto p = ModeParams::from_beta(1.0);
  const auto a = sample_family(VariableFamily::gauss(), p, 1000,
                               RandomStream{99, 3});
  const auto b = sample_family(VariableFamily::gauss(), p, 1000,
                               RandomStream{99, 3});
  CHECK(a.values == b.values);
  const auto c = sample_family(VariableFamily::gauss(), p, 1000,
                               RandomStream{99, 4});
  CHECK(a.values != c.values);
}

TEST_CASE("chaotic amplitude synthesis") {
  // A single Rademacher term is +-1.
  for (std::uint64_t sub = 0; sub < 8; ++sub) {
    const auto amp = sample_chaotic_amplitude(1, AmplitudeBase::Rademacher,
                                              RandomStream{5, sub});
    CHECK(std::abs(amp.cosine) == 1.0);
    CHECK(std::abs(amp.sine) == 1.0);
    CHECK(amp.phase >= 0.0);
    CHECK(amp.phase < 2.0 * M_PI);
    CHECK(amp.phase ==
          Catch::Approx(std::fmod(std::atan2(amp.sine, amp.cosine) + 2.0 * M_PI,
                                  2.0 * M_PI))
              .margin(1e-15));
  }

  // CLT: 1e5 draws of a 4096-term quadrature behave like standard normals.
  const int n_draws = 100000;
  const int n_terms = 4096;
  std::vector<double> draws;
  draws.reserve(n_draws);
  double mean = 0.0;
  for (int i = 0; i < n_draws; ++i) {
    const auto amp =
        sample_chaotic_amplitude(n_terms, AmplitudeBase::Uniform,
                                 RandomStream{2024, static_cast<std::uint64_t>(i)});
    draws.push_back(amp.cosine);
    mean += amp.cosine;
  }
  mean /= n_draws;
  CHECK(std::abs(mean) < 5.0 / std::sqrt(static_cast<double>(n_draws)));

  std::sort(draws.begin(), draws.end());
  double d = 0.0;
  const double n = static_cast<double>(n_draws);
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const double cdf = normal_cdf(draws[i]);
    d = std::max(d, std::max((i + 1.0) / n - cdf, cdf - i / n));
  }
  CHECK(d < kolmogorov_critical(0.01) / std::sqrt(n));
}

TEST_CASE("family samplers: support") {
  const auto p = ModeParams::from_beta(0.7);
  const auto dark =
      sample_family(VariableFamily::dark(), p, 20000, RandomStream{1, 0});
  for (double v : dark.values) {
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
  const auto planck =
      sample_family(VariableFamily::planck(), p, 20000, RandomStream{1, 1});
  for (double v : planck.values) {
    CHECK(v == std::floor(v));
    CHECK(v >= 0.0);
  }
  const auto binary =
      sample_family(VariableFamily::binary(3), p, 20000, RandomStream{1, 2});
  for (double v : binary.values) {
    CHECK((v == 0.0 || v == 8.0));
  }
  const auto multiplet = sample_family(VariableFamily::multiplet(3), p, 20000,
                                       RandomStream{1, 3});
  for (double v : multiplet.values) {
    CHECK(v == 3.0 * std::round(v / 3.0));
  }
  CHECK_THROWS_AS(sample_family(VariableFamily::gauss(), p, 0,
                                RandomStream{1, 4}),
                  std::domain_error);
}

TEST_CASE("planck batch: zero-class frequency within the 5-sigma band") {
  const auto p = ModeParams::from_beta(1.0);
  const auto batch = sample_family(VariableFamily::planck(), p, 1000000,
                                   RandomStream{42, 0});
  double zeros = 0.0;
  for (double v : batch.values) zeros += (v == 0.0);
  const double phat = zeros / 1e6;
  const double exact = 0.6321205588285577;
  const double sigma = std::sqrt(exact * (1.0 - exact) / 1e6);
  CHECK(std::abs(phat - exact) < 5.0 * sigma);
}

TEST_CASE("composite sums converge to the Planck mean") {
  const auto p = ModeParams::from_beta(1.0);
  const std::size_t n = 1000000;
  const double nbar = 0.58197670686932642;
  const double se = std::sqrt(0.92067359420779232 / static_cast<double>(n));

  const auto bsum = sample_binary_sum(p, n, RandomStream{42, 1}, 40);
  CHECK_FALSE(bsum.truncation_warning);
  double mean = 0.0;
  for (double v : bsum.values) mean += v;
  mean /= static_cast<double>(n);
  CHECK(std::abs(mean - nbar) < 5.0 * se);

  const auto msum = sample_multiplet_sum(p, n, RandomStream{42, 2},
                                         default_multiplet_truncation(p));
  CHECK_FALSE(msum.truncation_warning);
  mean = 0.0;
  for (double v : msum.values) mean += v;
  mean /= static_cast<double>(n);
  CHECK(std::abs(mean - nbar) < 5.0 * se);
}

TEST_CASE("default truncation rules") {
  const auto p1 = ModeParams::from_beta(1.0);
  const int s_max = default_binary_truncation(p1);
  CHECK(std::ldexp(p1.beta(), s_max) > 50.0);
  CHECK(std::ldexp(p1.beta(), s_max - 1) <= 50.0);

  const int m_max = default_multiplet_truncation(p1);
  const double one_minus_b = -std::expm1(-1.0);
  CHECK(std::exp(-static_cast<double>(m_max)) / (m_max * one_minus_b) <
        1e-12);

  // Deliberately tiny truncation raises the tail-mass warning.
  const auto p01 = ModeParams::from_beta(0.1);
  CHECK(sample_binary_sum(p01, 10, RandomStream{3, 0}, 2).truncation_warning);
  CHECK(sample_multiplet_sum(p01, 10, RandomStream{3, 1}, 3)
            .truncation_warning);
}

TEST_CASE("coupled sampler: exact coupling and decomposition marginals") {
  const auto p = ModeParams::from_beta(1.0);
  const std::size_t n = 1000000;
  const auto batch = sample_coupled(p, n, RandomStream{42, 7});

  for (std::size_t i = 0; i < 1000; ++i) {
    CHECK(static_cast<double>(batch.integer_parts[i]) + batch.fractions[i] ==
          batch.values[i]);
    CHECK(batch.bit_words[i] == batch.integer_parts[i]);
  }

  // Bit marginal at s = 0.
  double hits = 0.0;
  for (std::uint64_t w : batch.bit_words) hits += (w & 1u);
  const double exact = 0.26894142136999512;
  const double sigma = std::sqrt(exact * (1.0 - exact) / static_cast<double>(n));
  CHECK(std::abs(hits / static_cast<double>(n) - exact) < 5.0 * sigma);

  // Bits 0 and 1 are uncorrelated.
  double p0 = 0.0, p1 = 0.0, joint = 0.0;
  for (std::uint64_t w : batch.bit_words) {
    p0 += (w & 1u);
    p1 += (w >> 1 & 1u);
    joint += ((w & 1u) & (w >> 1 & 1u));
  }
  p0 /= static_cast<double>(n);
  p1 /= static_cast<double>(n);
  joint /= static_cast<double>(n);
  const double corr = (joint - p0 * p1) /
                      std::sqrt(p0 * (1.0 - p0) * p1 * (1.0 - p1));
  CHECK(std::abs(corr) < 5.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("goodness of fit: self-consistency at seed 42") {
  const std::size_t n = 1000000;
  const auto p = ModeParams::from_beta(1.0);
  const VariableFamily families[] = {
      VariableFamily::gauss(), VariableFamily::dark(),
      VariableFamily::planck(), VariableFamily::binary(0),
      VariableFamily::multiplet(1)};
  std::uint64_t slot = 0;
  for (const auto& f : families) {
    const auto batch = sample_family(f, p, n, RandomStream{42, slot++});
    const auto gof = goodness_of_fit(batch);
    CAPTURE(f.name(), gof.statistic, gof.threshold);
    CHECK(gof.pass);
  }
}

TEST_CASE("goodness of fit: detects a wrong parameter") {
  const auto p1 = ModeParams::from_beta(1.0);
  const auto p2 = ModeParams::from_beta(2.0);
  const auto batch = sample_family(VariableFamily::planck(), p1, 1000000,
                                   RandomStream{42, 11});
  const auto gof = goodness_of_fit(batch, VariableFamily::planck(), p2);
  CHECK_FALSE(gof.pass);
  CHECK(gof.statistic > 100.0 * gof.threshold);
}

TEST_CASE("goodness of fit: degenerate class merge stays finite") {
  // Nearly all mass at n = 0; classes collapse to a vacuous single cell.
  const auto p = ModeParams::from_beta(20.0);
  const auto batch = sample_family(VariableFamily::planck(), p, 100000,
                                   RandomStream{42, 12});
  const auto gof = goodness_of_fit(batch);
  CHECK(std::isfinite(gof.statistic));
  CHECK(gof.pass);
  CHECK(gof.dof == 0);

  CHECK_THROWS_AS(
      goodness_of_fit(SampleBatch{VariableFamily::planck(), p,
                                  BatchKind::Single, RandomStream{0, 0},
                                  {}, false, {}, {}, {}}),
      std::domain_error);
}

TEST_CASE("goodness of fit: at least 9 of 10 seeds pass per family") {
  const std::size_t n = 1000000;
  const VariableFamily families[] = {
      VariableFamily::gauss(), VariableFamily::dark(),
      VariableFamily::planck(), VariableFamily::binary(0),
      VariableFamily::multiplet(1)};
  for (double beta : {0.1, 1.0, 5.0}) {
    const auto p = ModeParams::from_beta(beta);
    std::uint64_t slot = 100;
    for (const auto& f : families) {
      int passes = 0;
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto batch = sample_family(f, p, n, RandomStream{seed, slot});
        if (goodness_of_fit(batch).pass) ++passes;
      }
      CAPTURE(beta, f.name());
      CHECK(passes >= 9);
      ++slot;
    }
  }
}
