#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "planckian/decomposition.hpp"
#include "planckian/distributions.hpp"
#include "planckian/random.hpp"

using namespace planckian;
using namespace planckian::decomposition;

TEST_CASE("integer/fraction split") {
  auto r = split_integer_fraction(9.25);
  CHECK(r.integer_part == 9);
  CHECK(r.fraction == 0.25);
  r = split_integer_fraction(0.999);
  CHECK(r.integer_part == 0);
  CHECK(r.fraction == 0.999);
  r = split_integer_fraction(3.0);
  CHECK(r.integer_part == 3);
  CHECK(r.fraction == 0.0);
  CHECK_THROWS_AS(split_integer_fraction(-0.5), std::domain_error);
  CHECK_THROWS_AS(split_integer_fraction(
                      std::numeric_limits<double>::infinity()),
                  std::domain_error);

  // Reconstruction is exact in floating point below 2^53.
  SplitMix64 gen(RandomStream{7, 0});
  for (int i = 0; i < 10000; ++i) {
    const double y = gen.next_unit() * 4.5e15;
    const auto s = split_integer_fraction(y);
    CHECK(static_cast<double>(s.integer_part) + s.fraction == y);
    CHECK(s.fraction >= 0.0);
    CHECK(s.fraction < 1.0);
  }
}

TEST_CASE("dyadic expansion and reconstruction") {
  CHECK(dyadic_expansion(9).bits == std::vector<int>{0, 3});
  CHECK(dyadic_expansion(0).bits.empty());
  for (int k = 0; k <= 40; ++k) {
    CHECK(dyadic_expansion(std::uint64_t{1} << k).bits ==
          std::vector<int>{k});
  }
  for (std::uint64_t n = 0; n <= 1000000; ++n) {
    if (reconstruct(dyadic_expansion(n)) != n) {
      FAIL("round-trip failed at " << n);
    }
  }
}

TEST_CASE("event probabilities reproduce the level pmf") {
  const auto p = ModeParams::from_beta(1.0);
  const double b = p.b();
  CHECK(event_probability(BinaryEvent::excitation_level(9), p) ==
        Catch::Approx((1.0 - b) * std::pow(b, 9.0)).epsilon(1e-12));
  CHECK(event_probability(BinaryEvent::excitation_level(0), p) ==
        Catch::Approx(1.0 - b).epsilon(1e-12));

  for (double beta : {0.1, 1.0, 5.0}) {
    const auto q = ModeParams::from_beta(beta);
    for (std::uint64_t n = 0; n < 1024; ++n) {
      const double via_events = event_log_probability(
          BinaryEvent::excitation_level(n), q);
      const double direct =
          distributions::planck_log_pmf(static_cast<std::int64_t>(n), q);
      if (std::exp(direct) == 0.0 && std::exp(via_events) == 0.0) continue;
      if (std::abs(std::expm1(via_events - direct)) > 1e-12) {
        CAPTURE(beta, n);
        FAIL("event probability mismatch");
      }
    }
  }
}

TEST_CASE("contradictory atoms carry probability zero") {
  const auto p = ModeParams::from_beta(1.0);
  const auto bad = BinaryEvent::atom({{2, ComponentState::Occupied},
                                      {2, ComponentState::Empty}},
                                     TailPolicy::Free);
  CHECK(bad.impossible());
  CHECK(event_probability(bad, p) == 0.0);
}

TEST_CASE("union of events by inclusion-exclusion") {
  const auto p = ModeParams::from_beta(1.0);
  const double b = p.b();
  const double closed = (1.0 - b) * (b + std::pow(b, 8.0) + std::pow(b, 9.0));
  CHECK(closed == Catch::Approx(0.23283422063296966).epsilon(1e-14));

  // As a disjoint union of excitation levels.
  const double via_levels = event_probability(
      BinaryEvent::union_of({BinaryEvent::excitation_level(1),
                             BinaryEvent::excitation_level(8),
                             BinaryEvent::excitation_level(9)}),
      p);
  CHECK(via_levels == Catch::Approx(closed).epsilon(1e-13));

  // As the non-exclusive alternative (A_0 + A_3) with the rest empty.
  const auto u1 = BinaryEvent::atom(
      {{0, ComponentState::Occupied}, {3, ComponentState::Unconstrained}},
      TailPolicy::EmptyBeyond);
  const auto u2 = BinaryEvent::atom(
      {{3, ComponentState::Occupied}, {0, ComponentState::Unconstrained}},
      TailPolicy::EmptyBeyond);
  const double via_atoms =
      event_probability(BinaryEvent::union_of({u1, u2}), p);
  CHECK(via_atoms == Catch::Approx(closed).epsilon(1e-13));

  // The overlap is exactly the doubly-excited level event.
  const auto both = BinaryEvent::intersect(u1, u2);
  CHECK(event_probability(both, p) ==
        Catch::Approx(event_probability(BinaryEvent::excitation_level(9), p))
            .epsilon(1e-13));

  CHECK_THROWS_AS(
      BinaryEvent::union_of({BinaryEvent::union_of({u1}), u2}),
      std::invalid_argument);
}

TEST_CASE("level events are mutually exclusive") {
  const auto p = ModeParams::from_beta(0.7);
  const auto meet = BinaryEvent::intersect(BinaryEvent::excitation_level(5),
                                           BinaryEvent::excitation_level(6));
  CHECK(meet.impossible());
  CHECK(event_probability(meet, p) == 0.0);
}

TEST_CASE("planck pmf via binaries") {
  const auto p = ModeParams::from_beta(1.0);
  CHECK(planck_pmf_via_binaries(9, p, 40) ==
        Catch::Approx(distributions::planck_pmf(9, p)).epsilon(1e-12));
  CHECK(planck_pmf_via_binaries(0, p, 40) ==
        Catch::Approx(-std::expm1(-1.0)).epsilon(1e-12));
  CHECK_THROWS_AS(planck_pmf_via_binaries(std::uint64_t{1} << 41, p, 40),
                  std::domain_error);
}

TEST_CASE("characteristic-function factorizations") {
  std::vector<double> grid;
  for (double t = -20.0; t <= 20.0 + 1e-9; t += 0.1) grid.push_back(t);

  for (double beta : {0.1, 1.0, 5.0}) {
    const auto p = ModeParams::from_beta(beta);
    CAPTURE(beta);
    CHECK(cf_factorization_residual(
              FactorizationKind::GaussEqualsDarkTimesPlanck, grid, p, 0) <
          1e-12);
    CHECK(cf_factorization_residual(
              FactorizationKind::PlanckEqualsBinaryProduct, grid, p, 40) <
          1e-12);
    CHECK(cf_factorization_residual(
              FactorizationKind::PlanckEqualsMultipletProduct, grid, p,
              2000) < 1e-12);
  }

  // All characteristic functions are 1 at t = 0.
  const std::vector<double> zero{0.0};
  const auto p = ModeParams::from_beta(1.0);
  for (auto kind : {FactorizationKind::GaussEqualsDarkTimesPlanck,
                    FactorizationKind::PlanckEqualsBinaryProduct,
                    FactorizationKind::PlanckEqualsMultipletProduct}) {
    CHECK(cf_factorization_residual(kind, zero, p, 10) < 1e-15);
  }
}

TEST_CASE("binary-product residual is non-increasing past the active bits") {
  std::vector<double> grid;
  for (double t = -20.0; t <= 20.0 + 1e-9; t += 0.5) grid.push_back(t);
  const auto p = ModeParams::from_beta(1.0);
  // 2^s beta > 50 from s = 6 on.
  double prev = cf_factorization_residual(
      FactorizationKind::PlanckEqualsBinaryProduct, grid, p, 6);
  for (int s_max = 7; s_max <= 20; ++s_max) {
    const double cur = cf_factorization_residual(
        FactorizationKind::PlanckEqualsBinaryProduct, grid, p, s_max);
    CHECK(cur <= prev + 1e-16);
    prev = cur;
  }
}

TEST_CASE("poisson exponent series partial sums") {
  const auto p = ModeParams::from_beta(1.0);
  CHECK(std::abs(poisson_logcf_partial(0.0, p, 50)) == 0.0);

  const auto planck_cf = distributions::characteristic_function(
      VariableFamily::planck(), 1.0, p);
  const auto partial = poisson_logcf_partial(1.0, p, 200);
  CHECK(std::abs(partial - std::log(planck_cf)) < 1e-12);

  // Geometric tail bound on the dropped terms.
  const double b = p.b();
  for (int m_cut : {5, 10, 20}) {
    const auto full = poisson_logcf_partial(1.0, p, 2000);
    const auto head = poisson_logcf_partial(1.0, p, m_cut);
    const double bound =
        2.0 * std::pow(b, m_cut + 1) / ((m_cut + 1) * (1.0 - b));
    CHECK(std::abs(full - head) <= bound);
  }
}
