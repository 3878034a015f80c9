#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "planckian/numerics.hpp"

using namespace planckian;

TEST_CASE("logistic is stable over the full range") {
  CHECK(logistic(0.0) == 0.5);
  CHECK(logistic(-1.0) == Catch::Approx(0.26894142136999512).epsilon(1e-15));
  CHECK(logistic(1000.0) == 1.0);
  CHECK(logistic(-1000.0) == 0.0);
  CHECK(std::isfinite(logistic(-1e9)));
  CHECK(fermi_occupation(2.0) ==
        Catch::Approx(0.11920292202211756).epsilon(1e-15));
}

TEST_CASE("adaptive quadrature integrates smooth functions") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-13) ==
        Catch::Approx(1.0 / 3.0).margin(1e-12));
  CHECK(integrate([](double x) { return std::exp(-x); }, 0.0, 40.0, 1e-13) ==
        Catch::Approx(1.0).margin(1e-11));
}

TEST_CASE("regularized incomplete gamma matches erf on half-integer a") {
  // P(1/2, x) = erf(sqrt(x)).
  for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    CHECK(regularized_gamma_p(0.5, x) ==
          Catch::Approx(std::erf(std::sqrt(x))).epsilon(1e-12));
  }
  CHECK(regularized_gamma_p(3.0, 0.0) == 0.0);
  CHECK(regularized_gamma_q(3.0, 100.0) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("chi-square quantiles at the 1% level match reference values") {
  CHECK(chi_square_quantile(0.99, 1) ==
        Catch::Approx(6.6348966010212151).epsilon(1e-10));
  CHECK(chi_square_quantile(0.99, 2) ==
        Catch::Approx(9.2103403719761827).epsilon(1e-10));
  CHECK(chi_square_quantile(0.99, 5) ==
        Catch::Approx(15.086272469388990).epsilon(1e-10));
  CHECK(chi_square_quantile(0.99, 9) ==
        Catch::Approx(21.665994333461926).epsilon(1e-10));
  CHECK_THROWS_AS(chi_square_quantile(1.5, 3), std::domain_error);
}

TEST_CASE("Kolmogorov distribution and its 1% critical value") {
  const double crit = kolmogorov_critical(0.01);
  CHECK(crit == Catch::Approx(1.6276236115189503).epsilon(1e-9));
  CHECK(kolmogorov_survival(crit) == Catch::Approx(0.01).epsilon(1e-9));
  CHECK(kolmogorov_survival(0.0) == 1.0);
  CHECK(kolmogorov_survival(10.0) == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("normal cdf sanity") {
  CHECK(normal_cdf(0.0) == Catch::Approx(0.5).epsilon(1e-15));
  CHECK(normal_cdf(1.6448536269514722) ==
        Catch::Approx(0.95).epsilon(1e-12));
}
