#include <doctest.h>

#include <cmath>
#include <vector>

#include "gls/errors.hpp"
#include "gls/fundamental.hpp"
#include "gls/sharpness.hpp"

using namespace gls;

TEST_CASE("Lebesgue fundamental function") {
  const auto r = fundamental_function(make_degenerate_psi(2), 0.01);
  CHECK(r.value == 0.1);
  REQUIRE(r.argmax_p);
  CHECK(*r.argmax_p == 2.0);
  CHECK(fundamental_function(make_degenerate_psi(3), 0.125).value == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("exponent family maximiser") {
  const auto r = fundamental_function(make_exponent_psi(1), std::exp(-10.0));
  CHECK(r.value == doctest::Approx(std::exp(-1.0) / 10.0).epsilon(1e-9));
  REQUIRE(r.argmax_p);
  CHECK(*r.argmax_p == doctest::Approx(10.0).epsilon(1e-4));
}

TEST_CASE("delta = 1 gives sup 1/psi") {
  CHECK(fundamental_function(make_power_psi(1, 3, 1, 1), 1.0).value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("truncated fundamental function") {
  const auto psi = make_exponent_psi(1);
  double oracle = 0.0;
  for (int i = 0; i < 200000; ++i) {
    const double p = 2.0 + 2.0 * i / 200000.0;
    oracle = std::max(oracle, std::pow(0.5, 1.0 / p) / p);
  }
  CHECK(truncated_fundamental(psi, 2, 4, 0.5).value == doctest::Approx(oracle).epsilon(1e-8));

  const auto power = make_power_psi(2, 3, 0.5, 1);
  CHECK(truncated_fundamental(power, 1, 10, 0.01).value ==
        doctest::Approx(fundamental_function(power, 0.01).value).epsilon(1e-12));

  const auto empty = truncated_fundamental(make_power_psi(2, 3, 0, 1), 4, 5, 0.5);
  CHECK(empty.value == kInf);
  CHECK_FALSE(empty.argmax_p);

  CHECK(truncated_fundamental(make_degenerate_psi(3), 2, 4, 0.001).value == doctest::Approx(0.1));
  CHECK(truncated_fundamental(make_degenerate_psi(3), 4, 5, 0.001).value == kInf);
}

TEST_CASE("closed-form asymptotics") {
  CHECK(asymptotic_fundamental(FamilyDescriptor::exponent(1), std::exp(-10.0)) ==
        doctest::Approx(std::exp(-1.0) / 10.0).epsilon(1e-14));
  CHECK(asymptotic_fundamental(FamilyDescriptor::power(2, 1), std::exp(-100.0)) ==
        doctest::Approx(0.25 * std::exp(-50.0) / 100.0).epsilon(1e-14));
  CHECK(asymptotic_fundamental(FamilyDescriptor::exponent(2), std::exp(-100.0)) ==
        doctest::Approx(std::exp(-2.0) * 4e-4).epsilon(1e-14));
  CHECK_THROWS_AS(asymptotic_fundamental(FamilyDescriptor::power(2, 1, 0.5), 1e-3), UnsupportedFamily);
  CHECK_THROWS_AS(asymptotic_fundamental(FamilyDescriptor::of(make_degenerate_psi(2)), 1e-3), UnsupportedFamily);
  CHECK(FamilyDescriptor::of(make_exponent_psi(1.5)).beta == 1.5);
}

TEST_CASE("monotone in delta") {
  const PsiFunction all[] = {make_exponent_psi(0.5), make_power_psi(1, 4, 1, 2), make_degenerate_psi(2.5)};
  for (const auto& psi : all) {
    double prev = 0.0;
    for (double delta = 1e-12; delta < 1.0; delta *= 3.0) {
      const double v = fundamental_function(psi, delta).value;
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("exponent family slope against |log delta|") {
  for (double beta : {0.5, 1.0, 2.0}) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (int k = 20; k <= 200; k += 10) {
      xs.push_back(std::log(static_cast<double>(k)));
      ys.push_back(std::log(fundamental_function(make_exponent_psi(beta), std::exp(-k)).value));
    }
    CHECK(fit_slope(xs, ys) == doctest::Approx(-beta).epsilon(0.02));
  }
}

TEST_CASE("delta must be positive") {
  CHECK_THROWS_AS(fundamental_function(make_exponent_psi(1), 0.0), InvalidParameter);
  CHECK_THROWS_AS(fundamental_function(make_exponent_psi(1), -1.0), InvalidParameter);
}
