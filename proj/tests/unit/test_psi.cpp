#include <doctest.h>

#include <cmath>

#include "gls/errors.hpp"
#include "gls/psi.hpp"

using namespace gls;

TEST_CASE("power psi values and support") {
  const auto psi = make_power_psi(1, 3, 1, 1);
  CHECK(psi(2.0) == doctest::Approx(1.0));
  CHECK(psi(3.5) == kInf);
  CHECK(psi(1.0) == kInf);
  CHECK(psi(3.0) == kInf);
  CHECK(make_power_psi(1, 2, 0, 0.5)(1.75) == doctest::Approx(2.0));
  const auto s = support(psi);
  CHECK(s.lo == 1.0);
  CHECK(s.hi == 3.0);
  CHECK_FALSE(s.degenerate);
}

TEST_CASE("exponent psi") {
  CHECK(make_exponent_psi(1)(2.0) == doctest::Approx(2.0));
  CHECK(make_exponent_psi(2)(10.0) == doctest::Approx(100.0));
  CHECK(make_exponent_psi(1)(0.5) == kInf);
  const auto s = support(make_exponent_psi(1));
  CHECK(s.lo == 1.0);
  CHECK(s.hi == kInf);
}

TEST_CASE("degenerate psi is a tagged singleton") {
  const auto psi = make_degenerate_psi(2);
  CHECK(psi(2.0) == 1.0);
  CHECK(psi(2.0001) == kInf);
  CHECK(make_degenerate_psi(1)(1.0) == 1.0);
  CHECK(psi.is_degenerate());
  CHECK(support(psi).degenerate);
  CHECK(support(psi).contains(2.0));
  CHECK_FALSE(support(psi).contains(2.5));
}

TEST_CASE("slowly varying variants") {
  using K = SlowlyVaryingKind;
  CHECK(make_slowly_varying_psi(K::Exponent, 1, kInf, SlowlyVaryingSpec::constant())(3.0) ==
        doctest::Approx(3.0));
  CHECK(make_slowly_varying_psi(K::Pole, 0.5, 4, SlowlyVaryingSpec::constant())(3.0) ==
        doctest::Approx(1.0));
  CHECK(make_slowly_varying_psi(K::Exponent, 1, kInf, SlowlyVaryingSpec::inverse_shift())(2.0) ==
        doctest::Approx(3.0));

  // L = 1 reproduces the plain families.
  const auto sv = make_slowly_varying_psi(K::Exponent, 1.7, kInf, SlowlyVaryingSpec::constant());
  const auto ex = make_exponent_psi(1.7);
  const auto pole = make_slowly_varying_psi(K::Pole, 0.8, 5, SlowlyVaryingSpec::constant());
  const auto pw = make_power_psi(1, 5, 0, 0.8);
  for (double p = 1.01; p < 4.99; p += 0.037) {
    CHECK(sv(p) == doctest::Approx(ex(p)).epsilon(1e-15));
    CHECK(pole(p) == doctest::Approx(pw(p)).epsilon(1e-15));
  }

  CHECK_THROWS_AS(make_slowly_varying_psi(K::Exponent, 1, 4, SlowlyVaryingSpec::constant()), InvalidParameter);
  CHECK_THROWS_AS(make_slowly_varying_psi(K::Pole, 1, kInf, SlowlyVaryingSpec::constant()), InvalidParameter);
}

TEST_CASE("slope of a slowly varying L") {
  const auto L = SlowlyVaryingSpec::log1p();
  CHECK(L.slope(3.0) == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(SlowlyVaryingSpec::constant().slope(10.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(SlowlyVaryingSpec::from_name("bogus"), InvalidParameter);
}

TEST_CASE("psi evaluators are continuous on the open support") {
  const PsiFunction all[] = {make_power_psi(1, 3, 1, 1), make_power_psi(2, 6, 0.5, 2), make_exponent_psi(0.5),
                             make_exponent_psi(3)};
  for (const auto& psi : all) {
    const double lo = psi.support_lo();
    const double hi = std::min(psi.support_hi(), 50.0);
    const int n = 20000;
    const double h = (hi - lo) / n;
    // Skip the outer 2% where the power family blows up.
    for (int i = n / 50; i < n - n / 50; ++i) {
      const double a = psi(lo + i * h);
      const double b = psi(lo + (i + 1) * h);
      REQUIRE(std::isfinite(a));
      CHECK(std::abs(a - b) <= 0.05 * std::max(a, b));
    }
  }
}

TEST_CASE("power psi diverges monotonically near the ends") {
  const auto psi = make_power_psi(1, 3, 1, 1);
  double prev = psi(3.0 - 0.02);
  for (double p = 3.0 - 0.019; p < 3.0; p += 0.001) {
    CHECK(psi(p) > prev);
    prev = psi(p);
  }
  prev = psi(1.0 + 0.02);
  for (double p = 1.0 + 0.019; p > 1.0; p -= 0.001) {
    CHECK(psi(p) > prev);
    prev = psi(p);
  }
}

TEST_CASE("scaled psi keeps support and family") {
  const auto psi = make_exponent_psi(2).scaled(3.0);
  CHECK(psi(2.0) == doctest::Approx(12.0));
  CHECK(psi.family() == PsiFamily::Exponent);
  CHECK(psi.support_hi() == kInf);
  CHECK_THROWS_AS(make_exponent_psi(2).scaled(0.0), InvalidParameter);
}

TEST_CASE("parse psi snippets") {
  CHECK(parse_psi("power A=1 B=3 alpha=1 beta=1")(2.0) == doctest::Approx(1.0));
  CHECK(parse_psi("family=exponent beta=2")(10.0) == doctest::Approx(100.0));
  CHECK(parse_psi("degenerate r=2").is_degenerate());
  CHECK(parse_psi("slowly kind=pole beta=0.5 b=4 L=one")(3.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(parse_psi("cauchy"), InvalidParameter);
  CHECK_THROWS_AS(parse_psi("exponent beta=abc"), InvalidParameter);
  CHECK_THROWS_AS(parse_psi("power A=1 alpha=1 beta=1"), InvalidParameter);
  // A missing exponent defaults to 0.
  CHECK(parse_psi("power A=1 B=3 alpha=1")(2.0) == doctest::Approx(1.0));
}

TEST_CASE("invalid psi parameters") {
  CHECK_THROWS_AS(make_power_psi(0.5, 3, 1, 1), InvalidParameter);
  CHECK_THROWS_AS(make_power_psi(2, 2, 1, 1), InvalidParameter);
  CHECK_THROWS_AS(make_power_psi(1, 3, -1, 1), InvalidParameter);
  CHECK_THROWS_AS(make_exponent_psi(0), InvalidParameter);
  CHECK_THROWS_AS(make_degenerate_psi(0.5), InvalidParameter);
}
