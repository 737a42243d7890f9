#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gls/errors.hpp"
#include "gls/gls_norm.hpp"
#include "gls/norms.hpp"
#include "gls/sharpness.hpp"
#include "helpers.hpp"

using namespace gls;

TEST_CASE("degenerate psi gives the Lebesgue norm exactly") {
  const auto I = DomainSpec::unit_interval();
  const auto psi = make_degenerate_psi(2);
  auto one = gls_norm(testing_support::constant(1.0), psi, I);
  CHECK(one.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(one.degenerate);
  CHECK(gls_norm(testing_support::identity(), psi, I).value == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  const auto f = testing_support::polynomial({0.3, -1.0, 2.0, 0.7});
  for (double r : {1.0, 2.5, 7.0}) {
    CHECK(gls_norm(f, make_degenerate_psi(r), I).value == lp_norm(f, I, r));
  }
}

TEST_CASE("natural psi normalises to one") {
  const auto I = DomainSpec::unit_interval();
  const auto fam = make_f_delta(1.0);
  const auto gradient = fam.derived.gradient(1, 1);
  CHECK(gls_norm(gradient, fam.derived_psi, I).value == doctest::Approx(1.0).epsilon(1e-4));

  const auto f = fam.derived;
  const auto own = natural_psi(f, I, 1.0, 256.0);
  CHECK(gls_norm(f, own, I).value == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("natural psi closed forms") {
  const auto I = DomainSpec::unit_interval();
  const auto unit = natural_psi(testing_support::constant(1.0), I, 1.0, 20.0);
  for (double p : {1.1, 3.0, 19.0}) CHECK(unit(p) == doctest::Approx(1.0).epsilon(1e-9));

  const auto lin = natural_psi(testing_support::identity(), I, 1.0, 20.0);
  for (double p : {1.3, 2.0, 7.7, 15.0}) {
    CHECK(lin(p) == doctest::Approx(std::pow(p + 1.0, -1.0 / p)).epsilon(1e-4));
  }
  CHECK(lin(20.0) == kInf);

  // |f_1'|_p / p tends to 1/e.
  const auto fam = make_f_delta(1.0);
  CHECK(fam.derived_psi(200.0) / 200.0 == doctest::Approx(std::exp(-1.0)).epsilon(0.03));
}

TEST_CASE("natural psi rejects bad input") {
  const auto I = DomainSpec::unit_interval();
  const auto f = testing_support::identity();
  CHECK_THROWS_AS(natural_psi(f, I, 0.5, 3.0), InvalidParameter);
  CHECK_THROWS_AS(natural_psi(f, I, 2.0, 2.0), InvalidParameter);
  CHECK_THROWS_AS(natural_psi(f, I, 1.0, kInf), InvalidParameter);
  CHECK_THROWS_AS(natural_psi(f, I, 1.0, 3.0, 3), InvalidParameter);
  CHECK_THROWS_AS(natural_psi(testing_support::constant(0.0), I, 1.0, 3.0), InvalidParameter);
}

TEST_CASE("Sobolev-GLS norm") {
  const auto I = DomainSpec::unit_interval();
  const auto s = sobolev_gls_norm(testing_support::bump(), make_degenerate_psi(2), I, 1);
  CHECK(s.total == doctest::Approx(1.0 / std::sqrt(30.0) + 1.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(s.function_part == doctest::Approx(1.0 / std::sqrt(30.0)).epsilon(1e-12));

  CHECK(sobolev_gls_norm(testing_support::constant(0.0), make_exponent_psi(1), I, 1).total == 0.0);

  const auto f0 = make_f0(1.0, 2);
  const auto grad = f0.derived.gradient(1, 2);
  const auto psi = natural_psi(grad, f0.domain, 1.0, 64.0);
  const auto w = sobolev_gls_norm(f0.derived, psi, f0.domain, 1);
  CHECK(w.gradient_part == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(w.total > w.gradient_part);

  CHECK_THROWS_AS(sobolev_gls_norm(testing_support::bump(), make_degenerate_psi(2), I, 3), InvalidParameter);
}

TEST_CASE("homogeneity, envelope and domination") {
  const auto I = DomainSpec::unit_interval();
  const auto f = testing_support::polynomial({0.0, 1.0, -0.4});
  const auto g = testing_support::polynomial({0.0, 3.0, -1.2});
  const auto psi = make_power_psi(1, 8, 0.5, 1);
  const auto rf = gls_norm(f, psi, I);
  CHECK(gls_norm(g, psi, I).value == doctest::Approx(3.0 * rf.value).epsilon(1e-9));
  for (double r : rf.ratios) CHECK(rf.value >= r);
  CHECK(rf.argmax_p > 1.0);
  CHECK(rf.argmax_p < 8.0);

  // exponent(2) >= exponent(1) on (1, inf)
  CHECK(gls_norm(f, make_exponent_psi(2), I).value <= gls_norm(f, make_exponent_psi(1), I).value);
}

TEST_CASE("climbing ratio is flagged as unbounded") {
  const auto fam = make_f_delta(1.0);
  const auto grad = fam.derived.gradient(1, 1);
  const auto r = gls_norm(grad, make_exponent_psi(0.5), DomainSpec::unit_interval());
  CHECK(r.unbounded);
  const auto ok = gls_norm(grad, make_power_psi(1, 8, 1, 1), DomainSpec::unit_interval());
  CHECK_FALSE(ok.unbounded);
}

TEST_CASE("p-grid validation") {
  PGrid g;
  g.points = 1;
  CHECK_THROWS_AS(gls_norm(testing_support::identity(), make_exponent_psi(1), DomainSpec::unit_interval(), g),
                  InvalidParameter);
  PGrid w;
  w.lo = 5.0;
  w.hi = 4.0;
  CHECK_THROWS_AS(gls_norm(testing_support::identity(), make_exponent_psi(1), DomainSpec::unit_interval(), w),
                  InvalidParameter);
}
