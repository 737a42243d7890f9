#include <doctest.h>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "gls/errors.hpp"
#include "gls/quadrature.hpp"

using namespace gls;

TEST_CASE("polynomials and smooth integrands") {
  CHECK(quad::integrate([](double x) { return x * x; }, 0, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(quad::integrate([](double x) { return std::sin(x); }, 0, std::numbers::pi) ==
        doctest::Approx(2.0).epsilon(1e-13));
  CHECK(quad::integrate([](double x) { return std::exp(-x * x); }, -8, 8) ==
        doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("breakpoints split kinks") {
  const std::array<double, 1> kink{0.3};
  const double v = quad::integrate([](double x) { return std::abs(x - 0.3); }, 0, 1, {}, kink);
  CHECK(v == doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-14));
}

TEST_CASE("integrable endpoint singularity") {
  quad::Options o;
  o.rel_tol = 1e-8;
  o.max_segments = 20000;
  CHECK(quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0, 1, o) == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("budget exhaustion raises") {
  quad::Options o;
  o.rel_tol = 1e-14;
  o.max_segments = 20;
  CHECK_THROWS_AS(quad::integrate([](double x) { return std::sin(1.0 / (x + 1e-4)); }, 0, 1, o), QuadratureError);
}

TEST_CASE("log-space integration survives huge exponents") {
  // int_0^inf e^{1000 - y} dy = e^{1000}
  CHECK(quad::log_integrate_exp_tail([](double y) { return 1000.0 - y; }, 0.0) ==
        doctest::Approx(1000.0).epsilon(1e-13));
  // int_0^1 e^{-2000 + x} dx = e^{-2000} (e - 1)
  CHECK(quad::log_integrate_exp([](double x) { return -2000.0 + x; }, 0, 1) ==
        doctest::Approx(-2000.0 + std::log(std::numbers::e - 1.0)).epsilon(1e-14));
  // Gamma(11) = int y^10 e^{-y}
  CHECK(quad::log_integrate_exp_tail([](double y) { return 10.0 * std::log(y) - y; }, 0.0) ==
        doctest::Approx(std::lgamma(11.0)).epsilon(1e-12));
}

TEST_CASE("vanishing and infinite integrands") {
  const double ninf = -std::numeric_limits<double>::infinity();
  CHECK(quad::log_integrate_exp([ninf](double) { return ninf; }, 0, 1) == ninf);
  CHECK(quad::log_integrate_exp([](double x) { return x < 0.5 ? 0.0 : std::numeric_limits<double>::infinity(); }, 0, 1) ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("log_add_exp") {
  CHECK(quad::log_add_exp(0.0, 0.0) == doctest::Approx(std::log(2.0)));
  CHECK(quad::log_add_exp(1000.0, 1000.0) == doctest::Approx(1000.0 + std::log(2.0)));
  const double ninf = -std::numeric_limits<double>::infinity();
  CHECK(quad::log_add_exp(ninf, 3.0) == 3.0);
  CHECK(quad::log_add_exp(ninf, ninf) == ninf);
}
