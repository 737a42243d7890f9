#pragma once

#include <cmath>
#include <vector>

#include "gls/test_function.hpp"

namespace testing_support {

// Polynomial sum c_k x^k on [0, 1] with exact derivatives.
inline gls::TestFunction polynomial(std::vector<double> c) {
  std::vector<double> dc;
  std::vector<double> ddc;
  for (std::size_t k = 1; k < c.size(); ++k) dc.push_back(k * c[k]);
  for (std::size_t k = 1; k < dc.size(); ++k) ddc.push_back(k * dc[k]);
  auto eval = [](const std::vector<double>& coef, double x) {
    double v = 0.0;
    for (auto it = coef.rbegin(); it != coef.rend(); ++it) v = v * x + *it;
    return v;
  };
  gls::Profile p;
  p.value = [c, eval](double x) { return eval(c, x); };
  p.derivative = [dc, eval](double x) { return eval(dc, x); };
  p.second_derivative = [ddc, eval](double x) { return eval(ddc, x); };
  return gls::TestFunction::interval(std::move(p));
}

inline gls::TestFunction identity() { return polynomial({0.0, 1.0}); }
inline gls::TestFunction constant(double c) { return polynomial({c}); }

// x (1 - x)
inline gls::TestFunction bump() { return polynomial({0.0, 1.0, -1.0}).set_vanishes_on_boundary(true); }

inline gls::TestFunction tent() {
  gls::Profile p;
  p.value = [](double x) { return std::min(x, 1.0 - x); };
  p.derivative = [](double x) { return x < 0.5 ? 1.0 : -1.0; };
  return gls::TestFunction::interval(std::move(p), {0.5}).set_vanishes_on_boundary(true);
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace testing_support
