#include "gls/norms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "gls/errors.hpp"
#include "gls/quadrature.hpp"

namespace gls {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_abs(double v) {
  if (std::isnan(v)) return std::numeric_limits<double>::quiet_NaN();
  return v == 0.0 ? kNegInf : std::log(std::abs(v));
}

quad::Options options_for(double tol) {
  quad::Options o;
  o.rel_tol = tol;
  o.max_segments = 20000;
  return o;
}

// Integral of exp(L) over [y0, inf) for the map x = end -/+ e^{-y}. Once
// e^{-y} falls below the spacing of doubles at a nonzero end, x stops moving
// and the rest of the range carries no information, so it is cut there.
double half_integral(const std::function<double(double)>& L, double end, double y0,
                     const quad::Options& opts) {
  if (end == 0.0) return quad::log_integrate_exp_tail(L, y0, opts);
  const double y_max = -std::log(8.0 * std::numeric_limits<double>::epsilon() * std::abs(end));
  if (y_max <= y0) return kNegInf;
  return quad::log_integrate_exp(L, y0, y_max, opts);
}

// log int_a^b |u(x)|^p dx for a 1-D function with optional interior breakpoints.
// Each piece is split at its midpoint and both halves are mapped onto
// [y0, inf) by x = end -/+ e^{-y}, which resolves endpoint singularities.
double log_segment_integral(const ScalarFn& u, double a, double b, std::vector<double> breaks,
                            double p, double tol) {
  std::vector<double> edges{a};
  std::sort(breaks.begin(), breaks.end());
  for (double x : breaks) {
    if (x > a && x < b) edges.push_back(x);
  }
  edges.push_back(b);
  const auto opts = options_for(tol);
  double total = kNegInf;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double lo = edges[i];
    const double hi = edges[i + 1];
    const double mid = 0.5 * (lo + hi);
    auto left = [&](double y) { return p * log_abs(u(lo + std::exp(-y))) - y; };
    auto right = [&](double y) { return p * log_abs(u(hi - std::exp(-y))) - y; };
    total = quad::log_add_exp(total, half_integral(left, lo, -std::log(mid - lo), opts));
    total = quad::log_add_exp(total, half_integral(right, hi, -std::log(hi - mid), opts));
  }
  return total;
}

// log int_0^1 t^{weight} |u(t)|^p dt in the depth variable t = e^{-y}.
// The first unit of depth is mapped once more, y = e^{-z}, so that power
// singularities of u at t = 1 (y -> 0) also decay exponentially.
double log_depth_integral(const Profile& profile, int weight, double p, double tol) {
  const auto opts = options_for(tol);
  const double shift = weight + 1.0;
  std::function<double(double)> L;
  if (profile.log_value_at_depth) {
    L = [&](double y) { return p * profile.log_value_at_depth(y) - shift * y; };
  } else {
    L = [&](double y) {
      const double t = std::exp(-y);
      return p * log_abs(profile.value(t)) - shift * y;
    };
  }
  auto near_one = [&](double z) {
    const double y = std::exp(-z);
    if (y == 0.0) return kNegInf;
    return L(y) - z;
  };
  return quad::log_add_exp(quad::log_integrate_exp_tail(near_one, 0.0, opts),
                           quad::log_integrate_exp_tail(L, 1.0, opts));
}

// Peak of p*log|f| on a coarse tensor grid over the bounding box (points
// outside D are skipped).
double sample_peak(const TestFunction& f, const DomainSpec& D, double p) {
  const int d = D.dimension();
  const int n = d == 1 ? 257 : (d == 2 ? 65 : 25);
  const auto& bounds = D.box_bounds();
  std::vector<double> x(d);
  std::vector<int> idx(d, 0);
  double peak = kNegInf;
  while (true) {
    for (int k = 0; k < d; ++k) {
      const auto [lo, hi] = bounds[k];
      x[k] = lo + (hi - lo) * (idx[k] + 0.5) / n;
    }
    if (D.contains(x)) {
      const double v = p * log_abs(f(x));
      if (!std::isnan(v)) peak = std::max(peak, v);
    }
    int k = 0;
    while (k < d && ++idx[k] == n) idx[k++] = 0;
    if (k == d) break;
  }
  return peak;
}

double log_general_integral(const TestFunction& f, const DomainSpec& D, double p, double tol) {
  const int d = D.dimension();
  if (d > 3) throw InvalidParameter("non-radial integration is supported for d <= 3 only");
  const double peak = sample_peak(f, D, p);
  if (peak == kNegInf) return kNegInf;
  if (std::isinf(peak)) return peak;
  auto g = [&](std::span<const double> x) {
    const double v = p * log_abs(f(x));
    return v == kNegInf ? 0.0 : std::exp(v - peak);
  };
  const auto opts = options_for(tol);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double integral = 0.0;

  if (D.kind() == DomainKind::UnitBall && d >= 2) {
    if (d == 2) {
      integral = quad::integrate(
          [&](double r) {
            return r * quad::integrate(
                           [&](double th) {
                             const std::array<double, 2> x{r * std::cos(th), r * std::sin(th)};
                             return g(x);
                           },
                           0.0, two_pi, opts);
          },
          0.0, 1.0, opts);
    } else {
      integral = quad::integrate(
          [&](double r) {
            return r * r * quad::integrate(
                               [&](double ph) {
                                 const double s = std::sin(ph);
                                 return s * quad::integrate(
                                                [&](double th) {
                                                  const std::array<double, 3> x{
                                                      r * s * std::cos(th), r * s * std::sin(th),
                                                      r * std::cos(ph)};
                                                  return g(x);
                                                },
                                                0.0, two_pi, opts);
                               },
                               0.0, std::numbers::pi, opts);
          },
          0.0, 1.0, opts);
    }
  } else {
    // Cartesian nesting over the box (a 1-D ball is the box [-1, 1]).
    const auto& bounds = D.box_bounds();
    std::vector<double> x(d);
    std::function<double(int)> level = [&](int k) -> double {
      if (k == d) return g(x);
      return quad::integrate(
          [&, k](double xk) {
            x[k] = xk;
            return level(k + 1);
          },
          bounds[k].first, bounds[k].second, opts);
    };
    integral = level(0);
  }
  if (!(integral > 0.0)) return kNegInf;
  return peak + std::log(integral);
}

}  // namespace

double omega_d(int d) {
  if (d < 1) throw InvalidParameter("omega_d requires d >= 1");
  return 2.0 * std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0);
}

double log_lp_integral(const TestFunction& f, const DomainSpec& D, double p, double tol) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidParameter("lp_norm requires finite p >= 1");
  if (!(tol > 0.0)) throw InvalidParameter("tolerance must be positive");

  switch (f.shape()) {
    case TestFunction::Shape::Interval: {
      if (!D.is_one_dimensional()) throw InvalidParameter("interval function on a multi-dimensional domain");
      const auto [a, b] = D.segment();
      const Profile& prof = *f.profile();
      if (a == 0.0 && b == 1.0 && f.breakpoints().empty()) return log_depth_integral(prof, 0, p, tol);
      return log_segment_integral(prof.value, a, b, f.breakpoints(), p, tol);
    }
    case TestFunction::Shape::Radial: {
      if (D.kind() == DomainKind::UnitBall) {
        const int d = D.dimension();
        return std::log(omega_d(d)) + log_depth_integral(*f.profile(), d - 1, p, tol);
      }
      return log_general_integral(f, D, p, tol);
    }
    case TestFunction::Shape::General: {
      if (D.is_one_dimensional()) {
        const auto [a, b] = D.segment();
        return log_segment_integral([&f](double x) { return f.at(x); }, a, b, {}, p, tol);
      }
      return log_general_integral(f, D, p, tol);
    }
  }
  return kNegInf;
}

double lp_norm(const TestFunction& f, const DomainSpec& D, double p, double tol) {
  const double log_integral = log_lp_integral(f, D, p, tol);
  if (log_integral == kNegInf) return 0.0;
  return std::exp(log_integral / p);
}

NormEstimate grad_lp_norm(const TestFunction& f, const DomainSpec& D, double p, double tol) {
  const TestFunction g = f.gradient(1, D.dimension());
  return {lp_norm(g, D, p, tol), g.degraded_accuracy()};
}

}  // namespace gls
