#include "gls/test_function.hpp"

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "gls/errors.hpp"

namespace gls {
namespace {

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double xi : x) s += xi * xi;
  return std::sqrt(s);
}

// Central difference; one-sided when one neighbour is not finite (outside
// the natural domain of u).
double difference(const ScalarFn& u, double x) {
  const double h = TestFunction::fd_step(x);
  const double up = u(x + h);
  const double down = u(x - h);
  const bool up_ok = std::isfinite(up);
  const bool down_ok = std::isfinite(down);
  if (up_ok && down_ok) return (up - down) / (2.0 * h);
  const double mid = u(x);
  if (up_ok) return (up - mid) / h;
  if (down_ok) return (mid - down) / h;
  return std::numeric_limits<double>::quiet_NaN();
}

Profile differentiate(const Profile& p) {
  Profile out;
  if (p.derivative) {
    out.value = p.derivative;
    out.log_value_at_depth = p.log_derivative_at_depth;
    if (p.second_derivative) {
      out.derivative = p.second_derivative;
      out.log_derivative_at_depth = p.log_second_at_depth;
    }
  } else {
    out.value = [u = p.value](double x) { return difference(u, x); };
  }
  return out;
}

}  // namespace

double TestFunction::fd_step(double x) {
  return std::cbrt(std::numeric_limits<double>::epsilon()) * (std::abs(x) + 1.0);
}

TestFunction TestFunction::interval(Profile profile, std::vector<double> breakpoints) {
  if (!profile.value) throw InvalidParameter("interval function needs a value");
  TestFunction f;
  f.shape_ = Shape::Interval;
  f.value_ = [u = profile.value](std::span<const double> x) { return u(x[0]); };
  f.profile_ = std::move(profile);
  f.breakpoints_ = std::move(breakpoints);
  return f;
}

TestFunction TestFunction::radial(Profile profile) {
  if (!profile.value) throw InvalidParameter("radial function needs a profile");
  TestFunction f;
  f.shape_ = Shape::Radial;
  f.value_ = [u = profile.value](std::span<const double> x) { return u(norm2(x)); };
  f.profile_ = std::move(profile);
  return f;
}

TestFunction TestFunction::general(PointFn value, PointFn grad_magnitude, GradKFn grad_k_magnitude) {
  if (!value) throw InvalidParameter("general function needs a value");
  TestFunction f;
  f.shape_ = Shape::General;
  f.value_ = std::move(value);
  f.grad_magnitude_ = std::move(grad_magnitude);
  f.grad_k_magnitude_ = std::move(grad_k_magnitude);
  return f;
}

double TestFunction::at(double t) const {
  if (profile_) return profile_->value(t);
  const double x[1] = {t};
  return value_(std::span<const double>(x, 1));
}

bool TestFunction::has_gradient(int order) const {
  if (order == 0) return true;
  if (profile_) {
    if (order == 1) return static_cast<bool>(profile_->derivative);
    if (order == 2) return profile_->derivative && profile_->second_derivative;
    return false;
  }
  if (order == 1 && grad_magnitude_) return true;
  return static_cast<bool>(grad_k_magnitude_);
}

TestFunction TestFunction::gradient(int order, int dimension) const {
  if (order < 0 || order > 2) throw InvalidParameter("gradient order must be 0, 1 or 2");
  if (order == 0) return *this;
  const bool analytic = has_gradient(order);

  if (shape_ == Shape::Interval) {
    Profile p = differentiate(*profile_);
    if (order == 2) p = differentiate(p);
    TestFunction g = interval(std::move(p), breakpoints_);
    g.degraded_ = degraded_ || !analytic;
    return g;
  }

  if (shape_ == Shape::Radial) {
    Profile first = differentiate(*profile_);
    if (order == 1) {
      TestFunction g = radial(std::move(first));
      g.degraded_ = degraded_ || !analytic;
      return g;
    }
    // Hessian of u(|x|): eigenvalues u'' (radial) and u'/r (d-1 times).
    Profile second = differentiate(first);
    const double tangential = dimension - 1;
    Profile hess;
    hess.value = [d1 = first.value, d2 = second.value, tangential](double r) {
      const double a = d2(r);
      const double b = r > 0.0 ? d1(r) / r : d2(r);
      return std::sqrt(a * a + tangential * b * b);
    };
    if (first.log_value_at_depth && second.log_value_at_depth) {
      hess.log_value_at_depth = [l1 = first.log_value_at_depth, l2 = second.log_value_at_depth,
                                 tangential](double y) {
        if (tangential <= 0.0) return l2(y);
        const double a = 2.0 * l2(y);
        const double b = 2.0 * (l1(y) + y) + std::log(tangential);
        const double m = std::max(a, b);
        if (!std::isfinite(m)) return m;
        return 0.5 * (m + std::log(std::exp(a - m) + std::exp(b - m)));
      };
    }
    TestFunction g = radial(std::move(hess));
    g.degraded_ = degraded_ || !analytic;
    return g;
  }

  if (order == 1 && grad_magnitude_) return general(grad_magnitude_);
  if (grad_k_magnitude_) {
    return general([gk = grad_k_magnitude_, order](std::span<const double> x) { return gk(order, x); });
  }
  if (order == 2) throw InvalidParameter("no second gradient available for a general function");

  TestFunction g = general([f = value_](std::span<const double> x) {
    std::vector<double> probe(x.begin(), x.end());
    double s = 0.0;
    for (std::size_t i = 0; i < probe.size(); ++i) {
      const double xi = probe[i];
      const double h = fd_step(xi);
      probe[i] = xi + h;
      const double up = f(probe);
      probe[i] = xi - h;
      const double down = f(probe);
      probe[i] = xi;
      const double di = (up - down) / (2.0 * h);
      s += di * di;
    }
    return std::sqrt(s);
  });
  g.degraded_ = true;
  return g;
}

}  // namespace gls
