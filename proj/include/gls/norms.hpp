#pragma once

#include "gls/domain.hpp"
#include "gls/test_function.hpp"

namespace gls {

/// Surface area of the unit sphere S^{d-1}: 2 pi^{d/2} / Gamma(d/2).
double omega_d(int d);

/// (integral over D of |f|^p)^{1/p} to relative accuracy ~tol.
///
/// Interval and radial profiles are integrated in the depth variable
/// y = -log t, where |log t|^q singularities become polynomial growth;
/// radial functions on the unit ball reduce to omega_d(d) * int_0^1 r^{d-1}|u|^p dr.
/// Everything is accumulated in log space so p in the hundreds is safe.
double lp_norm(const TestFunction& f, const DomainSpec& D, double p, double tol = 1e-10);

/// log of the integral of |f|^p over D; the building block of lp_norm.
double log_lp_integral(const TestFunction& f, const DomainSpec& D, double p, double tol = 1e-10);

struct NormEstimate {
  double value;
  /// Set when the gradient came from finite differences.
  bool degraded_accuracy;
};

/// L_p norm of the Euclidean gradient magnitude |nabla f|.
NormEstimate grad_lp_norm(const TestFunction& f, const DomainSpec& D, double p, double tol = 1e-10);

}  // namespace gls
