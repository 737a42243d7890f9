#pragma once

#include <functional>
#include <span>

namespace gls::quad {

struct Options {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_segments = 4000;
};

/// Globally adaptive 15-point Gauss-Kronrod quadrature of f over [a, b].
/// The interval is pre-split at the given interior breakpoints.
/// Throws QuadratureError when the segment budget runs out.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& options = {}, std::span<const double> breakpoints = {});

/// log of the integral of exp(L(y)) over [a, b]. The integrand is scaled by
/// its sampled maximum before exponentiation, so L may be far outside the
/// range of exp. Returns -inf for an identically vanishing integrand and
/// +inf when L is +inf somewhere.
double log_integrate_exp(const std::function<double(double)>& L, double a, double b,
                         const Options& options = {});

/// As log_integrate_exp over [a, inf). The integrand must eventually decay;
/// the range is truncated where it has fallen far below rel_tol times its peak.
double log_integrate_exp_tail(const std::function<double(double)>& L, double a,
                              const Options& options = {});

/// log(exp(a) + exp(b)) without overflow.
double log_add_exp(double a, double b);

}  // namespace gls::quad
