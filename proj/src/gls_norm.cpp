#include "gls/gls_norm.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

// pchip.hpp in Boost 1.74 calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include "gls/errors.hpp"
#include "gls/norms.hpp"

namespace gls {
namespace {

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * i / (n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace

GlsNormResult gls_norm(const TestFunction& f, const PsiFunction& psi, const DomainSpec& D,
                       const PGrid& grid, double tol) {
  GlsNormResult result;
  if (psi.is_degenerate()) {
    const double r = psi.support_lo();
    result.degenerate = true;
    result.argmax_p = r;
    result.value = lp_norm(f, D, r, tol) / psi(r);
    result.p_grid_used = {r};
    result.ratios = {result.value};
    return result;
  }
  if (grid.points < 2) throw InvalidParameter("p-grid needs at least two points");

  const double A = psi.support_lo();
  const double B = psi.support_hi();
  double lo = A;
  double hi = std::min(B, grid.p_max);
  if (grid.lo) lo = std::max(lo, *grid.lo);
  if (grid.hi) hi = std::min(hi, *grid.hi);
  const double eps = grid.rel_eps * (hi - lo);
  if (lo == A) lo += eps;
  if (hi == B) hi -= eps;
  if (!(hi > lo)) throw InvalidParameter("p-grid window is empty");

  auto ratio = [&](double p) { return lp_norm(f, D, p, tol) / psi(p); };

  result.p_grid_used = log_spaced(lo, hi, grid.points);
  result.ratios.reserve(result.p_grid_used.size());
  for (double p : result.p_grid_used) result.ratios.push_back(ratio(p));

  const auto best_it = std::max_element(result.ratios.begin(), result.ratios.end());
  const std::size_t best = static_cast<std::size_t>(best_it - result.ratios.begin());
  const std::size_t n = result.ratios.size();
  result.value = *best_it;
  result.argmax_p = result.p_grid_used[best];

  // Golden-section refinement in log p on the bracket around the best point.
  double a = std::log(result.p_grid_used[best == 0 ? 0 : best - 1]);
  double b = std::log(result.p_grid_used[best + 1 == n ? n - 1 : best + 1]);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = ratio(std::exp(c));
  double fd = ratio(std::exp(d));
  double previous = result.value;
  for (int iter = 0; iter < 60 && (b - a) > 1e-9; ++iter) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = ratio(std::exp(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = ratio(std::exp(d));
    }
    const double local = std::max(fc, fd);
    if (local > result.value) {
      result.value = local;
      result.argmax_p = std::exp(fc > fd ? c : d);
    }
    if (std::abs(result.value - previous) < tol * std::abs(result.value) && iter > 8) break;
    previous = result.value;
  }

  // Climbing without a turning point at either edge of the grid.
  auto climbing = [&](bool upper) {
    if (n < 4) return false;
    for (std::size_t k = 0; k < 3; ++k) {
      const std::size_t i = upper ? n - 1 - k : k;
      const std::size_t j = upper ? i - 1 : i + 1;
      if (!(result.ratios[i] > result.ratios[j])) return false;
    }
    return true;
  };
  result.unbounded = (best == n - 1 && climbing(true)) || (best == 0 && climbing(false));
  return result;
}

SobolevGlsNorm sobolev_gls_norm(const TestFunction& f, const PsiFunction& psi, const DomainSpec& D,
                                int l, const PGrid& grid, double tol) {
  if (l < 1 || l > 2) throw InvalidParameter("sobolev_gls_norm supports l = 1 or 2");
  const double base = gls_norm(f, psi, D, grid, tol).value;
  const double top = gls_norm(f.gradient(l, D.dimension()), psi, D, grid, tol).value;
  return {base + top, base, top};
}

PsiFunction natural_psi(const TestFunction& f, const DomainSpec& D, double p_lo, double p_hi,
                        int n_points, double tol) {
  if (!(p_lo >= 1.0)) throw InvalidParameter("natural psi: p_lo must be >= 1");
  if (!(p_hi > p_lo) || !std::isfinite(p_hi)) {
    throw InvalidParameter("natural psi: p_hi must be finite and > p_lo");
  }
  if (n_points < 4) throw InvalidParameter("natural psi needs at least 4 sample points");

  std::vector<double> log_p;
  std::vector<double> log_norm;
  for (double p : log_spaced(p_lo, p_hi, n_points)) {
    const double norm = lp_norm(f, D, p, tol);
    if (!(norm > 0.0)) {
      throw InvalidParameter("natural psi: |f|_p vanishes at p = " + std::to_string(p));
    }
    if (!std::isfinite(norm)) {
      throw InvalidParameter("natural psi: |f|_p is infinite at p = " + std::to_string(p));
    }
    log_p.push_back(std::log(p));
    log_norm.push_back(std::log(norm));
  }
  using Pchip = boost::math::interpolators::pchip<std::vector<double>>;
  auto spline = std::make_shared<const Pchip>(std::move(log_p), std::move(log_norm));

  PsiParams params;
  params.A = p_lo;
  params.B = p_hi;
  return PsiFunction(
      p_lo, p_hi, [spline](double p) { return std::exp((*spline)(std::log(p))); },
      PsiFamily::Natural, params);
}

}  // namespace gls
