#pragma once

#include <optional>
#include <vector>

#include "gls/domain.hpp"
#include "gls/psi.hpp"
#include "gls/test_function.hpp"

namespace gls {

/// How the supremum over the open support (A, B) is sampled.
struct PGrid {
  int points = 64;
  /// Upper cap used when B = +inf (and whenever B exceeds it).
  double p_max = 256.0;
  /// Endpoint clipping as a fraction of the sampled span.
  double rel_eps = 1e-4;
  /// Optional explicit window, intersected with the support.
  std::optional<double> lo;
  std::optional<double> hi;
};

struct GlsNormResult {
  double value = 0.0;
  /// NaN when the maximiser is the degenerate point itself.
  double argmax_p = 0.0;
  bool degenerate = false;
  /// The ratio |f|_p / psi(p) kept climbing at the edge of the grid.
  bool unbounded = false;
  std::vector<double> p_grid_used;
  std::vector<double> ratios;
};

/// ||f||G(psi) = sup_p |f|_p / psi(p), sampled on a log-spaced grid and
/// refined by golden-section search around the best grid point.
/// For a degenerate psi_r this is exactly |f|_r.
GlsNormResult gls_norm(const TestFunction& f, const PsiFunction& psi, const DomainSpec& D,
                       const PGrid& grid = {}, double tol = 1e-10);

struct SobolevGlsNorm {
  double total;           // ||f||G(psi) + ||nabla^l f||G(psi)
  double function_part;   // ||f||G(psi)
  double gradient_part;   // ||nabla^l f||G(psi), the equivalent reduced norm
};

SobolevGlsNorm sobolev_gls_norm(const TestFunction& f, const PsiFunction& psi, const DomainSpec& D,
                                int l, const PGrid& grid = {}, double tol = 1e-10);

/// psi(p) = |f|_p on (p_lo, p_hi): |f|_p is sampled at n_points log-spaced
/// values of p (endpoints included) and log|f|_p is interpolated against
/// log p by a monotone piecewise cubic.
PsiFunction natural_psi(const TestFunction& f, const DomainSpec& D, double p_lo, double p_hi,
                        int n_points = 48, double tol = 1e-10);

}  // namespace gls
