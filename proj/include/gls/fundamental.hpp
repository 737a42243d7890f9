#pragma once

#include <optional>

#include "gls/psi.hpp"

namespace gls {

struct FundamentalResult {
  double delta;
  double value;
  /// Empty when the window is empty (value = +inf).
  std::optional<double> argmax_p;
};

/// phi(G(psi), delta) = sup_{p in supp psi} delta^{1/p} / psi(p).
///
/// The sup is taken in the variable log(1/p): a 512-point scan followed by
/// golden-section refinement around the best sample. Degenerate psi_r gives
/// delta^{1/r} directly.
FundamentalResult fundamental_function(const PsiFunction& psi, double delta, double tol = 1e-10);

/// The same supremum restricted to (p_minus, p_plus) intersected with the
/// support; +inf when that intersection is empty. A degenerate psi_r
/// counts as inside when p_minus <= r <= p_plus.
FundamentalResult truncated_fundamental(const PsiFunction& psi, double p_minus, double p_plus,
                                        double delta, double tol = 1e-10);

/// Which closed-form small-delta asymptotic to use.
struct FamilyDescriptor {
  PsiFamily family = PsiFamily::Exponent;
  double beta = 1.0;
  double b = kInf;      // upper support end, PowerPair only
  double alpha = 0.0;   // PowerPair only
  double scale = 1.0;   // multiplies psi, divides phi

  static FamilyDescriptor exponent(double beta) { return {PsiFamily::Exponent, beta}; }
  static FamilyDescriptor power(double b, double beta, double alpha = 0.0) {
    return {PsiFamily::PowerPair, beta, b, alpha};
  }
  static FamilyDescriptor of(const PsiFunction& psi);
};

/// Exponent: e^{-beta} beta^beta |log delta|^{-beta}.
/// PowerPair (alpha = 0): beta^{-beta} b^{-2 beta} delta^{1/b} |log delta|^{-beta}.
/// Other families, and PowerPair with alpha > 0, throw UnsupportedFamily.
double asymptotic_fundamental(const FamilyDescriptor& family, double delta);

}  // namespace gls
