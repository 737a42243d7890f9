#pragma once

#include <functional>
#include <limits>
#include <string>
#include <string_view>

namespace gls {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class PsiFamily {
  PowerPair,
  Exponent,
  Degenerate,
  Natural,
  SlowlyVaryingExponent,
  SlowlyVaryingPole,
  Custom,
};

const char* to_string(PsiFamily family);

/// A positive function L(u), u >= 1, slowly varying at infinity.
struct SlowlyVaryingSpec {
  std::function<double(double)> evaluator;
  /// L'(u). Optional; consumers fall back to a central difference.
  std::function<double(double)> derivative;
  std::string description;

  double operator()(double u) const { return evaluator(u); }
  double slope(double u) const;

  static SlowlyVaryingSpec constant();
  /// L(u) = log(1 + u).
  static SlowlyVaryingSpec log1p();
  /// L(u) = 1 + 1/u.
  static SlowlyVaryingSpec inverse_shift();
  /// Parses "one", "log1p" or "inv".
  static SlowlyVaryingSpec from_name(std::string_view name);
};

/// Parameters a family was built from. Unused fields stay NaN.
struct PsiParams {
  double A = std::numeric_limits<double>::quiet_NaN();
  double B = std::numeric_limits<double>::quiet_NaN();
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double beta = std::numeric_limits<double>::quiet_NaN();
  double r = std::numeric_limits<double>::quiet_NaN();
  double scale = 1.0;
  std::string slowly_varying;  // description of L, empty if none
};

struct Support {
  double lo;
  double hi;
  bool degenerate = false;

  bool contains(double p) const {
    return degenerate ? p == lo : (p > lo && p < hi);
  }
};

/// Generating function psi of a Grand Lebesgue space.
///
/// The evaluator is consulted only strictly inside the open support (lo, hi);
/// everywhere else, including the endpoints themselves, the value is +inf.
/// A degenerate psi_r has lo == hi == r and equals 1 at r only.
/// Instances are immutable and may be shared between threads.
class PsiFunction {
 public:
  using Evaluator = std::function<double(double)>;

  PsiFunction(double lo, double hi, Evaluator evaluator, PsiFamily family,
              PsiParams params = {});

  double operator()(double p) const;

  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }
  Support support() const { return {lo_, hi_, is_degenerate()}; }
  bool is_degenerate() const { return family_ == PsiFamily::Degenerate; }
  PsiFamily family() const { return family_; }
  const PsiParams& params() const { return params_; }
  std::string describe() const;

  /// c * psi, same support and family tag.
  PsiFunction scaled(double c) const;

 private:
  double lo_;
  double hi_;
  Evaluator evaluator_;
  PsiFamily family_;
  PsiParams params_;
};

/// psi(p) = (p - A)^-alpha (B - p)^-beta on (A, B).
PsiFunction make_power_psi(double A, double B, double alpha, double beta);

/// psi(p) = p^beta on (1, inf).
PsiFunction make_exponent_psi(double beta);

/// psi_r: 1 at p = r, +inf elsewhere. G(psi_r) is L_r.
PsiFunction make_degenerate_psi(double r);

enum class SlowlyVaryingKind { Exponent, Pole };

/// Exponent: p^beta L(p) on (1, inf), b must be +inf.
/// Pole: (b - p)^-beta L(1 / (b - p)) on (1, b), b finite and > 1.
PsiFunction make_slowly_varying_psi(SlowlyVaryingKind kind, double beta, double b,
                                    SlowlyVaryingSpec L);

inline Support support(const PsiFunction& psi) { return psi.support(); }

/// Parses a key-value snippet such as "power A=1 B=3 alpha=1 beta=1",
/// "exponent beta=1", "degenerate r=2", "slowly kind=pole beta=0.5 b=4 L=log1p".
/// The family may also be given as "family=<name>".
PsiFunction parse_psi(std::string_view text);

}  // namespace gls
