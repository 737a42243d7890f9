#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "gls/domain.hpp"
#include "gls/gls_norm.hpp"
#include "gls/modulus.hpp"
#include "gls/psi.hpp"
#include "gls/test_function.hpp"

namespace gls {

enum class FamilyName { F0, G_alpha_gamma, F_Delta, ShiftG };

const char* to_string(FamilyName name);

/// An extremal example: the function, the psi it is measured against and
/// the domain it lives on.
struct ExtremalFamily {
  FamilyName name;
  std::map<std::string, double> params;
  TestFunction derived;
  PsiFunction derived_psi;
  DomainSpec domain;
};

/// f0(x) = |x| |log|x||^beta L(1 + |log|x||) on the unit ball of R^d.
/// derived_psi is c p^beta L(p), c = (beta/(e d))^beta, the large-p
/// behaviour of |grad f0|_p.
ExtremalFamily make_f0(double beta, int d, const SlowlyVaryingSpec& L = SlowlyVaryingSpec::constant());

/// Radial primitive U on the unit ball with U(1) = 0 and
/// U'(r) = [alpha/(alpha-1)] r^{-1/alpha} |log r|^gamma, so |grad U| is the
/// derivative-scale object g. b = alpha d, beta = gamma + 1/b and
/// derived_psi is the power family (1, b; 0, beta).
ExtremalFamily make_g(double alpha, double gamma, int d);

/// |grad g|_p for a family built by make_g, p in [1, b).
double g_gradient_norm(const ExtremalFamily& family, double p, double tol = 1e-10);

/// f(x) = x |log x|^Delta L(1 + |log x|) on [0, 1]. derived_psi is the
/// natural psi of f', sampled on (1, 256) when f' is in every L_p and on
/// (1, 1 + 0.9 (p* - 1)) when Delta < 1, p* = 1/(1 - Delta) being the
/// integrability limit of f'.
ExtremalFamily make_f_delta(double Delta, const SlowlyVaryingSpec& L = SlowlyVaryingSpec::constant(),
                            double tol = 1e-10);

/// w(x) = x^{1-1/b} |log x|^beta on [0, 1] and its cyclic shift
/// g_h(x) = w(x + h mod 1). h = 0 gives w itself. derived_psi is the power
/// family (1, b; 0, beta + 1/b).
ExtremalFamily make_shift_g(double b, double beta, double h);

/// eta(delta) = delta^{1-1/b} |log delta|^beta.
double shift_weight(double b, double beta, double delta);

struct SharpnessRow {
  double delta;
  double modulus;
  /// phi for F_Delta and F0, the comparison weight for G and ShiftG.
  double scale;
  double ratio;
};

struct SharpnessTable {
  FamilyName family;
  std::map<std::string, double> params;
  /// Norm in the ratio's denominator (1 for families whose ratio has none).
  double norm = 1.0;
  std::vector<SharpnessRow> rows;

  std::vector<double> ratios() const;
};

/// Per-family ratios:
///   F_Delta: omega(f, delta) phi(G psi, delta) / (delta ||f'||G psi)
///   F0:      omega(f, delta) phi(G psi, delta^d) / delta
///   G:       omega(U, delta) / (delta^{1-1/alpha} |log delta|^gamma)
///   ShiftG:  omega(w, delta) / eta(delta)
SharpnessTable sharpness_table(const ExtremalFamily& family, const std::vector<double>& delta_grid,
                               double tol = 1e-10, const ModulusOptions& modulus = {});
std::vector<double> sharpness_ratio(const ExtremalFamily& family, const std::vector<double>& delta_grid,
                                    double tol = 1e-10, const ModulusOptions& modulus = {});

struct NoncompactnessRow {
  double h;
  /// sup over the delta grid of omega(g_h - g, delta) / eta(delta).
  double zeta;
  double zeta_argmax_delta;
  /// sup|g_h - g| + zeta.
  double zeta_total;
  /// H(eta) norm of g_h with the modulus taken on the circle R/Z, where the
  /// cyclic shift is a rotation.
  double holder_norm;
  double sobolev_norm;
  bool pass;
};

struct NoncompactnessReport {
  double b;
  double beta;
  double threshold;  // 2 - 2^{1-1/b}
  double tolerance;
  std::vector<double> delta_grid;
  /// Exponent window on which the Sobolev-GLS norm is evaluated.
  double p_lo;
  double p_hi;
  double reference_holder;
  double reference_sobolev;
  std::vector<NoncompactnessRow> rows;
  double holder_spread;   // max relative deviation from the h = 0 value
  double sobolev_spread;
  double min_zeta;
  bool zeta_pass;
  bool invariance_pass;
  bool pass;
  std::string failure;
};

struct NoncompactnessOptions {
  double tolerance = 0.05;
  double invariance_tol = 0.01;
  int delta_points = 32;
  double tol = 1e-9;
  ModulusOptions modulus{16, std::size_t{1} << 18, 20240601};
};

NoncompactnessReport noncompactness_check(double b, double beta, const std::vector<double>& h_grid,
                                          const NoncompactnessOptions& options = {});

/// Least-squares slope of ys against xs.
double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys);

nlohmann::json to_json(const SharpnessTable& table);
nlohmann::json to_json(const NoncompactnessReport& report);

}  // namespace gls
