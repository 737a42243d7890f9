#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gls/domain.hpp"
#include "gls/gls_norm.hpp"
#include "gls/psi.hpp"
#include "gls/test_function.hpp"

namespace gls {

/// Constants and derivative orders shared by the continuity bounds.
/// C_domain and K_M stand for constants that are not known in closed form;
/// both default to 1 and callers fit them from data.
struct BoundParams {
  int d = 1;
  int l = 1;
  int k = 0;
  double C_domain = 1.0;
  double K_M = 1.0;

  void validate() const;
};

/// Admissible deltas for every bound: (0, 1/e).
double max_admissible_delta();
void check_admissible_delta(double delta);

/// Sharp constant of the Sobolev embedding |f|_q <= K |grad f|_p,
/// q = dp/(d-p), for 1 <= p < d.
double talenti_constant(int d, double p);

enum class MorreyForm { Mazja, Leoni, Generic };

/// Classical bound on omega(f, delta) from |grad f|_p, p > d:
///   Mazja:   K_M delta^{1-d/p} ((p-1)/(p-d))^{1-1/p} |grad f|_p
///   Leoni:   (2dp/(p-d)) (2 delta)^{1-d/p} |grad f|_p
///   Generic: C_domain (p/(p-d)) delta^{1-d/p} |grad f|_p
double morrey_bound(MorreyForm form, const BoundParams& params, double p, double delta, double grad_lp);

struct BoundValue {
  double value;
  /// The truncation window was empty; value is 0 by convention.
  bool degenerate = false;
};

/// C delta ||grad f||G(psi) / phi_{max(A,d), B}(G(psi), delta^d), with the
/// gradient norm supplied by the caller.
BoundValue theorem1_bound_given_norm(const PsiFunction& psi, int d, double grad_gls_norm,
                                     double delta, double C_domain = 1.0, double tol = 1e-10);

/// Sobolev-GLS modulus bound for d >= 2. Requires sup supp(psi) > d.
BoundValue theorem1_bound(const TestFunction& f, const PsiFunction& psi, const DomainSpec& D,
                          double delta, double C_domain = 1.0, double tol = 1e-10,
                          const PGrid& grid = {});

/// One-dimensional bound with the constant 1:
/// delta ||f'||G(psi) / phi(G(psi), delta) on [0, 1].
double theorem3_bound_1d(const TestFunction& f, const PsiFunction& psi, double delta,
                         double tol = 1e-10, const PGrid& grid = {});
double theorem3_bound_given_norm(const PsiFunction& psi, double derivative_gls_norm, double delta,
                                 double tol = 1e-10);

/// Window (d/(l-k), d/(l-k-1)) of exponents for which nabla^k f is Hoelder.
struct ExponentWindow {
  double lo;
  double hi;
};
ExponentWindow theorem4_window(int d, int l, int k);
/// (A3, B3): the window intersected with supp psi. Throws EmptyWindow.
ExponentWindow theorem4_effective_window(const PsiFunction& psi, int d, int l, int k);
/// Hoelder exponent l - k - d/p of the per-p bound.
double theorem4_lambda(int l, int k, int d, double p);
/// Per-p form: C delta^{l-k-d/p} psi(p) ||nabla^l f||G(psi).
double theorem4_per_p_bound(const PsiFunction& psi, int d, int l, int k, double p, double delta,
                            double top_gls_norm, double C = 1.0);
double theorem4_bound_given_norm(const PsiFunction& psi, int d, int l, int k, double delta,
                                 double top_gls_norm, double C = 1.0, double tol = 1e-10);
/// C delta^{l-k} ||nabla^l f||G(psi) / phi_{A3,B3}(G(psi), delta^d).
double theorem4_bound(const TestFunction& f, const PsiFunction& psi, const DomainSpec& D, int l,
                      int k, double delta, double C = 1.0, double tol = 1e-10, const PGrid& grid = {});

struct HolderWeight {
  std::function<double(double)> eta;
  std::string provenance;
};

struct HolderNorm {
  double total;
  double sup_part;
  double modulus_part;
  double argmax_delta;
};

/// sup |f| over a dense sample of D (the profile on [0,1] for radial f).
double sampled_sup_abs(const TestFunction& f, const DomainSpec& D);

/// sup|f| + sup over the delta grid of omega(f, delta) / eta(delta).
HolderNorm holder_norm_parts(const TestFunction& f, const DomainSpec& D, const HolderWeight& eta,
                             const std::vector<double>& delta_grid,
                             const std::function<double(double)>& modulus);
double holder_norm(const TestFunction& f, const DomainSpec& D, const HolderWeight& eta,
                   const std::vector<double>& delta_grid, const std::function<double(double)>& modulus);

/// eta(delta) = delta ||grad f||G(psi) / phi_{max(A,d), B}(G(psi), delta^d).
double eta_from_theorem1(const PsiFunction& psi, const DomainSpec& D, double grad_gls_norm, double delta,
                         double tol = 1e-10);

/// Per-delta comparison of a bound with the empirical modulus.
struct BoundReport {
  std::string label;
  std::vector<double> delta_grid;
  std::vector<double> bound_values;
  std::vector<double> empirical_modulus;
  std::vector<double> ratios;
  BoundParams params;

  void add(double delta, double bound, double empirical);
  /// Smallest constant C for which empirical <= C * bound on every row.
  double fitted_constant() const;
};

std::string to_csv(const BoundReport& report);
nlohmann::json to_json(const BoundReport& report);
/// %.17g, with "inf", "-inf" and "nan" for non-finite values.
std::string format_double(double v);
/// Doubles for JSON: non-finite values become the strings "inf", "-inf", "nan".
nlohmann::json json_number(double v);

}  // namespace gls
