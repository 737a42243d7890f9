#include "gls/continuity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <tuple>

#include "gls/errors.hpp"
#include "gls/fundamental.hpp"

namespace gls {

void BoundParams::validate() const {
  if (d < 1) throw InvalidParameter("dimension must be >= 1");
  if (k < 0 || l <= k) throw InvalidParameter("need l > k >= 0");
  if (!(C_domain > 0.0) || !std::isfinite(C_domain)) throw InvalidParameter("C must be positive");
  if (!(K_M > 0.0) || !std::isfinite(K_M)) throw InvalidParameter("K_M must be positive");
}

double max_admissible_delta() { return std::exp(-1.0); }

void check_admissible_delta(double delta) {
  if (!(delta > 0.0 && delta < max_admissible_delta())) {
    throw InvalidParameter("delta must lie in (0, 1/e), got " + format_double(delta));
  }
}

double talenti_constant(int d, double p) {
  if (d < 2) throw InvalidParameter("Sobolev constant needs d >= 2");
  if (!(p >= 1.0 && p < d)) throw InvalidParameter("Sobolev constant needs 1 <= p < d");
  const double dd = d;
  const double log_gamma_ratio = std::lgamma(1.0 + dd / 2.0) + std::lgamma(dd) -
                                 std::lgamma(dd / p) - std::lgamma(1.0 + dd - dd / p);
  return std::pow(std::numbers::pi, -0.5) * std::pow(dd, -1.0 / p) *
         std::pow((p - 1.0) / (dd - p), 1.0 - 1.0 / p) * std::exp(log_gamma_ratio / dd);
}

double morrey_bound(MorreyForm form, const BoundParams& params, double p, double delta, double grad_lp) {
  params.validate();
  check_admissible_delta(delta);
  const double d = params.d;
  if (!(p > d) || !std::isfinite(p)) throw InvalidParameter("Morrey bound needs finite p > d");
  if (!(grad_lp >= 0.0)) throw InvalidParameter("gradient norm must be non-negative");
  const double power = 1.0 - d / p;
  switch (form) {
    case MorreyForm::Mazja:
      return params.K_M * std::pow(delta, power) * std::pow((p - 1.0) / (p - d), 1.0 - 1.0 / p) * grad_lp;
    case MorreyForm::Leoni:
      return 2.0 * d * p / (p - d) * std::pow(2.0 * delta, power) * grad_lp;
    case MorreyForm::Generic:
      return params.C_domain * p / (p - d) * std::pow(delta, power) * grad_lp;
  }
  throw InvalidParameter("unknown Morrey form");
}

BoundValue theorem1_bound_given_norm(const PsiFunction& psi, int d, double grad_gls_norm, double delta,
                                     double C_domain, double tol) {
  check_admissible_delta(delta);
  if (d < 2) throw InvalidParameter("Sobolev-GLS bound needs d >= 2");
  if (!(C_domain > 0.0)) throw InvalidParameter("C must be positive");
  if (!(psi.support_hi() > d)) {
    throw SupportTooLow("sup supp(psi) = " + format_double(psi.support_hi()) + " must exceed d = " +
                        std::to_string(d));
  }
  const double denom = truncated_fundamental(psi, d, psi.support_hi(), std::pow(delta, d), tol).value;
  if (!(denom < kInf)) return {0.0, true};
  return {C_domain * delta * grad_gls_norm / denom, false};
}

BoundValue theorem1_bound(const TestFunction& f, const PsiFunction& psi, const DomainSpec& D, double delta,
                          double C_domain, double tol, const PGrid& grid) {
  check_admissible_delta(delta);
  const int d = D.dimension();
  if (d < 2) throw InvalidParameter("Sobolev-GLS bound needs d >= 2");
  if (!(psi.support_hi() > d)) {
    throw SupportTooLow("sup supp(psi) = " + format_double(psi.support_hi()) + " must exceed d = " +
                        std::to_string(d));
  }
  const double norm = gls_norm(f.gradient(1, d), psi, D, grid, tol).value;
  return theorem1_bound_given_norm(psi, d, norm, delta, C_domain, tol);
}

double theorem3_bound_given_norm(const PsiFunction& psi, double derivative_gls_norm, double delta,
                                 double tol) {
  check_admissible_delta(delta);
  const double phi = fundamental_function(psi, delta, tol).value;
  return delta * derivative_gls_norm / phi;
}

double theorem3_bound_1d(const TestFunction& f, const PsiFunction& psi, double delta, double tol,
                         const PGrid& grid) {
  check_admissible_delta(delta);
  const auto D = DomainSpec::unit_interval();
  const double norm = gls_norm(f.gradient(1, 1), psi, D, grid, tol).value;
  return theorem3_bound_given_norm(psi, norm, delta, tol);
}

ExponentWindow theorem4_window(int d, int l, int k) {
  if (d < 1) throw InvalidParameter("dimension must be >= 1");
  if (k < 0 || l <= k) throw InvalidParameter("need l > k >= 0");
  const double lo = static_cast<double>(d) / (l - k);
  const double hi = l - k - 1 == 0 ? kInf : static_cast<double>(d) / (l - k - 1);
  return {lo, hi};
}

ExponentWindow theorem4_effective_window(const PsiFunction& psi, int d, int l, int k) {
  const auto w = theorem4_window(d, l, k);
  if (psi.is_degenerate()) {
    const double r = psi.support_lo();
    if (!(r > w.lo && r < w.hi)) {
      throw EmptyWindow("r = " + format_double(r) + " lies outside (" + format_double(w.lo) + ", " +
                        format_double(w.hi) + ")");
    }
    return {r, r};
  }
  const double lo = std::max(w.lo, psi.support_lo());
  const double hi = std::min(w.hi, psi.support_hi());
  if (!(lo < hi)) {
    throw EmptyWindow("(" + format_double(w.lo) + ", " + format_double(w.hi) +
                      ") does not meet supp psi = (" + format_double(psi.support_lo()) + ", " +
                      format_double(psi.support_hi()) + ")");
  }
  return {lo, hi};
}

double theorem4_lambda(int l, int k, int d, double p) {
  if (!(p > 0.0)) throw InvalidParameter("p must be positive");
  return l - k - d / p;
}

double theorem4_per_p_bound(const PsiFunction& psi, int d, int l, int k, double p, double delta,
                            double top_gls_norm, double C) {
  check_admissible_delta(delta);
  const auto w = theorem4_effective_window(psi, d, l, k);
  const bool inside = psi.is_degenerate() ? p == w.lo : (p > w.lo && p < w.hi);
  if (!inside) throw InvalidParameter("p = " + format_double(p) + " is outside the admissible window");
  return C * std::pow(delta, theorem4_lambda(l, k, d, p)) * psi(p) * top_gls_norm;
}

double theorem4_bound_given_norm(const PsiFunction& psi, int d, int l, int k, double delta,
                                 double top_gls_norm, double C, double tol) {
  check_admissible_delta(delta);
  if (!(C > 0.0)) throw InvalidParameter("C must be positive");
  const auto w = theorem4_effective_window(psi, d, l, k);
  const double delta_d = std::pow(delta, d);
  double phi;
  if (psi.is_degenerate()) {
    phi = fundamental_function(psi, delta_d, tol).value;
  } else {
    phi = truncated_fundamental(psi, std::max(1.0, w.lo), w.hi, delta_d, tol).value;
  }
  return C * std::pow(delta, l - k) * top_gls_norm / phi;
}

double theorem4_bound(const TestFunction& f, const PsiFunction& psi, const DomainSpec& D, int l, int k,
                      double delta, double C, double tol, const PGrid& grid) {
  check_admissible_delta(delta);
  const int d = D.dimension();
  theorem4_effective_window(psi, d, l, k);
  const double norm = gls_norm(f.gradient(l, d), psi, D, grid, tol).value;
  return theorem4_bound_given_norm(psi, d, l, k, delta, norm, C, tol);
}

double sampled_sup_abs(const TestFunction& f, const DomainSpec& D) {
  double best = 0.0;
  auto take = [&](double v) {
    if (std::isnan(v)) throw InvalidParameter("function is NaN at a sample point");
    best = std::max(best, std::abs(v));
  };
  if (f.shape() == TestFunction::Shape::Radial || D.is_one_dimensional()) {
    double a = 0.0;
    double b = 1.0;
    if (f.shape() != TestFunction::Shape::Radial) std::tie(a, b) = D.segment();
    constexpr int n = 8192;
    for (int i = 0; i <= n; ++i) take(f.at(a + (b - a) * i / n));
    for (double x : f.breakpoints()) {
      if (x >= a && x <= b) take(f.at(x));
    }
    return best;
  }
  const int d = D.dimension();
  if (d > 3) throw InvalidParameter("sampling is supported for d <= 3 only");
  const int n = d == 2 ? 513 : 97;
  const auto& bounds = D.box_bounds();
  std::vector<double> x(d);
  std::vector<int> idx(d, 0);
  while (true) {
    for (int k = 0; k < d; ++k) {
      x[k] = bounds[k].first + (bounds[k].second - bounds[k].first) * idx[k] / (n - 1);
    }
    if (D.contains(x)) take(f(x));
    int k = 0;
    while (k < d && ++idx[k] == n) idx[k++] = 0;
    if (k == d) break;
  }
  return best;
}

HolderNorm holder_norm_parts(const TestFunction& f, const DomainSpec& D, const HolderWeight& eta,
                             const std::vector<double>& delta_grid,
                             const std::function<double(double)>& modulus) {
  if (!eta.eta) throw InvalidParameter("Hoelder weight is empty");
  if (delta_grid.empty()) throw InvalidParameter("delta grid is empty");
  HolderNorm out{0.0, sampled_sup_abs(f, D), 0.0, std::numeric_limits<double>::quiet_NaN()};
  for (double delta : delta_grid) {
    const double w = eta.eta(delta);
    if (!(w > 0.0)) throw InvalidParameter("Hoelder weight must be positive at every delta");
    const double q = modulus(delta) / w;
    if (q > out.modulus_part || std::isnan(out.argmax_delta)) {
      out.modulus_part = std::max(out.modulus_part, q);
      out.argmax_delta = delta;
    }
  }
  out.total = out.sup_part + out.modulus_part;
  return out;
}

double holder_norm(const TestFunction& f, const DomainSpec& D, const HolderWeight& eta,
                   const std::vector<double>& delta_grid, const std::function<double(double)>& modulus) {
  return holder_norm_parts(f, D, eta, delta_grid, modulus).total;
}

double eta_from_theorem1(const PsiFunction& psi, const DomainSpec& D, double grad_gls_norm, double delta,
                         double tol) {
  // The weight is also wanted at the closed end delta = 1/e.
  if (!(delta > 0.0 && delta <= max_admissible_delta())) {
    throw InvalidParameter("delta must lie in (0, 1/e], got " + format_double(delta));
  }
  const int d = D.dimension();
  if (!(psi.support_hi() > d)) throw SupportTooLow("sup supp(psi) must exceed d");
  const double denom = truncated_fundamental(psi, d, psi.support_hi(), std::pow(delta, d), tol).value;
  return delta * grad_gls_norm / denom;
}

void BoundReport::add(double delta, double bound, double empirical) {
  delta_grid.push_back(delta);
  bound_values.push_back(bound);
  empirical_modulus.push_back(empirical);
  double ratio;
  if (bound > 0.0) {
    ratio = empirical / bound;
  } else {
    ratio = empirical > 0.0 ? kInf : 0.0;
  }
  ratios.push_back(ratio);
}

double BoundReport::fitted_constant() const {
  double c = 0.0;
  for (double r : ratios) c = std::max(c, r);
  return c;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return buf.data();
}

nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

std::string to_csv(const BoundReport& report) {
  std::ostringstream out;
  out << "delta,bound,empirical,ratio\n";
  for (std::size_t i = 0; i < report.delta_grid.size(); ++i) {
    out << format_double(report.delta_grid[i]) << ',' << format_double(report.bound_values[i]) << ','
        << format_double(report.empirical_modulus[i]) << ',' << format_double(report.ratios[i]) << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const BoundReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < report.delta_grid.size(); ++i) {
    rows.push_back({{"delta", json_number(report.delta_grid[i])},
                    {"bound", json_number(report.bound_values[i])},
                    {"empirical", json_number(report.empirical_modulus[i])},
                    {"ratio", json_number(report.ratios[i])}});
  }
  const auto& p = report.params;
  return {{"label", report.label},
          {"params",
           {{"d", p.d}, {"l", p.l}, {"k", p.k}, {"C", json_number(p.C_domain)}, {"K_M", json_number(p.K_M)}}},
          {"rows", rows},
          {"fitted_constant", json_number(report.fitted_constant())}};
}

}  // namespace gls
