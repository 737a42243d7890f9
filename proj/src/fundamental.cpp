#include "gls/fundamental.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "gls/errors.hpp"

namespace gls {
namespace {

constexpr int kScanPoints = 512;
constexpr double kFarP = 1e15;  // stands in for p -> inf
constexpr double kNudge = 1e-12;

void check_delta(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw InvalidParameter("delta must be positive and finite");
}

}  // namespace

FundamentalResult truncated_fundamental(const PsiFunction& psi, double p_minus, double p_plus,
                                        double delta, double tol) {
  check_delta(delta);
  if (!(p_minus >= 1.0)) throw InvalidParameter("p_minus must be >= 1");
  if (!(p_plus > p_minus)) throw InvalidParameter("p_plus must exceed p_minus");

  if (psi.is_degenerate()) {
    const double r = psi.support_lo();
    if (r < p_minus || r > p_plus) return {delta, kInf, std::nullopt};
    return {delta, std::pow(delta, 1.0 / r) / psi(r), r};
  }

  const double lo = std::max(p_minus, psi.support_lo());
  const double hi = std::min(p_plus, psi.support_hi());
  if (!(lo < hi)) return {delta, kInf, std::nullopt};

  const double log_delta = std::log(delta);
  // s = log(1/p); the objective is log(delta^{1/p} / psi(p)).
  auto objective = [&](double s) {
    const double p = std::exp(-s);
    const double v = psi(p);
    if (!(v < kInf)) return -kInf;
    return std::exp(s) * log_delta - std::log(v);
  };
  const double p_lo = lo * (1.0 + kNudge);
  const double p_hi = std::isfinite(hi) ? hi * (1.0 - kNudge) : kFarP;
  const double s_lo = -std::log(p_hi);
  const double s_hi = -std::log(p_lo);

  std::size_t best = 0;
  double best_value = -kInf;
  std::vector<double> grid(kScanPoints);
  for (int i = 0; i < kScanPoints; ++i) {
    grid[i] = s_lo + (s_hi - s_lo) * i / (kScanPoints - 1);
    const double v = objective(grid[i]);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  double best_s = grid[best];

  double a = grid[best == 0 ? 0 : best - 1];
  double b = grid[best + 1 == grid.size() ? best : best + 1];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  const double bracket_tol = std::max(1e-10, tol * 1e-2);
  while ((b - a) > bracket_tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective(d);
    }
    if (fc > best_value) {
      best_value = fc;
      best_s = c;
    }
    if (fd > best_value) {
      best_value = fd;
      best_s = d;
    }
  }
  if (best_value == -kInf) return {delta, 0.0, std::nullopt};
  return {delta, std::exp(best_value), std::exp(-best_s)};
}

FundamentalResult fundamental_function(const PsiFunction& psi, double delta, double tol) {
  if (psi.is_degenerate()) {
    const double r = psi.support_lo();
    check_delta(delta);
    return {delta, std::pow(delta, 1.0 / r) / psi(r), r};
  }
  return truncated_fundamental(psi, psi.support_lo(), psi.support_hi(), delta, tol);
}

FamilyDescriptor FamilyDescriptor::of(const PsiFunction& psi) {
  const auto& prm = psi.params();
  FamilyDescriptor out;
  out.family = psi.family();
  out.beta = prm.beta;
  out.b = prm.B;
  out.alpha = std::isnan(prm.alpha) ? 0.0 : prm.alpha;
  out.scale = prm.scale;
  return out;
}

double asymptotic_fundamental(const FamilyDescriptor& family, double delta) {
  if (!(delta > 0.0 && delta < std::exp(-1.0))) {
    throw InvalidParameter("asymptotic fundamental function needs delta in (0, 1/e)");
  }
  if (family.family != PsiFamily::Exponent && family.family != PsiFamily::PowerPair) {
    throw UnsupportedFamily(std::string("no closed-form asymptotic for the ") + to_string(family.family) +
                            " family");
  }
  if (!(family.beta > 0.0)) throw InvalidParameter("asymptotic fundamental function needs beta > 0");
  const double L = std::abs(std::log(delta));
  const double beta = family.beta;
  switch (family.family) {
    case PsiFamily::Exponent:
      return std::exp(-beta) * std::pow(beta, beta) * std::pow(L, -beta) / family.scale;
    case PsiFamily::PowerPair: {
      if (family.alpha != 0.0) {
        throw UnsupportedFamily("closed-form asymptotic is available for alpha = 0 only");
      }
      const double b = family.b;
      if (!std::isfinite(b)) throw InvalidParameter("power family asymptotic needs finite b");
      return std::pow(beta, -beta) * std::pow(b, -2.0 * beta) * std::pow(delta, 1.0 / b) *
             std::pow(L, -beta) / family.scale;
    }
    default:
      throw UnsupportedFamily(std::string("no closed-form asymptotic for family ") +
                              to_string(family.family));
  }
}

}  // namespace gls
