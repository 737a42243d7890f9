#include "gls/sharpness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include <boost/math/special_functions/gamma.hpp>

#include "gls/continuity.hpp"
#include "gls/errors.hpp"
#include "gls/fundamental.hpp"
#include "gls/norms.hpp"

namespace gls {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidParameter(message);
}

double log_abs(double v) { return v == 0.0 ? kNegInf : std::log(std::abs(v)); }

bool is_constant(const SlowlyVaryingSpec& L) { return L.description == SlowlyVaryingSpec::constant().description; }

// u(t) = t y^beta L(1 + y), y = -log t, on [0, 1].
Profile log_power_profile(double beta, const SlowlyVaryingSpec& L) {
  Profile p;
  p.value = [beta, L](double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double y = -std::log(t);
    return t * std::pow(y, beta) * L(1.0 + y);
  };
  p.derivative = [beta, L](double t) {
    if (t <= 0.0) return kInf;
    const double y = t >= 1.0 ? 0.0 : -std::log(t);
    const double u = 1.0 + y;
    const double lead = std::pow(y, beta) * (L(u) - L.slope(u));
    if (beta == 1.0) return lead - L(u);
    return lead - beta * std::pow(y, beta - 1.0) * L(u);
  };
  p.log_value_at_depth = [beta, L](double y) { return -y + beta * std::log(y) + std::log(L(1.0 + y)); };
  p.log_derivative_at_depth = [beta, L](double y) {
    const double u = 1.0 + y;
    return (beta - 1.0) * std::log(y) + log_abs(L(u) * (y - beta) - y * L.slope(u));
  };
  if (is_constant(L)) {
    // u'' = -(beta y^{beta-1} - beta (beta-1) y^{beta-2}) / t
    p.second_derivative = [beta](double t) {
      if (t <= 0.0) return -kInf;
      if (t >= 1.0) return beta < 2.0 && beta != 1.0 ? kInf : 0.0;
      const double y = -std::log(t);
      return -beta * std::pow(y, beta - 2.0) * (y - (beta - 1.0)) / t;
    };
    p.log_second_at_depth = [beta](double y) {
      return y + std::log(beta) + (beta - 2.0) * std::log(y) + log_abs(y - (beta - 1.0));
    };
  }
  return p;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
  }
  return out;
}

}  // namespace

const char* to_string(FamilyName name) {
  switch (name) {
    case FamilyName::F0: return "F0";
    case FamilyName::G_alpha_gamma: return "G_alpha_gamma";
    case FamilyName::F_Delta: return "F_Delta";
    case FamilyName::ShiftG: return "ShiftG";
  }
  return "unknown";
}

ExtremalFamily make_f0(double beta, int d, const SlowlyVaryingSpec& L) {
  require(beta > 0.0 && std::isfinite(beta), "f0 needs beta > 0");
  require(d >= 2, "f0 needs d >= 2");
  TestFunction f = TestFunction::radial(log_power_profile(beta, L));
  f.set_vanishes_on_boundary(true);
  const double c = std::pow(beta / (std::numbers::e * d), beta);
  PsiFunction psi = is_constant(L)
                        ? make_exponent_psi(beta).scaled(c)
                        : make_slowly_varying_psi(SlowlyVaryingKind::Exponent, beta, kInf, L).scaled(c);
  return {FamilyName::F0,
          {{"beta", beta}, {"d", static_cast<double>(d)}, {"scale", c}},
          std::move(f),
          std::move(psi),
          DomainSpec::unit_ball(d)};
}

ExtremalFamily make_g(double alpha, double gamma, int d) {
  require(alpha > 1.0 && std::isfinite(alpha), "g needs alpha > 1");
  require(gamma > 0.0 && std::isfinite(gamma), "g needs gamma > 0");
  require(d >= 2, "g needs d >= 2");
  const double c = alpha / (alpha - 1.0);
  const double kappa = 1.0 - 1.0 / alpha;
  const double a = gamma + 1.0;
  const double b = alpha * d;
  const double beta = gamma + 1.0 / b;
  // U(r) = -c int_r^1 s^{-1/alpha} |log s|^gamma ds = -c kappa^{-a} gamma_lower(a, kappa y)
  const double log_front = std::log(c) - a * std::log(kappa);
  Profile p;
  p.value = [=](double r) {
    if (r >= 1.0) return 0.0;
    if (r <= 0.0) return -std::exp(log_front) * std::tgamma(a);
    return -std::exp(log_front) * boost::math::tgamma_lower(a, -kappa * std::log(r));
  };
  p.derivative = [=](double r) {
    if (r <= 0.0) return kInf;
    if (r >= 1.0) return 0.0;
    const double y = -std::log(r);
    return c * std::pow(r, -1.0 / alpha) * std::pow(y, gamma);
  };
  p.second_derivative = [=](double r) {
    if (r <= 0.0) return -kInf;
    if (r >= 1.0) return gamma < 1.0 ? -kInf : (gamma == 1.0 ? -c : 0.0);
    const double y = -std::log(r);
    return -c * std::pow(r, -1.0 / alpha - 1.0) * std::pow(y, gamma - 1.0) * (y / alpha + gamma);
  };
  p.log_value_at_depth = [=](double y) {
    return log_front + std::log(boost::math::tgamma_lower(a, kappa * y));
  };
  p.log_derivative_at_depth = [=](double y) { return std::log(c) + y / alpha + gamma * std::log(y); };
  p.log_second_at_depth = [=](double y) {
    return std::log(c) + (1.0 / alpha + 1.0) * y + (gamma - 1.0) * std::log(y) + std::log(y / alpha + gamma);
  };
  TestFunction f = TestFunction::radial(std::move(p));
  f.set_vanishes_on_boundary(true);
  return {FamilyName::G_alpha_gamma,
          {{"alpha", alpha}, {"gamma", gamma}, {"d", static_cast<double>(d)}, {"b", b}, {"beta", beta}},
          std::move(f),
          make_power_psi(1.0, b, 0.0, beta),
          DomainSpec::unit_ball(d)};
}

double g_gradient_norm(const ExtremalFamily& family, double p, double tol) {
  require(family.name == FamilyName::G_alpha_gamma, "g_gradient_norm needs a G family");
  const double b = family.params.at("b");
  require(p >= 1.0 && p < b, "|grad g|_p is finite for 1 <= p < b only");
  return grad_lp_norm(family.derived, family.domain, p, tol).value;
}

ExtremalFamily make_f_delta(double Delta, const SlowlyVaryingSpec& L, double tol) {
  require(Delta > 0.0 && std::isfinite(Delta), "f_Delta needs Delta > 0");
  TestFunction f = TestFunction::interval(log_power_profile(Delta, L));
  f.set_vanishes_on_boundary(true);
  const auto D = DomainSpec::unit_interval();
  double p_hi = 256.0;
  if (Delta < 1.0) p_hi = std::min(p_hi, 1.0 + 0.9 * (1.0 / (1.0 - Delta) - 1.0));
  PsiFunction psi = natural_psi(f.gradient(1, 1), D, 1.0, p_hi, 48, tol);
  return {FamilyName::F_Delta, {{"Delta", Delta}, {"p_hi", p_hi}}, std::move(f), std::move(psi), D};
}

double shift_weight(double b, double beta, double delta) {
  return std::pow(delta, 1.0 - 1.0 / b) * std::pow(std::abs(std::log(delta)), beta);
}

ExtremalFamily make_shift_g(double b, double beta, double h) {
  require(b > 1.0 && std::isfinite(b), "shift family needs b > 1");
  require(beta > 0.0 && std::isfinite(beta), "shift family needs beta > 0");
  require(h >= 0.0 && h < 0.5, "shift h must lie in [0, 1/2)");
  const double e = 1.0 - 1.0 / b;
  // The break sits at c = fl(1 - h). Distances to c are exact near it, so the
  // depth y = -log s keeps full precision on both sides of the break.
  const double c = 1.0 - h;
  struct Point {
    double s;
    double y;
  };
  auto shift = [c](double x) -> Point {
    if (x <= c) {
      const double gap = c - x;
      return {1.0 - gap, -std::log1p(-gap)};
    }
    const double s = x - c;
    return {s, -std::log(s)};
  };
  auto w = [=](Point q) {
    if (q.s <= 0.0 || q.y <= 0.0) return 0.0;
    return std::pow(q.s, e) * std::pow(q.y, beta);
  };
  auto dw = [=](Point q) {
    if (q.s <= 0.0) return kInf;
    const double y = std::max(q.y, 0.0);
    const double tail = beta == 1.0 ? 1.0 : beta * std::pow(y, beta - 1.0);
    return std::pow(q.s, -1.0 / b) * (e * std::pow(y, beta) - tail);
  };
  Profile p;
  p.value = [w, shift](double x) { return w(shift(x)); };
  p.derivative = [dw, shift](double x) { return dw(shift(x)); };
  std::vector<double> breaks;
  if (h > 0.0) {
    breaks.push_back(1.0 - h);
  } else {
    p.log_value_at_depth = [=](double y) { return -e * y + beta * std::log(y); };
    p.log_derivative_at_depth = [=](double y) {
      return y / b + (beta - 1.0) * std::log(y) + log_abs(e * y - beta);
    };
  }
  TestFunction f = TestFunction::interval(std::move(p), std::move(breaks));
  f.set_vanishes_on_boundary(true);
  return {FamilyName::ShiftG,
          {{"b", b}, {"beta", beta}, {"h", h}},
          std::move(f),
          make_power_psi(1.0, b, 0.0, beta + 1.0 / b),
          DomainSpec::unit_interval()};
}

std::vector<double> SharpnessTable::ratios() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.ratio);
  return out;
}

SharpnessTable sharpness_table(const ExtremalFamily& family, const std::vector<double>& delta_grid,
                               double tol, const ModulusOptions& modulus) {
  for (double delta : delta_grid) check_admissible_delta(delta);
  SharpnessTable table{family.name, family.params, 1.0, {}};
  const auto strategy =
      family.domain.is_one_dimensional() ? ModulusStrategy::DenseGrid1D : ModulusStrategy::RadialProfile;
  if (family.name == FamilyName::F_Delta) {
    table.norm = gls_norm(family.derived.gradient(1, 1), family.derived_psi, family.domain, {}, tol).value;
  }
  const double d = family.domain.dimension();
  for (double delta : delta_grid) {
    const double w = empirical_modulus(family.derived, family.domain, delta, strategy, modulus).value;
    SharpnessRow row{delta, w, 0.0, 0.0};
    switch (family.name) {
      case FamilyName::F_Delta:
        row.scale = fundamental_function(family.derived_psi, delta, tol).value;
        row.ratio = w * row.scale / (delta * table.norm);
        break;
      case FamilyName::F0:
        row.scale = fundamental_function(family.derived_psi, std::pow(delta, d), tol).value;
        row.ratio = w * row.scale / delta;
        break;
      case FamilyName::G_alpha_gamma:
        row.scale = std::pow(delta, 1.0 - 1.0 / family.params.at("alpha")) *
                    std::pow(std::abs(std::log(delta)), family.params.at("gamma"));
        row.ratio = w / row.scale;
        break;
      case FamilyName::ShiftG:
        row.scale = shift_weight(family.params.at("b"), family.params.at("beta"), delta);
        row.ratio = w / row.scale;
        break;
    }
    table.rows.push_back(row);
  }
  return table;
}

std::vector<double> sharpness_ratio(const ExtremalFamily& family, const std::vector<double>& delta_grid,
                                    double tol, const ModulusOptions& modulus) {
  return sharpness_table(family, delta_grid, tol, modulus).ratios();
}

NoncompactnessReport noncompactness_check(double b, double beta, const std::vector<double>& h_grid,
                                          const NoncompactnessOptions& options) {
  require(b > 1.0 && std::isfinite(b), "non-compactness check needs b > 1");
  require(beta > 0.0 && std::isfinite(beta), "non-compactness check needs beta > 0");
  require(!h_grid.empty(), "h grid is empty");
  for (double h : h_grid) require(h > 0.0 && h < 0.5, "every h must lie in (0, 1/2)");
  require(options.delta_points >= 2, "need at least two deltas");

  NoncompactnessReport report{};
  report.b = b;
  report.beta = beta;
  report.threshold = 2.0 - std::pow(2.0, 1.0 - 1.0 / b);
  report.tolerance = options.tolerance;

  report.delta_grid = log_grid(1e-6, 0.36, options.delta_points);
  for (double h : h_grid) {
    if (h < max_admissible_delta()) report.delta_grid.push_back(h);
  }
  std::sort(report.delta_grid.begin(), report.delta_grid.end());
  report.delta_grid.erase(std::unique(report.delta_grid.begin(), report.delta_grid.end()),
                          report.delta_grid.end());

  // w' is in L_p only for p < 1/(1 - beta); stay well inside.
  const double p_top = std::min(b, beta < 1.0 ? 1.0 / (1.0 - beta) : kInf);
  report.p_lo = 1.0;
  report.p_hi = 1.0 + 0.5 * (p_top - 1.0);
  PGrid window;
  window.hi = report.p_hi;

  const HolderWeight eta{[b, beta](double delta) { return shift_weight(b, beta, delta); }, "shift"};
  const auto D = DomainSpec::unit_interval();
  auto modulus_of = [&](const TestFunction& f) {
    return [&f, &D, &options](double delta) {
      return empirical_modulus(f, D, delta, ModulusStrategy::DenseGrid1D, options.modulus).value;
    };
  };
  // Near the break of a shifted copy, |w'|^p decays only like a small power
  // of the distance and the last ~1e-13 of it cannot be resolved in doubles,
  // so a relative tolerance much below 1e-7 is out of reach there.
  const double sobolev_tol = std::max(options.tol, 1e-7);
  // g vanishes at 0 and 1, so it lives on the circle and T_h rotates it. The
  // modulus over [0,1] alone is not rotation invariant (pairs straddling the
  // seam are missed), so the invariance check uses the circle modulus.
  auto circle_modulus_of = [&](const TestFunction& f) {
    return [&f, &options](double delta) {
      std::vector<double> breaks{1.0};
      for (double x : f.breakpoints()) {
        breaks.push_back(x);
        breaks.push_back(x + 1.0);
      }
      Profile wrapped;
      wrapped.value = [&f](double x) { return f.at(x < 1.0 ? x : x - 1.0); };
      const TestFunction g = TestFunction::interval(std::move(wrapped), std::move(breaks));
      const auto E = DomainSpec::box({{0.0, 1.0 + delta}});
      return empirical_modulus(g, E, delta, ModulusStrategy::DenseGrid1D, options.modulus).value;
    };
  };
  auto sobolev = [&](const ExtremalFamily& fam) {
    return gls_norm(fam.derived, fam.derived_psi, D, window, sobolev_tol).value +
           gls_norm(fam.derived.gradient(1, 1), fam.derived_psi, D, window, sobolev_tol).value;
  };

  const ExtremalFamily base = make_shift_g(b, beta, 0.0);
  report.reference_holder =
      holder_norm(base.derived, D, eta, report.delta_grid, circle_modulus_of(base.derived));
  report.reference_sobolev = sobolev(base);

  report.min_zeta = kInf;
  report.zeta_pass = true;
  for (double h : h_grid) {
    const ExtremalFamily shifted = make_shift_g(b, beta, h);
    Profile diff;
    diff.value = [g = shifted.derived, w = base.derived](double x) { return g.at(x) - w.at(x); };
    const TestFunction delta_h = TestFunction::interval(std::move(diff), {1.0 - h});
    const HolderNorm z = holder_norm_parts(delta_h, D, eta, report.delta_grid, modulus_of(delta_h));

    NoncompactnessRow row{};
    row.h = h;
    row.zeta = z.modulus_part;
    row.zeta_argmax_delta = z.argmax_delta;
    row.zeta_total = z.total;
    row.holder_norm =
        holder_norm(shifted.derived, D, eta, report.delta_grid, circle_modulus_of(shifted.derived));
    row.sobolev_norm = sobolev(shifted);
    row.pass = row.zeta >= report.threshold - options.tolerance;
    if (!row.pass && report.zeta_pass) {
      report.failure = "zeta(" + format_double(h) + ") = " + format_double(row.zeta) + " is below " +
                       format_double(report.threshold - options.tolerance);
    }
    report.zeta_pass = report.zeta_pass && row.pass;
    report.min_zeta = std::min(report.min_zeta, row.zeta);
    report.holder_spread = std::max(report.holder_spread,
                                    std::abs(row.holder_norm - report.reference_holder) / report.reference_holder);
    report.sobolev_spread =
        std::max(report.sobolev_spread,
                 std::abs(row.sobolev_norm - report.reference_sobolev) / report.reference_sobolev);
    report.rows.push_back(row);
  }
  report.invariance_pass =
      report.holder_spread <= options.invariance_tol && report.sobolev_spread <= options.invariance_tol;
  if (!report.invariance_pass && report.failure.empty()) {
    report.failure = "shift invariance broken: Hoelder spread " + format_double(report.holder_spread) +
                     ", Sobolev spread " + format_double(report.sobolev_spread);
  }
  report.pass = report.zeta_pass && report.invariance_pass;
  return report;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  require(xs.size() == ys.size() && xs.size() >= 2, "slope fit needs two or more matching points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  require(sxx > 0.0, "slope fit needs distinct abscissae");
  return sxy / sxx;
}

nlohmann::json to_json(const SharpnessTable& table) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [k, v] : table.params) params[k] = json_number(v);
  nlohmann::json rows = nlohmann::json::array();
  std::vector<double> log_delta;
  std::vector<double> log_modulus;
  for (const auto& r : table.rows) {
    rows.push_back({{"delta", json_number(r.delta)},
                    {"modulus", json_number(r.modulus)},
                    {"scale", json_number(r.scale)},
                    {"ratio", json_number(r.ratio)}});
    if (r.modulus > 0.0) {
      log_delta.push_back(std::log(r.delta));
      log_modulus.push_back(std::log(r.modulus));
    }
  }
  nlohmann::json out = {{"family", to_string(table.family)},
                        {"params", params},
                        {"norm", json_number(table.norm)},
                        {"rows", rows}};
  if (log_delta.size() >= 2) out["fitted_modulus_exponent"] = json_number(fit_slope(log_delta, log_modulus));
  return out;
}

nlohmann::json to_json(const NoncompactnessReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"h", json_number(r.h)},
                    {"zeta", json_number(r.zeta)},
                    {"zeta_argmax_delta", json_number(r.zeta_argmax_delta)},
                    {"zeta_total", json_number(r.zeta_total)},
                    {"holder_norm", json_number(r.holder_norm)},
                    {"sobolev_norm", json_number(r.sobolev_norm)},
                    {"pass", r.pass}});
  }
  nlohmann::json deltas = nlohmann::json::array();
  for (double d : report.delta_grid) deltas.push_back(json_number(d));
  return {{"family", "ShiftG"},
          {"params", {{"b", json_number(report.b)}, {"beta", json_number(report.beta)}}},
          {"threshold", json_number(report.threshold)},
          {"tolerance", json_number(report.tolerance)},
          {"delta_grid", deltas},
          {"p_window", {json_number(report.p_lo), json_number(report.p_hi)}},
          {"reference_holder", json_number(report.reference_holder)},
          {"reference_sobolev", json_number(report.reference_sobolev)},
          {"rows", rows},
          {"min_zeta", json_number(report.min_zeta)},
          {"holder_spread", json_number(report.holder_spread)},
          {"sobolev_spread", json_number(report.sobolev_spread)},
          {"zeta_pass", report.zeta_pass},
          {"invariance_pass", report.invariance_pass},
          {"pass", report.pass},
          {"failure", report.failure}};
}

}  // namespace gls
