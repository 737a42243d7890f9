#include "gls/psi.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <utility>

#include "gls/errors.hpp"
#include "gls/key_values.hpp"

namespace gls {

// ---------------------------------------------------------------------------
// key-value snippets

double parse_number(std::string_view token) {
  std::string s(token);
  if (s == "inf" || s == "+inf" || s == "infinity") return kInf;
  if (s == "-inf") return -kInf;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    throw InvalidParameter("not a number: '" + s + "'");
  }
  return v;
}

KeyValues KeyValues::parse(std::string_view text, std::string_view head_key) {
  KeyValues kv;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) {
      if (!kv.head_.empty()) throw InvalidParameter("unexpected token '" + token + "'");
      kv.head_ = token;
      continue;
    }
    auto key = token.substr(0, eq);
    auto value = token.substr(eq + 1);
    if (key.empty()) throw InvalidParameter("empty key in '" + token + "'");
    if (key == head_key) {
      kv.head_ = value;
    } else {
      kv.values_[key] = value;
    }
  }
  return kv;
}

std::optional<std::string> KeyValues::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

double KeyValues::number(const std::string& key) const {
  auto v = get(key);
  if (!v) throw InvalidParameter("missing key '" + key + "'");
  return parse_number(*v);
}

double KeyValues::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

// ---------------------------------------------------------------------------
// slowly varying multipliers

double SlowlyVaryingSpec::slope(double u) const {
  if (derivative) return derivative(u);
  const double h = 1e-6 * (std::abs(u) + 1.0);
  return (evaluator(u + h) - evaluator(u - h)) / (2.0 * h);
}

SlowlyVaryingSpec SlowlyVaryingSpec::constant() {
  return {[](double) { return 1.0; }, [](double) { return 0.0; }, "one"};
}

SlowlyVaryingSpec SlowlyVaryingSpec::log1p() {
  return {[](double u) { return std::log1p(u); }, [](double u) { return 1.0 / (1.0 + u); },
          "log1p"};
}

SlowlyVaryingSpec SlowlyVaryingSpec::inverse_shift() {
  return {[](double u) { return 1.0 + 1.0 / u; }, [](double u) { return -1.0 / (u * u); },
          "inv"};
}

SlowlyVaryingSpec SlowlyVaryingSpec::from_name(std::string_view name) {
  if (name == "one" || name == "1") return constant();
  if (name == "log1p") return log1p();
  if (name == "inv") return inverse_shift();
  throw InvalidParameter("unknown slowly varying function '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// PsiFunction

const char* to_string(PsiFamily family) {
  switch (family) {
    case PsiFamily::PowerPair: return "power";
    case PsiFamily::Exponent: return "exponent";
    case PsiFamily::Degenerate: return "degenerate";
    case PsiFamily::Natural: return "natural";
    case PsiFamily::SlowlyVaryingExponent: return "slowly-exponent";
    case PsiFamily::SlowlyVaryingPole: return "slowly-pole";
    case PsiFamily::Custom: return "custom";
  }
  return "unknown";
}

PsiFunction::PsiFunction(double lo, double hi, Evaluator evaluator, PsiFamily family,
                         PsiParams params)
    : lo_(lo), hi_(hi), evaluator_(std::move(evaluator)), family_(family),
      params_(std::move(params)) {
  if (!(lo >= 1.0) || std::isnan(hi)) throw InvalidParameter("psi support must satisfy lo >= 1");
  if (family == PsiFamily::Degenerate ? hi != lo : !(hi > lo)) {
    throw InvalidParameter("psi support must satisfy lo < hi");
  }
  if (!evaluator_) throw InvalidParameter("psi evaluator is empty");
}

double PsiFunction::operator()(double p) const {
  if (is_degenerate()) return p == lo_ ? params_.scale : kInf;
  if (!(p > lo_ && p < hi_)) return kInf;
  return params_.scale * evaluator_(p);
}

PsiFunction PsiFunction::scaled(double c) const {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidParameter("psi scale must be positive");
  PsiFunction out = *this;
  out.params_.scale *= c;
  return out;
}

std::string PsiFunction::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << to_string(family_);
  auto put = [&](const char* key, double v) {
    if (!std::isnan(v)) os << ' ' << key << '=' << v;
  };
  put("A", params_.A);
  put("B", params_.B);
  put("alpha", params_.alpha);
  put("beta", params_.beta);
  put("r", params_.r);
  if (params_.scale != 1.0) put("scale", params_.scale);
  if (!params_.slowly_varying.empty()) os << " L=" << params_.slowly_varying;
  return os.str();
}

PsiFunction make_power_psi(double A, double B, double alpha, double beta) {
  if (!(A >= 1.0)) throw InvalidParameter("power psi: A must be >= 1");
  if (!std::isfinite(B) || !(B > A)) throw InvalidParameter("power psi: B must be finite and > A");
  if (!(alpha >= 0.0) || !(beta >= 0.0)) {
    throw InvalidParameter("power psi: exponents must be nonnegative");
  }
  PsiParams params;
  params.A = A;
  params.B = B;
  params.alpha = alpha;
  params.beta = beta;
  return PsiFunction(
      A, B,
      [=](double p) { return std::pow(p - A, -alpha) * std::pow(B - p, -beta); },
      PsiFamily::PowerPair, params);
}

PsiFunction make_exponent_psi(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidParameter("exponent psi: beta must be > 0");
  PsiParams params;
  params.A = 1.0;
  params.B = kInf;
  params.beta = beta;
  return PsiFunction(1.0, kInf, [=](double p) { return std::pow(p, beta); },
                     PsiFamily::Exponent, params);
}

PsiFunction make_degenerate_psi(double r) {
  if (!(r >= 1.0) || !std::isfinite(r)) throw InvalidParameter("degenerate psi: r must be >= 1");
  PsiParams params;
  params.r = r;
  params.A = r;
  params.B = r;
  return PsiFunction(r, r, [](double) { return 1.0; }, PsiFamily::Degenerate, params);
}

PsiFunction make_slowly_varying_psi(SlowlyVaryingKind kind, double beta, double b,
                                    SlowlyVaryingSpec L) {
  if (!(beta > 0.0)) throw InvalidParameter("slowly varying psi: beta must be > 0");
  if (!L.evaluator) throw InvalidParameter("slowly varying psi: L is empty");
  PsiParams params;
  params.beta = beta;
  params.slowly_varying = L.description;
  params.A = 1.0;
  params.B = b;
  if (kind == SlowlyVaryingKind::Exponent) {
    if (b != kInf) throw InvalidParameter("slowly varying exponent psi requires b = +inf");
    return PsiFunction(
        1.0, kInf, [beta, L = std::move(L)](double p) { return std::pow(p, beta) * L(p); },
        PsiFamily::SlowlyVaryingExponent, params);
  }
  if (!std::isfinite(b) || !(b > 1.0)) {
    throw InvalidParameter("slowly varying pole psi requires finite b > 1");
  }
  return PsiFunction(
      1.0, b,
      [beta, b, L = std::move(L)](double p) {
        return std::pow(b - p, -beta) * L(1.0 / (b - p));
      },
      PsiFamily::SlowlyVaryingPole, params);
}

PsiFunction parse_psi(std::string_view text) {
  const auto kv = KeyValues::parse(text);
  const auto& family = kv.head();
  PsiFunction psi = [&]() {
    if (family == "power") {
      return make_power_psi(kv.number("A"), kv.number("B"), kv.number_or("alpha", 0.0),
                            kv.number_or("beta", 0.0));
    }
    if (family == "exponent") return make_exponent_psi(kv.number("beta"));
    if (family == "degenerate" || family == "lp") return make_degenerate_psi(kv.number("r"));
    if (family == "slowly") {
      const auto kind_name = kv.get("kind").value_or("exponent");
      const auto L = SlowlyVaryingSpec::from_name(kv.get("L").value_or("one"));
      if (kind_name == "exponent") {
        return make_slowly_varying_psi(SlowlyVaryingKind::Exponent, kv.number("beta"),
                                       kv.number_or("b", kInf), L);
      }
      if (kind_name == "pole") {
        return make_slowly_varying_psi(SlowlyVaryingKind::Pole, kv.number("beta"),
                                       kv.number("b"), L);
      }
      throw InvalidParameter("unknown slowly varying kind '" + kind_name + "'");
    }
    throw InvalidParameter("unknown psi family '" + family + "'");
  }();
  if (kv.has("scale")) psi = psi.scaled(kv.number("scale"));
  return psi;
}

}  // namespace gls
