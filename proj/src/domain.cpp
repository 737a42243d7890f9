#include "gls/domain.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gls/errors.hpp"
#include "gls/key_values.hpp"

namespace gls {

const char* to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::UnitInterval: return "interval";
    case DomainKind::UnitBall: return "ball";
    case DomainKind::Box: return "box";
  }
  return "unknown";
}

DomainSpec::DomainSpec(DomainKind kind, int d, std::vector<std::pair<double, double>> bounds)
    : kind_(kind), dimension_(d), bounds_(std::move(bounds)) {}

DomainSpec DomainSpec::unit_interval() { return DomainSpec(DomainKind::UnitInterval, 1, {{0.0, 1.0}}); }

DomainSpec DomainSpec::unit_ball(int d) {
  if (d < 1) throw InvalidParameter("unit ball dimension must be >= 1");
  return DomainSpec(DomainKind::UnitBall, d, std::vector<std::pair<double, double>>(d, {-1.0, 1.0}));
}

DomainSpec DomainSpec::box(std::vector<std::pair<double, double>> bounds) {
  if (bounds.empty()) throw InvalidParameter("box needs at least one axis");
  for (const auto& [lo, hi] : bounds) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
      throw InvalidParameter("box bounds must be finite with lo < hi");
    }
  }
  const int d = static_cast<int>(bounds.size());
  return DomainSpec(DomainKind::Box, d, std::move(bounds));
}

DomainSpec DomainSpec::parse(std::string_view text) {
  // "box 0:1,0:2" puts the bounds where a key=value parser expects nothing.
  std::istringstream words{std::string(text)};
  std::string head;
  std::string axes;
  words >> head;
  if (head == "box") {
    words >> axes;
    if (axes.find('=') != std::string::npos) {
      const auto kv = KeyValues::parse(text, "kind");
      axes = kv.get("bounds").value_or("");
    }
  }
  const auto kv = head == "box" ? KeyValues{} : KeyValues::parse(text, "kind");
  if (head != "box") head = kv.head();
  if (head == "interval") return unit_interval();
  if (head == "ball") return unit_ball(static_cast<int>(kv.number_or("d", 2)));
  if (head == "box") {
    std::vector<std::pair<double, double>> bounds;
    std::istringstream in(axes);
    std::string axis;
    while (std::getline(in, axis, ',')) {
      const auto colon = axis.find(':');
      if (colon == std::string::npos) throw InvalidParameter("box axis must be lo:hi, got '" + axis + "'");
      bounds.emplace_back(parse_number(axis.substr(0, colon)), parse_number(axis.substr(colon + 1)));
    }
    return box(std::move(bounds));
  }
  throw InvalidParameter("unknown domain '" + head + "'");
}

double DomainSpec::measure() const {
  switch (kind_) {
    case DomainKind::UnitInterval: return 1.0;
    case DomainKind::UnitBall: {
      const double d = dimension_;
      return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
    }
    case DomainKind::Box: {
      double m = 1.0;
      for (const auto& [lo, hi] : bounds_) m *= hi - lo;
      return m;
    }
  }
  return 0.0;
}

bool DomainSpec::contains(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dimension_) return false;
  if (kind_ == DomainKind::UnitBall) {
    double r2 = 0.0;
    for (double xi : x) r2 += xi * xi;
    return r2 <= 1.0;
  }
  for (int i = 0; i < dimension_; ++i) {
    if (x[i] < bounds_[i].first || x[i] > bounds_[i].second) return false;
  }
  return true;
}

std::pair<double, double> DomainSpec::segment() const {
  if (dimension_ != 1) throw InvalidParameter("domain is not one-dimensional");
  return bounds_.front();
}

std::string DomainSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case DomainKind::UnitInterval: os << "interval"; break;
    case DomainKind::UnitBall: os << "ball d=" << dimension_; break;
    case DomainKind::Box:
      os << "box ";
      for (std::size_t i = 0; i < bounds_.size(); ++i) {
        if (i) os << ',';
        os << bounds_[i].first << ':' << bounds_[i].second;
      }
      break;
  }
  return os.str();
}

}  // namespace gls
