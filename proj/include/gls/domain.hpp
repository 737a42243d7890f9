#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gls {

enum class DomainKind { UnitInterval, UnitBall, Box };

/// Integration domain: [0,1], the closed unit ball of R^d, or an
/// axis-aligned box.
class DomainSpec {
 public:
  static DomainSpec unit_interval();
  static DomainSpec unit_ball(int d);
  static DomainSpec box(std::vector<std::pair<double, double>> bounds);
  /// "interval", "ball d=3", "box 0:1,0:2".
  static DomainSpec parse(std::string_view text);

  DomainKind kind() const { return kind_; }
  int dimension() const { return dimension_; }
  const std::vector<std::pair<double, double>>& box_bounds() const { return bounds_; }

  double measure() const;
  bool contains(std::span<const double> x) const;
  /// True for domains that are a single segment of the real line.
  bool is_one_dimensional() const { return dimension_ == 1; }
  /// Endpoints of a one-dimensional domain.
  std::pair<double, double> segment() const;
  std::string describe() const;

 private:
  DomainSpec(DomainKind kind, int d, std::vector<std::pair<double, double>> bounds);

  DomainKind kind_;
  int dimension_;
  std::vector<std::pair<double, double>> bounds_;
};

const char* to_string(DomainKind kind);

}  // namespace gls
