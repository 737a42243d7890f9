#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "gls/domain.hpp"
#include "gls/test_function.hpp"

namespace gls {

enum class ModulusStrategy { DenseGrid1D, RadialProfile, RandomPairs };

const char* to_string(ModulusStrategy strategy);

struct ModulusEstimate {
  double delta;
  double value;
  ModulusStrategy strategy;
  std::size_t pair_count;
};

struct ModulusOptions {
  /// Grid step is delta / subdivisions.
  int subdivisions = 16;
  /// Evaluation budget (grid points or random pairs).
  std::size_t budget = std::size_t{1} << 20;
  std::uint64_t seed = 20240601;
};

/// Lower estimate of omega(f, delta) = sup_{|x-y| <= delta} |f(x) - f(y)|.
///
/// DenseGrid1D scans every grid pair within delta. When the full grid at
/// step delta/subdivisions does not fit in the budget, a coarse global grid
/// is combined with full-resolution windows around the domain ends, the
/// breakpoints and the steepest coarse cells.
/// RadialProfile applies the same scan to the radial profile (exact for
/// radial functions, since |x - y| >= ||x| - |y||) and takes the max with a
/// RandomPairs cross-check.
ModulusEstimate empirical_modulus(const TestFunction& f, const DomainSpec& D, double delta,
                                  ModulusStrategy strategy, const ModulusOptions& options = {});

inline ModulusEstimate empirical_modulus(const TestFunction& f, const DomainSpec& D, double delta,
                                         ModulusStrategy strategy, std::size_t budget) {
  ModulusOptions options;
  options.budget = budget;
  return empirical_modulus(f, D, delta, strategy, options);
}

/// Exact modulus of the samples (xs sorted ascending): the largest spread
/// max - min over any window of width delta. Sets *pairs to the number of
/// grid pairs within delta when given.
double modulus_on_grid(std::span<const double> xs, std::span<const double> values, double delta,
                       std::size_t* pairs = nullptr);

}  // namespace gls
