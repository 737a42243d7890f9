#include "gls/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <string>
#include <vector>

#include "gls/errors.hpp"

namespace gls {

const char* to_string(ModulusStrategy strategy) {
  switch (strategy) {
    case ModulusStrategy::DenseGrid1D: return "dense-grid-1d";
    case ModulusStrategy::RadialProfile: return "radial-profile";
    case ModulusStrategy::RandomPairs: return "random-pairs";
  }
  return "unknown";
}

double modulus_on_grid(std::span<const double> xs, std::span<const double> values, double delta,
                       std::size_t* pairs) {
  if (xs.size() != values.size()) throw InvalidParameter("grid and values differ in length");
  const double reach = delta * (1.0 + 1e-12);
  std::deque<std::size_t> hi;  // indices with decreasing values
  std::deque<std::size_t> lo;  // indices with increasing values
  std::size_t left = 0;
  std::size_t count = 0;
  double best = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    while (!hi.empty() && values[hi.back()] <= values[j]) hi.pop_back();
    hi.push_back(j);
    while (!lo.empty() && values[lo.back()] >= values[j]) lo.pop_back();
    lo.push_back(j);
    while (xs[j] - xs[left] > reach) ++left;
    while (hi.front() < left) hi.pop_front();
    while (lo.front() < left) lo.pop_front();
    count += j - left;
    best = std::max(best, values[hi.front()] - values[lo.front()]);
  }
  if (pairs) *pairs = count;
  return best;
}

namespace {

double checked(double v, double x) {
  if (!std::isfinite(v)) {
    throw InvalidParameter("function is not finite at x = " + std::to_string(x));
  }
  return v;
}

struct Scan {
  double value = 0.0;
  std::size_t pairs = 0;
};

Scan dense_scan(const ScalarFn& u, double a, double b, const std::vector<double>& breakpoints,
                double delta, int subdivisions, std::size_t budget) {
  const double step = delta / subdivisions;
  // Kinks and their partners at distance delta join every grid, so windows
  // can end exactly on a breakpoint.
  std::vector<double> extras;
  for (double x : breakpoints) {
    for (double e : {x - delta, x, x + delta}) {
      if (e >= a && e <= b) extras.push_back(e);
    }
  }
  for (double e : {a + delta, b - delta}) {
    if (e >= a && e <= b) extras.push_back(e);
  }
  auto run = [&](double lo, double hi, double h) {
    const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / h - 1e-9)) + 1;
    std::vector<double> xs;
    xs.reserve(n + extras.size());
    for (std::size_t i = 0; i < n; ++i) xs.push_back(std::min(hi, lo + h * static_cast<double>(i)));
    for (double e : extras) {
      if (e >= lo && e <= hi) xs.push_back(e);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<double> vs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) vs[i] = checked(u(xs[i]), xs[i]);
    Scan s;
    s.value = modulus_on_grid(xs, vs, delta, &s.pairs);
    return std::make_pair(s, std::make_pair(std::move(xs), std::move(vs)));
  };

  const double full_points = (b - a) / step + 1.0;
  if (full_points <= static_cast<double>(budget)) return run(a, b, step).first;

  // Coarse pass over the whole segment.
  const std::size_t coarse_n = std::max<std::size_t>(budget / 2, 1024);
  const double coarse_step = (b - a) / static_cast<double>(coarse_n - 1);
  auto [coarse, samples] = run(a, b, coarse_step);
  const auto& cx = samples.first;
  const auto& cv = samples.second;

  std::vector<double> spots{a, b};
  for (double x : breakpoints) {
    if (x > a && x < b) spots.push_back(x);
  }
  // Steepest coarse cells, at most one per neighbourhood.
  std::vector<std::size_t> order(cx.size() - 1);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const double di = std::abs(cv[i + 1] - cv[i]);
    const double dj = std::abs(cv[j + 1] - cv[j]);
    return di != dj ? di > dj : i < j;
  });
  constexpr std::size_t kSteepCells = 8;
  std::size_t taken = 0;
  for (std::size_t i : order) {
    if (taken == kSteepCells) break;
    const double x = 0.5 * (cx[i] + cx[i + 1]);
    bool near = false;
    for (double s : spots) near = near || std::abs(s - x) < 4.0 * coarse_step;
    if (near) continue;
    spots.push_back(x);
    ++taken;
  }

  const std::size_t local_n =
      std::max<std::size_t>(budget / 2 / spots.size(), 4 * static_cast<std::size_t>(subdivisions));
  const double half_width = 0.5 * step * static_cast<double>(local_n - 1);
  Scan best = coarse;
  for (double s : spots) {
    double lo = s - half_width;
    double hi = s + half_width;
    if (lo < a) {
      hi = std::min(b, hi + (a - lo));
      lo = a;
    }
    if (hi > b) {
      lo = std::max(a, lo - (hi - b));
      hi = b;
    }
    const Scan local = run(lo, hi, step).first;
    best.value = std::max(best.value, local.value);
    best.pairs += local.pairs;
  }
  return best;
}

Scan random_pairs(const TestFunction& f, const DomainSpec& D, double delta, std::size_t budget,
                  std::uint64_t seed) {
  const int d = D.dimension();
  const auto& bounds = D.box_bounds();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> x(d);
  std::vector<double> y(d);
  Scan s;
  const std::size_t max_attempts = 20 * budget;
  std::size_t attempts = 0;
  while (s.pairs < budget && attempts < max_attempts) {
    ++attempts;
    for (int k = 0; k < d; ++k) {
      x[k] = bounds[k].first + (bounds[k].second - bounds[k].first) * unit(rng);
    }
    if (!D.contains(x)) continue;
    double norm = 0.0;
    for (int k = 0; k < d; ++k) {
      y[k] = gauss(rng);
      norm += y[k] * y[k];
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    const double rho = delta * unit(rng);
    for (int k = 0; k < d; ++k) y[k] = x[k] + rho * y[k] / norm;
    if (!D.contains(y)) continue;
    const double fx = checked(f(x), x[0]);
    const double fy = checked(f(y), y[0]);
    s.value = std::max(s.value, std::abs(fx - fy));
    ++s.pairs;
  }
  return s;
}

}  // namespace

ModulusEstimate empirical_modulus(const TestFunction& f, const DomainSpec& D, double delta,
                                  ModulusStrategy strategy, const ModulusOptions& options) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw InvalidParameter("delta must be positive");
  if (options.budget < 1000) throw InvalidParameter("modulus budget must be >= 1000");
  if (options.subdivisions < 1) throw InvalidParameter("subdivisions must be >= 1");

  switch (strategy) {
    case ModulusStrategy::DenseGrid1D: {
      if (!D.is_one_dimensional()) {
        throw InvalidStrategy("DenseGrid1D needs a one-dimensional domain");
      }
      const auto [a, b] = D.segment();
      const ScalarFn u = [&f](double x) { return f.at(x); };
      const Scan s = dense_scan(u, a, b, f.breakpoints(), delta, options.subdivisions, options.budget);
      return {delta, s.value, strategy, s.pairs};
    }
    case ModulusStrategy::RadialProfile: {
      if (D.kind() != DomainKind::UnitBall || f.shape() != TestFunction::Shape::Radial) {
        throw InvalidStrategy("RadialProfile needs a radial function on the unit ball");
      }
      const Scan along_ray =
          dense_scan(f.profile()->value, 0.0, 1.0, {}, delta, options.subdivisions, options.budget);
      const Scan cross = random_pairs(f, D, delta, options.budget / 4, options.seed);
      return {delta, std::max(along_ray.value, cross.value), strategy, along_ray.pairs + cross.pairs};
    }
    case ModulusStrategy::RandomPairs: {
      const Scan s = random_pairs(f, D, delta, options.budget, options.seed);
      return {delta, s.value, strategy, s.pairs};
    }
  }
  throw InvalidStrategy("unknown modulus strategy");
}

}  // namespace gls
