#include "gls/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "gls/errors.hpp"

namespace gls::quad {
namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// 7-point Gauss weights, nodes kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment kronrod(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod_sum = kWgk[7] * fc;
  double gauss_sum = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(center - dx) + f(center + dx);
    kronrod_sum += kWgk[j] * fsum;
    if (j % 2 == 1) gauss_sum += kWg[j / 2] * fsum;
  }
  const double value = kronrod_sum * half;
  const double error = std::abs((kronrod_sum - gauss_sum) * half);
  if (std::isnan(value)) throw QuadratureError("integrand produced NaN");
  return {a, b, value, error};
}

double adaptive(const std::function<double(double)>& f, std::vector<double> edges,
                const Options& options) {
  std::priority_queue<Segment> heap;
  double total = 0.0;
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!(edges[i + 1] > edges[i])) continue;
    auto s = kronrod(f, edges[i], edges[i + 1]);
    total += s.value;
    total_error += s.error;
    heap.push(s);
  }
  if (std::isinf(total)) return total;
  int segments = static_cast<int>(heap.size());
  std::vector<Segment> frozen;
  while (!heap.empty()) {
    const double target = std::max(options.abs_tol, options.rel_tol * std::abs(total));
    if (total_error <= target) break;
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 64.0 * std::numeric_limits<double>::epsilon() *
                                  std::max(std::abs(worst.a), std::abs(worst.b))) {
      // Roundoff-limited: accept this piece as is.
      total_error -= worst.error;
      frozen.push_back(worst);
      continue;
    }
    if (segments >= options.max_segments) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "adaptive quadrature did not reach rel_tol %g within %d segments",
                    options.rel_tol, options.max_segments);
      throw QuadratureError(buf);
    }
    auto left = kronrod(f, worst.a, mid);
    auto right = kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++segments;
    if (std::isinf(total)) return total;
  }
  // Re-sum to shed the drift of the running updates.
  double sum = 0.0;
  std::vector<Segment> pieces = std::move(frozen);
  pieces.reserve(pieces.size() + heap.size());
  while (!heap.empty()) {
    pieces.push_back(heap.top());
    heap.pop();
  }
  std::sort(pieces.begin(), pieces.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
  for (const auto& s : pieces) sum += s.value;
  return sum;
}

}  // namespace

double log_add_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double m = std::max(a, b);
  if (std::isinf(m)) return m;
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

double integrate(const std::function<double(double)>& f, double a, double b, const Options& options,
                 std::span<const double> breakpoints) {
  if (a == b) return 0.0;
  if (b < a) return -integrate(f, b, a, options, breakpoints);
  std::vector<double> edges{a};
  for (double x : breakpoints) {
    if (x > a && x < b) edges.push_back(x);
  }
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return adaptive(f, std::move(edges), options);
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Running maximum of L over `count` interior sample points of [a, b].
// Returns +inf if any sample is +inf.
double sample_max(const std::function<double(double)>& L, double a, double b, int count,
                  double* first = nullptr, double* last = nullptr) {
  double m = kNegInf;
  for (int i = 0; i < count; ++i) {
    const double y = a + (b - a) * (i + 0.5) / count;
    const double v = L(y);
    if (i == 0 && first) *first = v;
    if (i == count - 1 && last) *last = v;
    if (std::isnan(v)) continue;
    m = std::max(m, v);
  }
  return m;
}

double scaled_log_integral(const std::function<double(double)>& L, double peak,
                           std::vector<double> edges, const Options& options) {
  auto g = [&](double y) {
    const double v = L(y);
    if (v == kNegInf) return 0.0;
    return std::exp(v - peak);
  };
  Options inner = options;
  inner.abs_tol = 0.0;
  const double integral = adaptive(g, std::move(edges), inner);
  if (integral <= 0.0) return kNegInf;
  return peak + std::log(integral);
}

}  // namespace

double log_integrate_exp(const std::function<double(double)>& L, double a, double b,
                         const Options& options) {
  if (!(b > a)) return kNegInf;
  const double peak = sample_max(L, a, b, 257);
  if (peak == kNegInf) return kNegInf;
  if (std::isinf(peak)) return peak;
  return scaled_log_integral(L, peak, {a, b}, options);
}

double log_integrate_exp_tail(const std::function<double(double)>& L, double a,
                              const Options& options) {
  constexpr int kSamples = 33;
  constexpr double kMaxReach = 1099511627776.0;  // 2^40
  const double drop = std::log(options.rel_tol) - 30.0;

  std::vector<double> edges{a};
  double peak = kNegInf;
  double width = 1.0;
  int quiet_panels = 0;
  while (true) {
    const double lo = edges.back();
    const double hi = lo + width;
    double first = kNegInf;
    double last = kNegInf;
    const double m = sample_max(L, lo, hi, kSamples, &first, &last);
    if (m == std::numeric_limits<double>::infinity()) return m;
    peak = std::max(peak, m);
    edges.push_back(hi);
    const bool negligible = peak == kNegInf ? edges.size() > 40 : m < peak + drop;
    const bool decaying = !(last > first);
    quiet_panels = (negligible && decaying) ? quiet_panels + 1 : 0;
    if (quiet_panels >= 2 && edges.size() > 4) break;
    if (hi - a > kMaxReach) {
      throw QuadratureError("integrand does not decay on the semi-infinite range");
    }
    if (edges.size() > 2) width *= 2.0;
  }
  if (peak == kNegInf) return kNegInf;
  return scaled_log_integral(L, peak, std::move(edges), options);
}

}  // namespace gls::quad
