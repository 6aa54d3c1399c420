#include "cftherm/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace cftherm {

namespace {

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

std::size_t env_grid_n() {
  const char* s = std::getenv("CFT_THERMAL_GRID_N");
  if (!s) return 0;
  const long v = std::strtol(s, nullptr, 10);
  if (v < 8 || !is_power_of_two(static_cast<std::size_t>(v)))
    throw std::invalid_argument("CFT_THERMAL_GRID_N must be a power of two >= 8");
  return static_cast<std::size_t>(v);
}

}  // namespace

std::size_t default_grid_n() {
  const std::size_t n = env_grid_n();
  return n ? n : 4096;
}

Support hull(const Support& a, const Support& b) {
  if (a.width() <= 0.0) return b;
  if (b.width() <= 0.0) return a;
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

GridFunction::GridFunction(double x0, double h, std::vector<double> values,
                           Support support)
    : x0_(x0), h_(h), values_(std::move(values)), support_(support) {
  if (!(h_ > 0.0)) throw std::invalid_argument("grid spacing must be positive");
  if (!is_power_of_two(values_.size()))
    throw std::invalid_argument("grid length must be a power of two");
  double peak = 0.0;
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("grid values must be finite");
    peak = std::max(peak, std::abs(v));
  }
  // absolute threshold for O(1) fixtures, relative floor for scaled data
  const double thresh = std::max(kSupportThreshold, 1e-14 * peak) * 1.0001;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double xi = x(i);
    if ((xi < support_.lo || xi > support_.hi) && std::abs(values_[i]) > thresh)
      throw std::invalid_argument(
          "grid value above support threshold outside declared support at x=" +
          std::to_string(xi));
  }
}

GridFunction::GridFunction(unchecked_t, double x0, double h,
                           std::vector<double> values, Support support)
    : x0_(x0), h_(h), values_(std::move(values)), support_(support) {
  if (!(h_ > 0.0)) throw std::invalid_argument("grid spacing must be positive");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("grid values must be finite");
}

GridFunction GridFunction::sample(const std::function<double(double)>& fn,
                                  Support support, std::size_t n, double pad,
                                  double min_window) {
  if (n == 0) n = default_grid_n();
  const double width = std::max(support.width(), 1e-300);
  const double len = std::max(pad * width, min_window);
  const double x0 = support.center() - 0.5 * len;
  const double h = len / static_cast<double>(n);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = fn(x0 + h * static_cast<double>(i));
  return GridFunction(x0, h, std::move(v), support);
}

bool GridFunction::is_zero() const { return max_abs() == 0.0; }

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

GridFunction GridFunction::translated(double t) const {
  GridFunction out = *this;
  out.x0_ += t;
  out.support_.lo += t;
  out.support_.hi += t;
  return out;
}

GridFunction GridFunction::scaled(double a) const {
  GridFunction out = *this;
  for (double& v : out.values_) v *= a;
  return out;
}

double GridFunction::eval(double x) const {
  const std::size_t n = size();
  const double u = (x - x0_) / h_;
  if (u < 0.0 || u > static_cast<double>(n - 1)) return 0.0;
  constexpr std::size_t kOrder = 8;
  if (n < kOrder) return values_[static_cast<std::size_t>(std::llround(u))];
  std::size_t j0 = static_cast<std::size_t>(std::floor(u));
  j0 = j0 >= kOrder / 2 ? j0 - kOrder / 2 + 1 : 0;
  j0 = std::min(j0, n - kOrder);
  // Lagrange interpolation through kOrder consecutive samples.
  double acc = 0.0;
  for (std::size_t k = 0; k < kOrder; ++k) {
    double w = 1.0;
    for (std::size_t m = 0; m < kOrder; ++m) {
      if (m == k) continue;
      w *= (u - static_cast<double>(j0 + m)) /
           (static_cast<double>(j0 + k) - static_cast<double>(j0 + m));
    }
    acc += w * values_[j0 + k];
  }
  return acc;
}

bool same_lattice(const GridFunction& f, const GridFunction& g) {
  if (std::abs(f.h() - g.h()) > 1e-12 * f.h()) return false;
  const double off = (g.x0() - f.x0()) / f.h();
  return std::abs(off - std::round(off)) < 1e-9;
}

GridFunction GridFunction::added(const GridFunction& other) const {
  if (!same_lattice(*this, other))
    throw std::invalid_argument("added: functions must share the sample lattice");
  const double h = h_;
  const double lo = std::min(x0_, other.x0());
  const double hi = std::max(x0_ + h * static_cast<double>(size()),
                             other.x0() + h * static_cast<double>(other.size()));
  const std::size_t span_cells =
      static_cast<std::size_t>(std::ceil((hi - lo) / h - 1e-9));
  std::size_t n = 2;
  while (n < span_cells) n *= 2;
  // lo sits on the shared lattice, so x0 = lo - k*h stays on it
  const std::size_t left_pad = (n - span_cells) / 2;
  const double x0 = lo - h * static_cast<double>(left_pad);
  std::vector<double> v(n, 0.0);
  auto deposit = [&](const GridFunction& f) {
    const long base = static_cast<long>(std::llround((f.x0() - x0) / h));
    for (std::size_t i = 0; i < f.size(); ++i) {
      const long j = base + static_cast<long>(i);
      if (j >= 0 && j < static_cast<long>(n)) v[static_cast<std::size_t>(j)] += f.value(i);
    }
  };
  deposit(*this);
  deposit(other);
  return GridFunction(unchecked_t{}, x0, h, std::move(v),
                      hull(support_, other.support()));
}

double integral(const GridFunction& f) {
  double acc = 0.0;
  for (double v : f.values()) acc += v;
  return acc * f.h();
}

}  // namespace cftherm
