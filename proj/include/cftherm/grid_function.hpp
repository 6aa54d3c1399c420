#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace cftherm {

// Amplitude below which a smooth test function counts as zero when deciding
// its effective support.
constexpr double kSupportThreshold = 1e-12;

// Default number of grid samples; overridable through CFT_THERMAL_GRID_N.
std::size_t default_grid_n();

// Window length = kWindowPad * (declared support width).
constexpr double kWindowPad = 4.0;

struct Support {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  double center() const { return 0.5 * (lo + hi); }
};

Support hull(const Support& a, const Support& b);

// A smooth real test function sampled on a uniform grid x_j = x0 + j h,
// j = 0..n-1, with n a power of two.  Values outside the declared support
// stay below kSupportThreshold in magnitude.  Immutable after construction.
class GridFunction {
 public:
  GridFunction(double x0, double h, std::vector<double> values, Support support);

  // Transform outputs carry roundoff amplified by the spectral multiplier;
  // they keep the mathematical support hint but skip the amplitude check.
  struct unchecked_t {};
  GridFunction(unchecked_t, double x0, double h, std::vector<double> values,
               Support support);

  // Samples `fn` on the window obtained by widening `support` by `pad`.
  // n == 0 picks default_grid_n().  min_window widens further when the
  // consumer needs momentum resolution beyond what the support dictates.
  static GridFunction sample(const std::function<double(double)>& fn,
                             Support support, std::size_t n = 0,
                             double pad = kWindowPad, double min_window = 0.0);

  double x0() const { return x0_; }
  double h() const { return h_; }
  std::size_t size() const { return values_.size(); }
  double x(std::size_t i) const { return x0_ + h_ * static_cast<double>(i); }
  const std::vector<double>& values() const { return values_; }
  double value(std::size_t i) const { return values_[i]; }
  const Support& support() const { return support_; }
  double window_length() const { return h_ * static_cast<double>(size()); }

  bool accuracy_warning() const { return accuracy_warning_; }
  void set_accuracy_warning(bool w) { accuracy_warning_ = w; }

  bool is_zero() const;
  double max_abs() const;

  GridFunction translated(double t) const;  // f(. - t): exact, shifts x0
  GridFunction scaled(double a) const;
  GridFunction negated() const { return scaled(-1.0); }

  // Pointwise local polynomial interpolation (8-point Lagrange); returns 0
  // outside the window.  Accurate to the grid's resolution of f.
  double eval(double x) const;

  // Requires equal spacing and lattice-aligned origins (offset = integer * h).
  GridFunction added(const GridFunction& other) const;

 private:
  GridFunction() = default;
  double x0_ = 0.0;
  double h_ = 1.0;
  std::vector<double> values_;
  Support support_;
  bool accuracy_warning_ = false;
};

// Trapezoid value of \int f dx; exact for compactly supported samples.
double integral(const GridFunction& f);

bool same_lattice(const GridFunction& f, const GridFunction& g);

}  // namespace cftherm
