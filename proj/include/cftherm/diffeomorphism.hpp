#pragma once

#include <functional>
#include <optional>
#include <string>

#include "cftherm/grid_function.hpp"

namespace cftherm {

// Orientation-preserving diffeomorphism of R given by closed-form evaluators.
// The exponential map x -> e^{2 pi x / beta} realizes the geometric-state
// change of variables; its image is (0, inf).
class Diffeomorphism {
 public:
  enum class Kind { identity, translation, exponential, custom };

  static Diffeomorphism identity();
  static Diffeomorphism translation(double a);
  static Diffeomorphism exponential(double beta);
  static Diffeomorphism custom(std::function<double(double)> fwd,
                               std::function<double(double)> deriv,
                               std::function<double(double)> inv,
                               std::optional<Support> image = std::nullopt);

  Kind kind() const { return kind_; }
  double operator()(double x) const { return fwd_(x); }
  double derivative(double x) const { return deriv_(x); }
  double inverse(double x) const { return inv_(x); }

  bool in_image(double x) const;

  // derivative > 0 sampled on [a, b]
  bool monotone_on(double a, double b, int samples = 64) const;
  // max |g^{-1}(g(x)) - x| sampled on [a, b]
  double inverse_defect_on(double a, double b, int samples = 64) const;

 private:
  Diffeomorphism(Kind k, std::function<double(double)> f,
                 std::function<double(double)> d, std::function<double(double)> i,
                 std::optional<Support> image)
      : kind_(k), fwd_(std::move(f)), deriv_(std::move(d)), inv_(std::move(i)),
        image_(image) {}

  Kind kind_;
  std::function<double(double)> fwd_, deriv_, inv_;
  std::optional<Support> image_;  // nullopt: all of R
};

// Mass-preserving pushforward (g_* f)(x) = f(g^{-1}(x)) / g'(g^{-1}(x)),
// sampled on a grid covering g(supp f); the substitution rule
// \int g_* f = \int f holds.  Throws std::domain_error when g is not
// monotone increasing over the support.
GridFunction pushforward(const Diffeomorphism& g, const GridFunction& f,
                         std::size_t n = 0, double pad = kWindowPad);

// f o g^{-1} sampled on a grid covering g(supp f).
GridFunction compose_inverse(const Diffeomorphism& g, const GridFunction& f,
                             std::size_t n = 0, double pad = kWindowPad,
                             double min_window = 0.0);

// f o g sampled on a grid covering g^{-1}(supp f).
GridFunction compose(const Diffeomorphism& g, const GridFunction& f,
                     std::size_t n = 0, double pad = kWindowPad);

}  // namespace cftherm
