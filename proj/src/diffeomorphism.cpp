#include "cftherm/diffeomorphism.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cftherm {

Diffeomorphism Diffeomorphism::identity() {
  auto id = [](double x) { return x; };
  return Diffeomorphism(Kind::identity, id, [](double) { return 1.0; }, id,
                        std::nullopt);
}

Diffeomorphism Diffeomorphism::translation(double a) {
  return Diffeomorphism(
      Kind::translation, [a](double x) { return x + a; },
      [](double) { return 1.0; }, [a](double x) { return x - a; }, std::nullopt);
}

Diffeomorphism Diffeomorphism::exponential(double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("exponential: beta must be positive");
  const double w = 2.0 * M_PI / beta;
  return Diffeomorphism(
      Kind::exponential, [w](double x) { return std::exp(w * x); },
      [w](double x) { return w * std::exp(w * x); },
      [w](double x) { return std::log(x) / w; },
      Support{0.0, std::numeric_limits<double>::infinity()});
}

Diffeomorphism Diffeomorphism::custom(std::function<double(double)> fwd,
                                      std::function<double(double)> deriv,
                                      std::function<double(double)> inv,
                                      std::optional<Support> image) {
  return Diffeomorphism(Kind::custom, std::move(fwd), std::move(deriv),
                        std::move(inv), image);
}

bool Diffeomorphism::in_image(double x) const {
  if (!image_) return true;
  return x > image_->lo && x < image_->hi;
}

bool Diffeomorphism::monotone_on(double a, double b, int samples) const {
  for (int i = 0; i <= samples; ++i) {
    const double x = a + (b - a) * static_cast<double>(i) / samples;
    if (!(deriv_(x) > 0.0)) return false;
  }
  return true;
}

double Diffeomorphism::inverse_defect_on(double a, double b, int samples) const {
  double m = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double x = a + (b - a) * static_cast<double>(i) / samples;
    m = std::max(m, std::abs(inv_(fwd_(x)) - x));
  }
  return m;
}

namespace {

Support image_support(const Diffeomorphism& g, const Support& s) {
  if (!g.monotone_on(s.lo, s.hi))
    throw std::domain_error("diffeomorphism not increasing on the support");
  return {g(s.lo), g(s.hi)};
}

}  // namespace

GridFunction pushforward(const Diffeomorphism& g, const GridFunction& f,
                         std::size_t n, double pad) {
  const Support img = image_support(g, f.support());
  auto fn = [&](double x) {
    if (!g.in_image(x)) return 0.0;
    const double u = g.inverse(x);
    if (u < f.support().lo || u > f.support().hi) return 0.0;
    return f.eval(u) / g.derivative(u);
  };
  return GridFunction::sample(fn, img, n, pad);
}

GridFunction compose_inverse(const Diffeomorphism& g, const GridFunction& f,
                             std::size_t n, double pad, double min_window) {
  const Support img = image_support(g, f.support());
  auto fn = [&](double x) {
    if (!g.in_image(x)) return 0.0;
    const double u = g.inverse(x);
    if (u < f.support().lo || u > f.support().hi) return 0.0;
    return f.eval(u);
  };
  return GridFunction::sample(fn, img, n, pad, min_window);
}

GridFunction compose(const Diffeomorphism& g, const GridFunction& f,
                     std::size_t n, double pad) {
  if (!g.in_image(f.support().lo) || !g.in_image(f.support().hi))
    throw std::domain_error("support not contained in the image of g");
  const Support pre{g.inverse(f.support().lo), g.inverse(f.support().hi)};
  if (!g.monotone_on(pre.lo, pre.hi))
    throw std::domain_error("diffeomorphism not increasing on the preimage");
  auto fn = [&](double x) {
    const double u = g(x);
    if (u < f.support().lo || u > f.support().hi) return 0.0;
    return f.eval(u);
  };
  return GridFunction::sample(fn, pre, n, pad);
}

}  // namespace cftherm
