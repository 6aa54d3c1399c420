#include "cftherm/moments.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "cftherm/fixtures.hpp"
#include "cftherm/spectral.hpp"

namespace cftherm {

VirasoroParams::VirasoroParams(double c_, double k_) : c(c_), k(k_) {
  if (!(c >= 1.0)) throw std::invalid_argument("VirasoroParams: c must be >= 1");
  if (std::abs(c - (1.0 + k * k)) > 1e-12)
    throw std::invalid_argument("VirasoroParams: c != 1 + k^2");
}

VirasoroParams VirasoroParams::from_c(double c) {
  if (!(c >= 1.0)) throw std::invalid_argument("VirasoroParams: c must be >= 1");
  return VirasoroParams(c, std::sqrt(c - 1.0));
}

VirasoroParams VirasoroParams::from_k(double k) {
  return VirasoroParams(1.0 + k * k, k);
}

double mean_J(const GridFunction& f, const ThermalParams& tp) {
  return tp.q * integral(f);
}

std::complex<double> covariance_J(const GridFunction& f, const GridFunction& g,
                                  const ThermalParams& tp) {
  const double re = 0.5 * thermal_cross(f, g, tp);
  const double im = 0.5 * symplectic(f, g);
  return std::complex<double>(re, im) +
         tp.q * tp.q * integral(f) * integral(g);
}

namespace {

// Sum over partitions of {0..n-1} into ordered pairs (i<j) and singletons.
std::complex<double> wick_sum(unsigned used, std::size_t n,
                              const std::vector<std::vector<std::complex<double>>>& pairk,
                              const std::vector<double>& means) {
  std::size_t i = 0;
  while (i < n && (used & (1u << i))) ++i;
  if (i == n) return 1.0;
  const unsigned used_i = used | (1u << i);
  std::complex<double> acc = means[i] * wick_sum(used_i, n, pairk, means);
  for (std::size_t j = i + 1; j < n; ++j) {
    if (used_i & (1u << j)) continue;
    acc += pairk[i][j] * wick_sum(used_i | (1u << j), n, pairk, means);
  }
  return acc;
}

}  // namespace

std::complex<double> npoint_J(const MomentRequest& req) {
  const std::size_t n = req.factors.size();
  if (n == 0) return 1.0;
  if (n > 8) throw std::invalid_argument("npoint_J: at most 8 factors");
  std::vector<double> means(n);
  for (std::size_t i = 0; i < n; ++i) means[i] = mean_J(req.factors[i], req.tp);
  std::vector<std::vector<std::complex<double>>> pairk(
      n, std::vector<std::complex<double>>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      pairk[i][j] = covariance_J(req.factors[i], req.factors[j], req.tp) -
                    means[i] * means[j];
  return wick_sum(0u, n, pairk, means);
}

double expect_T(const GridFunction& f, const ThermalParams& tp) {
  const double b = tp.beta;
  return (M_PI / (12.0 * b * b) + 0.5 * tp.q * tp.q) * integral(f);
}

namespace quadrature {

namespace {
// 16-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; mirrored).
constexpr double kNodes[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
constexpr double kWeights[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};
}  // namespace

double gauss_legendre(const std::function<double(double)>& fn, double a, double b,
                      int panels) {
  double acc = 0.0;
  const double len = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + len * p;
    const double mid = lo + 0.5 * len;
    const double half = 0.5 * len;
    for (int k = 0; k < 8; ++k) {
      acc += kWeights[k] * (fn(mid - half * kNodes[k]) + fn(mid + half * kNodes[k]));
    }
  }
  return acc * 0.5 * (b - a) / panels;
}

}  // namespace quadrature

double energy_density_momentum(const ThermalParams& tp) {
  // substitute u = beta p: (1/(4 pi beta^2)) \int_0^inf 2u/(e^u - 1) du
  auto fn = [](double u) {
    if (u < 1e-8) return 2.0 - u + u * u / 6.0;
    return 2.0 * u / std::expm1(u);
  };
  const double I = quadrature::gauss_legendre(fn, 0.0, 100.0, 64);
  return I / (4.0 * M_PI * tp.beta * tp.beta) + 0.5 * tp.q * tp.q;
}

double richardson_even(const std::vector<double>& eps,
                       const std::vector<double>& values, double* settle) {
  const std::size_t n = eps.size();
  if (n != values.size() || n < 2)
    throw std::invalid_argument("richardson_even: need >= 2 matching samples");
  // Neville tableau in the variable eps^2
  std::vector<double> t(values);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = eps[i] * eps[i];
  double prev = t[0];
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = 0; i + k < n; ++i)
      t[i] = (x[i] * t[i + 1] - x[i + k] * t[i]) / (x[i] - x[i + k]);
    if (k + 1 < n) prev = t[0];
  }
  if (settle) *settle = std::abs(t[0] - prev);
  return t[0];
}

double energy_density_pointsplit(const ThermalParams& tp,
                                 const std::vector<double>& widths) {
  if (widths.size() < 2)
    throw std::invalid_argument("energy_density_pointsplit: need >= 2 widths");
  for (std::size_t i = 1; i < widths.size(); ++i)
    if (!(widths[i] < widths[i - 1]))
      throw std::invalid_argument("energy_density_pointsplit: widths must decrease");
  std::vector<double> vals;
  vals.reserve(widths.size());
  const double win = std::max(6.0 * tp.beta, 3.0);
  for (double eps : widths) {
    const GridFunction d = delta_bump(eps, std::size_t(1) << 14, win);
    vals.push_back(0.25 * thermal_excess(d, ThermalParams(tp.beta)));
  }
  double settle = 0.0;
  const double e0 = richardson_even(widths, vals, &settle);
  if (!(settle < 1e-3 * std::abs(e0) + 1e-12))
    throw std::runtime_error("energy_density_pointsplit: extrapolation not convergent");
  return e0 + 0.5 * tp.q * tp.q;
}

double vir_classify(double e, const ThermalParams& tp) {
  const double floor = M_PI / (12.0 * tp.beta * tp.beta);
  const double excess = e - floor;
  if (excess < -1e-12 * std::max(1.0, std::abs(e)))
    throw std::domain_error("vir_classify: density below the geometric minimum");
  return std::sqrt(2.0 * std::max(0.0, excess));
}

double geo_charge(double c, double beta) {
  if (!(c >= 1.0)) throw std::invalid_argument("geo_charge: c must be >= 1");
  return std::sqrt(M_PI * (c - 1.0) / 6.0) / beta;
}

double geo_energy_density(double c, double beta) {
  return M_PI * c / (12.0 * beta * beta);
}

double cocycle_rR(const Diffeomorphism& g, const GridFunction& f, double c) {
  // integrand sqrt(g') (f / sqrt(g'))'' evaluated on f's grid
  const Support s = f.support();
  if (!g.monotone_on(s.lo, s.hi))
    throw std::domain_error("cocycle_rR: g' must be positive on the support");
  std::vector<double> u(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double x = f.x(i);
    if (x < s.lo || x > s.hi) continue;  // f vanishes there; keep u representable
    const double gp = g.derivative(x);
    u[i] = gp > 0.0 ? f.value(i) / std::sqrt(gp) : 0.0;
  }
  GridFunction uf(f.x0(), f.h(), std::move(u), s);
  const GridFunction upp = second_derivative(uf);
  // the integrand vanishes off supp f; restricting the sum keeps spectral
  // ringing away from regions where sqrt(g') is large
  double acc = 0.0;
  for (std::size_t i = 0; i < upp.size(); ++i) {
    const double x = upp.x(i);
    if (x < s.lo - 2.0 * f.h() || x > s.hi + 2.0 * f.h()) continue;
    acc += std::sqrt(g.derivative(x)) * upp.value(i);
  }
  return c / (12.0 * M_PI) * acc * f.h();
}

double tilde_T_shift(const GridFunction& f, double k, const ThermalParams& tp) {
  (void)k;  // phi^q(J(f')) = q \int f' dx = 0
  return expect_T(f, tp);
}

}  // namespace cftherm
