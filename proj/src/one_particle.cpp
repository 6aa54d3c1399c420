#include "cftherm/one_particle.hpp"

#include <cmath>
#include <stdexcept>

namespace cftherm {

namespace {

std::size_t pad_factor_for(const GridFunction& f, double target_len,
                           std::size_t cap_samples = std::size_t(1) << 19) {
  std::size_t s = 1;
  while (f.window_length() * static_cast<double>(s) < target_len &&
         f.size() * s * 2 <= cap_samples)
    s *= 2;
  return s;
}

// Padded-window targets: the vacuum kink corrections need dp * width << 1,
// the thermal multiplier needs the window to exceed its analyticity scale.
double vacuum_target_len(const GridFunction& f) {
  return std::max(f.window_length(), 16.0 * f.support().width());
}

double thermal_target_len(const GridFunction& f, double beta) {
  return std::max({f.window_length(), 16.0 * f.support().width(), 6.0 * beta});
}

}  // namespace

double thermal_pair_multiplier(double beta, double p) {
  const double x = beta * p;
  if (std::abs(x) < 1e-3) {
    const double p2 = p * p;
    return 2.0 * (2.0 / beta + beta * p2 / 6.0 - beta * beta * beta * p2 * p2 / 360.0);
  }
  const double pa = std::abs(p);
  const double ex = std::min(beta * pa, 700.0);
  return 2.0 * pa * (1.0 + 2.0 / std::expm1(ex));
}

namespace {

// \int_0^infty 2p B(p) dp by half-line trapezoid plus Euler-Maclaurin kink
// corrections from the samples at p = 0.
template <class T>
T halfline_vacuum_sum(const std::vector<double>& p, const std::vector<T>& B,
                      double dp, Exec exec) {
  const std::size_t z = p.size() / 2;  // p = 0
  const std::size_t m = p.size() - z - 1;
  T sum = blocked_sum<T>(
      m, [&](std::size_t i) { return 2.0 * p[z + 1 + i] * B[z + 1 + i]; }, exec);
  sum *= dp;
  const T B0 = B[z];
  const T B2 = (B[z + 1] - 2.0 * B[z] + B[z - 1]) / (dp * dp);
  const T B4 = (B[z + 2] - 4.0 * B[z + 1] + 6.0 * B[z] - 4.0 * B[z - 1] + B[z - 2]) /
               (dp * dp * dp * dp);
  sum += (dp * dp / 6.0) * B0 - (dp * dp * dp * dp / 120.0) * B2 +
         (dp * dp * dp * dp * dp * dp / 3024.0) * B4;
  return sum;
}

}  // namespace

std::complex<double> inner(const GridFunction& f, const GridFunction& g,
                           Exec exec) {
  if (f.size() != g.size() || std::abs(f.h() - g.h()) > 1e-12 * f.h())
    throw std::invalid_argument("inner: functions must share grid resolution");
  const double target = std::max(vacuum_target_len(f), vacuum_target_len(g));
  const std::size_t pad = pad_factor_for(f, target);
  const SpectralFunction fh = fourier(f, pad);
  const SpectralFunction gh = fourier(g, pad);
  std::vector<std::complex<double>> B(fh.size());
  for (std::size_t i = 0; i < fh.size(); ++i)
    B[i] = std::conj(fh.values[i]) * gh.values[i];
  return halfline_vacuum_sum(fh.p, B, fh.dp, exec);
}

double vacuum_norm_sq(const GridFunction& f, Exec exec) {
  const std::size_t pad = pad_factor_for(f, vacuum_target_len(f));
  const SpectralFunction fh = fourier(f, pad);
  std::vector<double> B(fh.size());
  for (std::size_t i = 0; i < fh.size(); ++i) B[i] = std::norm(fh.values[i]);
  return halfline_vacuum_sum(fh.p, B, fh.dp, exec);
}

double symplectic(const GridFunction& f, const GridFunction& g, Exec exec) {
  if (!same_lattice(f, g))
    throw std::invalid_argument("symplectic: functions must share the sample lattice");
  const GridFunction gp = derivative(g);
  // overlap of the two index ranges
  const long off = std::lround((gp.x0() - f.x0()) / f.h());
  const long lo = std::max(0L, off);
  const long hi = std::min(static_cast<long>(f.size()),
                           off + static_cast<long>(gp.size()));
  if (hi <= lo) return 0.0;
  const std::size_t m = static_cast<std::size_t>(hi - lo);
  const double s = blocked_sum<double>(
      m,
      [&](std::size_t i) {
        const long j = lo + static_cast<long>(i);
        return f.value(static_cast<std::size_t>(j)) *
               gp.value(static_cast<std::size_t>(j - off));
      },
      exec);
  return s * f.h();
}

SpectralFunction complex_structure(const GridFunction& f) {
  SpectralFunction s = fourier(f);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double sgn = s.p[i] > 0.0 ? 1.0 : (s.p[i] < 0.0 ? -1.0 : 0.0);
    s.values[i] *= std::complex<double>(0.0, -sgn);
  }
  return s;
}

double thermal_norm_sq(const GridFunction& f, const ThermalParams& tp, Exec exec,
                       QuadFlags* flags) {
  const std::size_t pad = pad_factor_for(f, thermal_target_len(f, tp.beta));
  const SpectralFunction fh = fourier(f, pad);
  const std::size_t n = fh.size();
  const double val =
      0.5 * fh.dp *
      blocked_sum<double>(
          n,
          [&](std::size_t i) {
            return thermal_pair_multiplier(tp.beta, fh.p[i]) * std::norm(fh.values[i]);
          },
          exec);
  if (flags) {
    const double edge = thermal_pair_multiplier(tp.beta, fh.p_max()) *
                        std::norm(fh.values.front());
    flags->accuracy_warning = edge > 1e-14 * std::abs(val);
  }
  return val;
}

double thermal_cross(const GridFunction& f, const GridFunction& g,
                     const ThermalParams& tp, Exec exec) {
  if (f.size() != g.size() || std::abs(f.h() - g.h()) > 1e-12 * f.h())
    throw std::invalid_argument("thermal_cross: functions must share grid resolution");
  const double target = std::max(thermal_target_len(f, tp.beta),
                                 thermal_target_len(g, tp.beta));
  const std::size_t pad = pad_factor_for(f, target);
  const SpectralFunction fh = fourier(f, pad);
  const SpectralFunction gh = fourier(g, pad);
  return 0.5 * fh.dp *
         blocked_sum<double>(
             fh.size(),
             [&](std::size_t i) {
               return thermal_pair_multiplier(tp.beta, fh.p[i]) *
                      (std::conj(fh.values[i]) * gh.values[i]).real();
             },
             exec);
}

double thermal_excess(const GridFunction& f, const ThermalParams& tp, Exec exec) {
  return thermal_norm_sq(f, tp, exec) - vacuum_norm_sq(f, exec);
}

}  // namespace cftherm
