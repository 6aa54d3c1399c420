#include "cftherm/kms_strip.hpp"

#include <cmath>
#include <stdexcept>

#include "cftherm/spectral.hpp"

namespace cftherm {

namespace {

// e^{-p theta} / (e^{-beta p} - 1) without overflow on either tail;
// theta in [0, beta].  The |beta p| < 1e-3 region is handled by the caller
// through the Laurent expansion acting on p * prod.
double bose_strip_factor(double p, double beta, double theta) {
  const double x = beta * p;
  if (x > 0.0) return std::exp(-p * theta) / std::expm1(-x);
  return std::exp(p * (beta - theta)) / (-std::expm1(x));
}

}  // namespace

StripKernel::StripKernel(const GridFunction& f, const GridFunction& g,
                         const ThermalParams& tp, double t_max) {
  if (f.size() != g.size() || std::abs(f.h() - g.h()) > 1e-12 * f.h())
    throw std::invalid_argument("StripKernel: functions must share grid resolution");
  beta_ = tp.beta;
  const double base = f.window_length();
  const double target = std::max({2.0 * std::abs(t_max) + 2.0 * base, 6.0 * tp.beta,
                                  16.0 * hull(f.support(), g.support()).width()});
  std::size_t pad = 1;
  while (base * static_cast<double>(pad) < target &&
         f.size() * pad * 2 <= (std::size_t(1) << 21))
    pad *= 2;
  const SpectralFunction fh = fourier(f, pad);
  const SpectralFunction gh = fourier(g, pad);
  dp_ = fh.dp;
  p_ = fh.p;
  prod_.resize(fh.size());
  for (std::size_t i = 0; i < fh.size(); ++i)
    prod_[i] = std::conj(fh.values[i]) * gh.values[i];
}

std::complex<double> StripKernel::eval(std::complex<double> z, Exec exec) const {
  const double t = z.real();
  const double theta = z.imag();
  if (theta < -1e-12 || theta > beta_ + 1e-12)
    throw std::domain_error("StripKernel: Im z outside [0, beta]");
  const double beta = beta_;
  auto term = [&](std::size_t i) -> std::complex<double> {
    const double p = p_[i];
    const std::complex<double> phase = std::polar(1.0, p * t);
    const double x = beta * p;
    if (std::abs(x) < 1e-3) {
      // p/(e^{-beta p}-1) = -1/beta - p/2 - beta p^2/12 + beta^3 p^4/720 + ...
      const double poly = -1.0 / beta - 0.5 * p - beta * p * p / 12.0 +
                          beta * beta * beta * p * p * p * p / 720.0;
      return prod_[i] * poly * std::exp(-p * theta) * phase;
    }
    return prod_[i] * p * bose_strip_factor(p, beta, theta) * phase;
  };
  return dp_ * blocked_sum<std::complex<double>>(p_.size(), term, exec);
}

double StripKernel::sigma_shifted(double t, Exec exec) const {
  // \int p conj(fhat) ghat e^{ipt} dp = i sigma(f, g_t)
  auto term = [&](std::size_t i) -> std::complex<double> {
    return prod_[i] * p_[i] * std::polar(1.0, p_[i] * t);
  };
  const std::complex<double> val =
      dp_ * blocked_sum<std::complex<double>>(p_.size(), term, exec);
  return val.imag();
}

std::complex<double> kernel_K(const GridFunction& f, const GridFunction& g,
                              const ThermalParams& tp, std::complex<double> z) {
  return StripKernel(f, g, tp, std::abs(z.real())).eval(z);
}

namespace {

std::complex<double> state_prefactor(const GridFunction& f, const GridFunction& g,
                                     const ThermalParams& tp) {
  const double nf = thermal_norm_sq(f, tp);
  const double ng = thermal_norm_sq(g, tp);
  const double phase = tp.q * (integral(f) + integral(g));
  return std::polar(std::exp(-0.25 * (nf + ng)), phase);
}

}  // namespace

std::complex<double> two_point_F(const GridFunction& f, const GridFunction& g,
                                 const ThermalParams& tp, std::complex<double> z) {
  const StripKernel k(f, g, tp, std::abs(z.real()));
  return state_prefactor(f, g, tp) * std::exp(k.eval(z));
}

std::vector<KmsResidualRow> kms_residual_rows(const GridFunction& f,
                                              const GridFunction& g,
                                              const ThermalParams& tp,
                                              const std::vector<double>& t_grid,
                                              Exec exec) {
  double t_max = 0.0;
  for (double t : t_grid) t_max = std::max(t_max, std::abs(t));
  const StripKernel k(f, g, tp, t_max);
  const std::complex<double> pref = state_prefactor(f, g, tp);
  std::vector<KmsResidualRow> rows(t_grid.size());
  parallel_for(
      t_grid.size(),
      [&](std::size_t i) {
        const double t = t_grid[i];
        const std::complex<double> Ft = pref * std::exp(k.eval({t, 0.0}, Exec::serial));
        const std::complex<double> Fb = pref * std::exp(k.eval({t, tp.beta}, Exec::serial));
        const double sig = k.sigma_shifted(t, Exec::serial);
        const double num = std::abs(Fb - std::polar(1.0, sig) * Ft);
        rows[i] = {t, std::abs(Ft), num / std::max(std::abs(Ft), 1e-30)};
      },
      exec);
  return rows;
}

double kms_residual(const GridFunction& f, const GridFunction& g,
                    const ThermalParams& tp, const std::vector<double>& t_grid,
                    Exec exec) {
  const auto rows = kms_residual_rows(f, g, tp, t_grid, exec);
  double sup = 0.0;
  for (const auto& r : rows) sup = std::max(sup, r.residual);
  return sup;
}

double clustering_check(const GridFunction& f, const GridFunction& g,
                        const ThermalParams& tp, double T) {
  if (!(T >= 0.0)) throw std::invalid_argument("clustering_check: T must be >= 0");
  const StripKernel k(f, g, tp, T);
  const std::complex<double> pref = state_prefactor(f, g, tp);
  // phi(W(f)) phi(W(g)) shares the prefactor, so the deviation is
  // |pref| |e^{K(T)} - 1|.
  return std::abs(pref * (std::exp(k.eval({T, 0.0})) - 1.0));
}

std::vector<double> default_t_grid(const GridFunction& f, const GridFunction& g) {
  const double w = hull(f.support(), g.support()).width();
  std::vector<double> t(41);
  for (std::size_t i = 0; i < t.size(); ++i)
    t[i] = -5.0 * w + 10.0 * w * static_cast<double>(i) / 40.0;
  return t;
}

StripEvaluation evaluate_strip(const GridFunction& f, const GridFunction& g,
                               const ThermalParams& tp, double theta,
                               const std::vector<double>& t_grid, Exec exec) {
  double t_max = 0.0;
  for (double t : t_grid) t_max = std::max(t_max, std::abs(t));
  const StripKernel k(f, g, tp, t_max);
  const std::complex<double> pref = state_prefactor(f, g, tp);
  StripEvaluation out;
  out.t_grid = t_grid;
  out.theta = theta;
  out.beta = tp.beta;
  out.values.resize(t_grid.size());
  parallel_for(
      t_grid.size(),
      [&](std::size_t i) {
        out.values[i] = pref * std::exp(k.eval({t_grid[i], theta}, Exec::serial));
      },
      exec);
  return out;
}

}  // namespace cftherm
