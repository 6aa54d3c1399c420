#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "cftherm/diffeomorphism.hpp"
#include "cftherm/grid_function.hpp"
#include "cftherm/one_particle.hpp"

namespace cftherm {

// Arguments of a quasi-free moment phi^q(J(f_1) ... J(f_n)); n <= 8.
struct MomentRequest {
  std::vector<GridFunction> factors;
  ThermalParams tp;
};

// Central charge / level of the shifted stress tensor, c = 1 + k^2.
struct VirasoroParams {
  double c;
  double k;

  static VirasoroParams from_c(double c);
  static VirasoroParams from_k(double k);
  VirasoroParams(double c_, double k_);
};

// phi^q(J(f)) = q \int f dx
double mean_J(const GridFunction& f, const ThermalParams& tp);

// phi^q(J(f)J(g)) = Re(f, S_beta g)/2 + i sigma(f,g)/2 + q^2 \int f \int g
std::complex<double> covariance_J(const GridFunction& f, const GridFunction& g,
                                  const ThermalParams& tp);

// Wick expansion over pairings (ordered pairs i<j) and mean singletons.
std::complex<double> npoint_J(const MomentRequest& req);

// phi^q(T(f)) = (pi/(12 beta^2) + q^2/2) \int f dx
double expect_T(const GridFunction& f, const ThermalParams& tp);

// Energy density pi/(12 beta^2) + q^2/2 via the momentum integral
// (1/4pi) \int_0^inf p (coth(beta p/2) - 1) dp + q^2/2.
double energy_density_momentum(const ThermalParams& tp);

// Same density from narrowing unit-integral bumps delta_eps:
// (phi^0(J J) - vacuum)/2 at each width, Richardson-extrapolated in eps^2.
// Throws std::runtime_error when the extrapolation does not settle.
double energy_density_pointsplit(const ThermalParams& tp,
                                 const std::vector<double>& widths);

// Inverts e = pi/(12 beta^2) + q^2/2; domain error below the family minimum.
double vir_classify(double e, const ThermalParams& tp);

// Geometric state of Vir_c: q_geo = sqrt(pi (c-1)/6)/beta, e_geo = pi c/(12 beta^2).
double geo_charge(double c, double beta);
double geo_energy_density(double c, double beta);

// r^R(g,f) = (c / 12 pi) \int sqrt(g') (d^2/dx^2)(f / sqrt(g')) dx
double cocycle_rR(const Diffeomorphism& g, const GridFunction& f, double c);

// phi^q(T(f) + k J(f')) = phi^q(T(f)): the k J(f') shift has zero mean.
double tilde_T_shift(const GridFunction& f, double k, const ThermalParams& tp);

namespace quadrature {
// Composite 16-point Gauss-Legendre on [a, b] with `panels` equal panels.
double gauss_legendre(const std::function<double(double)>& fn, double a, double b,
                      int panels);
}

// Neville extrapolation to eps -> 0 assuming an even error series in eps.
double richardson_even(const std::vector<double>& eps,
                       const std::vector<double>& values, double* settle = nullptr);

}  // namespace cftherm
