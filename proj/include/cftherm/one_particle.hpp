#pragma once

#include <complex>

#include "cftherm/grid_function.hpp"
#include "cftherm/parallel.hpp"
#include "cftherm/spectral.hpp"

namespace cftherm {

// Inverse temperature and charge density labelling the thermal states.
struct ThermalParams {
  double beta;
  double q = 0.0;

  ThermalParams(double beta_, double q_ = 0.0) : beta(beta_), q(q_) {
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  }
};

// One-particle structure on test functions:
//
//   (f,g)        = \int_{p>0} 2p conj(fhat) ghat dp          (vacuum form)
//   sigma(f,g)   = \int f g' dx = Im (f,g)                   (symplectic form)
//   ||f||^2_{S_beta} = \int_{p>0} 2p coth(beta p/2) |fhat|^2 dp
//
// Momentum quadratures are trapezoid sums on the (zero-padded) FFT grid.
// The thermal multiplier 2p coth(beta p/2) is even and analytic in the strip
// |Im p| < 2 pi / beta, so the symmetric full-line trapezoid converges
// exponentially once the padded window length exceeds a few beta.  The
// vacuum weight 2|p| has a kink at p = 0; the half-line trapezoid is
// corrected by its Euler-Maclaurin boundary terms.

// 2p coth(beta p / 2); Taylor branch 2(2/beta + beta p^2/6 - beta^3 p^4/360)
// for |beta p| < 1e-3.
double thermal_pair_multiplier(double beta, double p);

// Set when the integrand at the momentum cutoff is not negligible.
struct QuadFlags {
  bool accuracy_warning = false;
};

std::complex<double> inner(const GridFunction& f, const GridFunction& g,
                           Exec exec = Exec::par);
double vacuum_norm_sq(const GridFunction& f, Exec exec = Exec::par);

double symplectic(const GridFunction& f, const GridFunction& g,
                  Exec exec = Exec::par);

// (I f)^hat (p) = -i sgn(p) fhat(p), sgn(0) := 0.
SpectralFunction complex_structure(const GridFunction& f);

double thermal_norm_sq(const GridFunction& f, const ThermalParams& tp,
                       Exec exec = Exec::par, QuadFlags* flags = nullptr);

// Real thermal cross form \int_R p conj(fhat) coth(beta p/2) ghat dp
// = Re (f, S_beta g).
double thermal_cross(const GridFunction& f, const GridFunction& g,
                     const ThermalParams& tp, Exec exec = Exec::par);

// \int_{p>0} 2p (coth(beta p/2) - 1) |fhat|^2 dp  (thermal minus vacuum).
double thermal_excess(const GridFunction& f, const ThermalParams& tp,
                      Exec exec = Exec::par);

}  // namespace cftherm
