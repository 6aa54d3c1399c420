#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "cftherm/diffeomorphism.hpp"
#include "cftherm/grid_function.hpp"
#include "cftherm/one_particle.hpp"

namespace cftherm {

// Test functions entering Weyl generators are identified by object tag, not
// by numerical comparison; products always mint a fresh tagged sum function.
class TaggedFunction;
using FunPtr = std::shared_ptr<const TaggedFunction>;

class TaggedFunction {
 public:
  explicit TaggedFunction(GridFunction g) : grid_(std::move(g)) {}
  const GridFunction& grid() const { return grid_; }

 private:
  GridFunction grid_;
};

FunPtr tag(GridFunction g);

// Finite combination sum_i c_i W(s_i f_i) of formal Weyl generators
// W(f) = e^{iJ(f)}.  A generator is addressed as (tagged function, sign), so
// the adjoint is an exact involution term by term.
class WeylPolynomial {
 public:
  struct Term {
    std::complex<double> coeff;
    FunPtr fn;
    int sign = +1;  // generator argument is sign * fn
  };

  WeylPolynomial() = default;
  explicit WeylPolynomial(std::vector<Term> terms);

  static WeylPolynomial generator(FunPtr f, std::complex<double> coeff = 1.0);
  static WeylPolynomial identity_element();

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

 private:
  std::vector<Term> terms_;  // canonical: unique (fn, sign) keys, no zero coeffs
};

WeylPolynomial adjoint(const WeylPolynomial& a);

// Bilinear extension of W(f) W(g) = W(f+g) exp(-i/2 sigma(f,g)).
WeylPolynomial ccr_product(const WeylPolynomial& a, const WeylPolynomial& b);

// gamma_q(W(f)) = e^{iq \int f dx} W(f), extended term by term.
WeylPolynomial gauge(double q, const WeylPolynomial& a);

// phi^q(W(f)) = e^{iq \int f dx} e^{-||f||^2_{S_beta}/4}, extended linearly.
std::complex<double> kms_state(const WeylPolynomial& a, const ThermalParams& tp,
                               Exec exec = Exec::par);

// Minimum eigenvalue of M_ij = phi^q(W(f_i)^* W(f_j)); at most 12 functions.
double gram_psd_check(const std::vector<FunPtr>& fs, const ThermalParams& tp,
                      Exec exec = Exec::par);

// Geometric-state identity  ||f o g_beta^{-1}||^2_vac = ||f||^2_{S_beta}
// behind phi_geo = phi^0 (g_beta the exponential diffeomorphism).
struct GeoCheckResult {
  double thermal_norm_sq;
  double composed_vacuum_norm_sq;
  double rel_delta;
};
GeoCheckResult geo_check(const GridFunction& f, double beta,
                         std::size_t n_geo = std::size_t(1) << 16);

}  // namespace cftherm
