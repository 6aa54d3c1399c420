#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "cftherm/grid_function.hpp"

namespace cftherm {

// Fourier convention (fixed project-wide): unitary forward kernel e^{+ipx},
//
//   fhat(p) = (2 pi)^{-1/2} \int f(x) e^{+ipx} dx ,
//   f(x)    = (2 pi)^{-1/2} \int fhat(p) e^{-ipx} dp .
//
// With this choice the symplectic form sigma(f,g) = \int f g' dx equals the
// imaginary part of the one-particle scalar product.  The transform is the
// trapezoid realization on the sample grid: p_k = 2 pi k / (n h) with
// k = -n/2 .. n/2-1 stored in ascending order, spectrally accurate for
// smooth, effectively compactly supported samples.

// Momentum-space samples of a test function.  Keeps the originating grid so
// the inverse transform is exact.
struct SpectralFunction {
  std::vector<double> p;                        // ascending, step dp
  std::vector<std::complex<double>> values;     // fhat(p_k)
  double dp = 0.0;
  double x0 = 0.0;                              // originating grid
  double h = 0.0;

  std::size_t size() const { return values.size(); }
  std::size_t zero_index() const { return size() / 2; }  // p = 0
  double p_max() const { return -p.front(); }

  // max over paired bins of |v(-p) - conj(v(p))|; small for real input.
  double hermitian_defect() const;
};

// Forward transform; pad_factor > 1 zero-extends the window (same samples,
// finer momentum resolution).
SpectralFunction fourier(const GridFunction& f, std::size_t pad_factor = 1);

// Inverse of `fourier` with pad_factor 1; returns the original grid.
GridFunction inverse_fourier(const SpectralFunction& s, Support support);

// Spectral derivative.  Flags the result when the spectral tail of f is too
// large for the advertised accuracy.
GridFunction derivative(const GridFunction& f);
GridFunction second_derivative(const GridFunction& f);

// Relative magnitude of the top-decade spectral tail; the accuracy-warning
// threshold used by derivative().
double spectral_tail(const SpectralFunction& s);
constexpr double kSpectralTailTol = 1e-9;

// Trigonometric (spectral) interpolation of f at an arbitrary point.
double eval_trig(const GridFunction& f, double x);

// Resample f onto a new lattice by trigonometric interpolation.
GridFunction resample(const GridFunction& f, double x0, double h, std::size_t n);

}  // namespace cftherm
