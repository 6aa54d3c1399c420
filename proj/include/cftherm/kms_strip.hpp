#pragma once

#include <complex>
#include <vector>

#include "cftherm/grid_function.hpp"
#include "cftherm/one_particle.hpp"
#include "cftherm/parallel.hpp"

namespace cftherm {

// Two-point generating function of the thermal state on the closed strip
// D_beta = { 0 <= Im z <= beta }:
//
//   F(z) = phi^q(W(f) W(g_z)) = e^{iq \int (f+g)} e^{-(||f||^2+||g||^2)/4} e^{K(z)}
//   K(z) = \int_R e^{ipz} Khat(p) dp ,   Khat(p) = p conj(fhat) ghat / (e^{-beta p} - 1)
//
// The difference equation K(t+i beta) - K(t) = i sigma(f, g_t) is the KMS
// boundary condition in logarithmic form.  K is evaluated by direct
// quadrature on a zero-padded momentum grid; the padding keeps the implied
// t-periodization window clear of the requested evaluation points, so the
// continuation to the strip interior is the quadrature itself.

struct StripEvaluation {
  std::vector<double> t_grid;
  double theta = 0.0;  // Im z, in [0, beta]
  std::vector<std::complex<double>> values;
  double beta = 0.0;
};

class StripKernel {
 public:
  // t_max: largest |Re z| this kernel will be asked to evaluate.
  StripKernel(const GridFunction& f, const GridFunction& g,
              const ThermalParams& tp, double t_max);

  // K(z); throws std::domain_error outside the closed strip.
  std::complex<double> eval(std::complex<double> z, Exec exec = Exec::par) const;

  // sigma(f, g_t) from the same momentum samples.
  double sigma_shifted(double t, Exec exec = Exec::par) const;

  double beta() const { return beta_; }

 private:
  double beta_;
  double dp_;
  std::vector<double> p_;
  std::vector<std::complex<double>> prod_;  // conj(fhat) ghat
};

std::complex<double> kernel_K(const GridFunction& f, const GridFunction& g,
                              const ThermalParams& tp, std::complex<double> z);

std::complex<double> two_point_F(const GridFunction& f, const GridFunction& g,
                                 const ThermalParams& tp, std::complex<double> z);

// per-point boundary residual |F(t+i beta) - e^{i sigma(f,g_t)} F(t)| / max(|F(t)|, 1e-30)
struct KmsResidualRow {
  double t;
  double abs_F;
  double residual;
};
std::vector<KmsResidualRow> kms_residual_rows(const GridFunction& f,
                                              const GridFunction& g,
                                              const ThermalParams& tp,
                                              const std::vector<double>& t_grid,
                                              Exec exec = Exec::par);

// sup of the row residuals over the grid.
double kms_residual(const GridFunction& f, const GridFunction& g,
                    const ThermalParams& tp, const std::vector<double>& t_grid,
                    Exec exec = Exec::par);

// |F(T) - phi^q(W(f)) phi^q(W(g))|.
double clustering_check(const GridFunction& f, const GridFunction& g,
                        const ThermalParams& tp, double T);

// 41 uniform points on [-5w, 5w], w the combined support width.
std::vector<double> default_t_grid(const GridFunction& f, const GridFunction& g);

// F sampled along Im z = theta.
StripEvaluation evaluate_strip(const GridFunction& f, const GridFunction& g,
                               const ThermalParams& tp, double theta,
                               const std::vector<double>& t_grid,
                               Exec exec = Exec::par);

}  // namespace cftherm
