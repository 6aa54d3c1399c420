#pragma once

#include <complex>
#include <map>
#include <vector>

#include "cftherm/grid_function.hpp"
#include "cftherm/one_particle.hpp"
#include "cftherm/parallel.hpp"

namespace cftherm {

// Level-truncated Neveu-Schwarz fermion module: CAR modes b_r, r in Z + 1/2,
// {b_s, b_r} = delta_{s,-r}, b_s Omega = 0 for s > 0, carrying the Sugawara
// Virasoro representation with c = 1/2.
//
// Half-integers are stored doubled (odd ints); a basis vector is the ordered
// product b_{-s_1} ... b_{-s_k} Omega with s_1 > ... > s_k > 0, so the basis
// is orthonormal and signs reduce to transposition parities.

using ModeSet = std::vector<int>;  // doubled modes, strictly decreasing, >= 1

int mode_set_two_level(const ModeSet& s);

struct FermionFockVector {
  int two_level_cutoff = 21;  // R = 21/2
  std::map<ModeSet, std::complex<double>> amp;
  bool truncated = false;

  static FermionFockVector vacuum(int two_cutoff);
  void add(const ModeSet& s, std::complex<double> c);
  double norm_sq() const;
  FermionFockVector& axpy(std::complex<double> a, const FermionFockVector& v);
  FermionFockVector& scale(std::complex<double> a);
  double max_amp_diff(const FermionFockVector& other) const;
};

std::complex<double> fermion_inner(const FermionFockVector& u,
                                   const FermionFockVector& v);

// b_r with two_r = 2r (odd; negative = creation).
FermionFockVector apply_b(int two_r, const FermionFockVector& v);

// Normal-ordered Sugawara L_m = (1/2) sum_{a<b, a+b=m} (b-a) b_a b_b
// (half-integer indices); |m| <= two_cutoff required.
FermionFockVector apply_L_fermion(int m, const FermionFockVector& v);

// Literal transcription of L_n = (1/2) sum_{s>n/2} (s - n/2) b_{-s} b_{n+s}
// for n >= 0 and L_{-n} = L_n^*.  Kept as a documented-failure path: it
// misses the creator-creator pairs and yields L_0 = 1/4 on the first NS
// level; see the tests.
FermionFockVector apply_L_fermion_literal(int m, const FermionFockVector& v);

// Window: two_level + 2|m1| + 2|m2| <= two_cutoff.
double check_virasoro_fermion(int m1, int m2, int two_level, int two_cutoff,
                              bool literal = false, Exec exec = Exec::par);

// Basis of the given doubled level (strict partitions into odd doubled modes).
std::vector<ModeSet> fermion_basis_of(int two_level, int two_cutoff);

// Least-squares fit of <Omega, L_m L_{-m} Omega> = (c/12)(m^3-m), m = 2,3,4.
double central_charge_fit_fermion(int two_cutoff);

// Thermal fermion two-point function on the closed strip:
//   F(z) = \int e^{ipz} conj(fhat) ghat / (1 + e^{-beta p}) dp ,
// with CAR-KMS boundary relation F(t + i beta) = (f, g_t)_{L^2} - F(t).
std::complex<double> fermion_thermal_two_point(const GridFunction& f,
                                               const GridFunction& g,
                                               const ThermalParams& tp,
                                               std::complex<double> z);

// L^2 pairing \int e^{ipt} conj(fhat) ghat dp.
std::complex<double> fermion_pairing(const GridFunction& f, const GridFunction& g,
                                     double t);

// Fermi weight 1 / (1 + e^{-beta p}); 1/2 at p = 0, overflow-safe on both tails.
double fermi_occupation(double beta, double p);

// sup_t |F(t + i beta) + F(t) - (f, g_t)| over the grid (absolute).
double fermion_kms_residual(const GridFunction& f, const GridFunction& g,
                            const ThermalParams& tp,
                            const std::vector<double>& t_grid,
                            Exec exec = Exec::par);

constexpr int kFermionDefaultTwoCutoff = 21;

}  // namespace cftherm
