#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "cftherm/parallel.hpp"

namespace cftherm {

// Level-truncated charge-zero module of the current algebra
// [J_m, J_n] = m delta_{m+n,0}, J_n Omega = 0 for n >= 0, J_0 = 0, with the
// Sugawara Virasoro L_m = (1/2) sum_j :J_{-j} J_{m+j}: acting at c = 1.
//
// Basis states are partitions (multiset occupation numbers); the basis vector
// labelled by lambda is J_{-l_1} ... J_{-l_k} Omega with inner product
// <lambda,lambda> = prod_n n^{m_n} m_n!.  Operators are restricted and
// corestricted to level <= cutoff; every identity check declares the window
// on which the truncation is exact.

using Partition = std::vector<int>;  // weakly decreasing positive parts

int partition_level(const Partition& p);
double partition_norm_sq(const Partition& p);

struct BosonFockVector {
  int level_cutoff = 14;
  std::map<Partition, std::complex<double>> amp;
  bool truncated = false;  // set when a creation crossed the cutoff

  static BosonFockVector vacuum(int cutoff);
  void add(const Partition& p, std::complex<double> c);
  double norm_sq() const;
  BosonFockVector& axpy(std::complex<double> a, const BosonFockVector& v);
  BosonFockVector& scale(std::complex<double> a);
  double max_amp_diff(const BosonFockVector& other) const;
};

std::complex<double> fock_inner(const BosonFockVector& u, const BosonFockVector& v);

// J_n; |n| <= cutoff required.
BosonFockVector apply_J(int n, const BosonFockVector& v);

// Sugawara L_m; |m| <= cutoff required.
BosonFockVector apply_L(int m, const BosonFockVector& v);

// max over the level's basis of the amplitude deviation of
// [L_m1, L_m2] - (m1-m2) L_{m1+m2} - (c/12)(m1^3-m1) delta_{m1+m2,0}, c = 1.
// Precondition (truncation-exact window): level + |m1| + |m2| <= cutoff.
double check_virasoro(int m1, int m2, int level, int cutoff,
                      Exec exec = Exec::par);

// Exact p(n) by Euler's pentagonal recurrence.
std::int64_t partition_count(int n);

// All partitions of n (testing and basis sweeps).
std::vector<Partition> partitions_of(int n);

// Partial sum sum_{n<=N} p(n) e^{-sn} of Tr e^{-s L0}; s > 0.
double trace_heat(double s, int N);

// Largest singular value of J(f) (1+L0)^{-1} restricted to level <= cutoff,
// J(f) = sum_m (c_m J_{-m} + conj(c_m) J_m) for modes c_1..c_M.
double bound_ratio_J(const std::vector<std::complex<double>>& modes, int cutoff);

// Least-squares fit of <Omega, L_m L_{-m} Omega> = (c/12)(m^3 - m), m = 2,3,4.
double central_charge_fit(int cutoff);

constexpr int kBosonDefaultCutoff = 14;

}  // namespace cftherm
