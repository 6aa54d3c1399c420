#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cftherm/grid_function.hpp"
#include "cftherm/one_particle.hpp"
#include "cftherm/report.hpp"

namespace cftherm {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SuiteConfig {
  std::vector<std::string> suites;  // names from suite_names(), or "all"
  std::size_t grid_n = 0;           // 0: default_grid_n()
  std::uint64_t seed = 20110901;
};

const std::vector<std::string>& suite_names();

// Runs the selected suites in declaration order.  Unknown names raise
// UsageError.  Exit-code contract for drivers: 0 all pass, 1 any failure,
// 2 usage error.
std::vector<CheckReport> run_suite(const SuiteConfig& config);

// Pinned acceptance tolerances.
namespace accept {
constexpr double kKmsResidual = 1e-7;
constexpr double kGeoIdentity = 1e-6;
constexpr double kStressBumpPath = 1e-4;
constexpr double kStressMomentumPath = 1e-8;
constexpr double kCocycle = 1e-7;
constexpr double kClassifyRoundTrip = 1e-12;
constexpr double kBosonBracket = 1e-10;
constexpr double kBosonChargeFit = 1e-10;
constexpr double kFermionBracket = 1e-10;
constexpr double kFermionChargeFit = 1e-10;
constexpr double kCarIdentity = 1e-14;
constexpr double kTraceStability = 1e-8;
constexpr double kMomentsOracle = 1e-5;
constexpr double kGramMinEig = 1e-9;
constexpr double kClustering = 1e-3;
constexpr double kFermionKms = 1e-8;
}  // namespace accept

// Independent verification path for the quasi-free moments: high-order
// central differences of the explicit product generating functional
//   phi(W(s_1 f_1) ... W(s_n f_n))
//     = exp(-(i/2) sum_{i<j} s_i s_j sigma(f_i, f_j)) phi(W(sum s_i f_i)).
// Never used by npoint_J itself.
std::complex<double> fd_generating_oracle(const std::vector<GridFunction>& factors,
                                          const ThermalParams& tp);

}  // namespace cftherm
