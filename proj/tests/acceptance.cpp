// Acceptance gate: runs every suite and prints one pass/fail line per
// criterion.  Exit code 0 when all criteria pass, 1 otherwise.

#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "cftherm/report.hpp"
#include "cftherm/suites.hpp"

int main() {
  using namespace cftherm;
  struct Criterion {
    const char* suite;
    const char* label;
  };
  const std::vector<Criterion> criteria = {
      {"kms", "KMS boundary condition (residual < 1e-7)"},
      {"geo", "geometric-state identity (rel < 1e-6)"},
      {"stress-density", "stress-tensor density (momentum 1e-8, bump 1e-4)"},
      {"cocycle", "Schwarzian cocycle of the exponential map (rel < 1e-7)"},
      {"classify-vir", "Vir_c classification map (1e-12)"},
      {"virasoro-boson", "boson Virasoro brackets at c = 1 (1e-10)"},
      {"virasoro-fermion", "fermion Virasoro + CAR at c = 1/2 (1e-10 / 1e-14)"},
      {"partition", "partition data and heat-trace stability (exact / 1e-8)"},
      {"moments", "quasi-free moments vs generating oracle (rel < 1e-5)"},
      {"positivity", "Weyl Gram positivity (min eig >= -1e-9)"},
      {"clustering", "clustering at T = 50 beta (< 1e-3)"},
      {"fermion-kms", "fermion thermal KMS relation (< 1e-8)"},
  };

  bool all_ok = true;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    SuiteConfig cfg;
    cfg.suites = {c.suite};
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<CheckReport> reports;
    bool ok = true;
    double worst = 0.0;
    std::string detail;
    try {
      reports = run_suite(cfg);
      for (const auto& r : reports) {
        ok = ok && r.pass;
        if (r.tolerance > 0.0)
          worst = std::max(worst, r.delta / r.tolerance);
        else
          worst = std::max(worst, r.delta);
        if (!r.pass && detail.empty())
          detail = "  first failure: " + r.name + " delta=" +
                   std::to_string(r.delta) + " tol=" + std::to_string(r.tolerance);
      }
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("  exception: ") + e.what();
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    std::printf("[%s] criterion %2d: %-62s checks=%zu worst=%.2e tol-units %lldms\n",
                ok ? "PASS" : "FAIL", index, c.label, reports.size(), worst,
                static_cast<long long>(ms));
    if (!detail.empty()) std::printf("%s\n", detail.c_str());
    all_ok = all_ok && ok;
  }
  std::printf("%s\n", all_ok ? "acceptance: all criteria pass"
                             : "acceptance: FAILURES present");
  return all_ok ? 0 : 1;
}
