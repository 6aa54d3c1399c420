#include "cftherm/suites.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "cftherm/fixtures.hpp"
#include "cftherm/fock_boson.hpp"
#include "cftherm/fock_fermion.hpp"
#include "cftherm/kms_strip.hpp"
#include "cftherm/moments.hpp"
#include "cftherm/weyl.hpp"

namespace cftherm {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(10);
  ss << v;
  return ss.str();
}

struct Timer {
  Clock::time_point t0 = Clock::now();
  std::int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0)
        .count();
  }
};

// samples both members of a pair on the hull window so they share a lattice
std::pair<GridFunction, GridFunction> fixture_pair(
    const std::function<double(double)>& fa, Support sa,
    const std::function<double(double)>& fb, Support sb, std::size_t n) {
  const Support h = hull(sa, sb);
  return {GridFunction::sample(fa, h, n), GridFunction::sample(fb, h, n)};
}

std::function<double(double)> gaussian_fn(double c, double w) {
  return [c, w](double x) {
    const double t = (x - c) / w;
    return t * t > 700.0 ? 0.0 : std::exp(-t * t);
  };
}

std::function<double(double)> bump_fn(double c, double hw) {
  return [c, hw](double x) {
    const double t = (x - c) / hw;
    if (std::abs(t) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - t * t));
  };
}

Support gaussian_supp(double c, double w) { return {c - 5.7 * w, c + 5.7 * w}; }
Support bump_supp(double c, double hw) { return {c - hw, c + hw}; }

// ---- criterion 1: KMS boundary condition ---------------------------------

void suite_kms(std::size_t n, std::vector<CheckReport>& out) {
  struct Pair {
    const char* label;
    std::function<double(double)> fa, fb;
    Support sa, sb;
  };
  const std::vector<Pair> pairs = {
      {"gaussian", gaussian_fn(-0.3, 1.0), gaussian_fn(0.4, 0.8),
       gaussian_supp(-0.3, 1.0), gaussian_supp(0.4, 0.8)},
      {"bump", bump_fn(-0.6, 0.5), bump_fn(0.5, 0.45), bump_supp(-0.6, 0.5),
       bump_supp(0.5, 0.45)},
  };
  for (const auto& pr : pairs) {
    const auto [f, g] = fixture_pair(pr.fa, pr.sa, pr.fb, pr.sb, n);
    for (double beta : {0.5, 1.0, 2.0}) {
      for (double q : {0.0, 1.3}) {
        Timer t;
        const ThermalParams tp(beta, q);
        const double res = kms_residual(f, g, tp, default_t_grid(f, g));
        out.push_back(make_report(
            "kms-boundary",
            {{"pair", pr.label}, {"beta", fmt(beta)}, {"q", fmt(q)}}, res,
            std::complex<double>(0.0), res, accept::kKmsResidual, t.ms()));
      }
    }
  }
}

// ---- criterion 2: geometric-state identity -------------------------------

void suite_geo(std::size_t n, std::vector<CheckReport>& out) {
  const std::vector<std::pair<double, double>> bumps = {
      {0.0, 0.1}, {0.15, 0.075}, {-0.1, 0.05}};
  for (const auto& [c, hw] : bumps) {
    for (double beta : {0.5, 1.0, 2.0}) {
      Timer t;
      const GridFunction f = bump_fixture(c, hw, n);
      const GeoCheckResult r = geo_check(f, beta);
      out.push_back(make_report(
          "geo-identity",
          {{"center", fmt(c)}, {"halfwidth", fmt(hw)}, {"beta", fmt(beta)}},
          r.thermal_norm_sq, r.composed_vacuum_norm_sq, r.rel_delta,
          accept::kGeoIdentity, t.ms()));
    }
  }
}

// ---- criterion 3: stress-tensor density ----------------------------------

void suite_stress_density(std::size_t, std::vector<CheckReport>& out) {
  const std::vector<double> widths = {0.12, 0.06, 0.03};
  for (double beta : {0.5, 1.0, 2.0}) {
    for (double q : {0.0, 1.0}) {
      const ThermalParams tp(beta, q);
      const double target = M_PI / (12.0 * beta * beta) + 0.5 * q * q;
      {
        Timer t;
        const double em = energy_density_momentum(tp);
        out.push_back(make_report(
            "stress-density-momentum", {{"beta", fmt(beta)}, {"q", fmt(q)}}, em,
            target, std::abs(em - target) / target, accept::kStressMomentumPath,
            t.ms()));
      }
      {
        Timer t;
        const double eb = energy_density_pointsplit(tp, widths);
        out.push_back(make_report(
            "stress-density-pointsplit", {{"beta", fmt(beta)}, {"q", fmt(q)}}, eb,
            target, std::abs(eb - target) / target, accept::kStressBumpPath,
            t.ms()));
      }
    }
  }
}

// ---- criterion 4: Schwarzian cocycle --------------------------------------

void suite_cocycle(std::size_t n, std::vector<CheckReport>& out) {
  const GridFunction f = bump_fixture(0.1, 0.4, n);
  const double integ = integral(f);
  for (double c : {1.0, 1.5, 2.0}) {
    for (double beta : {0.5, 1.0, 2.0}) {
      Timer t;
      const double r = cocycle_rR(Diffeomorphism::exponential(beta), f, c);
      const double target = M_PI * c / (12.0 * beta * beta) * integ;
      out.push_back(make_report(
          "cocycle-exponential", {{"c", fmt(c)}, {"beta", fmt(beta)}}, r, target,
          std::abs(r - target) / std::abs(target), accept::kCocycle, t.ms()));
    }
  }
}

// ---- criterion 5: Vir_c classification map --------------------------------

void suite_classify(std::size_t, std::vector<CheckReport>& out) {
  Timer t;
  double worst = 0.0;
  for (double beta : {0.5, 1.0, 2.0}) {
    const ThermalParams tp(beta);
    for (double q = 0.0; q <= 5.0; q += 0.5) {
      const double e = M_PI / (12.0 * beta * beta) + 0.5 * q * q;
      worst = std::max(worst, std::abs(vir_classify(e, tp) - q));
    }
  }
  out.push_back(make_report("classify-round-trip", {{"q_range", "0..5"}}, worst,
                            std::complex<double>(0.0), worst,
                            accept::kClassifyRoundTrip, t.ms()));
  Timer t2;
  const double qg = geo_charge(2.0, 1.0);
  const double qg_target = std::sqrt(M_PI / 6.0);
  out.push_back(make_report("classify-geo-charge", {{"c", "2"}, {"beta", "1"}}, qg,
                            qg_target, std::abs(qg - qg_target),
                            accept::kClassifyRoundTrip, t2.ms()));
  const double eg = geo_energy_density(2.0, 1.0);
  const double eg_target = M_PI / 6.0;
  out.push_back(make_report("classify-geo-density", {{"c", "2"}, {"beta", "1"}}, eg,
                            eg_target, std::abs(eg - eg_target),
                            accept::kClassifyRoundTrip, t2.ms()));
}

// ---- criterion 6: boson Virasoro -------------------------------------------

void suite_virasoro_boson(std::size_t, std::vector<CheckReport>& out) {
  Timer t;
  double worst = 0.0;
  for (int m1 = -3; m1 <= 3; ++m1)
    for (int m2 = -3; m2 <= 3; ++m2)
      for (int level = 0; level <= 8; ++level)
        worst = std::max(worst, check_virasoro(m1, m2, level, kBosonDefaultCutoff));
  out.push_back(make_report("virasoro-boson-bracket",
                            {{"max_mode", "3"}, {"levels", "0..8"}, {"cutoff", "14"}},
                            worst, std::complex<double>(0.0), worst,
                            accept::kBosonBracket, t.ms()));
  Timer t2;
  const double c = central_charge_fit(kBosonDefaultCutoff);
  out.push_back(make_report("virasoro-boson-central-charge", {{"fit_modes", "2,3,4"}},
                            c, std::complex<double>(1.0), std::abs(c - 1.0),
                            accept::kBosonChargeFit, t2.ms()));
}

// ---- criterion 7: fermion Virasoro + CAR -----------------------------------

double car_max_defect(int two_R) {
  // {b_s, b_r} = delta_{s,-r} checked on every basis vector inside each
  // pair's truncation-exact window
  double worst = 0.0;
  std::vector<ModeSet> basis;
  for (int lvl = 0; lvl <= two_R; ++lvl)
    for (auto& b : fermion_basis_of(lvl, two_R)) basis.push_back(b);
  for (int two_s = -two_R; two_s <= two_R; two_s += 2) {
    for (int two_r = -two_R; two_r <= two_R; two_r += 2) {
      const int weight = (two_s < 0 ? -two_s : 0) + (two_r < 0 ? -two_r : 0);
      for (const auto& b : basis) {
        if (mode_set_two_level(b) + weight > two_R) continue;
        FermionFockVector v;
        v.two_level_cutoff = two_R;
        v.amp.emplace(b, 1.0);
        FermionFockVector acc = apply_b(two_s, apply_b(two_r, v));
        acc.axpy(1.0, apply_b(two_r, apply_b(two_s, v)));
        if (two_s + two_r == 0) acc.axpy(-1.0, v);
        for (const auto& [k, a] : acc.amp) worst = std::max(worst, std::abs(a));
      }
    }
  }
  return worst;
}

void suite_virasoro_fermion(std::size_t, std::vector<CheckReport>& out) {
  const int R2 = kFermionDefaultTwoCutoff;
  Timer t;
  double worst = 0.0;
  for (int m1 = -3; m1 <= 3; ++m1)
    for (int m2 = -3; m2 <= 3; ++m2) {
      const int max_lvl = R2 - 2 * std::abs(m1) - 2 * std::abs(m2);
      for (int lvl = 0; lvl <= max_lvl; ++lvl)
        worst = std::max(worst, check_virasoro_fermion(m1, m2, lvl, R2));
    }
  out.push_back(make_report("virasoro-fermion-bracket",
                            {{"max_mode", "3"}, {"two_cutoff", "21"}}, worst,
                            std::complex<double>(0.0), worst,
                            accept::kFermionBracket, t.ms()));
  Timer t2;
  const double c = central_charge_fit_fermion(R2);
  out.push_back(make_report("virasoro-fermion-central-charge",
                            {{"fit_modes", "2,3,4"}}, c, std::complex<double>(0.5),
                            std::abs(c - 0.5), accept::kFermionChargeFit, t2.ms()));
  Timer t3;
  const FermionFockVector omega = FermionFockVector::vacuum(R2);
  const std::complex<double> quarter =
      fermion_inner(omega, apply_L_fermion(2, apply_L_fermion(-2, omega)));
  out.push_back(make_report("fermion-central-term", {{"modes", "(2,-2)"}}, quarter,
                            std::complex<double>(0.25), std::abs(quarter - 0.25),
                            accept::kFermionBracket, t3.ms()));
  Timer t4;
  const double car = car_max_defect(R2);
  out.push_back(make_report("fermion-car-identities", {{"two_cutoff", "21"}}, car,
                            std::complex<double>(0.0), car, accept::kCarIdentity,
                            t4.ms()));
}

// ---- criterion 8: partition data -------------------------------------------

void suite_partition(std::size_t, std::vector<CheckReport>& out) {
  Timer t;
  int mismatches = 0;
  for (int n = 0; n <= 30; ++n)
    if (partition_count(n) != static_cast<std::int64_t>(partitions_of(n).size()))
      ++mismatches;
  out.push_back(make_report("partition-recurrence-vs-enumeration",
                            {{"n", "0..30"}}, static_cast<double>(mismatches),
                            std::complex<double>(0.0),
                            static_cast<double>(mismatches), 0.0, t.ms()));
  Timer t2;
  const double tr30 = trace_heat(1.0, 30);
  const double tr60 = trace_heat(1.0, 60);
  out.push_back(make_report("trace-heat-stability", {{"s", "1"}, {"N", "30,60"}},
                            tr60, tr30, std::abs(tr60 - tr30),
                            accept::kTraceStability, t2.ms()));
  Timer t3;
  const double hardy = std::exp(M_PI * std::sqrt(20.0));
  const double p30 = static_cast<double>(partition_count(30));
  out.push_back(make_report("partition-hardy-envelope", {{"n", "30"}}, p30, hardy,
                            p30 < hardy ? 0.0 : 1.0, 0.0, t3.ms()));
}

// ---- criterion 9: quasi-free moments ---------------------------------------

void suite_moments(std::size_t n, std::uint64_t seed,
                   std::vector<CheckReport>& out) {
  const std::vector<GridFunction> fam = random_smooth_family(4, seed, n / 2);
  for (double q : {0.0, 0.9}) {
    const ThermalParams tp(1.0, q);
    for (std::size_t k = 1; k <= 4; ++k) {
      Timer t;
      MomentRequest req{std::vector<GridFunction>(fam.begin(), fam.begin() + k), tp};
      const std::complex<double> val = npoint_J(req);
      const std::complex<double> oracle = fd_generating_oracle(req.factors, tp);
      // moments that vanish by symmetry are measured against the natural
      // fluctuation scale of the factors
      double floor = 1.0;
      for (const auto& f : req.factors)
        floor *= std::sqrt(std::abs(covariance_J(f, f, tp)));
      const double scale = std::max({std::abs(val), std::abs(oracle), floor});
      out.push_back(make_report(
          "moments-npoint-vs-oracle", {{"n", std::to_string(k)}, {"q", fmt(q)}},
          val, oracle, std::abs(val - oracle) / scale, accept::kMomentsOracle,
          t.ms()));
    }
  }
  Timer t;
  const ThermalParams tp0(1.0, 0.0);
  MomentRequest odd{std::vector<GridFunction>(fam.begin(), fam.begin() + 3), tp0};
  const std::complex<double> v3 = npoint_J(odd);
  out.push_back(make_report("moments-odd-centered", {{"n", "3"}, {"q", "0"}}, v3,
                            std::complex<double>(0.0), std::abs(v3), 1e-12, t.ms()));
}

// ---- criterion 10: state positivity ----------------------------------------

void suite_positivity(std::size_t n, std::uint64_t seed,
                      std::vector<CheckReport>& out) {
  std::size_t draw_n = std::min<std::size_t>(n, 2048);
  int draw = 0;
  for (double beta : {0.5, 1.0, 2.0}) {
    for (double q : {0.0, 1.0}) {
      Timer t;
      double min_eig = 1e300;
      const int draws_here = (beta == 1.0) ? 4 : 3;  // 20 draws total
      for (int d = 0; d < draws_here; ++d, ++draw) {
        const auto fam =
            random_smooth_family(6, seed + 1000 + static_cast<std::uint64_t>(draw),
                                 draw_n);
        std::vector<FunPtr> fs;
        for (const auto& f : fam) fs.push_back(tag(f));
        min_eig = std::min(min_eig, gram_psd_check(fs, ThermalParams(beta, q)));
      }
      out.push_back(make_report(
          "positivity-gram", {{"beta", fmt(beta)}, {"q", fmt(q)}}, min_eig,
          std::complex<double>(0.0), std::max(0.0, -min_eig), accept::kGramMinEig,
          t.ms()));
    }
  }
}

// ---- criterion 11: clustering ----------------------------------------------

void suite_clustering(std::size_t n, std::vector<CheckReport>& out) {
  const auto [f, g] = fixture_pair(bump_fn(-0.6, 0.5), bump_supp(-0.6, 0.5),
                                   bump_fn(0.6, 0.5), bump_supp(0.6, 0.5), n);
  for (double beta : {0.5, 1.0, 2.0}) {
    Timer t;
    const double dev = clustering_check(f, g, ThermalParams(beta), 50.0 * beta);
    out.push_back(make_report("clustering-deviation",
                              {{"beta", fmt(beta)}, {"T", fmt(50.0 * beta)}}, dev,
                              std::complex<double>(0.0), dev, accept::kClustering,
                              t.ms()));
  }
}

// ---- criterion 12: fermion thermal KMS -------------------------------------

void suite_fermion_kms(std::size_t n, std::vector<CheckReport>& out) {
  const auto [f, g] = fixture_pair(gaussian_fn(-0.3, 1.0), gaussian_supp(-0.3, 1.0),
                                   gaussian_fn(0.4, 0.8), gaussian_supp(0.4, 0.8), n);
  for (double beta : {0.5, 1.0, 2.0}) {
    Timer t;
    const double res =
        fermion_kms_residual(f, g, ThermalParams(beta), default_t_grid(f, g));
    out.push_back(make_report("fermion-kms-antiperiodic", {{"beta", fmt(beta)}}, res,
                              std::complex<double>(0.0), res, accept::kFermionKms,
                              t.ms()));
  }
}

}  // namespace

std::complex<double> fd_generating_oracle(const std::vector<GridFunction>& factors,
                                          const ThermalParams& tp) {
  const std::size_t n = factors.size();
  if (n == 0 || n > 4)
    throw std::invalid_argument("fd_generating_oracle: 1 <= n <= 4");
  // precompute the quadratic data of the generating functional
  std::vector<double> integ(n);
  std::vector<std::vector<double>> G(n, std::vector<double>(n));
  std::vector<std::vector<double>> S(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    integ[i] = integral(factors[i]);
    for (std::size_t j = 0; j < n; ++j) {
      G[i][j] = thermal_cross(factors[i], factors[j], tp);
      S[i][j] = symplectic(factors[i], factors[j]);
    }
  }
  auto gen = [&](const std::vector<double>& s) {
    std::complex<double> expo = 0.0;
    double lin = 0.0, quad = 0.0, cc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      lin += s[i] * integ[i];
      for (std::size_t j = 0; j < n; ++j) quad += s[i] * s[j] * G[i][j];
      for (std::size_t j = i + 1; j < n; ++j) cc += s[i] * s[j] * S[i][j];
    }
    expo = std::complex<double>(-0.25 * quad, tp.q * lin - 0.5 * cc);
    return std::exp(expo);
  };
  // 4th-order central stencil per factor; the step trades truncation against
  // roundoff amplification ~ eps_machine / step^n
  const double step = n <= 3 ? 1e-3 : 1e-2;
  const int offs[4] = {-2, -1, 1, 2};
  const double w[4] = {1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0};
  std::complex<double> acc = 0.0;
  std::vector<int> idx(n, 0);
  std::vector<double> s(n);
  while (true) {
    double coeff = 1.0;
    for (std::size_t d = 0; d < n; ++d) {
      coeff *= w[idx[d]];
      s[d] = step * offs[idx[d]];
    }
    acc += coeff * gen(s);
    std::size_t d = 0;
    while (d < n && ++idx[d] == 4) idx[d++] = 0;
    if (d == n) break;
  }
  const std::complex<double> i_pow_n =
      std::pow(std::complex<double>(0.0, 1.0), static_cast<double>(n));
  return acc / std::pow(step, static_cast<double>(n)) / i_pow_n;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "kms",          "geo",      "stress-density", "cocycle",
      "classify-vir", "virasoro-boson", "virasoro-fermion", "partition",
      "moments",      "positivity", "clustering",   "fermion-kms"};
  return names;
}

std::vector<CheckReport> run_suite(const SuiteConfig& config) {
  const std::size_t n = config.grid_n ? config.grid_n : default_grid_n();
  std::vector<std::string> wanted = config.suites;
  for (const auto& s : wanted) {
    if (s == "all") continue;
    bool known = false;
    for (const auto& k : suite_names()) known = known || k == s;
    if (!known) throw UsageError("unknown suite: " + s);
  }
  auto selected = [&](const std::string& name) {
    for (const auto& s : wanted)
      if (s == "all" || s == name) return true;
    return false;
  };
  std::vector<CheckReport> out;
  if (selected("kms")) suite_kms(n, out);
  if (selected("geo")) suite_geo(n, out);
  if (selected("stress-density")) suite_stress_density(n, out);
  if (selected("cocycle")) suite_cocycle(n, out);
  if (selected("classify-vir")) suite_classify(n, out);
  if (selected("virasoro-boson")) suite_virasoro_boson(n, out);
  if (selected("virasoro-fermion")) suite_virasoro_fermion(n, out);
  if (selected("partition")) suite_partition(n, out);
  if (selected("moments")) suite_moments(n, config.seed, out);
  if (selected("positivity")) suite_positivity(n, config.seed, out);
  if (selected("clustering")) suite_clustering(n, out);
  if (selected("fermion-kms")) suite_fermion_kms(n, out);
  return out;
}

}  // namespace cftherm
