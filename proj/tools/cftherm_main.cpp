// cftherm: thermal-state checks for chiral conformal models.
//
// Subcommands expose the library operations with machine-readable output;
// `run-suite` drives the acceptance checks.  Exit codes: 0 all checks pass,
// 1 a check failed, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <complex>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "cftherm/fixtures.hpp"
#include "cftherm/fock_boson.hpp"
#include "cftherm/fock_fermion.hpp"
#include "cftherm/kms_strip.hpp"
#include "cftherm/moments.hpp"
#include "cftherm/report.hpp"
#include "cftherm/suites.hpp"
#include "cftherm/weyl.hpp"

namespace {

using namespace cftherm;

struct Options {
  double beta = 1.0;
  double q = 0.0;
  double c = 1.0;
  std::size_t grid_n = 0;
  double tol = 1e-7;
  std::vector<std::string> suites;
  std::string output;
  std::string config_file;
  std::string fixture = "gaussian";
  std::string fixture_b = "";
  std::string format = "json";
};

// plain key=value config; flags override file values
void apply_config_file(Options& o, const CLI::App& app) {
  if (o.config_file.empty()) return;
  std::ifstream in(o.config_file);
  if (!in) throw UsageError("cannot open config file: " + o.config_file);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("bad config line: " + line);
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  auto take = [&](const char* key, auto& dst, const char* flag) {
    auto it = kv.find(key);
    if (it == kv.end()) return;
    if (app.count(flag) > 0) return;  // flag wins
    std::istringstream ss(it->second);
    ss >> dst;
  };
  take("beta", o.beta, "--beta");
  take("q", o.q, "--q");
  take("c", o.c, "--c");
  take("grid_n", o.grid_n, "--grid-n");
  take("tol", o.tol, "--tol");
  take("output", o.output, "--output");
  if (kv.count("suite") && app.count("--suite") == 0) {
    std::istringstream ss(kv["suite"]);
    std::string item;
    o.suites.clear();
    while (std::getline(ss, item, ','))
      if (!item.empty()) o.suites.push_back(item);
  }
}

struct FixtureSpec {
  std::function<double(double)> fn;
  Support support;
};

// "gaussian", "bump", "gaussian:c,w", "bump:c,hw", or a fixture file path
FixtureSpec parse_fixture(const std::string& spec) {
  auto parse2 = [](const std::string& body, double& a, double& b) {
    std::istringstream ss(body);
    char comma;
    ss >> a >> comma >> b;
  };
  if (spec.rfind("gaussian", 0) == 0) {
    double c = 0.0, w = 1.0;
    if (spec.size() > 8 && spec[8] == ':') parse2(spec.substr(9), c, w);
    if (!(w > 0.0)) throw UsageError("gaussian width must be positive");
    return {[c, w](double x) {
              const double t = (x - c) / w;
              return t * t > 700.0 ? 0.0 : std::exp(-t * t);
            },
            Support{c - 5.7 * w, c + 5.7 * w}};
  }
  if (spec.rfind("bump", 0) == 0) {
    double c = 0.0, hw = 0.5;
    if (spec.size() > 4 && spec[4] == ':') parse2(spec.substr(5), c, hw);
    if (!(hw > 0.0)) throw UsageError("bump halfwidth must be positive");
    return {[c, hw](double x) {
              const double t = (x - c) / hw;
              return std::abs(t) < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0;
            },
            Support{c - hw, c + hw}};
  }
  const GridFunction file = load_fixture(spec);
  return {[file](double x) { return file.eval(x); }, file.support()};
}

GridFunction make_fixture(const std::string& spec, std::size_t n) {
  const FixtureSpec fs = parse_fixture(spec);
  return GridFunction::sample(fs.fn, fs.support, n);
}

// two fixtures sampled on their hull window so they share a lattice
std::pair<GridFunction, GridFunction> make_fixture_pair(const std::string& a,
                                                        const std::string& b,
                                                        std::size_t n) {
  const FixtureSpec fa = parse_fixture(a);
  const FixtureSpec fb = parse_fixture(b);
  const Support h = hull(fa.support, fb.support);
  return {GridFunction::sample(fa.fn, h, n), GridFunction::sample(fb.fn, h, n)};
}

void write_output(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write output file: " + path);
  out << payload << "\n";
}

int finish(const std::vector<CheckReport>& reports, const Options& o) {
  const std::string payload =
      o.format == "csv" ? emit_csv(reports) : emit_json(reports);
  write_output(o.output, payload);
  return all_pass(reports) ? 0 : 1;
}

void require_beta(const Options& o) {
  if (!(o.beta > 0.0)) throw UsageError("beta must be positive");
}

std::int64_t ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thermal-state checks for chiral conformal models"};
  app.require_subcommand(1);
  Options o;

  app.add_option("--beta", o.beta, "inverse temperature");
  app.add_option("--q", o.q, "charge density");
  app.add_option("--c", o.c, "central charge");
  app.add_option("--grid-n", o.grid_n, "grid samples (power of two)");
  app.add_option("--tol", o.tol, "pass tolerance for single checks");
  app.add_option("--suite", o.suites, "suite names (or 'all')")->delimiter(',');
  app.add_option("--output", o.output, "output file (default stdout)");
  app.add_option("--config", o.config_file, "key=value config file");
  app.add_option("--fixture", o.fixture, "fixture spec or file (first slot)");
  app.add_option("--fixture-b", o.fixture_b, "fixture spec or file (second slot)");
  app.add_option("--format", o.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* weyl_eval = app.add_subcommand("weyl-eval", "phi^q(W(f)) for a fixture");
  std::size_t gram_n = 0;
  weyl_eval->add_option("--gram", gram_n,
                        "also check a Gram matrix of this many random generators");
  auto* kms_check = app.add_subcommand("kms-check", "KMS boundary residual rows");
  auto* npoint = app.add_subcommand("npoint", "quasi-free n-point vs oracle");
  auto* energy = app.add_subcommand("energy-density", "point-split stress density");
  auto* classify = app.add_subcommand("classify-vir", "energy density <-> |q|");
  auto* geo = app.add_subcommand("geo-check", "geometric-state identity");
  auto* fock = app.add_subcommand("fock-check", "truncated Virasoro brackets");
  std::string algebra = "boson";
  int max_mode = 2;
  int level = 4;
  fock->add_option("--algebra", algebra, "boson or fermion")
      ->check(CLI::IsMember({"boson", "fermion"}));
  fock->add_option("--max-mode", max_mode, "largest |m|");
  fock->add_option("--level", level, "basis level (fermion: doubled)");
  auto* fermion_check = app.add_subcommand("fermion-check", "fermion thermal KMS");
  auto* run = app.add_subcommand("run-suite", "acceptance suites");
  std::size_t npoint_n = 4;
  npoint->add_option("--factors", npoint_n, "number of current factors (<=4)");

  // global flags remain usable after the subcommand name
  for (auto* sc : {weyl_eval, kms_check, npoint, energy, classify, geo, fock,
                   fermion_check, run})
    sc->fallthrough();

  try {
    app.parse(argc, argv);
    apply_config_file(o, app);

    std::vector<CheckReport> reports;
    const auto t0 = std::chrono::steady_clock::now();

    if (weyl_eval->parsed()) {
      require_beta(o);
      const ThermalParams tp(o.beta, o.q);
      const GridFunction f = make_fixture(o.fixture, o.grid_n);
      const auto val = kms_state(WeylPolynomial::generator(tag(f)), tp);
      reports.push_back(make_report(
          "weyl-eval", {{"beta", std::to_string(o.beta)}, {"q", std::to_string(o.q)},
                        {"fixture", o.fixture}},
          val, std::nullopt, 0.0, o.tol, ms_since(t0)));
      if (gram_n > 0) {
        std::vector<FunPtr> fs;
        for (auto& gf : random_smooth_family(gram_n, 20110901, 2048))
          fs.push_back(tag(std::move(gf)));
        const double min_eig = gram_psd_check(fs, tp);
        reports.push_back(make_report(
            "weyl-gram", {{"n", std::to_string(gram_n)}}, min_eig,
            std::complex<double>(0.0), std::max(0.0, -min_eig),
            accept::kGramMinEig, ms_since(t0)));
      }
      return finish(reports, o);
    }

    if (kms_check->parsed()) {
      require_beta(o);
      const ThermalParams tp(o.beta, o.q);
      const auto [f, g] = make_fixture_pair(
          o.fixture, o.fixture_b.empty() ? o.fixture : o.fixture_b, o.grid_n);
      const auto t_grid = default_t_grid(f, g);
      const auto rows = kms_residual_rows(f, g, tp, t_grid);
      double res = 0.0;
      std::ostringstream csv;
      csv << "t,abs_F,residual\n";
      csv.precision(12);
      for (const auto& r : rows) {
        csv << r.t << "," << r.abs_F << "," << r.residual << "\n";
        res = std::max(res, r.residual);
      }
      std::cout << csv.str();
      nlohmann::json summary = {{"sup_residual", res},
                                {"tolerance", o.tol},
                                {"pass", res <= o.tol}};
      write_output(o.output, summary.dump(2));
      return res <= o.tol ? 0 : 1;
    }

    if (npoint->parsed()) {
      require_beta(o);
      if (npoint_n < 1 || npoint_n > 4) throw UsageError("--factors must be 1..4");
      const ThermalParams tp(o.beta, o.q);
      const auto fam = random_smooth_family(npoint_n, 20110901, 2048);
      MomentRequest req{fam, tp};
      const auto val = npoint_J(req);
      const auto oracle = fd_generating_oracle(fam, tp);
      const double scale = std::max({std::abs(val), std::abs(oracle), 1e-6});
      reports.push_back(make_report(
          "npoint", {{"n", std::to_string(npoint_n)}, {"beta", std::to_string(o.beta)},
                     {"q", std::to_string(o.q)}},
          val, oracle, std::abs(val - oracle) / scale, accept::kMomentsOracle,
          ms_since(t0)));
      return finish(reports, o);
    }

    if (energy->parsed()) {
      require_beta(o);
      const ThermalParams tp(o.beta, o.q);
      const double target = M_PI / (12.0 * o.beta * o.beta) + 0.5 * o.q * o.q;
      const double em = energy_density_momentum(tp);
      const double eb = energy_density_pointsplit(tp, {0.12, 0.06, 0.03});
      reports.push_back(make_report(
          "energy-density-momentum",
          {{"beta", std::to_string(o.beta)}, {"q", std::to_string(o.q)}}, em, target,
          std::abs(em - target) / target, accept::kStressMomentumPath, ms_since(t0)));
      reports.push_back(make_report(
          "energy-density-pointsplit",
          {{"beta", std::to_string(o.beta)}, {"q", std::to_string(o.q)}}, eb, target,
          std::abs(eb - target) / target, accept::kStressBumpPath, ms_since(t0)));
      return finish(reports, o);
    }

    if (classify->parsed()) {
      require_beta(o);
      const ThermalParams tp(o.beta);
      const double e = geo_energy_density(o.c, o.beta);
      const double qg = vir_classify(e, tp);
      const double qg_target = geo_charge(o.c, o.beta);
      reports.push_back(make_report(
          "classify-vir", {{"beta", std::to_string(o.beta)}, {"c", std::to_string(o.c)}},
          qg, qg_target, std::abs(qg - qg_target), accept::kClassifyRoundTrip,
          ms_since(t0)));
      return finish(reports, o);
    }

    if (geo->parsed()) {
      require_beta(o);
      // narrow default: the exponential image must stay resolvable
      const GridFunction f = app.count("--fixture") == 0
                                 ? bump_fixture(0.0, 0.1, o.grid_n)
                                 : make_fixture(o.fixture, o.grid_n);
      const GeoCheckResult r = geo_check(f, o.beta);
      reports.push_back(make_report(
          "geo-check", {{"beta", std::to_string(o.beta)}}, r.thermal_norm_sq,
          r.composed_vacuum_norm_sq, r.rel_delta, accept::kGeoIdentity,
          ms_since(t0)));
      return finish(reports, o);
    }

    if (fock->parsed()) {
      nlohmann::json mat = nlohmann::json::array();
      double worst = 0.0;
      for (int m1 = -max_mode; m1 <= max_mode; ++m1) {
        nlohmann::json row = nlohmann::json::array();
        for (int m2 = -max_mode; m2 <= max_mode; ++m2) {
          double dev;
          if (algebra == "boson")
            dev = check_virasoro(m1, m2, level, kBosonDefaultCutoff);
          else
            dev = check_virasoro_fermion(m1, m2, level, kFermionDefaultTwoCutoff);
          worst = std::max(worst, dev);
          row.push_back(dev);
        }
        mat.push_back(row);
      }
      const double tol = algebra == "boson" ? accept::kBosonBracket
                                            : accept::kFermionBracket;
      nlohmann::json out = {{"algebra", algebra},
                            {"max_mode", max_mode},
                            {"level", level},
                            {"deviations", mat},
                            {"tolerance", tol},
                            {"pass", worst <= tol}};
      write_output(o.output, out.dump(2));
      return worst <= tol ? 0 : 1;
    }

    if (fermion_check->parsed()) {
      require_beta(o);
      const ThermalParams tp(o.beta);
      const auto [f, g] = make_fixture_pair(
          o.fixture, o.fixture_b.empty() ? "gaussian:0.4,0.8" : o.fixture_b,
          o.grid_n);
      const double res = fermion_kms_residual(f, g, tp, default_t_grid(f, g));
      reports.push_back(make_report("fermion-check",
                                    {{"beta", std::to_string(o.beta)}}, res,
                                    std::complex<double>(0.0), res,
                                    accept::kFermionKms, ms_since(t0)));
      return finish(reports, o);
    }

    if (run->parsed()) {
      require_beta(o);
      SuiteConfig cfg;
      cfg.suites = o.suites;
      cfg.grid_n = o.grid_n;
      reports = run_suite(cfg);
      return finish(reports, o);
    }

    throw UsageError("no subcommand given");
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
