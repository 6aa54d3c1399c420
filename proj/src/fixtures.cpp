#include "cftherm/fixtures.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace cftherm {

namespace {
// comfortably past the 1e-12 amplitude crossing of e^{-t^2}
constexpr double kGaussianCut = 5.7;
}  // namespace

GridFunction gaussian_fixture(double center, double width, std::size_t n,
                              double pad, double min_window) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian width must be positive");
  auto fn = [center, width](double x) {
    const double t = (x - center) / width;
    return t * t > 700.0 ? 0.0 : std::exp(-t * t);
  };
  const Support s{center - kGaussianCut * width, center + kGaussianCut * width};
  return GridFunction::sample(fn, s, n, pad, min_window);
}

GridFunction bump_fixture(double center, double halfwidth, std::size_t n,
                          double pad, double min_window) {
  if (!(halfwidth > 0.0)) throw std::invalid_argument("bump halfwidth must be positive");
  auto fn = [center, halfwidth](double x) {
    const double t = (x - center) / halfwidth;
    if (std::abs(t) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - t * t));
  };
  return GridFunction::sample(fn, {center - halfwidth, center + halfwidth}, n, pad,
                              min_window);
}

GridFunction zero_fixture(std::size_t n) {
  if (n == 0) n = default_grid_n();
  return GridFunction(-1.0, 2.0 / static_cast<double>(n),
                      std::vector<double>(n, 0.0), Support{0.0, 0.0});
}

GridFunction delta_bump(double eps, std::size_t n, double min_window) {
  GridFunction b = bump_fixture(0.0, eps, n, kWindowPad, min_window);
  return b.scaled(1.0 / integral(b));
}

std::vector<GridFunction> random_smooth_family(std::size_t k, std::uint64_t seed,
                                               std::size_t n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> centers(-2.0, 2.0);
  std::uniform_real_distribution<double> widths(0.5, 1.5);
  std::uniform_real_distribution<double> amps(-1.0, 1.0);

  struct Atom { double c, w, a; };
  std::vector<std::vector<Atom>> atoms(k);
  Support hull_all{1e300, -1e300};
  for (auto& fam : atoms) {
    const int m = 3 + static_cast<int>(rng() % 3);
    for (int j = 0; j < m; ++j) {
      Atom a{centers(rng), widths(rng), amps(rng)};
      fam.push_back(a);
      hull_all.lo = std::min(hull_all.lo, a.c - kGaussianCut * a.w - 0.5);
      hull_all.hi = std::max(hull_all.hi, a.c + kGaussianCut * a.w + 0.5);
    }
  }
  std::vector<GridFunction> out;
  out.reserve(k);
  for (const auto& fam : atoms) {
    auto fn = [&fam](double x) {
      double v = 0.0;
      for (const Atom& a : fam) {
        const double t = (x - a.c) / a.w;
        if (t * t < 700.0) v += a.a * std::exp(-t * t);
      }
      return v;
    };
    out.push_back(GridFunction::sample(fn, hull_all, n));
  }
  return out;
}

GridFunction load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture file: " + path);
  std::vector<double> xs, vs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    double x, v;
    if (!(ss >> x >> v))
      throw std::runtime_error("malformed fixture line: " + line);
    xs.push_back(x);
    vs.push_back(v);
  }
  if (xs.size() < 2) throw std::runtime_error("fixture needs at least two samples");
  const double h = xs[1] - xs[0];
  if (!(h > 0.0)) throw std::runtime_error("fixture abscissae must increase");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double d = xs[i] - xs[i - 1];
    if (std::abs(d - h) > 1e-12 * std::abs(h))
      throw std::runtime_error("fixture spacing not uniform to 1e-12 relative");
  }
  std::size_t n = 2;
  while (n < xs.size()) n *= 2;
  vs.resize(n, 0.0);
  Support s{xs.front(), xs.back()};
  // tighten the declared support to the sampled mass
  std::size_t lo = 0, hi = xs.size() - 1;
  while (lo < hi && std::abs(vs[lo]) <= kSupportThreshold) ++lo;
  while (hi > lo && std::abs(vs[hi]) <= kSupportThreshold) --hi;
  s = {xs[0] + h * static_cast<double>(lo > 0 ? lo - 1 : 0),
       xs[0] + h * static_cast<double>(std::min(hi + 1, xs.size() - 1))};
  return GridFunction(xs[0], h, std::move(vs), s);
}

void write_fixture(const std::string& path, const GridFunction& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write fixture file: " + path);
  out.precision(17);
  for (std::size_t i = 0; i < f.size(); ++i)
    out << f.x(i) << " " << f.value(i) << "\n";
}

}  // namespace cftherm
