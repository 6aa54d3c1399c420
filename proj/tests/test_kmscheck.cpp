#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cftherm/fixtures.hpp"
#include "cftherm/kms_strip.hpp"
#include "cftherm/weyl.hpp"

using namespace cftherm;

namespace {

// gaussian pair sampled on a shared lattice
std::pair<GridFunction, GridFunction> gaussian_pair(std::size_t n = 0) {
  const Support h = hull({-0.3 - 5.7, -0.3 + 5.7},
                         {0.4 - 5.7 * 0.8, 0.4 + 5.7 * 0.8});
  auto fa = [](double x) {
    const double t = x + 0.3;
    return std::exp(-t * t);
  };
  auto fb = [](double x) {
    const double t = (x - 0.4) / 0.8;
    return std::exp(-t * t);
  };
  return {GridFunction::sample(fa, h, n), GridFunction::sample(fb, h, n)};
}

std::pair<GridFunction, GridFunction> bump_pair(std::size_t n = 0) {
  const Support h = hull({-1.1, -0.1}, {0.05, 0.95});
  auto fa = [](double x) {
    const double t = (x + 0.6) / 0.5;
    return std::abs(t) < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0;
  };
  auto fb = [](double x) {
    const double t = (x - 0.5) / 0.45;
    return std::abs(t) < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0;
  };
  return {GridFunction::sample(fa, h, n), GridFunction::sample(fb, h, n)};
}

}  // namespace

TEST_CASE("kernel vanishes when one argument is zero") {
  const auto [f, g] = gaussian_pair();
  const GridFunction z = zero_fixture(f.size());
  // zero sampled on the same lattice
  const GridFunction zf(f.x0(), f.h(), std::vector<double>(f.size(), 0.0),
                        Support{0, 0});
  const ThermalParams tp(1.0);
  CHECK(std::abs(kernel_K(f, zf, tp, {0.3, 0.5})) < 1e-14);
  (void)z;
}

TEST_CASE("boundary difference equals i sigma against the position-space form") {
  const auto [f, g] = gaussian_pair();
  for (double beta : {0.5, 1.0, 2.0}) {
    const ThermalParams tp(beta);
    const StripKernel k(f, g, tp, 6.0);
    for (int m : {-200, 0, 150}) {
      const double t = m * f.h();  // lattice-aligned shift
      const std::complex<double> diff =
          k.eval({t, tp.beta}, Exec::serial) - k.eval({t, 0.0}, Exec::serial);
      const double sig = symplectic(f, g.translated(t));
      CHECK(std::abs(diff - std::complex<double>(0.0, sig)) < 1e-8);
    }
  }
}

TEST_CASE("coth resummation identity at real times") {
  // K(t) + (i/2) sigma(f, g_t) = -(1/2) \int p conj(fhat) coth(beta p/2) ghat e^{ipt} dp
  const auto [f, g] = gaussian_pair();
  for (double beta : {0.5, 1.0, 2.0}) {
    const ThermalParams tp(beta);
    const StripKernel k(f, g, tp, 4.0);
    for (int m : {-120, 80}) {
      const double t = m * f.h();
      const GridFunction gt = g.translated(t);
      const std::complex<double> lhs =
          k.eval({t, 0.0}) +
          std::complex<double>(0.0, 0.5 * symplectic(f, gt));
      const std::complex<double> rhs(-0.5 * thermal_cross(f, gt, tp), 0.0);
      // the cross form is real; the imaginary parts cancel in lhs
      CHECK(std::abs(lhs - rhs) < 1e-9);
    }
  }
}

TEST_CASE("strip evaluation rejects points outside the strip") {
  const auto [f, g] = gaussian_pair();
  const ThermalParams tp(1.0);
  CHECK_THROWS_AS((void)kernel_K(f, g, tp, {0.0, -0.2}), std::domain_error);
  CHECK_THROWS_AS((void)kernel_K(f, g, tp, {0.0, 1.2}), std::domain_error);
}

TEST_CASE("two-point function with vanishing first slot is constant in z") {
  const auto [f, g] = gaussian_pair();
  const GridFunction zf(f.x0(), f.h(), std::vector<double>(f.size(), 0.0),
                        Support{0, 0});
  const ThermalParams tp(1.0, 0.9);
  const auto a = two_point_F(zf, g, tp, {0.0, 0.0});
  const auto b = two_point_F(zf, g, tp, {2.0, 0.7});
  CHECK(std::abs(a - b) < 1e-12);
  // and equals phi^q(W(g))
  const auto wg = kms_state(WeylPolynomial::generator(tag(g)), tp);
  CHECK(std::abs(a - wg) < 1e-10);
}

TEST_CASE("real-axis consistency with the Weyl module") {
  const auto [f, g] = bump_pair();
  const ThermalParams tp(1.0, 0.7);
  for (int m : {-160, 0, 240}) {
    const double t = m * f.h();
    const auto strip = two_point_F(f, g, tp, {t, 0.0});
    const WeylPolynomial prod =
        ccr_product(WeylPolynomial::generator(tag(f)),
                    WeylPolynomial::generator(tag(g.translated(t))));
    const auto weyl = kms_state(prod, tp);
    CHECK(std::abs(strip - weyl) < 1e-8);
  }
}

TEST_CASE("upper boundary values stay finite for gaussians") {
  const auto [f, g] = gaussian_pair();
  for (double beta : {0.5, 1.0, 2.0}) {
    const auto v = two_point_F(f, g, ThermalParams(beta), {1.3, beta});
    CHECK(std::isfinite(v.real()));
    CHECK(std::isfinite(v.imag()));
    CHECK(std::abs(v) > 0.0);
  }
}

TEST_CASE("kms residual on gaussian pairs") {
  const auto [f, g] = gaussian_pair();
  std::vector<double> grid(41);
  for (int i = 0; i < 41; ++i) grid[i] = -5.0 + 10.0 * i / 40.0;
  CHECK(kms_residual(f, g, ThermalParams(1.0, 0.0), grid) < 1e-7);
  CHECK(kms_residual(f, g, ThermalParams(1.0, 1.3), grid) < 1e-7);
}

TEST_CASE("residual rows carry per-point data consistent with the sup") {
  const auto [f, g] = gaussian_pair();
  const std::vector<double> grid = {-4.0, -1.0, 0.0, 2.0, 5.0};
  const ThermalParams tp(1.0, 0.4);
  const auto rows = kms_residual_rows(f, g, tp, grid);
  REQUIRE(rows.size() == grid.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].t == grid[i]);
    CHECK(rows[i].abs_F > 0.0);
    sup = std::max(sup, rows[i].residual);
  }
  CHECK(sup == kms_residual(f, g, tp, grid));
}

TEST_CASE("kms residual vanishes when the second slot is zero") {
  const auto [f, g] = gaussian_pair();
  const GridFunction zf(f.x0(), f.h(), std::vector<double>(f.size(), 0.0),
                        Support{0, 0});
  const std::vector<double> grid = {-3.0, 0.0, 3.0};
  CHECK(kms_residual(f, zf, ThermalParams(1.0), grid) < 1e-14);
}

TEST_CASE("clustering at large separation, and its trivial cases") {
  const auto [f, g] = bump_pair();
  const ThermalParams tp(1.0);
  CHECK(clustering_check(f, g, tp, 50.0) < 1e-3);

  // T = 0 with equal slots deviates
  CHECK(clustering_check(f, f, tp, 0.0) > 1e-3);

  const GridFunction zf(f.x0(), f.h(), std::vector<double>(f.size(), 0.0),
                        Support{0, 0});
  for (double T : {0.0, 7.0, 80.0})
    CHECK(clustering_check(f, zf, tp, T) < 1e-14);
}

TEST_CASE("clustering deviation is monotone at large separation") {
  const auto [f, g] = bump_pair();
  for (double beta : {0.5, 1.0}) {
    const ThermalParams tp(beta);
    const double t1 = 20.0 * beta;
    const double d1 = clustering_check(f, g, tp, t1);
    const double d2 = clustering_check(f, g, tp, 2.0 * t1);
    CHECK(d2 < d1 + 1e-6);
  }
}

TEST_CASE("interior mean-value property") {
  const auto [f, g] = gaussian_pair();
  const ThermalParams tp(1.0);
  const std::complex<double> z0(0.3, 0.5);
  const double r = 0.25;
  const auto center = two_point_F(f, g, tp, z0);
  std::complex<double> avg = 0.0;
  for (int k = 0; k < 8; ++k) {
    const double th = 2.0 * M_PI * k / 8.0;
    avg += two_point_F(f, g, tp, z0 + std::polar(r, th));
  }
  avg /= 8.0;
  CHECK(std::abs(avg - center) / std::abs(center) < 1e-6);
}

TEST_CASE("KMS symmetry point is real for q = 0 and g = f") {
  const auto [f, g] = gaussian_pair();
  (void)g;
  for (double beta : {0.5, 1.0, 2.0}) {
    const auto v = two_point_F(f, f, ThermalParams(beta), {0.0, beta / 2.0});
    CHECK(std::abs(v.imag()) < 1e-9);
  }
}

TEST_CASE("strip evaluation carries its metadata") {
  const auto [f, g] = gaussian_pair();
  const std::vector<double> grid = {-1.0, 0.0, 1.0};
  const StripEvaluation ev = evaluate_strip(f, g, ThermalParams(1.0), 0.4, grid);
  CHECK(ev.theta == 0.4);
  CHECK(ev.beta == 1.0);
  REQUIRE(ev.values.size() == grid.size());
  for (const auto& v : ev.values) CHECK(std::isfinite(std::abs(v)));
}

TEST_CASE("default t grid spans five combined support widths") {
  const auto [f, g] = bump_pair();
  const auto grid = default_t_grid(f, g);
  REQUIRE(grid.size() == 41);
  const double w = hull(f.support(), g.support()).width();
  CHECK(grid.front() == doctest::Approx(-5.0 * w));
  CHECK(grid.back() == doctest::Approx(5.0 * w));
}
