#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cftherm/fixtures.hpp"
#include "cftherm/weyl.hpp"

using namespace cftherm;

namespace {

std::vector<FunPtr> tagged_family(std::size_t k, std::uint64_t seed) {
  std::vector<FunPtr> out;
  for (auto& f : random_smooth_family(k, seed, 2048)) out.push_back(tag(std::move(f)));
  return out;
}

// matches terms of equal polynomials built along different parenthesizations:
// terms correspond through their sampled sum functions
bool same_polynomial(const WeylPolynomial& a, const WeylPolynomial& b, double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& ta : a.terms()) {
    bool found = false;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const auto& tb = b.terms()[j];
      if (std::abs(ta.coeff - tb.coeff) > tol) continue;
      const GridFunction ga = ta.sign > 0 ? ta.fn->grid() : ta.fn->grid().negated();
      const GridFunction gb = tb.sign > 0 ? tb.fn->grid() : tb.fn->grid().negated();
      double dist = 0.0;
      for (std::size_t i = 0; i < std::min(ga.size(), gb.size()); ++i)
        dist = std::max(dist, std::abs(ga.eval(gb.x(i)) - gb.value(i)));
      if (dist < 1e-9) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("W(f) W(-f) is the identity element") {
  const auto fs = tagged_family(1, 5);
  const WeylPolynomial w = WeylPolynomial::generator(fs[0]);
  const WeylPolynomial prod = ccr_product(w, adjoint(w));
  REQUIRE(prod.size() == 1);
  CHECK(std::abs(prod.terms()[0].coeff - 1.0) < 1e-12);  // sigma(f,-f) = 0
  CHECK(prod.terms()[0].fn->grid().max_abs() < 1e-12);   // sum function vanishes
  CHECK(std::abs(kms_state(prod, ThermalParams(1.0)) - 1.0) < 1e-10);
}

TEST_CASE("commuting W(f) and W(g) costs the CCR phase") {
  const auto fs = tagged_family(2, 6);
  const WeylPolynomial a = WeylPolynomial::generator(fs[0]);
  const WeylPolynomial b = WeylPolynomial::generator(fs[1]);
  const auto ab = ccr_product(a, b).terms()[0].coeff;
  const auto ba = ccr_product(b, a).terms()[0].coeff;
  const double sig = symplectic(fs[0]->grid(), fs[1]->grid());
  CHECK(std::abs(ab / ba - std::polar(1.0, -sig)) < 1e-10);
}

TEST_CASE("ccr product is associative on random polynomials") {
  const auto fs = tagged_family(3, 7);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  auto randpoly = [&](std::size_t nterms) {
    std::vector<WeylPolynomial::Term> t;
    for (std::size_t i = 0; i < nterms; ++i)
      t.push_back({{amp(rng), amp(rng)}, fs[(i + nterms) % fs.size()],
                   rng() % 2 ? 1 : -1});
    return WeylPolynomial(std::move(t));
  };
  for (int rep = 0; rep < 3; ++rep) {
    const WeylPolynomial a = randpoly(2), b = randpoly(2), c = randpoly(1);
    const WeylPolynomial left = ccr_product(ccr_product(a, b), c);
    const WeylPolynomial right = ccr_product(a, ccr_product(b, c));
    CHECK(same_polynomial(left, right, 1e-10));
  }
}

TEST_CASE("gauge automorphism: identity, group law, phase") {
  const auto fs = tagged_family(2, 8);
  const WeylPolynomial a = WeylPolynomial::generator(fs[0], {0.3, -0.7});

  const WeylPolynomial a0 = gauge(0.0, a);
  CHECK(std::abs(a0.terms()[0].coeff - a.terms()[0].coeff) == 0.0);

  const WeylPolynomial g1 = gauge(0.4, gauge(0.9, a));
  const WeylPolynomial g2 = gauge(1.3, a);
  CHECK(std::abs(g1.terms()[0].coeff - g2.terms()[0].coeff) < 1e-12);

  // int f = pi makes the q = 1 gauge phase equal to -1
  GridFunction b = bump_fixture(0.0, 0.5);
  b = b.scaled(M_PI / integral(b));
  const WeylPolynomial w = WeylPolynomial::generator(tag(b));
  const auto coeff = gauge(1.0, w).terms()[0].coeff;
  CHECK(std::abs(coeff + 1.0) < 1e-10);
}

TEST_CASE("gauge is multiplicative over the ccr product") {
  const auto fs = tagged_family(2, 9);
  const WeylPolynomial a = WeylPolynomial::generator(fs[0]);
  const WeylPolynomial b = WeylPolynomial::generator(fs[1]);
  for (double q : {0.7, -1.9}) {
    const auto lhs = gauge(q, ccr_product(a, b)).terms()[0].coeff;
    const auto rhs = ccr_product(gauge(q, a), gauge(q, b)).terms()[0].coeff;
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("adjoint is an exact involution term by term") {
  const auto fs = tagged_family(2, 10);
  std::vector<WeylPolynomial::Term> t = {{{0.2, 0.4}, fs[0], +1},
                                         {{-1.0, 0.1}, fs[1], -1}};
  const WeylPolynomial a(t);
  const WeylPolynomial aa = adjoint(adjoint(a));
  REQUIRE(aa.size() == a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(aa.terms()[i].fn.get() == a.terms()[i].fn.get());
    CHECK(aa.terms()[i].sign == a.terms()[i].sign);
    CHECK(aa.terms()[i].coeff == a.terms()[i].coeff);
  }
}

TEST_CASE("kms state normalization and bound") {
  CHECK(std::abs(kms_state(WeylPolynomial::identity_element(), ThermalParams(1.0)) -
                 1.0) < 1e-14);
  const auto fs = tagged_family(3, 11);
  for (const auto& f : fs) {
    const auto v = kms_state(WeylPolynomial::generator(f), ThermalParams(0.7, 0.4));
    CHECK(std::abs(v) <= 1.0 + 1e-12);
  }
}

TEST_CASE("gauge twisting the state equals shifting q") {
  const auto fs = tagged_family(2, 12);
  std::vector<WeylPolynomial::Term> t = {{{0.8, 0.0}, fs[0], +1},
                                         {{0.0, -0.6}, fs[1], -1}};
  const WeylPolynomial a(t);
  for (double beta : {0.5, 2.0}) {
    for (double q : {0.3, 1.7}) {
      const auto lhs = kms_state(gauge(q, a), ThermalParams(beta, 0.0));
      const auto rhs = kms_state(a, ThermalParams(beta, q));
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("gaussian generator value matches the thermal norm") {
  const GridFunction f = gaussian_fixture(0.0, 1.0);
  const double nrm = thermal_norm_sq(f, ThermalParams(1.0));
  const auto v = kms_state(WeylPolynomial::generator(tag(f)), ThermalParams(1.0));
  CHECK(std::abs(v - std::exp(-0.25 * nrm)) < 1e-12);
}

TEST_CASE("state positivity on random polynomials") {
  const auto fs = tagged_family(3, 13);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  for (int rep = 0; rep < 4; ++rep) {
    std::vector<WeylPolynomial::Term> t;
    for (const auto& f : fs)
      t.push_back({{amp(rng), amp(rng)}, f, rng() % 2 ? 1 : -1});
    const WeylPolynomial a(t);
    const auto v = kms_state(ccr_product(adjoint(a), a), ThermalParams(1.0, 0.5));
    CHECK(v.real() >= -1e-9);
    CHECK(std::abs(v.imag()) < 1e-9);
  }
}

TEST_CASE("kms state is translation invariant") {
  const GridFunction f = bump_fixture(0.0, 0.6);
  const ThermalParams tp(1.0, 0.0);
  const auto base = kms_state(WeylPolynomial::generator(tag(f)), tp);
  for (double t : {0.5, 3.7, -12.0}) {
    const auto shifted =
        kms_state(WeylPolynomial::generator(tag(f.translated(t))), tp);
    CHECK(std::abs(shifted - base) < 1e-8);
  }
}

TEST_CASE("geometric identification across modules") {
  const GridFunction f = bump_fixture(0.0, 0.1);
  for (double beta : {0.5, 1.0, 2.0}) {
    const GeoCheckResult r = geo_check(f, beta);
    CHECK(r.rel_delta < 1e-6);
  }
}

TEST_CASE("gram matrix positivity") {
  const auto one = tagged_family(1, 14);
  CHECK(gram_psd_check(one, ThermalParams(1.0)) == doctest::Approx(1.0).epsilon(1e-12));

  auto dup = tagged_family(3, 15);
  dup.push_back(dup[0]);  // repeated function: rank-deficient but PSD
  CHECK(gram_psd_check(dup, ThermalParams(1.0, 1.0)) >= -1e-9);

  for (double beta : {0.5, 1.0, 2.0})
    for (double q : {0.0, 1.0}) {
      const auto fs = tagged_family(6, 16 + static_cast<std::uint64_t>(10 * beta));
      CHECK(gram_psd_check(fs, ThermalParams(beta, q)) >= -1e-9);
    }

  std::vector<FunPtr> too_many = tagged_family(6, 17);
  for (const auto& f : tagged_family(7, 18)) too_many.push_back(f);
  CHECK_THROWS_AS(gram_psd_check(too_many, ThermalParams(1.0)),
                  std::invalid_argument);
}
