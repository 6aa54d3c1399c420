#include "cftherm/weyl.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace cftherm {

FunPtr tag(GridFunction g) { return std::make_shared<const TaggedFunction>(std::move(g)); }

namespace {

using Key = std::pair<const TaggedFunction*, int>;

std::vector<WeylPolynomial::Term> canonicalize(std::vector<WeylPolynomial::Term> in) {
  std::map<Key, WeylPolynomial::Term> merged;
  for (auto& t : in) {
    if (!t.fn) throw std::invalid_argument("WeylPolynomial term without function");
    if (t.sign != 1 && t.sign != -1)
      throw std::invalid_argument("WeylPolynomial term sign must be +-1");
    const Key k{t.fn.get(), t.sign};
    auto it = merged.find(k);
    if (it == merged.end())
      merged.emplace(k, t);
    else
      it->second.coeff += t.coeff;
  }
  std::vector<WeylPolynomial::Term> out;
  out.reserve(merged.size());
  for (auto& [k, t] : merged)
    if (std::abs(t.coeff) != 0.0) out.push_back(std::move(t));
  return out;
}

GridFunction signed_grid(const WeylPolynomial::Term& t) {
  return t.sign > 0 ? t.fn->grid() : t.fn->grid().negated();
}

GridFunction zero_small() {
  return GridFunction(-1.0, 2.0 / 64.0, std::vector<double>(64, 0.0), Support{0, 0});
}

}  // namespace

WeylPolynomial::WeylPolynomial(std::vector<Term> terms)
    : terms_(canonicalize(std::move(terms))) {}

WeylPolynomial WeylPolynomial::generator(FunPtr f, std::complex<double> coeff) {
  return WeylPolynomial({Term{coeff, std::move(f), +1}});
}

WeylPolynomial WeylPolynomial::identity_element() {
  return generator(tag(zero_small()), 1.0);
}

WeylPolynomial adjoint(const WeylPolynomial& a) {
  std::vector<WeylPolynomial::Term> out;
  out.reserve(a.size());
  for (const auto& t : a.terms())
    out.push_back({std::conj(t.coeff), t.fn, -t.sign});
  return WeylPolynomial(std::move(out));
}

WeylPolynomial ccr_product(const WeylPolynomial& a, const WeylPolynomial& b) {
  std::vector<WeylPolynomial::Term> out;
  out.reserve(a.size() * b.size());
  for (const auto& ta : a.terms()) {
    const GridFunction fa = signed_grid(ta);
    for (const auto& tb : b.terms()) {
      const GridFunction fb = signed_grid(tb);
      const double sig = symplectic(fa, fb);
      const std::complex<double> phase = std::polar(1.0, -0.5 * sig);
      out.push_back({ta.coeff * tb.coeff * phase, tag(fa.added(fb)), +1});
    }
  }
  return WeylPolynomial(std::move(out));
}

WeylPolynomial gauge(double q, const WeylPolynomial& a) {
  std::vector<WeylPolynomial::Term> out;
  out.reserve(a.size());
  for (const auto& t : a.terms()) {
    const double phi = q * static_cast<double>(t.sign) * integral(t.fn->grid());
    out.push_back({t.coeff * std::polar(1.0, phi), t.fn, t.sign});
  }
  return WeylPolynomial(std::move(out));
}

std::complex<double> kms_state(const WeylPolynomial& a, const ThermalParams& tp,
                               Exec exec) {
  // norms and integrals depend on the base function only
  std::map<const TaggedFunction*, std::pair<double, double>> cache;
  std::complex<double> acc = 0.0;
  for (const auto& t : a.terms()) {
    auto it = cache.find(t.fn.get());
    if (it == cache.end()) {
      const double nrm = thermal_norm_sq(t.fn->grid(), tp, exec);
      const double integ = integral(t.fn->grid());
      it = cache.emplace(t.fn.get(), std::make_pair(nrm, integ)).first;
    }
    const auto [nrm, integ] = it->second;
    acc += t.coeff * std::polar(std::exp(-0.25 * nrm),
                                tp.q * static_cast<double>(t.sign) * integ);
  }
  return acc;
}

double gram_psd_check(const std::vector<FunPtr>& fs, const ThermalParams& tp,
                      Exec exec) {
  const std::size_t n = fs.size();
  if (n == 0) throw std::invalid_argument("gram_psd_check: empty set");
  if (n > 12) throw std::invalid_argument("gram_psd_check: at most 12 functions");
  Eigen::MatrixXcd m(n, n);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) pairs.push_back({i, j});
  std::vector<std::complex<double>> vals(pairs.size());
  parallel_for(
      pairs.size(),
      [&](std::size_t k) {
        const auto [i, j] = pairs[k];
        const WeylPolynomial wi = WeylPolynomial::generator(fs[i]);
        const WeylPolynomial wj = WeylPolynomial::generator(fs[j]);
        vals[k] = kms_state(ccr_product(adjoint(wi), wj), tp, Exec::serial);
      },
      exec);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [i, j] = pairs[k];
    m(i, j) = vals[k];
    m(j, i) = std::conj(vals[k]);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("gram_psd_check: eigensolver failed");
  return es.eigenvalues().minCoeff();
}

GeoCheckResult geo_check(const GridFunction& f, double beta, std::size_t n_geo) {
  const double th = thermal_norm_sq(f, ThermalParams(beta));
  const Diffeomorphism g = Diffeomorphism::exponential(beta);
  const GridFunction composed = compose_inverse(g, f, n_geo);
  const double vac = vacuum_norm_sq(composed);
  return {th, vac, std::abs(th - vac) / std::abs(th)};
}

}  // namespace cftherm
