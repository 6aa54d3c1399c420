#include "cftherm/fock_fermion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "cftherm/spectral.hpp"

namespace cftherm {

int mode_set_two_level(const ModeSet& s) {
  int t = 0;
  for (int m : s) t += m;
  return t;
}

FermionFockVector FermionFockVector::vacuum(int two_cutoff) {
  FermionFockVector v;
  v.two_level_cutoff = two_cutoff;
  v.amp.emplace(ModeSet{}, 1.0);
  return v;
}

void FermionFockVector::add(const ModeSet& s, std::complex<double> c) {
  auto [it, inserted] = amp.emplace(s, c);
  if (!inserted) it->second += c;
}

double FermionFockVector::norm_sq() const {
  double t = 0.0;
  for (const auto& [s, c] : amp) t += std::norm(c);
  return t;
}

FermionFockVector& FermionFockVector::axpy(std::complex<double> a,
                                           const FermionFockVector& v) {
  for (const auto& [s, c] : v.amp) add(s, a * c);
  truncated = truncated || v.truncated;
  return *this;
}

FermionFockVector& FermionFockVector::scale(std::complex<double> a) {
  for (auto& [s, c] : amp) c *= a;
  return *this;
}

double FermionFockVector::max_amp_diff(const FermionFockVector& other) const {
  double m = 0.0;
  for (const auto& [s, c] : amp) {
    auto it = other.amp.find(s);
    m = std::max(m, std::abs(c - (it == other.amp.end() ? 0.0 : it->second)));
  }
  for (const auto& [s, c] : other.amp)
    if (!amp.count(s)) m = std::max(m, std::abs(c));
  return m;
}

std::complex<double> fermion_inner(const FermionFockVector& u,
                                   const FermionFockVector& v) {
  std::complex<double> t = 0.0;
  for (const auto& [s, c] : u.amp) {
    auto it = v.amp.find(s);
    if (it != v.amp.end()) t += std::conj(c) * it->second;
  }
  return t;
}

FermionFockVector apply_b(int two_r, const FermionFockVector& v) {
  if (two_r % 2 == 0 || two_r == 0)
    throw std::invalid_argument("apply_b: mode must be a half-integer (odd doubled)");
  if (std::abs(two_r) > v.two_level_cutoff)
    throw std::invalid_argument("apply_b: |r| exceeds the cutoff");
  FermionFockVector out;
  out.two_level_cutoff = v.two_level_cutoff;
  out.truncated = v.truncated;
  for (const auto& [s, c] : v.amp) {
    if (two_r < 0) {
      const int m = -two_r;  // create mode m
      // position = number of occupied modes greater than m
      const auto pos = std::lower_bound(s.begin(), s.end(), m, std::greater<int>());
      if (pos != s.end() && *pos == m) continue;  // Pauli exclusion
      if (mode_set_two_level(s) + m > v.two_level_cutoff) {
        out.truncated = true;
        continue;
      }
      const double sign = ((pos - s.begin()) % 2 == 0) ? 1.0 : -1.0;
      ModeSet t = s;
      t.insert(t.begin() + (pos - s.begin()), m);
      out.add(t, sign * c);
    } else {
      const int m = two_r;  // annihilate mode m
      const auto pos = std::lower_bound(s.begin(), s.end(), m, std::greater<int>());
      if (pos == s.end() || *pos != m) continue;
      const double sign = ((pos - s.begin()) % 2 == 0) ? 1.0 : -1.0;
      ModeSet t = s;
      t.erase(t.begin() + (pos - s.begin()));
      out.add(t, sign * c);
    }
  }
  return out;
}

namespace {

// one normal-ordered CAR bilinear w * b_a b_b (b applied first), truncated
void accumulate_bilinear(FermionFockVector& out, const FermionFockVector& v,
                         int two_a, int two_b, double w) {
  const int N = v.two_level_cutoff;
  // an annihilator beyond the cutoff kills every truncated state
  if ((two_a > 0 && two_a > N) || (two_b > 0 && two_b > N)) return;
  // a creator beyond the cutoff always crosses it
  if ((two_a < 0 && -two_a > N) || (two_b < 0 && -two_b > N)) {
    if (!v.amp.empty()) out.truncated = true;
    return;
  }
  FermionFockVector tmp = apply_b(two_b, v);
  tmp = apply_b(two_a, tmp);
  out.axpy(w, tmp);
}

}  // namespace

FermionFockVector apply_L_fermion(int m, const FermionFockVector& v) {
  if (std::abs(m) > v.two_level_cutoff)
    throw std::invalid_argument("apply_L_fermion: |m| exceeds 2R");
  const int N = v.two_level_cutoff;
  FermionFockVector out;
  out.two_level_cutoff = N;
  out.truncated = v.truncated;
  // L_m = (1/2) sum_{a<b, a+b=m} (b-a) b_a b_b over half-integer indices
  int two_b = m + 1;
  if (two_b % 2 == 0) ++two_b;
  for (; two_b <= N + 2 * std::abs(m) + 2; two_b += 2) {
    const int two_a = 2 * m - two_b;
    if (two_b > 0 && two_b > N && two_a >= 0) break;  // only dead pairs left
    const double w = 0.5 * (static_cast<double>(two_b - two_a) / 2.0);
    accumulate_bilinear(out, v, two_a, two_b, w);
  }
  return out;
}

FermionFockVector apply_L_fermion_literal(int m, const FermionFockVector& v) {
  const int N = v.two_level_cutoff;
  const int n = std::abs(m);
  FermionFockVector out;
  out.two_level_cutoff = N;
  out.truncated = v.truncated;
  // n >= 0: (1/2) sum_{s > n/2} (s - n/2) b_{-s} b_{n+s};
  // m < 0 is the adjoint, (1/2) sum_{s > n/2} (s - n/2) b_{-n-s} b_s.
  int two_s = n + 1;
  if (two_s % 2 == 0) ++two_s;
  for (; two_s <= 3 * N + 2 * n + 2; two_s += 2) {
    const int ann = (m >= 0) ? 2 * m + two_s : two_s;
    if (ann > N) break;  // all further terms annihilate beyond the cutoff
    const double w = 0.5 * (static_cast<double>(two_s - n) / 2.0);
    if (m >= 0)
      accumulate_bilinear(out, v, -two_s, 2 * m + two_s, w);
    else
      accumulate_bilinear(out, v, -2 * n - two_s, two_s, w);
  }
  return out;
}

std::vector<ModeSet> fermion_basis_of(int two_level, int two_cutoff) {
  std::vector<ModeSet> out;
  ModeSet cur;
  // strict partitions of two_level into distinct odd parts <= two_cutoff
  std::function<void(int, int)> rec = [&](int rem, int max_part) {
    if (rem == 0) {
      out.push_back(cur);
      return;
    }
    int k = std::min(rem, max_part);
    if (k % 2 == 0) --k;
    for (; k >= 1; k -= 2) {
      cur.push_back(k);
      rec(rem - k, k - 2);
      cur.pop_back();
    }
  };
  rec(two_level, std::min(two_level, two_cutoff));
  return out;
}

double check_virasoro_fermion(int m1, int m2, int two_level, int two_cutoff,
                              bool literal, Exec exec) {
  if (two_level + 2 * std::abs(m1) + 2 * std::abs(m2) > two_cutoff)
    throw std::invalid_argument(
        "check_virasoro_fermion: outside the truncation-exact window");
  const auto L = literal ? apply_L_fermion_literal : apply_L_fermion;
  const std::vector<ModeSet> basis = fermion_basis_of(two_level, two_cutoff);
  const double central =
      (m1 + m2 == 0)
          ? (0.5 / 12.0) * (static_cast<double>(m1) * m1 * m1 - m1)
          : 0.0;
  return max_reduce(
      basis.size(),
      [&](std::size_t i) {
        FermionFockVector v;
        v.two_level_cutoff = two_cutoff;
        v.amp.emplace(basis[i], 1.0);
        FermionFockVector lhs = L(m1, L(m2, v));
        lhs.axpy(-1.0, L(m2, L(m1, v)));
        FermionFockVector rhs = L(m1 + m2, v);
        rhs.scale(static_cast<double>(m1 - m2));
        rhs.axpy(central, v);
        return lhs.max_amp_diff(rhs);
      },
      exec);
}

double central_charge_fit_fermion(int two_cutoff) {
  double num = 0.0, den = 0.0;
  for (int m = 2; m <= 4; ++m) {
    FermionFockVector omega = FermionFockVector::vacuum(two_cutoff);
    const FermionFockVector lm = apply_L_fermion(-m, omega);
    const double y = fermion_inner(lm, lm).real();
    const double x = (static_cast<double>(m) * m * m - m) / 12.0;
    num += x * y;
    den += x * x;
  }
  return num / den;
}

double fermi_occupation(double beta, double p) {
  if (p >= 0.0) return 1.0 / (1.0 + std::exp(-beta * p));
  return std::exp(beta * p) / (1.0 + std::exp(beta * p));
}

namespace {

double fermi_strip_factor(double p, double beta, double theta) {
  // e^{-p theta} / (1 + e^{-beta p}), stable on both tails
  if (p >= 0.0) return std::exp(-p * theta) / (1.0 + std::exp(-beta * p));
  return std::exp(p * (beta - theta)) / (1.0 + std::exp(beta * p));
}

struct FermiKernel {
  double beta, dp;
  std::vector<double> p;
  std::vector<std::complex<double>> prod;

  FermiKernel(const GridFunction& f, const GridFunction& g,
              const ThermalParams& tp, double t_max) {
    if (f.size() != g.size() || std::abs(f.h() - g.h()) > 1e-12 * f.h())
      throw std::invalid_argument("fermion kernel: functions must share grid resolution");
    beta = tp.beta;
    const double base = f.window_length();
    const double target = std::max({2.0 * std::abs(t_max) + 2.0 * base,
                                    6.0 * tp.beta,
                                    16.0 * hull(f.support(), g.support()).width()});
    std::size_t pad = 1;
    while (base * static_cast<double>(pad) < target &&
           f.size() * pad * 2 <= (std::size_t(1) << 21))
      pad *= 2;
    const SpectralFunction fh = fourier(f, pad);
    const SpectralFunction gh = fourier(g, pad);
    dp = fh.dp;
    p = fh.p;
    prod.resize(fh.size());
    for (std::size_t i = 0; i < fh.size(); ++i)
      prod[i] = std::conj(fh.values[i]) * gh.values[i];
  }

  std::complex<double> eval(std::complex<double> z, Exec exec = Exec::par) const {
    const double t = z.real(), theta = z.imag();
    if (theta < -1e-12 || theta > beta + 1e-12)
      throw std::domain_error("fermion two-point: Im z outside [0, beta]");
    return dp * blocked_sum<std::complex<double>>(
                    p.size(),
                    [&](std::size_t i) {
                      return prod[i] * fermi_strip_factor(p[i], beta, theta) *
                             std::polar(1.0, p[i] * t);
                    },
                    exec);
  }

  std::complex<double> pairing(double t, Exec exec = Exec::par) const {
    return dp * blocked_sum<std::complex<double>>(
                    p.size(),
                    [&](std::size_t i) {
                      return prod[i] * std::polar(1.0, p[i] * t);
                    },
                    exec);
  }
};

}  // namespace

std::complex<double> fermion_thermal_two_point(const GridFunction& f,
                                               const GridFunction& g,
                                               const ThermalParams& tp,
                                               std::complex<double> z) {
  return FermiKernel(f, g, tp, std::abs(z.real())).eval(z);
}

std::complex<double> fermion_pairing(const GridFunction& f, const GridFunction& g,
                                     double t) {
  return FermiKernel(f, g, ThermalParams(1.0), std::abs(t)).pairing(t);
}

double fermion_kms_residual(const GridFunction& f, const GridFunction& g,
                            const ThermalParams& tp,
                            const std::vector<double>& t_grid, Exec exec) {
  double t_max = 0.0;
  for (double t : t_grid) t_max = std::max(t_max, std::abs(t));
  const FermiKernel k(f, g, tp, t_max);
  return max_reduce(
      t_grid.size(),
      [&](std::size_t i) {
        const double t = t_grid[i];
        const std::complex<double> lhs =
            k.eval({t, tp.beta}, Exec::serial) + k.eval({t, 0.0}, Exec::serial);
        return std::abs(lhs - k.pairing(t, Exec::serial));
      },
      exec);
}

}  // namespace cftherm
