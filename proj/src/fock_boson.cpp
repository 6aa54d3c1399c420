#include "cftherm/fock_boson.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cftherm {

int partition_level(const Partition& p) {
  int s = 0;
  for (int n : p) s += n;
  return s;
}

double partition_norm_sq(const Partition& p) {
  double out = 1.0;
  std::size_t i = 0;
  while (i < p.size()) {
    std::size_t j = i;
    while (j < p.size() && p[j] == p[i]) ++j;
    const int mult = static_cast<int>(j - i);
    for (int m = 1; m <= mult; ++m) out *= static_cast<double>(p[i]) * m;
    i = j;
  }
  return out;
}

BosonFockVector BosonFockVector::vacuum(int cutoff) {
  BosonFockVector v;
  v.level_cutoff = cutoff;
  v.amp.emplace(Partition{}, 1.0);
  return v;
}

void BosonFockVector::add(const Partition& p, std::complex<double> c) {
  auto [it, inserted] = amp.emplace(p, c);
  if (!inserted) it->second += c;
}

double BosonFockVector::norm_sq() const {
  double s = 0.0;
  for (const auto& [p, c] : amp) s += std::norm(c) * partition_norm_sq(p);
  return s;
}

BosonFockVector& BosonFockVector::axpy(std::complex<double> a,
                                       const BosonFockVector& v) {
  for (const auto& [p, c] : v.amp) add(p, a * c);
  truncated = truncated || v.truncated;
  return *this;
}

BosonFockVector& BosonFockVector::scale(std::complex<double> a) {
  for (auto& [p, c] : amp) c *= a;
  return *this;
}

double BosonFockVector::max_amp_diff(const BosonFockVector& other) const {
  double m = 0.0;
  for (const auto& [p, c] : amp) {
    auto it = other.amp.find(p);
    m = std::max(m, std::abs(c - (it == other.amp.end() ? 0.0 : it->second)));
  }
  for (const auto& [p, c] : other.amp)
    if (!amp.count(p)) m = std::max(m, std::abs(c));
  return m;
}

std::complex<double> fock_inner(const BosonFockVector& u, const BosonFockVector& v) {
  std::complex<double> s = 0.0;
  for (const auto& [p, c] : u.amp) {
    auto it = v.amp.find(p);
    if (it != v.amp.end()) s += std::conj(c) * it->second * partition_norm_sq(p);
  }
  return s;
}

BosonFockVector apply_J(int n, const BosonFockVector& v) {
  if (std::abs(n) > v.level_cutoff)
    throw std::invalid_argument("apply_J: |n| exceeds the level cutoff");
  BosonFockVector out;
  out.level_cutoff = v.level_cutoff;
  out.truncated = v.truncated;
  if (n == 0) return out;  // charge-zero module
  for (const auto& [p, c] : v.amp) {
    if (n < 0) {
      const int part = -n;
      if (partition_level(p) + part > v.level_cutoff) {
        out.truncated = true;
        continue;
      }
      Partition q = p;
      q.insert(std::lower_bound(q.begin(), q.end(), part, std::greater<int>()), part);
      out.add(q, c);
    } else {
      // J_n removes a part n with weight n * multiplicity
      const auto lo = std::lower_bound(p.begin(), p.end(), n, std::greater<int>());
      if (lo == p.end() || *lo != n) continue;
      const auto hi = std::upper_bound(lo, p.end(), n, std::greater<int>());
      const int mult = static_cast<int>(hi - lo);
      Partition q = p;
      q.erase(q.begin() + (lo - p.begin()));
      out.add(q, c * static_cast<double>(n * mult));
    }
  }
  return out;
}

BosonFockVector apply_L(int m, const BosonFockVector& v) {
  if (std::abs(m) > v.level_cutoff)
    throw std::invalid_argument("apply_L: |m| exceeds the level cutoff");
  BosonFockVector out;
  out.level_cutoff = v.level_cutoff;
  out.truncated = v.truncated;
  if (m == 0) {
    for (const auto& [p, c] : v.amp) {
      const int lvl = partition_level(p);
      if (lvl > 0) out.add(p, c * static_cast<double>(lvl));
    }
    return out;
  }
  // L_m = sum_{a<b, a+b=m} :J_a J_b: + (m even) J_{m/2} J_{m/2} / 2,
  // annihilators acting first.  Terms with an annihilator of index > cutoff
  // kill every truncated state; creators beyond the cutoff set the flag.
  const int N = v.level_cutoff;
  auto apply_pair = [&](int a, int b, double w) {
    // a <= b, a + b = m; apply J_b then J_a (normal ordered for mixed pairs)
    if (a == 0 || b == 0) return;
    if (b > 0 && b > N) return;  // annihilator beyond any reachable part
    if (a < 0 && -a > N) {       // creator beyond the cutoff
      if (!v.amp.empty()) out.truncated = true;
      return;
    }
    BosonFockVector tmp = apply_J(b, v);
    tmp = apply_J(a, tmp);
    out.axpy(w, tmp);
  };
  // unordered pairs {a, b}, a <= b, a + b = m
  for (int b = m / 2; b <= N; ++b) {
    const int a = m - b;
    if (a > b) continue;
    apply_pair(a, b, a == b ? 0.5 : 1.0);
  }
  return out;
}

double check_virasoro(int m1, int m2, int level, int cutoff, Exec exec) {
  if (level + std::abs(m1) + std::abs(m2) > cutoff)
    throw std::invalid_argument("check_virasoro: outside the truncation-exact window");
  const std::vector<Partition> basis = partitions_of(level);
  const double central =
      (m1 + m2 == 0)
          ? (1.0 / 12.0) * (static_cast<double>(m1) * m1 * m1 - m1)
          : 0.0;
  return max_reduce(
      basis.size(),
      [&](std::size_t i) {
        BosonFockVector v;
        v.level_cutoff = cutoff;
        v.amp.emplace(basis[i], 1.0);
        BosonFockVector lhs = apply_L(m1, apply_L(m2, v));
        lhs.axpy(-1.0, apply_L(m2, apply_L(m1, v)));
        BosonFockVector rhs = apply_L(m1 + m2, v);
        rhs.scale(static_cast<double>(m1 - m2));
        rhs.axpy(central, v);
        return lhs.max_amp_diff(rhs);
      },
      exec);
}

std::int64_t partition_count(int n) {
  if (n < 0) return 0;
  std::vector<std::int64_t> table(static_cast<std::size_t>(n) + 1, 0);
  table[0] = 1;
  for (int m = 1; m <= n; ++m) {
    std::int64_t s = 0;
    for (int k = 1;; ++k) {
      const int g1 = k * (3 * k - 1) / 2;
      const int g2 = k * (3 * k + 1) / 2;
      if (g1 > m && g2 > m) break;
      const std::int64_t sign = (k % 2 == 1) ? 1 : -1;
      if (g1 <= m) s += sign * table[m - g1];
      if (g2 <= m) s += sign * table[m - g2];
    }
    table[m] = s;
  }
  return table[n];
}

namespace {
void gen_partitions(int n, int max_part, Partition& cur,
                    std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, max_part); k >= 1; --k) {
    cur.push_back(k);
    gen_partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}
}  // namespace

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  Partition cur;
  gen_partitions(n, n == 0 ? 1 : n, cur, out);
  return out;
}

double trace_heat(double s, int N) {
  if (!(s > 0.0)) throw std::domain_error("trace_heat: s must be positive");
  double acc = 0.0;
  for (int n = N; n >= 0; --n)
    acc += static_cast<double>(partition_count(n)) * std::exp(-s * n);
  return acc;
}

namespace {

// orthonormal-coordinates application of (1+L0)^{-1} then J(f)
BosonFockVector resolvent(const BosonFockVector& v) {
  BosonFockVector out;
  out.level_cutoff = v.level_cutoff;
  for (const auto& [p, c] : v.amp)
    out.add(p, c / (1.0 + static_cast<double>(partition_level(p))));
  return out;
}

BosonFockVector apply_J_of_f(const std::vector<std::complex<double>>& modes,
                             const BosonFockVector& v) {
  BosonFockVector out;
  out.level_cutoff = v.level_cutoff;
  for (std::size_t m = 0; m < modes.size(); ++m) {
    if (modes[m] == 0.0) continue;
    const int n = static_cast<int>(m) + 1;
    out.axpy(modes[m], apply_J(-n, v));
    out.axpy(std::conj(modes[m]), apply_J(n, v));
  }
  return out;
}

}  // namespace

double bound_ratio_J(const std::vector<std::complex<double>>& modes, int cutoff) {
  if (static_cast<int>(modes.size()) > cutoff)
    throw std::invalid_argument("bound_ratio_J: cutoff below the largest mode");
  bool all_zero = true;
  for (const auto& c : modes) all_zero = all_zero && c == 0.0;
  if (modes.empty() || all_zero) return 0.0;

  // power iteration for the top singular value of A = J(f) (1+L0)^{-1}
  BosonFockVector v;
  v.level_cutoff = cutoff;
  for (int n = 0; n <= cutoff; ++n)
    for (const auto& p : partitions_of(n)) v.add(p, 1.0);
  v.scale(1.0 / std::sqrt(v.norm_sq()));

  double lambda = 0.0;
  for (int it = 0; it < 600; ++it) {
    BosonFockVector w = apply_J_of_f(modes, resolvent(v));  // A v
    BosonFockVector u = resolvent(apply_J_of_f(modes, w));  // A^* (A v)
    const double nrm = std::sqrt(u.norm_sq());
    if (nrm == 0.0) return 0.0;
    u.scale(1.0 / nrm);
    const double est = std::sqrt(nrm);  // ||A^*A v|| -> sigma_max^2
    if (it > 8 && std::abs(est - lambda) < 1e-12 * std::max(1.0, est)) {
      lambda = est;
      break;
    }
    lambda = est;
    v = u;
  }
  return lambda;
}

double central_charge_fit(int cutoff) {
  double num = 0.0, den = 0.0;
  for (int m = 2; m <= 4; ++m) {
    if (m > cutoff) break;
    BosonFockVector omega = BosonFockVector::vacuum(cutoff);
    const BosonFockVector lm = apply_L(-m, omega);
    const double y = fock_inner(lm, lm).real();  // <Omega, L_m L_{-m} Omega>
    const double x = (static_cast<double>(m) * m * m - m) / 12.0;
    num += x * y;
    den += x * x;
  }
  return num / den;
}

}  // namespace cftherm
