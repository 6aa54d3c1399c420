#include "cftherm/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>

namespace cftherm {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310005024;

// FFTW plan creation is not thread safe; execution on caller buffers is.
// Plans are created FFTW_UNALIGNED so they run on any array.
class FftBackend {
 public:
  static FftBackend& instance() {
    static FftBackend b;
    return b;
  }

  // dir = FFTW_FORWARD (e^{-2pi i jk/n}) or FFTW_BACKWARD (e^{+2pi i jk/n})
  void transform(std::vector<std::complex<double>>& data, int dir) {
    fftw_plan plan;
    {
      std::lock_guard<std::mutex> lock(mu_);
      const Key key{data.size(), dir};
      auto it = plans_.find(key.packed());
      if (it == plans_.end()) {
        plan = fftw_plan_dft_1d(static_cast<int>(data.size()), nullptr, nullptr,
                                dir, FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key.packed(), plan);
      } else {
        plan = it->second;
      }
    }
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, ptr, ptr);
  }

 private:
  struct Key {
    std::size_t n;
    int dir;
    std::uint64_t packed() const { return (static_cast<std::uint64_t>(n) << 1) | (dir > 0 ? 1u : 0u); }
  };
  std::mutex mu_;
  std::map<std::uint64_t, fftw_plan> plans_;
};

void check_finite(const GridFunction& f) {
  for (double v : f.values())
    if (std::isnan(v)) throw std::invalid_argument("NaN in grid values");
}

}  // namespace

double SpectralFunction::hermitian_defect() const {
  const std::size_t n = size();
  const std::size_t z = zero_index();
  double m = 0.0;
  for (std::size_t k = 1; k < n / 2; ++k)
    m = std::max(m, std::abs(values[z - k] - std::conj(values[z + k])));
  return m;
}

SpectralFunction fourier(const GridFunction& f, std::size_t pad_factor) {
  check_finite(f);
  if (pad_factor == 0 || (pad_factor & (pad_factor - 1)) != 0)
    throw std::invalid_argument("pad_factor must be a power of two");
  const std::size_t n = f.size() * pad_factor;
  std::vector<std::complex<double>> buf(n, 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) buf[i] = f.value(i);
  FftBackend::instance().transform(buf, FFTW_BACKWARD);  // sum_j f_j e^{+2pi i jk/n}

  SpectralFunction out;
  out.x0 = f.x0();
  out.h = f.h();
  out.dp = 2.0 * M_PI / (static_cast<double>(n) * f.h());
  out.p.resize(n);
  out.values.resize(n);
  const double scale = f.h() / kSqrt2Pi;
  for (std::size_t i = 0; i < n; ++i) {
    // ascending order: index i holds k = i - n/2
    const long k = static_cast<long>(i) - static_cast<long>(n / 2);
    const double p = out.dp * static_cast<double>(k);
    const std::size_t src = static_cast<std::size_t>(k >= 0 ? k : k + static_cast<long>(n));
    out.p[i] = p;
    out.values[i] = scale * std::polar(1.0, p * f.x0()) * buf[src];
  }
  return out;
}

GridFunction inverse_fourier(const SpectralFunction& s, Support support) {
  const std::size_t n = s.size();
  std::vector<std::complex<double>> buf(n);
  const double scale = s.h / kSqrt2Pi;
  for (std::size_t i = 0; i < n; ++i) {
    const long k = static_cast<long>(i) - static_cast<long>(n / 2);
    const std::size_t dst = static_cast<std::size_t>(k >= 0 ? k : k + static_cast<long>(n));
    buf[dst] = s.values[i] / (scale * std::polar(1.0, s.p[i] * s.x0));
  }
  FftBackend::instance().transform(buf, FFTW_FORWARD);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = buf[i].real() / static_cast<double>(n);
  return GridFunction(GridFunction::unchecked_t{}, s.x0, s.h, std::move(v), support);
}

double spectral_tail(const SpectralFunction& s) {
  double peak = 0.0, tail = 0.0;
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i) peak = std::max(peak, std::abs(s.values[i]));
  const std::size_t band = n / 16;  // outermost bins on both ends
  for (std::size_t i = 0; i < band; ++i) {
    tail = std::max(tail, std::abs(s.values[i]));
    tail = std::max(tail, std::abs(s.values[n - 1 - i]));
  }
  return peak > 0.0 ? tail / peak : 0.0;
}

namespace {

GridFunction spectral_multiply(const GridFunction& f,
                               const std::function<std::complex<double>(double)>& mult) {
  SpectralFunction s = fourier(f);
  const double tail = spectral_tail(s);
  for (std::size_t i = 0; i < s.size(); ++i) {
    // unpaired Nyquist bin carries no usable phase information
    if (i == 0)
      s.values[i] = 0.0;
    else
      s.values[i] *= mult(s.p[i]);
  }
  GridFunction out = inverse_fourier(s, f.support());
  if (tail > kSpectralTailTol) out.set_accuracy_warning(true);
  return out;
}

}  // namespace

GridFunction derivative(const GridFunction& f) {
  // f(x) = (2pi)^{-1/2} int fhat(p) e^{-ipx} dp  =>  multiplier -ip
  return spectral_multiply(f, [](double p) { return std::complex<double>(0.0, -p); });
}

GridFunction second_derivative(const GridFunction& f) {
  return spectral_multiply(f, [](double p) { return std::complex<double>(-p * p, 0.0); });
}

double eval_trig(const GridFunction& f, double x) {
  SpectralFunction s = fourier(f);
  std::complex<double> acc = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i)  // skip unpaired Nyquist bin
    acc += s.values[i] * std::polar(1.0, -s.p[i] * x);
  return acc.real() * s.dp / kSqrt2Pi;
}

GridFunction resample(const GridFunction& f, double x0, double h, std::size_t n) {
  SpectralFunction s = fourier(f);
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = x0 + h * static_cast<double>(j);
    std::complex<double> acc = 0.0;
    for (std::size_t i = 1; i < s.size(); ++i)
      acc += s.values[i] * std::polar(1.0, -s.p[i] * x);
    v[j] = acc.real() * s.dp / kSqrt2Pi;
  }
  return GridFunction(GridFunction::unchecked_t{}, x0, h, std::move(v), f.support());
}

}  // namespace cftherm
