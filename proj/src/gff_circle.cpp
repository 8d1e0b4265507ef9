#include "gmc/gff_circle.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include <fftw3.h>

#include "gmc/errors.hpp"

namespace gmc::field {

namespace {

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <class T>
FftwBuffer<T> fftw_alloc(std::size_t n) {
  auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * n));
  if (p == nullptr) throw std::bad_alloc();
  return FftwBuffer<T>(p);
}

// Planning is not thread-safe in FFTW; execution of an existing plan on new
// arrays is. Plans live for the process lifetime.
fftw_plan c2r_plan(std::size_t m) {
  static std::mutex mutex;
  static std::map<std::size_t, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  auto in = fftw_alloc<fftw_complex>(m / 2 + 1);
  auto out = fftw_alloc<double>(m);
  fftw_plan plan = fftw_plan_dft_c2r_1d(static_cast<int>(m), in.get(), out.get(),
                                        FFTW_ESTIMATE);
  if (plan == nullptr) throw Error("FFTW failed to create a plan of size " + std::to_string(m));
  cache.emplace(m, plan);
  return plan;
}

}  // namespace

double harmonic_number(std::size_t n) {
  double h = 0.0;
  for (std::size_t k = n; k >= 1; --k) h += 1.0 / static_cast<double>(k);
  return h;
}

double truncated_covariance(std::size_t n_modes, double phi) {
  double c = 0.0;
  for (std::size_t n = n_modes; n >= 1; --n) {
    const double nd = static_cast<double>(n);
    c += 2.0 / nd * std::cos(nd * phi);
  }
  return c;
}

FourierField sample_field(std::size_t n_modes, mc::RngStream& stream) {
  if (n_modes < 1) throw DomainError("sample_field: n_modes must be >= 1");
  FourierField f;
  f.n_modes = n_modes;
  f.cos_coeffs.resize(n_modes);
  f.sin_coeffs.resize(n_modes);
  for (std::size_t n = 0; n < n_modes; ++n) {
    f.cos_coeffs[n] = stream.normal();
    f.sin_coeffs[n] = stream.normal();
  }
  return f;
}

FieldGrid evaluate_on_grid(const FourierField& field, std::size_t m_points) {
  const std::size_t n = field.n_modes;
  if (field.cos_coeffs.size() != n || field.sin_coeffs.size() != n) {
    throw DomainError("evaluate_on_grid: coefficient arrays do not match n_modes");
  }
  if (m_points < 2 * n) {
    throw AliasingError("evaluate_on_grid: m_points = " + std::to_string(m_points) +
                        " < 2 * n_modes = " + std::to_string(2 * n));
  }

  // Real inverse transform: out[j] = sum_k c_k e^{2 pi i jk/M} over the
  // Hermitian spectrum, i.e. c_0 + 2 Re sum_{0<k<M/2} c_k e^{..} (+ Nyquist).
  // Mode n contributes sqrt(2/n) Re[(a_n - i b_n) e^{i n theta}], so the
  // half-spectrum entry is sqrt(2/n)(a_n - i b_n)/2, except at the Nyquist
  // index M/2 where the term enters once and sin vanishes on the grid.
  const std::size_t half = m_points / 2 + 1;
  auto spec = fftw_alloc<fftw_complex>(half);
  for (std::size_t k = 0; k < half; ++k) {
    spec[k][0] = 0.0;
    spec[k][1] = 0.0;
  }
  for (std::size_t k = 1; k <= n; ++k) {
    const double scale = std::sqrt(2.0 / static_cast<double>(k));
    const double a = field.cos_coeffs[k - 1];
    const double b = field.sin_coeffs[k - 1];
    if (2 * k == m_points) {
      spec[k][0] = scale * a;
    } else {
      spec[k][0] = 0.5 * scale * a;
      spec[k][1] = -0.5 * scale * b;
    }
  }
  auto out = fftw_alloc<double>(m_points);
  fftw_execute_dft_c2r(c2r_plan(m_points), spec.get(), out.get());

  FieldGrid grid;
  grid.n_modes = n;
  grid.m_points = m_points;
  grid.values.assign(out.get(), out.get() + m_points);
  return grid;
}

}  // namespace gmc::field
