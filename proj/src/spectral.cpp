#include "sh/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace sh {

namespace {

// The FFTW planner is not thread-safe; executing finished plans on their own
// buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct SpectralSolver::Impl {
  GridSpec grid;
  double* real = nullptr;
  fftw_complex* freq = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;
  std::vector<double> axis;  // -4 sin^2(pi k/M)/h^2 per wavenumber

  explicit Impl(const GridSpec& s) : grid(s) {
    validate(s);
    const int m = s.points;
    const std::size_t nfreq =
        (s.dim == 2 ? static_cast<std::size_t>(m)
                    : static_cast<std::size_t>(m) * m) *
        (m / 2 + 1);
    real = fftw_alloc_real(s.node_count());
    freq = fftw_alloc_complex(nfreq);
    if (!real || !freq) throw std::bad_alloc();
    {
      // FFTW_ESTIMATE keeps the plan choice deterministic for a given size,
      // which bitwise-reproducible runs rely on.
      std::lock_guard<std::mutex> lock(planner_mutex());
      if (s.dim == 2) {
        fwd = fftw_plan_dft_r2c_2d(m, m, real, freq, FFTW_ESTIMATE);
        inv = fftw_plan_dft_c2r_2d(m, m, freq, real, FFTW_ESTIMATE);
      } else {
        fwd = fftw_plan_dft_r2c_3d(m, m, m, real, freq, FFTW_ESTIMATE);
        inv = fftw_plan_dft_c2r_3d(m, m, m, freq, real, FFTW_ESTIMATE);
      }
    }
    axis.resize(m);
    const double h = s.spacing();
    for (int k = 0; k < m; ++k) {
      const double sk = std::sin(std::numbers::pi * k / m);
      axis[k] = -4.0 * sk * sk / (h * h);
    }
  }

  ~Impl() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (inv) fftw_destroy_plan(inv);
    fftw_free(real);
    fftw_free(freq);
  }
};

SpectralSolver::SpectralSolver(const GridSpec& spec)
    : impl_(std::make_unique<Impl>(spec)) {}

SpectralSolver::~SpectralSolver() = default;

const GridSpec& SpectralSolver::spec() const { return impl_->grid; }

void SpectralSolver::apply_inverse(const GridField& rhs, double lead,
                                   double shift, GridField& out) {
  Impl& im = *impl_;
  if (!(rhs.spec() == im.grid))
    throw std::invalid_argument("rhs lives on a different grid");
  const int m = im.grid.points;
  const int half = m / 2 + 1;
  const std::size_t n = im.grid.node_count();
  std::memcpy(im.real, rhs.data(), n * sizeof(double));
  fftw_execute(im.fwd);
  const double scale = 1.0 / static_cast<double>(n);
  auto divide = [&](std::size_t idx, double lambda) {
    const double one_plus = 1.0 + lambda;
    const double denom = lead + one_plus * one_plus + shift;
    if (std::abs(denom) < 1e-300)
      throw std::domain_error("operator symbol vanishes for a Fourier mode");
    const double f = scale / denom;
    im.freq[idx][0] *= f;
    im.freq[idx][1] *= f;
  };
  if (im.grid.dim == 2) {
    std::size_t idx = 0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < half; ++j, ++idx)
        divide(idx, im.axis[i] + im.axis[j]);
  } else {
    std::size_t idx = 0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const double lam_ij = im.axis[i] + im.axis[j];
        for (int k = 0; k < half; ++k, ++idx) divide(idx, lam_ij + im.axis[k]);
      }
  }
  fftw_execute(im.inv);
  if (!(out.spec() == im.grid)) out = GridField(im.grid);
  std::memcpy(out.data(), im.real, n * sizeof(double));
}

}  // namespace sh
