#include "cnls/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>
#include <utility>

namespace cnls {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_plan make_plan(std::size_t n, int sign) {
  std::lock_guard lock(planner_mutex());
  auto* scratch = fftw_alloc_complex(n);
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), scratch, scratch, sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(scratch);
  if (plan == nullptr) throw std::runtime_error("FFTW planning failed");
  return plan;
}

void destroy(void* plan) {
  if (plan == nullptr) return;
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan));
}

fftw_complex* as_fftw(std::span<cplx> data) {
  return reinterpret_cast<fftw_complex*>(data.data());
}

}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("FFT length must be positive");
  fwd_ = make_plan(n, FFTW_FORWARD);
  bwd_ = make_plan(n, FFTW_BACKWARD);
}

Fft::~Fft() {
  destroy(fwd_);
  destroy(bwd_);
}

Fft::Fft(Fft&& other) noexcept
    : n_(other.n_), fwd_(std::exchange(other.fwd_, nullptr)), bwd_(std::exchange(other.bwd_, nullptr)) {}

Fft& Fft::operator=(Fft&& other) noexcept {
  if (this != &other) {
    destroy(fwd_);
    destroy(bwd_);
    n_ = other.n_;
    fwd_ = std::exchange(other.fwd_, nullptr);
    bwd_ = std::exchange(other.bwd_, nullptr);
  }
  return *this;
}

void Fft::forward(std::span<cplx> data) const {
  if (data.size() != n_) throw std::invalid_argument("FFT buffer size mismatch");
  fftw_execute_dft(static_cast<fftw_plan>(fwd_), as_fftw(data), as_fftw(data));
}

void Fft::backward(std::span<cplx> data) const {
  if (data.size() != n_) throw std::invalid_argument("FFT buffer size mismatch");
  fftw_execute_dft(static_cast<fftw_plan>(bwd_), as_fftw(data), as_fftw(data));
}

void coeffs_to_grid(std::span<const cplx> coeffs, int mode_cutoff, const Fft& fft,
                    std::vector<cplx>& grid) {
  const auto M = static_cast<long>(fft.size());
  if (M < 2L * mode_cutoff + 1) throw std::invalid_argument("grid too coarse for mode cutoff");
  grid.assign(static_cast<std::size_t>(M), cplx{});
  for (int n = -mode_cutoff; n <= mode_cutoff; ++n) {
    const long idx = n >= 0 ? n : M + n;
    grid[static_cast<std::size_t>(idx)] = coeffs[static_cast<std::size_t>(n + mode_cutoff)];
  }
  fft.backward(grid);
}

void grid_to_coeffs(std::vector<cplx>& grid, int mode_cutoff, const Fft& fft,
                    std::vector<cplx>& coeffs) {
  const auto M = static_cast<long>(fft.size());
  if (M < 2L * mode_cutoff + 1) throw std::invalid_argument("grid too coarse for mode cutoff");
  fft.forward(grid);
  coeffs.assign(static_cast<std::size_t>(2 * mode_cutoff + 1), cplx{});
  const double scale = 1.0 / static_cast<double>(M);
  for (int n = -mode_cutoff; n <= mode_cutoff; ++n) {
    const long idx = n >= 0 ? n : M + n;
    coeffs[static_cast<std::size_t>(n + mode_cutoff)] = grid[static_cast<std::size_t>(idx)] * scale;
  }
}

}  // namespace cnls
