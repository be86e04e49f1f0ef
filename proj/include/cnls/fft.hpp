#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cnls/spectral_field.hpp"

namespace cnls {

/// In-place complex FFT of fixed length backed by FFTW.
///
/// forward computes sum_j a_j e^{-2pi i jk/n}, backward the same with +i;
/// neither is normalized. Plans are built with FFTW_ESTIMATE so results are
/// reproducible run to run. Planning is serialized internally; execution on
/// distinct buffers is safe from several threads.
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;
  Fft(Fft&& other) noexcept;
  Fft& operator=(Fft&& other) noexcept;

  std::size_t size() const noexcept { return n_; }
  void forward(std::span<cplx> data) const;
  void backward(std::span<cplx> data) const;

 private:
  std::size_t n_ = 0;
  void* fwd_ = nullptr;
  void* bwd_ = nullptr;
};

/// Values of sum_{|n|<=N} c_n e^{inx} at x_j = 2pi j/M. Requires M >= 2N+1.
void coeffs_to_grid(std::span<const cplx> coeffs, int mode_cutoff, const Fft& fft,
                    std::vector<cplx>& grid);

/// Discrete coefficients (1/M) sum_j u_j e^{-inx_j} for |n| <= N.
void grid_to_coeffs(std::vector<cplx>& grid, int mode_cutoff, const Fft& fft,
                    std::vector<cplx>& coeffs);

}  // namespace cnls
