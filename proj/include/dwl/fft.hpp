#pragma once

#include <complex>
#include <vector>

#include "dwl/grid.hpp"

namespace dwl {

using Complex = std::complex<double>;

/// Forward/inverse transforms between a real field on the box and its
/// spectral coefficients, normalized like the continuous Fourier transform:
///
///   u_hat(k) = dx^n sum_j u(x_j) e^{-i xi_k . x_j},  x_j in [-L, L)^n.
///
/// With this convention u_hat(0) is the field's integral, symbols of the
/// whole-space operators apply verbatim, and Plancherel reads
/// ||u||_{L^2}^2 = (2L)^{-n} sum_k |u_hat(k)|^2.
///
/// Backed by FFTW (complex-to-complex, FFTW_ESTIMATE: deterministic plans).
/// Transform execution is safe from one thread per instance; plan
/// creation/destruction is serialized internally.
class SpectralTransform {
 public:
  explicit SpectralTransform(const Grid& grid);
  ~SpectralTransform();

  SpectralTransform(const SpectralTransform&) = delete;
  SpectralTransform& operator=(const SpectralTransform&) = delete;

  const Grid& grid() const { return *grid_; }

  std::vector<Complex> forward(const std::vector<double>& u) const;
  std::vector<double> inverse(const std::vector<Complex>& u_hat) const;

  void forward_into(const std::vector<double>& u,
                    std::vector<Complex>& u_hat) const;
  /// Discards the O(eps) imaginary dust of a conjugate-symmetric spectrum.
  void inverse_into(const std::vector<Complex>& u_hat,
                    std::vector<double>& u) const;

 private:
  const Grid* grid_;
  void* plan_fwd_;
  void* plan_bwd_;
  mutable std::vector<Complex> buf_;
};

}  // namespace dwl
