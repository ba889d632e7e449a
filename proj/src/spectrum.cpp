#include "cvples/spectrum.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>

#include "cvples/error.hpp"

namespace cvples {

EnergySpectrum energy_spectrum(const VectorField& u) {
  const Grid& g = u.grid();
  if (!g.cubic()) fail(errc::non_cubic_grid, "energy spectra need nx = ny = nz");
  const int n = g.nx;
  const std::size_t nreal = g.size();
  const int nxh = n / 2 + 1;
  const std::size_t ncplx = std::size_t(n) * n * nxh;

  const int kmax = int(std::floor(std::sqrt(3.0) * (n / 2) + 0.5));
  EnergySpectrum spec;
  spec.k.resize(kmax + 1);
  spec.e.assign(kmax + 1, 0.0);
  for (int s = 0; s <= kmax; ++s) spec.k[s] = double(s);

  double* in = fftw_alloc_real(nreal);
  fftw_complex* out = reinterpret_cast<fftw_complex*>(fftw_alloc_complex(ncplx));
  const double norm = 1.0 / double(nreal);

  for (int c = 0; c < 3; ++c) {
    std::memcpy(in, u.comp(c).data(), nreal * sizeof(double));
    // layout is x-fastest, so the FFTW dims are (nz, ny, nx)
    fftw_plan plan = fftw_plan_dft_r2c_3d(n, n, n, in, out, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    for (int kz = 0; kz < n; ++kz) {
      const int fz = kz <= n / 2 ? kz : kz - n;
      for (int ky = 0; ky < n; ++ky) {
        const int fy = ky <= n / 2 ? ky : ky - n;
        const std::size_t row = (std::size_t(kz) * n + ky) * nxh;
        for (int kx = 0; kx < nxh; ++kx) {
          const double re = out[row + kx][0] * norm;
          const double im = out[row + kx][1] * norm;
          // Hermitian half-space: interior kx planes stand for two modes
          const double weight = (kx == 0 || (n % 2 == 0 && kx == n / 2)) ? 1.0 : 2.0;
          const double kmag = std::sqrt(double(kx) * kx + double(fy) * fy + double(fz) * fz);
          const int shell = int(std::floor(kmag + 0.5));
          if (shell <= kmax) spec.e[shell] += 0.5 * weight * (re * re + im * im);
        }
      }
    }
  }

  fftw_free(in);
  fftw_free(out);
  return spec;
}

}  // namespace cvples
