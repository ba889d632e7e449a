#pragma once

#include <vector>

#include "cvples/field.hpp"

namespace cvples {

/// Shell-binned kinetic-energy spectrum: e[s] holds the energy of integer
/// wavenumber shell [s - 1/2, s + 1/2). The shell sum satisfies Parseval:
/// sum_s e[s] = <u.u>/2.
struct EnergySpectrum {
  std::vector<double> k;
  std::vector<double> e;
};

/// 3D DFT of each velocity component, cubic grids only.
EnergySpectrum energy_spectrum(const VectorField& u);

}  // namespace cvples
