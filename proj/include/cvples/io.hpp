#pragma once

#include <cstdio>
#include <string>
#include <utility>

#include "cvples/spectrum.hpp"
#include "cvples/state.hpp"

namespace cvples {

/// One diagnostics CSV row. mean_f, min_sigma and max_sigma report 1 when the
/// sensor is inactive; d_dev is only written for the helix case.
struct DiagnosticsRecord {
  long step = 0;
  double t = 0.0;
  double dt = 0.0;
  double e = 0.0;
  double eps_sgs = 0.0;
  double mean_f = 1.0;
  double min_sigma = 1.0;
  double max_sigma = 1.0;
  double max_mut = 0.0;
  double min_rho = 0.0;
  double max_div = 0.0;
  double d_dev = 0.0;
};

/// Binary field snapshot, version 1, little-endian:
///   bytes 0..3   magic "CVPL"
///   u32          version (1)
///   u32 x 3      nx, ny, nz
///   f64          time
///   u32          field count (5)
///   f64 x 6      lx, ly, lz, x0, y0, z0
///   payload      5 fields of nx*ny*nz f64, x fastest: rho, rhou, rhov, rhow, rhoE
/// The file is written under a ".partial" suffix and renamed once complete.
void write_snapshot(const ConservedState& state, double time, const std::string& path);
std::pair<ConservedState, double> read_snapshot(const std::string& path);

/// Diagnostics CSV writer ("# cvples-diagnostics v1" header, 17 significant
/// digits). Rows go to path.partial; finalize() renames to the real path.
class DiagnosticsCsv {
 public:
  DiagnosticsCsv(const std::string& path, bool with_deviation);
  ~DiagnosticsCsv();

  DiagnosticsCsv(const DiagnosticsCsv&) = delete;
  DiagnosticsCsv& operator=(const DiagnosticsCsv&) = delete;

  void write_row(const DiagnosticsRecord& rec);
  void finalize();

  const std::string& path() const { return path_; }

 private:
  std::string path_;
  bool with_deviation_ = false;
  std::FILE* f_ = nullptr;
};

/// Two-column (k, E_k) text spectrum; the sample time goes into a comment line.
void write_spectrum(const EnergySpectrum& spec, double time, const std::string& path);

void ensure_directory(const std::string& path);

}  // namespace cvples
