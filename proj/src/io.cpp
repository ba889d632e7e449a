#include "cvples/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <memory>

#include "cvples/error.hpp"

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian; byte swapping is not implemented");

namespace cvples {

namespace {

constexpr char kMagic[4] = {'C', 'V', 'P', 'L'};
constexpr std::uint32_t kVersion = 1;

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

void write_raw(std::FILE* f, const void* p, std::size_t bytes, const std::string& path) {
  if (std::fwrite(p, 1, bytes, f) != bytes) fail(errc::io_error, "short write to '" + path + "'");
}

void read_raw(std::FILE* f, void* p, std::size_t bytes, const std::string& path) {
  if (std::fread(p, 1, bytes, f) != bytes)
    fail(errc::truncated_file, "unexpected end of file in '" + path + "'");
}

void rename_into_place(const std::string& partial, const std::string& path) {
  std::error_code ec;
  std::filesystem::rename(partial, path, ec);
  if (ec) fail(errc::io_error, "cannot rename '" + partial + "' to '" + path + "'");
}

}  // namespace

void ensure_directory(const std::string& path) {
  if (path.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) fail(errc::io_error, "cannot create directory '" + path + "'");
}

void write_snapshot(const ConservedState& state, double time, const std::string& path) {
  const Grid& g = state.grid();
  const std::string partial = path + ".partial";
  FilePtr f(std::fopen(partial.c_str(), "wb"));
  if (!f) fail(errc::io_error, "cannot open '" + partial + "' for writing");

  write_raw(f.get(), kMagic, 4, partial);
  const std::uint32_t head[4] = {kVersion, std::uint32_t(g.nx), std::uint32_t(g.ny),
                                 std::uint32_t(g.nz)};
  write_raw(f.get(), head, sizeof(head), partial);
  write_raw(f.get(), &time, sizeof(double), partial);
  const std::uint32_t nfields = 5;
  write_raw(f.get(), &nfields, sizeof(nfields), partial);
  const double geom[6] = {g.lx, g.ly, g.lz, g.x0, g.y0, g.z0};
  write_raw(f.get(), geom, sizeof(geom), partial);

  const ScalarField* fields[5] = {&state.rho, &state.mom.x(), &state.mom.y(), &state.mom.z(),
                                  &state.rhoE};
  for (const ScalarField* fld : fields)
    write_raw(f.get(), fld->data(), fld->size() * sizeof(double), partial);
  if (std::fflush(f.get()) != 0) fail(errc::io_error, "cannot flush '" + partial + "'");
  f.reset();
  rename_into_place(partial, path);
}

std::pair<ConservedState, double> read_snapshot(const std::string& path) {
  FilePtr f(std::fopen(path.c_str(), "rb"));
  if (!f) fail(errc::io_error, "cannot open snapshot '" + path + "'");

  char magic[4];
  read_raw(f.get(), magic, 4, path);
  if (std::memcmp(magic, kMagic, 4) != 0)
    fail(errc::bad_magic, "'" + path + "' is not a cvples snapshot");
  std::uint32_t head[4];
  read_raw(f.get(), head, sizeof(head), path);
  if (head[0] != kVersion)
    fail(errc::version_mismatch,
         "snapshot version " + std::to_string(head[0]) + ", expected " + std::to_string(kVersion));
  double time = 0.0;
  read_raw(f.get(), &time, sizeof(double), path);
  std::uint32_t nfields = 0;
  read_raw(f.get(), &nfields, sizeof(nfields), path);
  if (nfields != 5)
    fail(errc::dimension_mismatch, "snapshot carries " + std::to_string(nfields) +
                                       " fields, expected 5");
  double geom[6];
  read_raw(f.get(), geom, sizeof(geom), path);

  const int nx = int(head[1]), ny = int(head[2]), nz = int(head[3]);
  if (nx < 8 || ny < 8 || nz < 8 || !(geom[0] > 0.0) || !(geom[1] > 0.0) || !(geom[2] > 0.0))
    fail(errc::dimension_mismatch, "snapshot header contains invalid grid dimensions");
  Grid g(nx, ny, nz, geom[0], geom[1], geom[2], geom[3], geom[4], geom[5]);

  ConservedState state(g);
  ScalarField* fields[5] = {&state.rho, &state.mom.x(), &state.mom.y(), &state.mom.z(),
                            &state.rhoE};
  for (ScalarField* fld : fields)
    read_raw(f.get(), fld->data(), fld->size() * sizeof(double), path);

  // anything left over means the header lied about the payload
  char probe;
  if (std::fread(&probe, 1, 1, f.get()) == 1)
    fail(errc::truncated_file, "'" + path + "' holds more data than its header declares");
  return {std::move(state), time};
}

DiagnosticsCsv::DiagnosticsCsv(const std::string& path, bool with_deviation)
    : path_(path), with_deviation_(with_deviation) {
  const std::string partial = path_ + ".partial";
  f_ = std::fopen(partial.c_str(), "wb");
  if (!f_) fail(errc::io_error, "cannot open '" + partial + "' for writing");
  std::fputs("# cvples-diagnostics v1\n", f_);
  std::fputs("step,t,dt,E,eps_sgs,mean_f,min_sigma,max_sigma,max_mut,min_rho,max_div", f_);
  if (with_deviation_) std::fputs(",d", f_);
  std::fputc('\n', f_);
}

DiagnosticsCsv::~DiagnosticsCsv() {
  if (f_) {
    std::fclose(f_);
    f_ = nullptr;
  }
}

void DiagnosticsCsv::write_row(const DiagnosticsRecord& r) {
  if (!f_) fail(errc::io_error, "diagnostics CSV already finalized");
  std::fprintf(f_,
               "%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g",
               r.step, r.t, r.dt, r.e, r.eps_sgs, r.mean_f, r.min_sigma, r.max_sigma, r.max_mut,
               r.min_rho, r.max_div);
  if (with_deviation_) std::fprintf(f_, ",%.17g", r.d_dev);
  std::fputc('\n', f_);
}

void DiagnosticsCsv::finalize() {
  if (!f_) return;
  if (std::fflush(f_) != 0) fail(errc::io_error, "cannot flush diagnostics CSV");
  std::fclose(f_);
  f_ = nullptr;
  rename_into_place(path_ + ".partial", path_);
}

void write_spectrum(const EnergySpectrum& spec, double time, const std::string& path) {
  const std::string partial = path + ".partial";
  FilePtr f(std::fopen(partial.c_str(), "wb"));
  if (!f) fail(errc::io_error, "cannot open '" + partial + "' for writing");
  std::fprintf(f.get(), "# cvples-spectrum v1 t=%.17g\n", time);
  for (std::size_t s = 0; s < spec.k.size(); ++s)
    std::fprintf(f.get(), "%.17g %.17g\n", spec.k[s], spec.e[s]);
  if (std::fflush(f.get()) != 0) fail(errc::io_error, "cannot flush '" + partial + "'");
  f.reset();
  rename_into_place(partial, path);
}

}  // namespace cvples
