#pragma once

#include <stdexcept>
#include <string>

namespace cvples {

/// Error kinds carried by every cvples exception. The coarse groups map onto
/// the C API status codes (config / blow-up / runtime).
enum class errc {
  invalid_argument,
  axis_too_small,
  bad_alpha,
  zero_pivot,
  domain_error,
  non_positive_density,
  non_positive_pressure,
  anisotropic_grid,
  degenerate_denominator,
  degenerate_fit,
  too_few_samples,
  non_cubic_grid,
  quadrature_not_converged,
  domain_mismatch,
  unknown_key,
  bad_value,
  missing_required,
  bad_magic,
  version_mismatch,
  dimension_mismatch,
  truncated_file,
  solver_blow_up,
  io_error,
};

class Error : public std::runtime_error {
 public:
  Error(errc kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  errc kind() const noexcept { return kind_; }

 private:
  errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace cvples
