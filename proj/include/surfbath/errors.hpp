#pragma once

#include <stdexcept>
#include <string>

namespace surfbath {

// Base class for all errors raised by the library.
struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid construction input (lattice sizes, parameter domains, index ranges).
struct precondition_error : error {
  using error::error;
};

// An on-site correlator is ultraviolet divergent and needs an explicit
// momentum cutoff that was not supplied.
struct cutoff_required : error {
  using error::error;
};

// The super-Ohmic correlator is evaluated on its singular ring |d - v*delta|.
struct light_cone_singularity : error {
  using error::error;
};

// Numerical quadrature could not reach the requested tolerance.
struct quadrature_error : error {
  using error::error;
};

// Amplitude denominator vanished; fidelity is undefined at this point.
struct degenerate_amplitude : error {
  using error::error;
};

// Configuration file rejected; message carries the offending key path.
struct config_error : error {
  using error::error;
};

}  // namespace surfbath
