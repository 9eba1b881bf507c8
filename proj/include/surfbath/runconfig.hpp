#pragma once

#include <complex>
#include <set>
#include <string>
#include <vector>

#include "surfbath/bath.hpp"

namespace surfbath {

struct LatticeConfig {
  int n = 3;
  int m = 3;
  double spacing = 1.0;
};

// Exactly one of the two coupling sources is active.
struct ModelConfig {
  bool use_bath = false;
  std::complex<double> j_nn{-1.0, 0.0};  // ferromagnetic by default
  BathParams bath;
};

struct SweepConfig {
  double beta_min = 0.0;
  double beta_max = 0.5;
  int points = 51;
};

struct CamConfig {
  std::vector<int> sizes{2, 3, 4};
  bool connected = false;
};

struct GridConfig {
  double lo = 0.0;
  double hi = 1.0;
  int points = 51;
};

struct RunConfig {
  LatticeConfig lattice;
  ModelConfig model;
  SweepConfig sweep;
  CamConfig cam;
  GridConfig correlators{0.25, 3.0, 12};  // separations, units of spacing
  GridConfig pmap{0.0, 1.0, 51};          // inverse temperatures
  std::set<std::string> sections;         // top-level keys actually present
  std::string source;                     // file path, or "" for defaults
};

// Parses and validates a JSON configuration file.  Unknown keys anywhere are
// rejected with their full path; "model" must contain exactly one of
// "nn"/"bath"; numeric domains are checked.  Throws config_error.
RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& source);

// Throws config_error if the configuration carries a section that the
// current subcommand does not consume.
void require_sections(const RunConfig& cfg,
                      const std::set<std::string>& consumed);

// Evenly spaced grid with `points` entries from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, int points);

}  // namespace surfbath
