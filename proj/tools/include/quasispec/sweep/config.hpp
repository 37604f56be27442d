#pragma once

// Sweep configuration shared by the CLI subcommands and the presets.
// All parameters are dimensionless (energies in hw, frequencies in omega);
// the physical block only feeds the inverse temperature.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace quasispec::sweep {

enum class Mode {
  Landscape,   // numerical gap plus the analytic second-order gap
  Absorption,  // golden-rule rate over the (eps0, A) plane
  Line,        // golden-rule rate along a probe-frequency line
  TwoMode,     // two-mode anti-crossing separation over the (eps0, A) plane
  Contour,     // |F_fi|^2 along gap contours, one point per drive amplitude
  Levels,      // two-mode levels along eps0 for a list of probe amplitudes
};

enum class Format { Csv, Json };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& text);
std::string to_string(Format format);
Format format_from_string(const std::string& text);

/// Uniform grid min..max with `count` points. A single point (count 1)
/// needs min == max.
struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  int count = 1;

  /// Parses "min:max:count" or a bare value. Throws ConfigInvalid naming
  /// `field` on malformed input.
  static GridAxis parse(const std::string& text, const std::string& field);
  static GridAxis single(double value) { return {value, value, 1}; }

  bool swept() const { return count > 1; }
  std::vector<double> values() const;
  void validate(const std::string& field) const;
};

/// Physical drive frequency and temperature.
struct PhysicalUnits {
  double freq_ghz = 0.0;  // omega / 2 pi
  double temp_mk = 0.0;
};

struct DimensionlessUnits {
  double beta = 0.0;  // hw / kT
};

/// k_B / h in GHz per kelvin.
inline constexpr double kBoltzmannOverPlanckGHzPerK = 20.8366;

/// beta = f / (20.8366 GHz/K * T). An infinite temperature gives beta = 0.
/// Throws NonPositiveFrequency for f <= 0 and ConfigInvalid for T <= 0.
DimensionlessUnits convert_units(const PhysicalUnits& physical);

struct SweepConfig {
  Mode mode = Mode::Landscape;
  std::string preset;  // empty for ad hoc runs

  double delta = 0.37;
  GridAxis eps0{0.0, 6.0, 61};
  GridAxis amp{0.0, 6.0, 61};
  GridAxis omega_p_axis{0.01, 0.5, 50};  // Line mode only

  double omega_p = 0.092;
  double amp_p = 1.0;
  double target_gamma = 0.016;
  std::optional<double> beta;
  std::optional<PhysicalUnits> physical;

  int trunc = 0;  // photon cutoff, 0 selects adaptive truncation
  double tol = 1e-10;

  // Two-mode settings.
  int n2_cutoff = 4;
  int probe_photons = 1;
  std::vector<double> amp_p_list;  // Levels mode; 0 means the single-mode lattice

  // Contour settings.
  std::vector<double> contour_levels{0.092, 0.918};
  int max_order = 5;

  bool oracle_column = false;  // Absorption and Line: add the master-equation spectrum

  std::filesystem::path out;
  Format format = Format::Csv;
  int workers = 0;  // 0 selects the hardware concurrency

  /// Throws ConfigInvalid with the offending field name.
  void validate() const;

  /// Inverse temperature from whichever block is present. Throws
  /// ConfigInvalid when a bath is needed and neither or both are given.
  double resolved_beta() const;
  bool needs_bath() const;
  int resolved_workers() const;

  /// Everything that determines the payload (no paths, worker counts or
  /// timestamps), in a fixed key order.
  nlohmann::ordered_json metadata() const;
};

}  // namespace quasispec::sweep
