#include "quasispec/sweep/config.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <thread>

#include "quasispec/errors.hpp"

namespace quasispec::sweep {

namespace {

double parse_number(const std::string& text, const std::string& field) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ConfigInvalid(field + ": '" + text + "' is not a number");
  }
  return value;
}

int parse_count(const std::string& text, const std::string& field) {
  int value = 0;
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), last, value);
  if (ec != std::errc() || ptr != last) {
    throw ConfigInvalid(field + ": point count '" + text + "' is not an integer");
  }
  return value;
}

void require_finite(double value, const std::string& field) {
  if (!std::isfinite(value)) throw ConfigInvalid(field + " must be finite");
}

}  // namespace

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::Landscape: return "landscape";
    case Mode::Absorption: return "absorption";
    case Mode::Line: return "line";
    case Mode::TwoMode: return "twomode";
    case Mode::Contour: return "contour";
    case Mode::Levels: return "levels";
  }
  return "unknown";
}

Mode mode_from_string(const std::string& text) {
  for (Mode m : {Mode::Landscape, Mode::Absorption, Mode::Line, Mode::TwoMode, Mode::Contour,
                 Mode::Levels}) {
    if (to_string(m) == text) return m;
  }
  throw ConfigInvalid("mode: unknown value '" + text + "'");
}

std::string to_string(Format format) { return format == Format::Csv ? "csv" : "json"; }

Format format_from_string(const std::string& text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  throw ConfigInvalid("format: expected csv or json, got '" + text + "'");
}

GridAxis GridAxis::parse(const std::string& text, const std::string& field) {
  const auto first = text.find(':');
  if (first == std::string::npos) {
    return single(parse_number(text, field));
  }
  const auto second = text.find(':', first + 1);
  if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
    throw ConfigInvalid(field + ": expected min:max:count, got '" + text + "'");
  }
  GridAxis axis{parse_number(text.substr(0, first), field),
                parse_number(text.substr(first + 1, second - first - 1), field),
                parse_count(text.substr(second + 1), field)};
  axis.validate(field);
  return axis;
}

std::vector<double> GridAxis::values() const {
  std::vector<double> v(static_cast<std::size_t>(count));
  if (count == 1) {
    v[0] = min;
    return v;
  }
  const double step = (max - min) / (count - 1);
  for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = min + i * step;
  v.back() = max;
  return v;
}

void GridAxis::validate(const std::string& field) const {
  require_finite(min, field + ".min");
  require_finite(max, field + ".max");
  if (count < 1) throw ConfigInvalid(field + ": point count must be >= 1");
  if (count == 1 && min != max) {
    throw ConfigInvalid(field + ": a swept axis needs at least 2 points");
  }
  if (count > 1 && !(max > min)) throw ConfigInvalid(field + ": max must exceed min");
}

DimensionlessUnits convert_units(const PhysicalUnits& physical) {
  if (!(physical.freq_ghz > 0.0)) {
    throw NonPositiveFrequency("freq_ghz must be > 0");
  }
  if (!(physical.temp_mk > 0.0)) throw ConfigInvalid("temp_mk must be > 0");
  if (std::isinf(physical.temp_mk)) return {0.0};
  return {physical.freq_ghz / (kBoltzmannOverPlanckGHzPerK * physical.temp_mk * 1e-3)};
}

bool SweepConfig::needs_bath() const {
  return mode == Mode::Absorption || mode == Mode::Line;
}

double SweepConfig::resolved_beta() const {
  if (beta && physical) {
    throw ConfigInvalid("beta: give either --beta or --freq-ghz/--temp-mk, not both");
  }
  if (beta) return *beta;
  if (physical) return convert_units(*physical).beta;
  throw ConfigInvalid("beta: this mode needs --beta or --freq-ghz with --temp-mk");
}

int SweepConfig::resolved_workers() const {
  if (workers > 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void SweepConfig::validate() const {
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw ConfigInvalid("delta must be finite and >= 0");
  eps0.validate("eps0");
  amp.validate("amp");
  if (mode == Mode::Line) omega_p_axis.validate("omega_p");
  if (!(omega_p > 0.0) || !std::isfinite(omega_p)) {
    throw ConfigInvalid("omega_p must be finite and > 0");
  }
  if (mode == Mode::Line && !(omega_p_axis.min > 0.0)) {
    throw ConfigInvalid("omega_p: probe frequencies must be > 0");
  }
  if (!(amp_p >= 0.0) || !std::isfinite(amp_p)) throw ConfigInvalid("amp_p must be finite and >= 0");
  if (trunc < 0) throw ConfigInvalid("trunc must be a positive cutoff or auto");
  if (!(tol > 0.0) || !(tol < 1.0)) throw ConfigInvalid("tol must lie in (0, 1)");
  if (workers < 0) throw ConfigInvalid("workers must be >= 1");
  if (beta && physical) {
    throw ConfigInvalid("beta: give either --beta or --freq-ghz/--temp-mk, not both");
  }
  if (beta && !(*beta > 0.0)) throw ConfigInvalid("beta must be > 0");
  if (physical) convert_units(*physical);
  if (needs_bath()) {
    resolved_beta();
    if (!(target_gamma > 0.0) || !std::isfinite(target_gamma)) {
      throw ConfigInvalid("target_gamma must be finite and > 0");
    }
  }
  if (mode == Mode::TwoMode || mode == Mode::Levels) {
    if (n2_cutoff < 1) throw ConfigInvalid("n2_cutoff must be >= 1");
    if (probe_photons < 1) throw ConfigInvalid("probe_photons must be >= 1");
  }
  if (mode == Mode::Levels) {
    if (amp_p_list.empty()) throw ConfigInvalid("amp_p_list must not be empty");
    for (double a : amp_p_list) {
      if (!(a >= 0.0)) throw ConfigInvalid("amp_p_list entries must be >= 0");
    }
  }
  if (mode == Mode::Contour) {
    if (contour_levels.empty()) throw ConfigInvalid("contour_levels must not be empty");
    for (double l : contour_levels) {
      if (!(l > 0.0 && l < 1.0)) throw ConfigInvalid("contour_levels must lie in (0, 1)");
    }
    if (max_order < 1) throw ConfigInvalid("max_order must be >= 1");
  }
}

nlohmann::ordered_json SweepConfig::metadata() const {
  auto axis = [](const GridAxis& a) {
    return nlohmann::ordered_json{{"min", a.min}, {"max", a.max}, {"count", a.count}};
  };
  nlohmann::ordered_json m;
  m["format_version"] = 1;
  m["mode"] = to_string(mode);
  m["preset"] = preset;
  m["units"] = "energies in hbar*omega, frequencies in omega";
  m["delta"] = delta;
  m["eps0"] = axis(eps0);
  m["amp"] = axis(amp);
  m["trunc"] = trunc == 0 ? nlohmann::ordered_json("auto") : nlohmann::ordered_json(trunc);
  m["tol"] = tol;
  switch (mode) {
    case Mode::Landscape:
      break;
    case Mode::Line:
      m["omega_p"] = axis(omega_p_axis);
      [[fallthrough]];
    case Mode::Absorption:
      if (mode == Mode::Absorption) m["omega_p"] = omega_p;
      m["amp_p"] = amp_p;
      m["target_gamma"] = target_gamma;
      m["beta"] = resolved_beta();
      if (physical) {
        m["physical"] = {{"freq_ghz", physical->freq_ghz}, {"temp_mk", physical->temp_mk}};
      }
      m["oracle_column"] = oracle_column;
      break;
    case Mode::TwoMode:
      m["omega_p"] = omega_p;
      m["amp_p"] = amp_p;
      m["n2_cutoff"] = n2_cutoff;
      m["probe_photons"] = probe_photons;
      break;
    case Mode::Levels:
      m["omega_p"] = omega_p;
      m["amp_p_list"] = amp_p_list;
      m["n2_cutoff"] = n2_cutoff;
      break;
    case Mode::Contour:
      m["contour_levels"] = contour_levels;
      m["max_order"] = max_order;
      break;
  }
  return m;
}

}  // namespace quasispec::sweep
