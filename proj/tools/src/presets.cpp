#include "quasispec/sweep/presets.hpp"

#include "quasispec/errors.hpp"

namespace quasispec::sweep {

namespace {

// Panels (a)-(d) of the landscape and absorption maps share these tunneling
// amplitudes.
constexpr double kPanelDelta[] = {0.10, 0.37, 0.84, 1.50};

SweepConfig plane(Mode mode, double delta, int count) {
  SweepConfig c;
  c.mode = mode;
  c.delta = delta;
  c.eps0 = {0.0, 6.0, count};
  c.amp = {0.0, 6.0, count};
  return c;
}

SweepConfig absorption_map(double delta) {
  SweepConfig c = plane(Mode::Absorption, delta, 201);
  c.omega_p = 0.092;
  c.target_gamma = 0.016;
  c.beta = 2.24;
  return c;
}

}  // namespace

std::vector<std::string> preset_ids() {
  return {"fig2",  "fig3a", "fig3b", "fig3c", "fig3d", "fig4a", "fig4b", "fig4c",
          "fig4d", "fig5",  "fig6",  "fig7",  "fig8a", "fig8b", "fig8c"};
}

SweepConfig preset(const std::string& id) {
  SweepConfig c;
  if (id == "fig2") {
    c.mode = Mode::Contour;
    c.delta = 0.37;
    c.eps0 = GridAxis::single(0.0);
    c.amp = {0.0, 6.0, 121};
    c.contour_levels = {0.092, 0.918};
    c.max_order = 5;
  } else if (id.size() == 5 && id.rfind("fig3", 0) == 0 && id[4] >= 'a' && id[4] <= 'd') {
    c = plane(Mode::Landscape, kPanelDelta[id[4] - 'a'], 241);
  } else if (id.size() == 5 && id.rfind("fig4", 0) == 0 && id[4] >= 'a' && id[4] <= 'd') {
    c = absorption_map(kPanelDelta[id[4] - 'a']);
  } else if (id == "fig5") {
    // Vertical cut through the 0.37 absorption map, with the master-equation
    // spectrum alongside.
    c = absorption_map(0.37);
    c.eps0 = GridAxis::single(1.05);
    c.amp = {0.0, 6.0, 301};
    c.oracle_column = true;
  } else if (id == "fig6") {
    c = absorption_map(0.37);
    c.beta.reset();
    c.physical = PhysicalUnits{7.0, 150.0};
    c.target_gamma = 0.045;
  } else if (id == "fig7") {
    c = absorption_map(0.84);
    c.beta.reset();
    c.physical = PhysicalUnits{4.15, 70.0};
    c.omega_p = 0.005;
    c.target_gamma = 0.17;
  } else if (id == "fig8a") {
    c = plane(Mode::TwoMode, 0.37, 81);
    c.omega_p = 0.10;
    c.amp_p = 0.20;
    c.n2_cutoff = 4;
  } else if (id == "fig8b" || id == "fig8c") {
    c.mode = Mode::Levels;
    c.delta = 0.37;
    c.omega_p = 0.10;
    c.amp = GridAxis::single(5.6);
    c.n2_cutoff = 4;
    if (id == "fig8b") {
      c.eps0 = {0.0, 6.0, 301};
      c.amp_p_list = {0.0, 0.20};
    } else {
      c.eps0 = {2.0, 2.3, 121};
      c.amp_p_list = {0.0, 0.20, 0.40};
    }
  } else {
    throw ConfigInvalid("preset: unknown id '" + id + "'");
  }
  c.preset = id;
  return c;
}

}  // namespace quasispec::sweep
