// quasispec command line front end. Exit codes: 0 success, 2 configuration
// error, 3 numerical failure, 4 verification failure.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "quasispec/errors.hpp"
#include "quasispec/sweep/config.hpp"
#include "quasispec/sweep/presets.hpp"
#include "quasispec/sweep/runner.hpp"
#include "quasispec/sweep/verify.hpp"

namespace {

using namespace quasispec::sweep;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitVerify = 4;

// Raw flag values; only flags given on the command line override the
// starting configuration.
struct SweepFlags {
  std::string eps0, amp, omega_p, trunc, format, out;
  double delta = 0, amp_p = 0, target_gamma = 0, beta = 0, freq_ghz = 0, temp_mk = 0, tol = 0;
  int workers = 0, n2 = 0, probe_photons = 0;
  bool oracle = false;
  CLI::App* app = nullptr;

  bool given(const std::string& name) const { return app->count(name) > 0; }
};

void add_sweep_flags(CLI::App* app, SweepFlags& f, bool line_axis, bool two_mode, bool oracle) {
  f.app = app;
  app->add_option("--eps0", f.eps0, "eps0/hw grid as min:max:count, or one value");
  app->add_option("--amp", f.amp, "A/hw grid as min:max:count, or one value");
  app->add_option("--delta", f.delta, "tunneling amplitude Delta/hw");
  app->add_option("--omega-p", f.omega_p,
                  line_axis ? "probe frequency grid omega_P/omega as min:max:count"
                            : "probe frequency omega_P/omega");
  app->add_option("--amp-p", f.amp_p, "probe amplitude A_P/hw");
  app->add_option("--trunc", f.trunc, "photon cutoff N, or auto");
  app->add_option("--tol", f.tol, "quasienergy convergence tolerance (units of hw)");
  app->add_option("--out", f.out, "output path")->required();
  app->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--workers", f.workers, "worker threads (default: hardware concurrency)");
  if (!two_mode) {
    app->add_option("--target-gamma", f.target_gamma, "dephasing rate gamma/omega at the reference point");
    auto* beta = app->add_option("--beta", f.beta, "inverse temperature hw/kT");
    auto* freq = app->add_option("--freq-ghz", f.freq_ghz, "drive frequency omega/2pi in GHz");
    auto* temp = app->add_option("--temp-mk", f.temp_mk, "temperature in mK");
    beta->excludes(freq)->excludes(temp);
    freq->needs(temp);
    temp->needs(freq);
  } else {
    app->add_option("--n2", f.n2, "probe-mode cutoff N2");
    app->add_option("--probe-photons", f.probe_photons, "probe photons k at the anti-crossing");
  }
  if (oracle) app->add_flag("--oracle", f.oracle, "add the master-equation spectrum column");
}

void apply(const SweepFlags& f, SweepConfig& c) {
  if (f.given("--eps0")) c.eps0 = GridAxis::parse(f.eps0, "eps0");
  if (f.given("--amp")) c.amp = GridAxis::parse(f.amp, "amp");
  if (f.given("--delta")) c.delta = f.delta;
  if (f.given("--omega-p")) {
    if (c.mode == Mode::Line) {
      c.omega_p_axis = GridAxis::parse(f.omega_p, "omega_p");
    } else {
      c.omega_p = GridAxis::parse(f.omega_p, "omega_p").min;
      if (GridAxis::parse(f.omega_p, "omega_p").swept()) {
        throw quasispec::ConfigInvalid("omega_p: this subcommand takes a single probe frequency");
      }
    }
  }
  if (f.given("--amp-p")) c.amp_p = f.amp_p;
  if (f.given("--trunc")) {
    if (f.trunc == "auto") {
      c.trunc = 0;
    } else {
      try {
        c.trunc = std::stoi(f.trunc);
      } catch (const std::exception&) {
        throw quasispec::ConfigInvalid("trunc: expected a cutoff or auto, got '" + f.trunc + "'");
      }
      if (c.trunc < 1) throw quasispec::ConfigInvalid("trunc must be >= 1");
    }
  }
  if (f.given("--tol")) c.tol = f.tol;
  c.out = f.out;
  if (f.given("--format")) c.format = format_from_string(f.format);
  if (f.given("--workers")) {
    if (f.workers < 1) throw quasispec::ConfigInvalid("workers must be >= 1");
    c.workers = f.workers;
  }
  if (f.app->get_option_no_throw("--target-gamma") && f.given("--target-gamma")) {
    c.target_gamma = f.target_gamma;
  }
  if (f.app->get_option_no_throw("--beta") && f.given("--beta")) {
    c.beta = f.beta;
    c.physical.reset();
  }
  if (f.app->get_option_no_throw("--freq-ghz") && f.given("--freq-ghz")) {
    c.physical = PhysicalUnits{f.freq_ghz, f.temp_mk};
    c.beta.reset();
  }
  if (f.app->get_option_no_throw("--n2") && f.given("--n2")) c.n2_cutoff = f.n2;
  if (f.app->get_option_no_throw("--probe-photons") && f.given("--probe-photons")) {
    c.probe_photons = f.probe_photons;
  }
  if (f.app->get_option_no_throw("--oracle") && f.given("--oracle")) c.oracle_column = f.oracle;
}

int run(const SweepConfig& config) {
  const SweepReport report = run_sweep(config, &std::cerr);
  if (report.failed()) {
    std::cerr << "error: " << report.failures.size() << " of " << report.points
              << " points failed (more than 1%)\n";
    return kExitNumerical;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasienergy spectroscopy of strongly driven, weakly probed quantum systems"};
  app.require_subcommand(1);

  SweepFlags landscape_flags, absorption_flags, line_flags, twomode_flags, reproduce_flags;
  auto* landscape = app.add_subcommand("landscape", "quasienergy gap over the (eps0, A) plane");
  add_sweep_flags(landscape, landscape_flags, false, false, false);
  auto* absorption = app.add_subcommand("absorption", "golden-rule probe absorption over the (eps0, A) plane");
  add_sweep_flags(absorption, absorption_flags, false, false, true);
  auto* line = app.add_subcommand("line", "golden-rule absorption along a probe-frequency line");
  add_sweep_flags(line, line_flags, true, false, true);
  auto* twomode = app.add_subcommand("twomode", "two-mode anti-crossing separation over the (eps0, A) plane");
  add_sweep_flags(twomode, twomode_flags, false, true, false);

  std::string preset_id;
  auto* reproduce = app.add_subcommand("reproduce", "run a stored parameter set");
  reproduce->add_option("--preset", preset_id, "preset id")
      ->required()
      ->check(CLI::IsMember(preset_ids()));
  add_sweep_flags(reproduce, reproduce_flags, false, false, true);

  std::string level = "quick";
  auto* verify_cmd = app.add_subcommand("verify", "run the self-check suite");
  verify_cmd->add_option("level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*verify_cmd) {
      const auto report = verify(level == "full" ? VerifyLevel::Full : VerifyLevel::Quick,
                                 quasispec::bessel_j, &std::cout);
      std::cout << (report.passed() ? "verify: all checks passed\n" : "verify: FAILED\n");
      return report.passed() ? 0 : kExitVerify;
    }
    SweepConfig config;
    if (*landscape) {
      config.mode = Mode::Landscape;
      apply(landscape_flags, config);
    } else if (*absorption) {
      config.mode = Mode::Absorption;
      apply(absorption_flags, config);
    } else if (*line) {
      config.mode = Mode::Line;
      apply(line_flags, config);
    } else if (*twomode) {
      config.mode = Mode::TwoMode;
      config.amp_p = 0.2;
      config.omega_p = 0.1;
      apply(twomode_flags, config);
    } else {
      config = preset(preset_id);
      apply(reproduce_flags, config);
    }
    return run(config);
  } catch (const quasispec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const quasispec::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
