#include "quasispec/sweep/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "quasispec/quasispec.hpp"

namespace quasispec::sweep {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

QuasienergySolution solve_qubit(double eps0, double delta, double amp, const SweepConfig& c) {
  const AtomicHamiltonian h = qubit_hamiltonian(eps0, delta, amp);
  const TruncationSpec trunc =
      c.trunc > 0 ? TruncationSpec::fixed(c.trunc) : TruncationSpec::automatic(h, 1.0, c.tol);
  return solve_quasienergies(h, 1.0, trunc);
}

// Second-order analytic gap at the nearest resonance n, NaN where the
// perturbative expression is undefined. The folded splitting is the gap
// itself for odd n and hw minus the gap for even n.
double analytic_gap_or_nan(const QubitParams& p) {
  try {
    const int n = nearest_resonance(p);
    const double gap = analytic_quasienergy_gap(p, n);
    return n % 2 == 0 ? 1.0 - gap : gap;
  } catch (const Error&) {
    return kNaN;
  }
}

TwoModeTruncation two_mode_truncation(const SweepConfig& c, double amp) {
  TwoModeTruncation t;
  t.n2_cutoff = c.n2_cutoff;
  t.n1_cutoff = c.trunc > 0 ? c.trunc
                            : initial_cutoff(qubit_hamiltonian(0.0, c.delta, amp), 1.0) + 8;
  t.convergence_tol = c.tol;
  return t;
}

// Single-mode quasienergies shifted by m omega_P and folded into [-0.5, 0.5).
std::vector<double> single_mode_lattice(const QuasienergySolution& sol, double omega_p, int n2) {
  std::vector<double> levels;
  for (const auto& s : sol.states) {
    for (int m = -n2; m <= n2; ++m) {
      levels.push_back(fold_to_zone(s.quasienergy + m * omega_p + 0.5, 1.0) - 0.5);
    }
  }
  std::sort(levels.begin(), levels.end());
  return levels;
}

std::optional<double> right_branch_root(const QubitParams& p, double level, int n) {
  constexpr int kPieces = 25;
  const double width = 0.5 / kPieces;
  for (int i = 0; i < kPieces; ++i) {
    const double lo = n + i * width;
    if (auto root = gap_contour_eps0(p, level, lo, lo + width)) return root;
  }
  return std::nullopt;
}

struct GridIndex {
  std::vector<double> eps0;
  std::vector<double> amp;
  std::size_t outer(std::size_t i) const { return i / amp.size(); }
  std::size_t inner(std::size_t i) const { return i % amp.size(); }
};

}  // namespace

double SweepReport::failure_fraction() const {
  return points == 0 ? 0.0 : static_cast<double>(failures.size()) / static_cast<double>(points);
}

bool SweepReport::failed() const { return failure_fraction() > 0.01; }

SweepPlan make_plan(const SweepConfig& config) {
  config.validate();
  const auto c = std::make_shared<const SweepConfig>(config);
  const auto grid = std::make_shared<const GridIndex>(GridIndex{c->eps0.values(), c->amp.values()});
  SweepPlan plan;
  plan.points = grid->eps0.size() * grid->amp.size();
  plan.key = [grid](std::size_t i) {
    return std::vector<double>{grid->eps0[grid->outer(i)], grid->amp[grid->inner(i)]};
  };

  double kappa = 0.0;
  double beta = 0.0;
  if (c->needs_bath()) {
    beta = c->resolved_beta();
    kappa = calibrate_kappa(c->target_gamma, resonant_reference(c->delta), beta);
  }
  const BathParams bath{kappa, beta};
  LindbladSpec oracle;
  oracle.t2 = 1.0 / c->target_gamma;
  oracle.t1 = 2.0 / c->target_gamma;
  oracle.beta = beta;
  oracle.amp_p = c->amp_p;

  switch (c->mode) {
    case Mode::Landscape:
      plan.columns = {"eps0_over_hw", "A_over_hw", "value", "analytic"};
      plan.evaluate = [c, grid](std::size_t i) -> std::vector<Row> {
        const double e = grid->eps0[grid->outer(i)];
        const double a = grid->amp[grid->inner(i)];
        const double gap = quasienergy_gap(solve_qubit(e, c->delta, a, *c));
        return {{e, a, gap, analytic_gap_or_nan({e, c->delta, a})}};
      };
      break;

    case Mode::Absorption:
      plan.columns = {"eps0_over_hw", "A_over_hw", "value", "gap", "gamma"};
      if (c->oracle_column) plan.columns.push_back("oracle");
      plan.evaluate = [c, grid, bath, oracle](std::size_t i) -> std::vector<Row> {
        const double e = grid->eps0[grid->outer(i)];
        const double a = grid->amp[grid->inner(i)];
        const QuasienergySolution sol = solve_qubit(e, c->delta, a, *c);
        const RateSet rates = gamma_and_populations(x_elements(sol), qubit_quasienergies(sol), bath);
        ProbeSpec probe;
        probe.amp_p = c->amp_p;
        probe.omega_p = c->omega_p;
        Row row{e, a, golden_rule_rate(sol, rates, probe), quasienergy_gap(sol), rates.gamma};
        if (c->oracle_column) {
          row.push_back(lindblad_sigma_z_spectrum({e, c->delta, a}, {c->omega_p}, oracle).values[0]);
        }
        return {row};
      };
      break;

    case Mode::Line: {
      const auto freqs = std::make_shared<const std::vector<double>>(c->omega_p_axis.values());
      plan.columns = {"eps0_over_hw", "A_over_hw", "omega_p_over_omega", "value"};
      if (c->oracle_column) plan.columns.push_back("oracle");
      plan.key_width = 3;
      plan.points *= freqs->size();
      const std::size_t nf = freqs->size();
      plan.key = [grid, freqs, nf](std::size_t i) {
        const std::size_t g = i / nf;
        return std::vector<double>{grid->eps0[grid->outer(g)], grid->amp[grid->inner(g)],
                                   (*freqs)[i % nf]};
      };
      plan.evaluate = [c, grid, freqs, nf, bath, oracle](std::size_t i) -> std::vector<Row> {
        const std::size_t g = i / nf;
        const double e = grid->eps0[grid->outer(g)];
        const double a = grid->amp[grid->inner(g)];
        const double w = (*freqs)[i % nf];
        const QuasienergySolution sol = solve_qubit(e, c->delta, a, *c);
        const RateSet rates = gamma_and_populations(x_elements(sol), qubit_quasienergies(sol), bath);
        ProbeSpec probe;
        probe.amp_p = c->amp_p;
        probe.omega_p = w;
        Row row{e, a, w, golden_rule_rate(sol, rates, probe)};
        if (c->oracle_column) {
          row.push_back(lindblad_sigma_z_spectrum({e, c->delta, a}, {w}, oracle).values[0]);
        }
        return {row};
      };
      break;
    }

    case Mode::TwoMode:
      plan.columns = {"eps0_over_hw", "A_over_hw", "value"};
      plan.evaluate = [c, grid](std::size_t i) -> std::vector<Row> {
        const double e = grid->eps0[grid->outer(i)];
        const double a = grid->amp[grid->inner(i)];
        const double sep = anticrossing_separation({e, c->delta, a}, c->amp_p, c->omega_p,
                                                   two_mode_truncation(*c, a), c->probe_photons);
        return {{e, a, sep}};
      };
      break;

    case Mode::Levels:
      plan.columns = {"eps0_over_hw", "A_over_hw", "value", "amp_p"};
      plan.evaluate = [c, grid](std::size_t i) -> std::vector<Row> {
        const double e = grid->eps0[grid->outer(i)];
        const double a = grid->amp[grid->inner(i)];
        std::vector<Row> rows;
        for (double ap : c->amp_p_list) {
          std::vector<double> levels;
          if (ap == 0.0) {
            levels = single_mode_lattice(solve_qubit(e, c->delta, a, *c), c->omega_p, c->n2_cutoff);
          } else {
            levels = solve_two_mode(qubit_hamiltonian(e, c->delta, a), 1.0,
                                    qubit_probe_coupling(ap, c->omega_p),
                                    two_mode_truncation(*c, a))
                         .levels;
          }
          for (double l : levels) rows.push_back({e, a, l, ap});
        }
        return rows;
      };
      break;

    case Mode::Contour: {
      // One point per drive amplitude; eps0 is located on each contour.
      plan.columns = {"A_over_hw", "eps0_over_hw", "value", "analytic", "order", "level"};
      plan.key_width = 1;
      plan.points = grid->amp.size();
      plan.key = [grid](std::size_t i) { return std::vector<double>{grid->amp[i]}; };
      plan.evaluate = [c, grid](std::size_t i) -> std::vector<Row> {
        const double a = grid->amp[i];
        std::vector<Row> rows;
        for (int n = 1; n <= c->max_order; ++n) {
          const double coupling = c->delta * std::abs(bessel_j(n, a));
          for (double level : c->contour_levels) {
            // Odd resonances reach small splittings, even ones splittings near hw.
            const bool reachable = (n % 2 == 1) == (level < 0.5);
            const double target = std::min(level, 1.0 - level);
            const double analytic = reachable && coupling < target
                                        ? (coupling / target) * (coupling / target)
                                        : kNaN;
            double eps0 = kNaN;
            double numeric = kNaN;
            if (auto root = right_branch_root({0.0, c->delta, a}, level, n)) {
              eps0 = *root;
              ProbeSpec probe;
              // The probe resonates at the small splitting, hw - level on even orders.
              numeric = resonant_transition_strength(solve_qubit(eps0, c->delta, a, *c), probe,
                                                     target);
            }
            rows.push_back({a, eps0, numeric, analytic, static_cast<double>(n), level});
          }
        }
        return rows;
      };
      break;
    }
  }
  return plan;
}

void execute_plan(const SweepPlan& plan, int workers, std::size_t first_point,
                  const std::function<void(std::size_t, const std::vector<Row>&)>& sink,
                  std::vector<FailedPoint>& failures) {
  if (first_point >= plan.points) return;
  struct Outcome {
    std::vector<Row> rows;
    std::string error;
    bool ok = true;
  };

  std::mutex mutex;
  std::condition_variable ready;
  std::map<std::size_t, Outcome> finished;
  std::atomic<std::size_t> next{first_point};

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= plan.points) return;
      Outcome out;
      try {
        out.rows = plan.evaluate(i);
      } catch (const std::exception& e) {
        out.ok = false;
        out.error = e.what();
      }
      {
        std::lock_guard lock(mutex);
        finished.emplace(i, std::move(out));
      }
      ready.notify_one();
    }
  };

  const int n_threads =
      std::max(1, std::min<int>(workers, static_cast<int>(plan.points - first_point)));
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(work);

  // The calling thread is the single writer and emits points in index order.
  for (std::size_t i = first_point; i < plan.points; ++i) {
    Outcome out;
    {
      std::unique_lock lock(mutex);
      ready.wait(lock, [&] { return finished.count(i) != 0; });
      out = std::move(finished.at(i));
      finished.erase(i);
    }
    if (!out.ok) {
      std::vector<double> key = plan.key(i);
      Row row = key;
      row.resize(plan.columns.size(), kNaN);
      out.rows = {row};
      failures.push_back({i, std::move(key), out.error});
    }
    sink(i, out.rows);
  }
}

namespace {

std::string key_text(const std::vector<double>& key) {
  std::string text;
  for (std::size_t k = 0; k < key.size(); ++k) {
    if (k) text += ',';
    text += format_double(key[k]);
  }
  return text;
}

std::string key_prefix(const std::string& line, std::size_t width) {
  std::size_t pos = 0;
  for (std::size_t k = 0; k < width; ++k) {
    pos = line.find(',', pos);
    if (pos == std::string::npos) return line;
    if (k + 1 < width) ++pos;
  }
  return line.substr(0, pos);
}

// Number of complete points already present in `text` after the header and
// the byte offset where they end. The last point found is always dropped
// because its rows may have been cut off.
std::pair<std::size_t, std::size_t> completed_prefix(const std::string& text, std::size_t header,
                                                     const SweepPlan& plan,
                                                     const std::filesystem::path& path) {
  std::vector<std::size_t> group_start;
  std::string current;
  std::size_t pos = header;
  while (pos < text.size()) {
    const std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) break;  // partial line
    const std::string key = key_prefix(text.substr(pos, end - pos), plan.key_width);
    if (group_start.empty() || key != current) {
      const std::size_t g = group_start.size();
      if (g >= plan.points || key != key_text(plan.key(g))) {
        throw ConfigInvalid("out: " + path.string() +
                            " does not hold a prefix of this sweep; remove it or choose another path");
      }
      group_start.push_back(pos);
      current = key;
    }
    pos = end + 1;
  }
  if (group_start.empty()) return {0, header};
  return {group_start.size() - 1, group_start.back()};
}

}  // namespace

SweepReport run_sweep(const SweepConfig& config, std::ostream* log) {
  const SweepPlan plan = make_plan(config);
  if (config.out.empty()) throw ConfigInvalid("out: an output path is required");

  SweepReport report;
  report.points = plan.points;
  report.out = config.out;
  const int workers = config.resolved_workers();
  const auto metadata = config.metadata();

  if (config.format == Format::Json) {
    SpectrumDataset data{metadata, plan.columns, {}};
    execute_plan(plan, workers, 0,
                 [&](std::size_t, const std::vector<Row>& rows) {
                   data.rows.insert(data.rows.end(), rows.begin(), rows.end());
                 },
                 report.failures);
    std::ofstream out(config.out, std::ios::trunc);
    if (!out) throw ConfigInvalid("out: cannot write " + config.out.string());
    write_json(data, out);
    report.computed = plan.points;
  } else {
    const std::string header = csv_header(metadata, plan.columns);
    std::size_t first = 0;
    std::error_code ec;
    if (std::filesystem::exists(config.out, ec) && std::filesystem::file_size(config.out, ec) > 0) {
      std::ifstream in(config.out, std::ios::binary);
      std::ostringstream buffer;
      buffer << in.rdbuf();
      const std::string text = buffer.str();
      if (text.compare(0, header.size(), header) != 0) {
        throw ConfigInvalid("out: " + config.out.string() +
                            " was written by a different sweep; remove it or choose another path");
      }
      const auto [done, offset] = completed_prefix(text, header.size(), plan, config.out);
      first = done;
      std::filesystem::resize_file(config.out, offset);
    } else {
      std::ofstream out(config.out, std::ios::trunc | std::ios::binary);
      if (!out) throw ConfigInvalid("out: cannot write " + config.out.string());
      out << header;
    }
    report.resumed = first;
    std::ofstream out(config.out, std::ios::app | std::ios::binary);
    if (!out) throw ConfigInvalid("out: cannot write " + config.out.string());
    const std::size_t stride = std::max<std::size_t>(1, plan.points / 20);
    execute_plan(plan, workers, first,
                 [&](std::size_t i, const std::vector<Row>& rows) {
                   for (const Row& row : rows) out << format_row(row);
                   out.flush();
                   if (log && (i + 1) % stride == 0) {
                     *log << "  " << (i + 1) << "/" << plan.points << " points\n";
                   }
                 },
                 report.failures);
    report.computed = plan.points - first;
  }

  if (log) {
    *log << "wrote " << config.out.string() << ": " << report.computed << " points computed";
    if (report.resumed) *log << ", " << report.resumed << " resumed";
    *log << ", " << report.failures.size() << " failed\n";
    for (const auto& f : report.failures) {
      *log << "  point " << f.index << " (" << key_text(f.key) << "): " << f.message << "\n";
    }
  }
  return report;
}

SpectrumDataset evaluate_sweep(const SweepConfig& config, std::vector<FailedPoint>* failures) {
  const SweepPlan plan = make_plan(config);
  SpectrumDataset data{config.metadata(), plan.columns, {}};
  std::vector<FailedPoint> local;
  execute_plan(plan, config.resolved_workers(), 0,
               [&](std::size_t, const std::vector<Row>& rows) {
                 data.rows.insert(data.rows.end(), rows.begin(), rows.end());
               },
               failures ? *failures : local);
  return data;
}

}  // namespace quasispec::sweep
