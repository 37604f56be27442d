#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "quasispec/sweep/config.hpp"
#include "quasispec/sweep/dataset.hpp"

namespace quasispec::sweep {

struct FailedPoint {
  std::size_t index = 0;
  std::vector<double> key;  // grid coordinates of the point
  std::string message;
};

struct SweepReport {
  std::size_t points = 0;
  std::size_t computed = 0;
  std::size_t resumed = 0;  // points taken over from an existing partial file
  std::vector<FailedPoint> failures;
  std::filesystem::path out;

  double failure_fraction() const;
  /// More than 1% of the points failed.
  bool failed() const;
};

/// Per-point work of a sweep: the column layout, the key columns that
/// identify a point, and a pure evaluation returning that point's rows.
struct SweepPlan {
  std::vector<std::string> columns;
  std::size_t key_width = 2;  // leading columns forming the point key
  std::size_t points = 0;
  std::function<std::vector<double>(std::size_t)> key;
  std::function<std::vector<Row>(std::size_t)> evaluate;
};

/// Builds the plan for a validated config. Calibrates kappa up front for
/// the bath-dependent modes.
SweepPlan make_plan(const SweepConfig& config);

/// Evaluates the plan on `workers` threads and streams the rows to `sink`
/// in point order, starting at `first_point`. Failing points produce one row
/// holding the key followed by NaNs and are appended to `failures`.
void execute_plan(const SweepPlan& plan, int workers, std::size_t first_point,
                  const std::function<void(std::size_t, const std::vector<Row>&)>& sink,
                  std::vector<FailedPoint>& failures);

/// Validates the config, evaluates every grid point and writes the dataset
/// to config.out. A CSV output that already holds a prefix of the same sweep
/// is resumed: complete points are kept and only the missing ones computed.
/// Progress and failure summaries go to `log` when it is non-null.
SweepReport run_sweep(const SweepConfig& config, std::ostream* log = nullptr);

/// In-memory variant used by tests and the acceptance checks.
SpectrumDataset evaluate_sweep(const SweepConfig& config, std::vector<FailedPoint>* failures = nullptr);

}  // namespace quasispec::sweep
