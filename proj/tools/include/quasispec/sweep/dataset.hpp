#pragma once

// Tabular sweep output. CSV files start with one "# {json}" metadata line,
// then a header line and one row per record. Doubles are written in the
// shortest form that round-trips, so the bytes depend only on the values.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace quasispec::sweep {

using Row = std::vector<double>;

struct SpectrumDataset {
  nlohmann::ordered_json metadata;
  std::vector<std::string> columns;
  std::vector<Row> rows;

  /// Index of a column by name; throws ConfigInvalid when it is absent.
  std::size_t column(const std::string& name) const;
};

/// Shortest round-trip text of a double; "nan", "inf" and "-inf" for the
/// non-finite values.
std::string format_double(double value);
double parse_double(const std::string& text);

std::string format_row(const Row& row);
std::string csv_header(const nlohmann::ordered_json& metadata,
                       const std::vector<std::string>& columns);

void write_csv(const SpectrumDataset& data, std::ostream& out);
void write_json(const SpectrumDataset& data, std::ostream& out);

/// Reads either format, detected from the first character.
SpectrumDataset read_dataset(const std::filesystem::path& path);

}  // namespace quasispec::sweep
