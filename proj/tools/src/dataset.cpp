#include "quasispec/sweep/dataset.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "quasispec/errors.hpp"

namespace quasispec::sweep {

std::size_t SpectrumDataset::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw ConfigInvalid("dataset has no column '" + name + "'");
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

double parse_double(const std::string& text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double value = 0.0;
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), last, value);
  if (ec != std::errc() || ptr != last) {
    throw ConfigInvalid("malformed number '" + text + "' in dataset");
  }
  return value;
}

std::string format_row(const Row& row) {
  std::string line;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) line += ',';
    line += format_double(row[i]);
  }
  line += '\n';
  return line;
}

std::string csv_header(const nlohmann::ordered_json& metadata,
                       const std::vector<std::string>& columns) {
  std::string text = "# " + metadata.dump() + "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) text += ',';
    text += columns[i];
  }
  text += '\n';
  return text;
}

void write_csv(const SpectrumDataset& data, std::ostream& out) {
  out << csv_header(data.metadata, data.columns);
  for (const Row& row : data.rows) out << format_row(row);
}

void write_json(const SpectrumDataset& data, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["metadata"] = data.metadata;
  doc["columns"] = data.columns;
  nlohmann::ordered_json arrays = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < data.columns.size(); ++c) {
    nlohmann::ordered_json values = nlohmann::ordered_json::array();
    for (const Row& row : data.rows) {
      // JSON has no NaN; missing values become null.
      if (std::isfinite(row[c])) {
        values.push_back(row[c]);
      } else {
        values.push_back(nullptr);
      }
    }
    arrays[data.columns[c]] = std::move(values);
  }
  doc["data"] = std::move(arrays);
  out << doc.dump(1) << '\n';
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

SpectrumDataset read_json(std::istream& in) {
  const auto doc = nlohmann::ordered_json::parse(in);
  SpectrumDataset data;
  data.metadata = doc.at("metadata");
  data.columns = doc.at("columns").get<std::vector<std::string>>();
  const auto& arrays = doc.at("data");
  const std::size_t n = data.columns.empty() ? 0 : arrays.at(data.columns[0]).size();
  data.rows.assign(n, Row(data.columns.size()));
  for (std::size_t c = 0; c < data.columns.size(); ++c) {
    const auto& values = arrays.at(data.columns[c]);
    for (std::size_t r = 0; r < n; ++r) {
      data.rows[r][c] = values[r].is_null() ? std::numeric_limits<double>::quiet_NaN()
                                            : values[r].get<double>();
    }
  }
  return data;
}

}  // namespace

SpectrumDataset read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open dataset " + path.string());
  if (in.peek() == '{') return read_json(in);

  SpectrumDataset data;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
    throw ConfigInvalid(path.string() + ": missing '# ' metadata line");
  }
  data.metadata = nlohmann::ordered_json::parse(line.substr(2));
  if (!std::getline(in, line)) throw ConfigInvalid(path.string() + ": missing column header");
  data.columns = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != data.columns.size()) {
      throw ConfigInvalid(path.string() + ": row with " + std::to_string(fields.size()) +
                          " fields, expected " + std::to_string(data.columns.size()));
    }
    Row row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_double(f));
    data.rows.push_back(std::move(row));
  }
  return data;
}

}  // namespace quasispec::sweep
