#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace smallf {

using Json = nlohmann::ordered_json;

enum class Provenance { Exact, Float };

/// Header cell "name [unit; exact|float]".
struct Column {
  std::string name;
  std::string unit;
  Provenance provenance = Provenance::Exact;

  std::string header() const;
};

/// Row-major table rendered as RFC-4180 CSV or as a JSON array of objects.
class Table {
 public:
  explicit Table(std::vector<Column> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<std::string> cells);
  std::size_t size() const { return rows_.size(); }
  const std::vector<Column>& columns() const { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  std::string csv() const;
  /// Cells stay strings so exact values (p/q, surds, towers) survive intact.
  Json json() const;

 private:
  std::vector<Column> columns_;
  std::vector<std::vector<std::string>> rows_;
};

/// Quotes a CSV field when it holds a comma, quote, CR or LF.
std::string csv_escape(const std::string& field);

/// Serialized JSON with two-space indent and a trailing newline.
std::string dump(const Json& j);

/// Writes via a sibling temporary and rename, so readers never see a partial file.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace smallf
