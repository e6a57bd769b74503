#include "smallf/serialize.hpp"

#include <fstream>
#include <system_error>
#include <unistd.h>

#include "smallf/rational.hpp"

namespace smallf {

std::string Column::header() const {
  return name + " [" + unit + "; " + (provenance == Provenance::Exact ? "exact" : "float") + "]";
}

void Table::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size())
    throw PreconditionError("Table: row has " + std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(columns_.size()));
  rows_.push_back(std::move(cells));
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string Table::csv() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(cells[i]);
    }
    out += "\r\n";
  };
  std::vector<std::string> head;
  for (const auto& c : columns_) head.push_back(c.header());
  line(head);
  for (const auto& r : rows_) line(r);
  return out;
}

Json Table::json() const {
  Json cols = Json::array();
  for (const auto& c : columns_)
    cols.push_back({{"name", c.name}, {"unit", c.unit},
                    {"provenance", c.provenance == Provenance::Exact ? "exact" : "float"}});
  Json rows = Json::array();
  for (const auto& r : rows_) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < r.size(); ++i) obj[columns_[i].name] = r[i];
    rows.push_back(std::move(obj));
  }
  return Json{{"columns", cols}, {"rows", rows}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  const fs::path tmp = dir / ("." + path.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) throw Error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("rename to " + path.string() + " failed: " + ec.message());
  }
}

}  // namespace smallf
