#pragma once

// Tabular reports with a metadata preamble, written as CSV or JSON.
//
// CSV: one "# key: value" line per metadata entry, then the header row, then
// one line per row. Doubles use %.17g so values round-trip.
// JSON: {"meta": {...}, "columns": [...], "rows": [{column: value}, ...]}.

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace pslab::cli {

using Cell = std::variant<std::int64_t, std::uint64_t, double, bool, std::string>;

enum class Format { csv, json };

class Report {
 public:
  explicit Report(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void meta(std::string key, Cell value) { meta_.emplace_back(std::move(key), std::move(value)); }
  void meta_front(std::string key, Cell value) {
    meta_.emplace(meta_.begin(), std::move(key), std::move(value));
  }
  // Throws std::logic_error when the row width differs from the header.
  void row(std::vector<Cell> cells);

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }

  void write(std::ostream& os, Format format) const;

 private:
  void write_csv(std::ostream& os) const;
  void write_json(std::ostream& os) const;

  std::vector<std::pair<std::string, Cell>> meta_;
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

std::string format_cell(const Cell& cell);

}  // namespace pslab::cli
