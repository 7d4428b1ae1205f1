#include "tablin/table_model.hpp"

#include <sstream>
#include <stdexcept>

#include "tablin/text.hpp"

namespace tablin {

bool Condition::holds(double value) const {
  if (operands.empty()) return false;
  const double a = operands[0];
  switch (op) {
    case CompareOp::EQ: return value == a;
    case CompareOp::GE: return value >= a;
    case CompareOp::LE: return value <= a;
    case CompareOp::GT: return value > a;
    case CompareOp::LT: return value < a;
    case CompareOp::BETWEEN:
      return operands.size() >= 2 && value >= a && value <= operands[1];
  }
  return false;
}

std::string_view to_string(QueryKind k) {
  return k == QueryKind::SelectWhere ? "SelectWhere" : "Aggregate";
}

std::string_view to_string(CompareOp op) {
  switch (op) {
    case CompareOp::EQ: return "EQ";
    case CompareOp::GE: return "GE";
    case CompareOp::LE: return "LE";
    case CompareOp::GT: return "GT";
    case CompareOp::LT: return "LT";
    case CompareOp::BETWEEN: return "BETWEEN";
  }
  return "EQ";
}

std::string_view to_string(AggKind k) {
  switch (k) {
    case AggKind::Min: return "Min";
    case AggKind::Max: return "Max";
    case AggKind::Count: return "Count";
    case AggKind::Avg: return "Avg";
  }
  return "Min";
}

std::optional<QueryKind> parse_query_kind(std::string_view s) {
  if (s == "SelectWhere") return QueryKind::SelectWhere;
  if (s == "Aggregate") return QueryKind::Aggregate;
  return std::nullopt;
}

std::optional<CompareOp> parse_compare_op(std::string_view s) {
  for (auto op : {CompareOp::EQ, CompareOp::GE, CompareOp::LE, CompareOp::GT,
                  CompareOp::LT, CompareOp::BETWEEN}) {
    if (to_string(op) == s) return op;
  }
  return std::nullopt;
}

std::optional<AggKind> parse_agg_kind(std::string_view s) {
  for (auto k : {AggKind::Min, AggKind::Max, AggKind::Count, AggKind::Avg}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::string_view to_string(TableKind k) {
  return k == TableKind::Infobox ? "Infobox" : "WikiTable";
}

std::string_view to_string(HeaderStructure s) {
  switch (s) {
    case HeaderStructure::Single: return "Single";
    case HeaderStructure::Multi: return "Multi";
    case HeaderStructure::Merged: return "Merged";
  }
  return "Single";
}

std::optional<TableKind> parse_table_kind(std::string_view s) {
  if (s == "Infobox") return TableKind::Infobox;
  if (s == "WikiTable") return TableKind::WikiTable;
  return std::nullopt;
}

std::optional<HeaderStructure> parse_header_structure(std::string_view s) {
  if (s == "Single") return HeaderStructure::Single;
  if (s == "Multi") return HeaderStructure::Multi;
  if (s == "Merged") return HeaderStructure::Merged;
  return std::nullopt;
}

Cell Cell::make(std::string_view raw, bool is_header, CellOrigin origin) {
  return Cell{text::normalize(raw), is_header, origin};
}

TableGrid::TableGrid(std::vector<std::vector<Cell>> rows, int n_cols, TableKind kind,
                     std::optional<std::string> caption)
    : rows_(std::move(rows)), n_cols_(n_cols), kind_(kind), caption_(std::move(caption)) {}

TableGrid TableGrid::from_texts(const std::vector<std::vector<std::string>>& rows,
                                int header_rows, TableKind kind) {
  std::vector<std::vector<Cell>> cells;
  std::size_t width = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::vector<Cell> row;
    for (const auto& t : rows[r]) {
      row.push_back(Cell::make(t, static_cast<int>(r) < header_rows));
    }
    width = std::max(width, row.size());
    cells.push_back(std::move(row));
  }
  return TableGrid(std::move(cells), static_cast<int>(width), kind);
}

const Cell& TableGrid::at(int col, int row) const {
  if (row < 1 || row > n_rows() || col < 1 ||
      col > static_cast<int>(rows_[row - 1].size())) {
    std::ostringstream os;
    os << "cell (" << col << "," << row << ") out of range";
    throw std::out_of_range(os.str());
  }
  return rows_[row - 1][col - 1];
}

TableGrid TableGrid::transposed() const {
  std::vector<std::vector<Cell>> out(static_cast<std::size_t>(n_cols_));
  for (int c = 1; c <= n_cols_; ++c) {
    for (int r = 1; r <= n_rows(); ++r) {
      const auto& row = rows_[r - 1];
      out[c - 1].push_back(c <= static_cast<int>(row.size()) ? row[c - 1] : Cell{});
    }
  }
  return TableGrid(std::move(out), n_rows(), kind_, caption_);
}

std::vector<std::vector<std::string>> TableGrid::texts() const {
  std::vector<std::vector<std::string>> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) {
    std::vector<std::string> line;
    line.reserve(row.size());
    for (const auto& cell : row) line.push_back(cell.text);
    out.push_back(std::move(line));
  }
  return out;
}

std::vector<std::string> DescriptionSet::ordered_texts() const {
  std::vector<std::string> out;
  auto push = [&](const std::string& s) {
    if (!s.empty()) out.push_back(s);
  };
  push(title);
  if (first_paragraph) push(*first_paragraph);
  for (const auto& h : headings) push(h);
  if (caption) push(*caption);
  return out;
}

bool ValidationReport::valid() const {
  for (const auto& v : items) {
    if (v.severity == Severity::Error) return false;
  }
  return true;
}

std::vector<std::string> ValidationReport::errors() const {
  std::vector<std::string> out;
  for (const auto& v : items) {
    if (v.severity == Severity::Error) out.push_back(v.message);
  }
  return out;
}

std::vector<std::string> ValidationReport::warnings() const {
  std::vector<std::string> out;
  for (const auto& v : items) {
    if (v.severity == Severity::Warning) out.push_back(v.message);
  }
  return out;
}

namespace {

std::string coord(int col, int row) {
  return "(" + std::to_string(col) + "," + std::to_string(row) + ")";
}

}  // namespace

ValidationReport validate_grid(const TableGrid& grid) {
  ValidationReport report;
  auto error = [&](std::optional<CellRef> where, std::string msg) {
    report.items.push_back({Severity::Error, where, std::move(msg)});
  };
  if (grid.n_cols() < 1) error(std::nullopt, "n_cols " + std::to_string(grid.n_cols()) + " < 1");
  if (grid.n_rows() < 1) error(std::nullopt, "n_rows 0 < 1");

  for (int r = 1; r <= grid.n_rows(); ++r) {
    const auto& row = grid.rows()[r - 1];
    const int len = static_cast<int>(row.size());
    if (len != grid.n_cols()) {
      error(std::nullopt, "row " + std::to_string(r) + " length " + std::to_string(len) +
                              " ≠ " + std::to_string(grid.n_cols()));
    }
    for (int c = 1; c <= len; ++c) {
      const std::string& t = row[c - 1].text;
      if (text::starts_with_space(t) || text::ends_with_space(t)) {
        error(CellRef{c, r}, "untrimmed text at " + coord(c, r));
      }
      for (char32_t cp : text::decode(t)) {
        if (!text::is_space(cp) && text::is_control(cp)) {
          error(CellRef{c, r}, "control character at " + coord(c, r));
          break;
        }
      }
    }
  }
  return report;
}

ValidationReport validate_table(const TableGrid& grid, const HeaderInfo& headers) {
  ValidationReport report = validate_grid(grid);
  auto add = [&](Severity s, std::string msg) {
    report.items.push_back({s, std::nullopt, std::move(msg)});
  };
  if (static_cast<int>(headers.flat_headers.size()) != grid.n_cols()) {
    add(Severity::Error, "flat_headers length " + std::to_string(headers.flat_headers.size()) +
                             " ≠ " + std::to_string(grid.n_cols()));
  }
  for (std::size_t i = 0; i < headers.flat_headers.size(); ++i) {
    if (headers.flat_headers[i].empty()) {
      add(Severity::Error, "empty flat header for column " + std::to_string(i + 1));
    }
  }
  if (headers.header_row_count < 0 || headers.header_row_count > grid.n_rows()) {
    add(Severity::Error, "header_row_count " + std::to_string(headers.header_row_count) +
                             " outside [0, n_rows]");
  }
  if (headers.structure == HeaderStructure::Multi && headers.header_row_count < 2) {
    add(Severity::Error, "Multi header with header_row_count < 2");
  }
  if (headers.structure == HeaderStructure::Single && headers.header_row_count != 1) {
    add(Severity::Error, "Single header with header_row_count ≠ 1");
  }
  for (const auto& w : headers.warnings) add(Severity::Warning, w);
  return report;
}

}  // namespace tablin
