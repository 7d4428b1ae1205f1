#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tablin/query.hpp"

namespace tablin {

enum class CellOrigin { Literal, SpanCopy };
enum class TableKind { Infobox, WikiTable };
enum class HeaderStructure { Single, Multi, Merged };

std::string_view to_string(TableKind k);
std::string_view to_string(HeaderStructure s);
std::optional<TableKind> parse_table_kind(std::string_view s);
std::optional<HeaderStructure> parse_header_structure(std::string_view s);

// (column, row), both 1-based.
struct CellRef {
  int col = 1;
  int row = 1;
  friend bool operator==(const CellRef&, const CellRef&) = default;
};

struct Cell {
  std::string text;
  bool is_header = false;
  CellOrigin origin = CellOrigin::Literal;

  // Normalizes the text (NFKC, whitespace collapse, trim).
  static Cell make(std::string_view raw, bool is_header = false,
                   CellOrigin origin = CellOrigin::Literal);

  friend bool operator==(const Cell&, const Cell&) = default;
};

// Rectangular cell matrix. The constructor does not enforce the invariants so
// that malformed grids can be represented and reported by validate_grid.
class TableGrid {
 public:
  TableGrid() = default;
  TableGrid(std::vector<std::vector<Cell>> rows, int n_cols,
            TableKind kind = TableKind::WikiTable,
            std::optional<std::string> caption = std::nullopt);

  // Convenience for fixtures: every text is normalized and the first
  // header_rows rows are marked as header cells.
  static TableGrid from_texts(const std::vector<std::vector<std::string>>& rows,
                              int header_rows = 1,
                              TableKind kind = TableKind::WikiTable);

  int n_cols() const { return n_cols_; }
  int n_rows() const { return static_cast<int>(rows_.size()); }
  TableKind kind() const { return kind_; }
  const std::optional<std::string>& caption() const { return caption_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  const Cell& at(int col, int row) const;
  const Cell& at(CellRef ref) const { return at(ref.col, ref.row); }
  const std::string& text(int col, int row) const { return at(col, row).text; }

  // Rows become columns. Header flags and origins travel with the cells.
  TableGrid transposed() const;

  std::vector<std::vector<std::string>> texts() const;

  friend bool operator==(const TableGrid&, const TableGrid&) = default;

 private:
  std::vector<std::vector<Cell>> rows_;
  int n_cols_ = 0;
  TableKind kind_ = TableKind::WikiTable;
  std::optional<std::string> caption_;
};

struct HeaderInfo {
  HeaderStructure structure = HeaderStructure::Single;
  int header_row_count = 1;
  std::vector<std::string> flat_headers;
  // Row 1 had no header markup and was adopted as the header row.
  bool inferred = false;
  std::vector<std::string> warnings;

  friend bool operator==(const HeaderInfo&, const HeaderInfo&) = default;
};

struct DescriptionSet {
  std::string title;
  std::optional<std::string> first_paragraph;
  std::vector<std::string> headings;
  std::optional<std::string> caption;

  // title, first_paragraph, headings, caption; absent pieces skipped.
  std::vector<std::string> ordered_texts() const;

  friend bool operator==(const DescriptionSet&, const DescriptionSet&) = default;
};

struct QARecord {
  std::string id;
  std::string url;
  std::string title;
  std::vector<std::vector<std::string>> context;
  std::string question;
  std::string answer;
  std::optional<CellRef> answer_cell;
  int level = 1;
  // Extension keys; absent in externally produced files.
  std::string table_id;
  std::string source;
  std::optional<StructuredQuery> query;

  friend bool operator==(const QARecord&, const QARecord&) = default;
};

enum class Severity { Error, Warning };

struct Violation {
  Severity severity = Severity::Error;
  std::optional<CellRef> where;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> items;

  bool valid() const;
  std::vector<std::string> errors() const;
  std::vector<std::string> warnings() const;
};

ValidationReport validate_grid(const TableGrid& grid);

// validate_grid plus the HeaderInfo invariants; placeholder headers and
// inferred header rows surface as warnings.
ValidationReport validate_table(const TableGrid& grid, const HeaderInfo& headers);

}  // namespace tablin
