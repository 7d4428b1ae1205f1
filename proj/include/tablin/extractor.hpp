#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tablin/table_model.hpp"

namespace tablin {

struct SourceDocument {
  std::string url;
  std::string title;
  std::string html;
};

// Spans above this are clamped.
inline constexpr int kMaxSpan = 1000;

struct RawCell {
  std::string text;
  bool is_header = false;
  int colspan = 1;
  int rowspan = 1;
};

struct RawTable {
  std::vector<std::vector<RawCell>> rows;
};

struct ParsedTable {
  RawTable raw;
  TableKind kind = TableKind::WikiTable;
  std::optional<std::string> caption;
  // 0-based index among the document's top-level tables.
  int position = 0;
};

// Top-level tables in document order. Tables nested in a cell contribute
// their text to that cell and are not returned separately.
std::vector<ParsedTable> parse_document(const SourceDocument& doc);

TableGrid normalize_grid(const RawTable& raw, TableKind kind = TableKind::WikiTable,
                         std::optional<std::string> caption = std::nullopt);

HeaderInfo classify_header(const TableGrid& grid);

std::vector<std::string> flatten_headers(const TableGrid& grid, int header_row_count);

DescriptionSet extract_descriptions(const SourceDocument& doc, int table_position);

bool filter_for_qa(const TableGrid& grid);

inline constexpr int kQaMinDataRows = 6;
inline constexpr int kQaMaxDataRows = 14;
inline constexpr int kQaMaxColumns = 10;

// A table ready for the downstream stages. Infoboxes arrive transposed so
// their header column becomes row 1.
struct ExtractedTable {
  std::string id;
  std::string url;
  std::string title;
  TableGrid grid;
  HeaderInfo headers;
  DescriptionSet descriptions;
  std::vector<std::string> warnings;

  friend bool operator==(const ExtractedTable&, const ExtractedTable&) = default;
};

std::string table_id(const std::string& url, int position);

// parse_document + normalize_grid + classify_header + extract_descriptions.
// Empty tables are dropped.
std::vector<ExtractedTable> extract_tables(const SourceDocument& doc);

}  // namespace tablin
