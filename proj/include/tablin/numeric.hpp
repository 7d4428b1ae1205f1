#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tablin/table_model.hpp"

namespace tablin {

enum class NumericKind { Integer, Decimal, Rank, Money, Date };

std::string_view to_string(NumericKind k);

// Share of non-empty cells that must parse for a column to qualify.
inline constexpr double kNumericThreshold = 0.8;

struct NumericColumn {
  int col = 1;
  NumericKind kind = NumericKind::Integer;
  // (grid row, value) for every data cell that parsed. Rows are 1-based grid
  // rows, so header rows are never listed.
  std::vector<std::pair<int, double>> parsed_values;
};

// Integer and Decimal accept thousands separators ("1,234"). Rank accepts
// "3위", "3등", "3rd". Money accepts a currency symbol prefix or a Korean
// currency suffix with optional 만/억 multiplier. Dates (ISO, dotted, slashed
// and "2004년 6월 12일") map to days since 1970-01-01.
std::optional<double> parse_numeric(std::string_view cell, NumericKind kind);

std::optional<NumericColumn> numeric_column(const TableGrid& grid, int header_row_count, int col);

std::vector<NumericColumn> detect_numeric_columns(const TableGrid& grid, int header_row_count);

// Uses classify_header for the header row count.
std::vector<NumericColumn> detect_numeric_columns(const TableGrid& grid);

// At most `max_decimals` places, trailing zeros (and a bare point) removed.
std::string render_number(double value, int max_decimals = 2);

}  // namespace tablin
