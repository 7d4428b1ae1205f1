#pragma once

#include <string>
#include <vector>

#include "tablin/query.hpp"
#include "tablin/table_model.hpp"

namespace tablin {

struct OracleResult {
  std::vector<std::string> values;
  // Grid rows behind `values` (Min/Max, SelectWhere) or the rows counted or
  // averaged (Count, Avg).
  std::vector<int> rows;
};

// Single pass over the data rows (those after headers.header_row_count).
// Text matching is exact after normalization. Ties in Min/Max return every
// extremal row. Throws Error(ColumnNotNumeric) when a condition or Min/Max/Avg
// reads a column that does not qualify as numeric, Error(InvalidConfig) on an
// ill-formed query.
OracleResult exec(const StructuredQuery& query, const TableGrid& grid, const HeaderInfo& headers);

struct Consistency {
  bool consistent = false;
  std::string detail;

  static Consistency ok() { return {true, {}}; }
  static Consistency fail(std::string why) { return {false, std::move(why)}; }
};

Consistency validate_record(const QARecord& rec, const TableGrid& grid, const HeaderInfo& headers,
                            const StructuredQuery& query);

}  // namespace tablin
