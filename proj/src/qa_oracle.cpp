#include "tablin/qa_oracle.hpp"

#include "tablin/errors.hpp"
#include "tablin/numeric.hpp"
#include "tablin/text.hpp"

namespace tablin {

namespace {

void check_column(const TableGrid& grid, int col, const char* what) {
  if (col < 1 || col > grid.n_cols()) {
    throw Error(ErrorKind::InvalidConfig, std::string(what) + " " + std::to_string(col) +
                                              " outside 1.." + std::to_string(grid.n_cols()));
  }
}

NumericColumn require_numeric(const TableGrid& grid, const HeaderInfo& headers, int col) {
  auto nc = numeric_column(grid, headers.header_row_count, col);
  if (!nc) {
    throw Error(ErrorKind::ColumnNotNumeric, "column " + std::to_string(col) + " is not numeric");
  }
  return std::move(*nc);
}

}  // namespace

OracleResult exec(const StructuredQuery& q, const TableGrid& grid, const HeaderInfo& headers) {
  check_column(grid, q.filter_col, "filter_col");
  check_column(grid, q.target_col, "target_col");
  check_column(grid, q.base_col, "base_col");
  if (q.other_col) check_column(grid, *q.other_col, "other_col");
  if (q.kind == QueryKind::SelectWhere && !q.match_value && !q.condition) {
    throw Error(ErrorKind::InvalidConfig, "SelectWhere needs match_value or condition");
  }
  if (q.kind == QueryKind::Aggregate && !q.agg) {
    throw Error(ErrorKind::InvalidConfig, "Aggregate needs agg");
  }

  const bool needs_numbers =
      q.condition.has_value() ||
      (q.kind == QueryKind::Aggregate && *q.agg != AggKind::Count);
  std::optional<NumericKind> kind;
  if (needs_numbers) kind = require_numeric(grid, headers, q.filter_col).kind;
  const std::string wanted = q.match_value ? text::normalize(*q.match_value) : std::string{};

  OracleResult out;
  bool have_extreme = false;
  double extreme = 0;
  double sum = 0;
  std::size_t n = 0;

  for (int r = headers.header_row_count + 1; r <= grid.n_rows(); ++r) {
    const std::string& cell = grid.text(q.filter_col, r);
    std::optional<double> value;
    if (kind) value = parse_numeric(cell, *kind);
    if (q.match_value && text::normalize(cell) != wanted) continue;
    if (q.condition && (!value || !q.condition->holds(*value))) continue;

    if (q.kind == QueryKind::SelectWhere) {
      out.values.push_back(grid.text(q.target_col, r));
      out.rows.push_back(r);
      continue;
    }
    switch (*q.agg) {
      case AggKind::Count:
        out.rows.push_back(r);
        break;
      case AggKind::Avg:
        if (!value) break;
        sum += *value;
        ++n;
        out.rows.push_back(r);
        break;
      case AggKind::Min:
      case AggKind::Max: {
        if (!value) break;
        const bool better = !have_extreme || (*q.agg == AggKind::Min ? *value < extreme
                                                                     : *value > extreme);
        if (better) {
          have_extreme = true;
          extreme = *value;
          out.values.clear();
          out.rows.clear();
        }
        if (*value == extreme) {
          out.values.push_back(grid.text(q.target_col, r));
          out.rows.push_back(r);
        }
        break;
      }
    }
  }
  if (q.kind == QueryKind::Aggregate) {
    if (*q.agg == AggKind::Count) {
      out.values = {std::to_string(out.rows.size())};
    } else if (*q.agg == AggKind::Avg && n > 0) {
      out.values = {render_number(sum / static_cast<double>(n), 2)};
    }
  }
  return out;
}

Consistency validate_record(const QARecord& rec, const TableGrid& grid, const HeaderInfo& headers,
                            const StructuredQuery& query) {
  if (rec.level < 1 || rec.level > 5) {
    return Consistency::fail("level " + std::to_string(rec.level) + " outside 1-5");
  }
  if (rec.context != grid.texts()) return Consistency::fail("context differs from table");

  OracleResult res;
  try {
    res = exec(query, grid, headers);
  } catch (const Error& e) {
    return Consistency::fail(std::string(error_kind_name(e.kind())) + ": " + e.what());
  }
  if (res.values.empty()) return Consistency::fail("no match");
  if (res.values.size() > 1) return Consistency::fail("non-unique");
  if (text::normalize(res.values.front()) != text::normalize(rec.answer)) {
    return Consistency::fail("expected " + res.values.front());
  }

  const bool computed = query.kind == QueryKind::Aggregate &&
                        (*query.agg == AggKind::Count || *query.agg == AggKind::Avg);
  if (rec.answer_cell) {
    if (computed) return Consistency::fail("answer_cell set on a computed answer");
    const CellRef expected{query.target_col, res.rows.front()};
    if (!(*rec.answer_cell == expected)) {
      return Consistency::fail("answer_cell (" + std::to_string(rec.answer_cell->col) + "," +
                               std::to_string(rec.answer_cell->row) + ") expected (" +
                               std::to_string(expected.col) + "," + std::to_string(expected.row) +
                               ")");
    }
  }
  return Consistency::ok();
}

}  // namespace tablin
