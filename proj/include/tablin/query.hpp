#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tablin {

enum class QueryKind { SelectWhere, Aggregate };
enum class CompareOp { EQ, GE, LE, GT, LT, BETWEEN };
enum class AggKind { Min, Max, Count, Avg };

// Numeric comparison. BETWEEN takes two operands and is inclusive on both
// ends; every other operator takes one.
struct Condition {
  CompareOp op = CompareOp::EQ;
  std::vector<double> operands;

  bool holds(double value) const;
  friend bool operator==(const Condition&, const Condition&) = default;
};

// Machine-readable intent behind a generated question. Columns are 1-based.
//
// filter_col is the column the predicate (match_value or condition) or the
// aggregate reads; target_col is the column whose text is returned. Count and
// Avg return computed values, so their target_col is informational only.
struct StructuredQuery {
  QueryKind kind = QueryKind::SelectWhere;
  int base_col = 1;
  std::optional<int> other_col;
  int filter_col = 1;
  std::optional<std::string> match_value;
  std::optional<Condition> condition;
  std::optional<AggKind> agg;
  int target_col = 1;

  friend bool operator==(const StructuredQuery&, const StructuredQuery&) = default;
};

std::string_view to_string(QueryKind k);
std::string_view to_string(CompareOp op);
std::string_view to_string(AggKind k);
std::optional<QueryKind> parse_query_kind(std::string_view s);
std::optional<CompareOp> parse_compare_op(std::string_view s);
std::optional<AggKind> parse_agg_kind(std::string_view s);

}  // namespace tablin
