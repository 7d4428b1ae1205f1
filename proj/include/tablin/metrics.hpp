#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace tablin {

// NFKC, trim, whitespace collapse, surrounding quotation marks stripped.
std::string normalize_answer(std::string_view s);

int em(std::string_view pred, std::string_view gold);

// Token-overlap F1. Tokens are whitespace-separated words; when neither
// normalized answer contains whitespace both sides are split into code
// points instead, so single-word answers still earn partial credit.
double f1(std::string_view pred, std::string_view gold);

struct EvalItem {
  std::string pred;
  std::string gold;
  int level = 0;
  std::string source;
};

struct Score {
  double em = 0;  // percentage
  double f1 = 0;  // percentage
  std::size_t n = 0;
};

struct EvalReport {
  Score overall;
  std::map<int, Score> by_level;
  std::map<std::string, Score> by_source;
};

// Throws Error(EmptyInput) on an empty list.
EvalReport evaluate(const std::vector<EvalItem>& items);

// Percentages rendered with one decimal.
std::string render_report_table(const EvalReport& report);
std::string render_report_json(const EvalReport& report);

}  // namespace tablin
