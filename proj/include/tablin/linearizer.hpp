#pragma once

#include <string>
#include <string_view>

#include "tablin/table_model.hpp"

namespace tablin {

enum class Format { V1, V2 };

std::string_view to_string(Format f);
std::optional<Format> parse_format(std::string_view s);

struct LinearizerConfig {
  Format format = Format::V1;
  std::string header_cell_sep = " : ";
  std::string unit_sep = ", ";
  std::string row_terminator = ". ";
  std::string desc_table_sep = " ";
  int budget_min = 250;
  int budget_max = 300;
  int max_sequence_words = 512;

  // Throws Error(InvalidConfig) on a broken invariant.
  void validate() const;
};

struct LinearizedTable {
  std::string text;
  int word_count = 0;
  int rows_emitted = 0;
  int rows_truncated = 0;
  Format format = Format::V1;
};

struct PretrainRecord {
  std::string text;
  int word_count = 0;
  std::string url;
  std::string title;
  Format format = Format::V1;
  // Table id the text was built from.
  std::string provenance;

  friend bool operator==(const PretrainRecord&, const PretrainRecord&) = default;
};

int count_budget_words(std::string_view text);

// Rows are appended whole while the running word count stays within
// cfg.budget_max; the first row that would overflow stops emission.
// Throws Error(BudgetUnsatisfiable) if the first data row alone overflows.
LinearizedTable linearize_v1(const TableGrid& grid, const HeaderInfo& headers,
                             const LinearizerConfig& cfg);

// As v1, with every unit of column >= 2 prefixed by the row key (column 1
// header and value).
LinearizedTable linearize_v2(const TableGrid& grid, const HeaderInfo& headers,
                             const LinearizerConfig& cfg);

// Dispatches on cfg.format.
LinearizedTable linearize(const TableGrid& grid, const HeaderInfo& headers,
                          const LinearizerConfig& cfg);

// Descriptions are trimmed (first paragraph first) so the record fits in
// cfg.max_sequence_words; the table text is never cut.
PretrainRecord compose_pretraining_record(const DescriptionSet& desc, const LinearizedTable& lin,
                                          const LinearizerConfig& cfg);

}  // namespace tablin
