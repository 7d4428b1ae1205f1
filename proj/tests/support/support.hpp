#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tablin/extractor.hpp"
#include "tablin/linearizer.hpp"
#include "tablin/query.hpp"
#include "tablin/table_model.hpp"

namespace tablin_test {

using tablin::TableGrid;

// Team/Pts with Portugal 6, Spain 5, Russia 3.
TableGrid portugal_grid();

// A random table with one header row and the true value of every numeric cell
// as built, independent of the library's parser.
struct TruthGrid {
  TableGrid grid;
  // col -> value per grid row (index 0 unused; header row is nullopt).
  std::map<int, std::vector<std::optional<double>>> numeric_truth;
  // col -> true for columns built as numbers of a kind the library may use for
  // averages (integer, decimal, money).
  std::map<int, bool> averageable;
  // Dates are excluded from conditions and averages.
  std::map<int, bool> is_date;
};

TruthGrid random_qa_grid(std::mt19937_64& rng, int data_rows, int n_cols);

// Reference evaluation of a query over a truth grid. Values are returned as
// the cell text (SelectWhere, Min/Max) or the rendered number (Count, Avg).
std::vector<std::string> brute_exec(const tablin::StructuredQuery& q, const TruthGrid& g);

// Expands spans by painting each cell onto a sparse occupancy map.
struct PaintedCell {
  std::string text;
  bool header = false;
  bool copy = false;
};
std::vector<std::vector<PaintedCell>> paint(const tablin::RawTable& raw);

tablin::RawTable random_raw_table(std::mt19937_64& rng);

// Row strings as the reference serializer writes them, one per data row.
std::vector<std::string> reference_rows(const TableGrid& grid,
                                        const std::vector<std::string>& headers,
                                        int header_rows, const tablin::LinearizerConfig& cfg);

int count_runs(const std::string& s);

std::vector<tablin::ExtractedTable> corpus_tables(const std::string& corpus_dir);

std::string strip_trailing_zeros(double v);

}  // namespace tablin_test
