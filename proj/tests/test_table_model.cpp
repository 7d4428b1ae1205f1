#include <gtest/gtest.h>

#include "tablin/errors.hpp"
#include "tablin/table_model.hpp"
#include "tablin/text.hpp"

using namespace tablin;

namespace {

TableGrid raw_grid(std::vector<std::vector<std::string>> texts, int n_cols) {
  std::vector<std::vector<Cell>> rows;
  for (auto& r : texts) {
    std::vector<Cell> row;
    for (auto& t : r) row.push_back(Cell{t, rows.empty(), CellOrigin::Literal});
    rows.push_back(std::move(row));
  }
  return TableGrid(std::move(rows), n_cols);
}

}  // namespace

TEST(ValidateGrid, RectangularGridIsClean) {
  const auto g = TableGrid::from_texts({{"a", "b", "c"}, {"1", "2", "3"}, {"4", "5", "6"}});
  EXPECT_TRUE(validate_grid(g).items.empty());
}

TEST(ValidateGrid, ShortRow) {
  const auto g = raw_grid({{"a", "b", "c"}, {"1", "2"}, {"4", "5", "6"}}, 3);
  const auto errors = validate_grid(g).errors();
  ASSERT_EQ(errors.size(), 1u);
  EXPECT_EQ(errors[0], "row 2 length 2 ≠ 3");
}

TEST(ValidateGrid, UntrimmedText) {
  const auto g = raw_grid({{"Team", "W", "  Pts "}, {"a", "1", "2"}}, 3);
  const auto errors = validate_grid(g).errors();
  ASSERT_EQ(errors.size(), 1u);
  EXPECT_EQ(errors[0], "untrimmed text at (3,1)");
}

TEST(ValidateGrid, ControlCharacter) {
  const auto g = raw_grid({{"a", "b\x01"}}, 2);
  EXPECT_FALSE(validate_grid(g).valid());
}

TEST(ValidateGrid, EmptyGrid) {
  EXPECT_FALSE(validate_grid(TableGrid{}).valid());
}

TEST(ValidateTable, HeaderLengthMismatch) {
  const auto g = TableGrid::from_texts({{"a", "b"}, {"1", "2"}});
  HeaderInfo h;
  h.flat_headers = {"a"};
  EXPECT_FALSE(validate_table(g, h).valid());
  h.flat_headers = {"a", "b"};
  EXPECT_TRUE(validate_table(g, h).valid());
  h.structure = HeaderStructure::Multi;
  EXPECT_FALSE(validate_table(g, h).valid());
}

TEST(TableGrid, CoordinatesAreColumnRow) {
  const auto g = TableGrid::from_texts({{"Team", "Pts"}, {"Portugal", "6"}});
  EXPECT_EQ(g.text(2, 1), "Pts");
  EXPECT_EQ(g.text(1, 2), "Portugal");
  EXPECT_TRUE(g.at(1, 1).is_header);
  EXPECT_FALSE(g.at(1, 2).is_header);
  EXPECT_THROW(g.at(3, 1), std::out_of_range);
  EXPECT_THROW(g.at(0, 1), std::out_of_range);
}

TEST(TableGrid, TransposeTwiceIsIdentity) {
  const auto g = TableGrid::from_texts({{"a", "b", "c"}, {"1", "2", "3"}});
  const auto t = g.transposed();
  EXPECT_EQ(t.n_cols(), 2);
  EXPECT_EQ(t.n_rows(), 3);
  EXPECT_EQ(t.text(2, 3), "3");
  EXPECT_EQ(t.transposed(), g);
}

TEST(Cell, MakeNormalizes) {
  EXPECT_EQ(Cell::make("  Portugal  \t team ").text, "Portugal team");
  EXPECT_EQ(Cell::make("６").text, "6");
}

TEST(Text, Normalize) {
  EXPECT_EQ(text::normalize(""), "");
  EXPECT_EQ(text::normalize(" a \n b "), "a b");
  EXPECT_EQ(text::normalize("a​b"), "ab");
  EXPECT_EQ(text::normalize("　x　"), "x");
}

TEST(Text, SplitAndCount) {
  EXPECT_EQ(text::count_words(""), 0);
  EXPECT_EQ(text::count_words("Team : Portugal"), 3);
  EXPECT_EQ(text::code_points("포르투갈").size(), 4u);
}

TEST(DescriptionSet, OrderedTextsSkipAbsent) {
  DescriptionSet d;
  d.title = "T";
  d.headings = {"A", "B"};
  d.caption = "C";
  EXPECT_EQ(d.ordered_texts(), (std::vector<std::string>{"T", "A", "B", "C"}));
}

TEST(Errors, KindNames) {
  EXPECT_EQ(error_kind_name(ErrorKind::SchemaViolation), "SchemaViolation");
  const Error e(ErrorKind::EmptyTable, "x");
  EXPECT_EQ(e.kind(), ErrorKind::EmptyTable);
}
