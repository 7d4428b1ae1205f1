#include <gtest/gtest.h>

#include "support.hpp"
#include "tablin/errors.hpp"
#include "tablin/extractor.hpp"
#include "tablin/linearizer.hpp"
#include "tablin/text.hpp"

using namespace tablin;

namespace {

LinearizerConfig v1() { return LinearizerConfig{}; }

LinearizerConfig v2() {
  LinearizerConfig cfg;
  cfg.format = Format::V2;
  return cfg;
}

TableGrid wide_grid(int data_rows, int cols) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header;
  for (int c = 1; c <= cols; ++c) header.push_back("h" + std::to_string(c));
  rows.push_back(header);
  for (int r = 1; r <= data_rows; ++r) {
    std::vector<std::string> row;
    for (int c = 1; c <= cols; ++c) row.push_back("r" + std::to_string(r) + "c" + std::to_string(c));
    rows.push_back(row);
  }
  return TableGrid::from_texts(rows);
}

}  // namespace

TEST(CountBudgetWords, Runs) {
  EXPECT_EQ(count_budget_words(""), 0);
  EXPECT_EQ(count_budget_words("Team : Portugal"), 3);
  // Runs: "Team" ":" "Portugal," "Pts" ":" "6."
  EXPECT_EQ(count_budget_words("Team : Portugal, Pts : 6. "), 6);
  EXPECT_EQ(count_budget_words("  a\t\nb  "), 2);
}

TEST(LinearizeV1, SingleRow) {
  const auto g = TableGrid::from_texts({{"Team", "Pts"}, {"Portugal", "6"}});
  const auto lin = linearize_v1(g, classify_header(g), v1());
  EXPECT_EQ(lin.text, "Team : Portugal, Pts : 6. ");
  EXPECT_EQ(lin.word_count, 6);
  EXPECT_EQ(lin.rows_emitted, 1);
  EXPECT_EQ(lin.rows_truncated, 0);
  EXPECT_EQ(lin.format, Format::V1);
}

TEST(LinearizeV1, NoDataRows) {
  const auto g = TableGrid::from_texts({{"Team", "Pts"}});
  const auto lin = linearize_v1(g, classify_header(g), v1());
  EXPECT_EQ(lin.text, "");
  EXPECT_EQ(lin.word_count, 0);
  EXPECT_EQ(lin.rows_emitted, 0);
}

TEST(LinearizeV1, EmptyCellKeepsHeader) {
  const auto g = TableGrid::from_texts({{"Team", "Pts"}, {"Portugal", ""}});
  EXPECT_EQ(linearize_v1(g, classify_header(g), v1()).text, "Team : Portugal, Pts : . ");
}

TEST(LinearizeV1, TruncatesWholeRows) {
  // 11 single-word units per row: 33 words, so 9 rows are 297 and 10 are 330.
  const auto g = wide_grid(14, 11);
  const auto lin = linearize_v1(g, classify_header(g), v1());
  EXPECT_EQ(lin.rows_emitted, 9);
  EXPECT_EQ(lin.rows_truncated, 5);
  EXPECT_EQ(lin.word_count, 297);
  EXPECT_EQ(tablin_test::count_runs(lin.text), 297);
}

TEST(LinearizeV1, FirstRowOverBudget) {
  const auto g = wide_grid(2, 11);
  auto cfg = v1();
  cfg.budget_min = 10;
  cfg.budget_max = 32;
  try {
    linearize_v1(g, classify_header(g), cfg);
    FAIL() << "expected BudgetUnsatisfiable";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetUnsatisfiable);
  }
}

TEST(LinearizeV1, RejectsWrongFormat) {
  const auto g = TableGrid::from_texts({{"a"}, {"b"}});
  EXPECT_THROW(linearize_v1(g, classify_header(g), v2()), Error);
  EXPECT_THROW(linearize_v2(g, classify_header(g), v1()), Error);
}

TEST(LinearizeV2, RowKeyAugmentation) {
  const auto g = TableGrid::from_texts({{"Team", "Pts"}, {"Portugal", "6"}});
  const auto lin = linearize_v2(g, classify_header(g), v2());
  EXPECT_EQ(lin.text, "Team : Portugal, Team Portugal Pts : 6. ");
  EXPECT_EQ(lin.word_count, 8);
}

TEST(LinearizeV2, OneColumnEqualsV1) {
  const auto g = TableGrid::from_texts({{"Team"}, {"Portugal"}, {"Spain"}});
  const auto h = classify_header(g);
  EXPECT_EQ(linearize_v2(g, h, v2()).text, linearize_v1(g, h, v1()).text);
}

TEST(LinearizeV2, MergedHeaders) {
  RawTable raw{{{RawCell{"Team", true, 1, 2}, RawCell{"Record", true, 2, 1}},
                {RawCell{"Home", true, 1, 1}, RawCell{"Away", true, 1, 1}},
                {RawCell{"Portugal", false, 1, 1}, RawCell{"2", false, 1, 1}, RawCell{"1", false, 1, 1}}}};
  const auto g = normalize_grid(raw);
  const auto lin = linearize_v2(g, classify_header(g), v2());
  EXPECT_EQ(lin.text,
            "Team : Portugal, Team Portugal Record Home : 2, Team Portugal Record Away : 1. ");
}

TEST(LinearizerConfig, Validation) {
  auto cfg = v1();
  EXPECT_NO_THROW(cfg.validate());
  cfg.budget_min = 400;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = v1();
  cfg.unit_sep = cfg.row_terminator;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = v1();
  cfg.header_cell_sep = "";
  EXPECT_THROW(cfg.validate(), Error);
  cfg = v1();
  cfg.max_sequence_words = 200;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(ComposeRecord, TitleOnly) {
  const auto g = TableGrid::from_texts({{"Team", "Pts"}, {"Portugal", "6"}});
  DescriptionSet d;
  d.title = "UEFA 유로 2004";
  const auto rec = compose_pretraining_record(d, linearize_v1(g, classify_header(g), v1()), v1());
  EXPECT_EQ(rec.text, "UEFA 유로 2004 Team : Portugal, Pts : 6. ");
  EXPECT_EQ(rec.word_count, 9);
}

TEST(ComposeRecord, AbsentPiecesLeaveNoDoubleSpaces) {
  const auto g = TableGrid::from_texts({{"Team"}, {"Portugal"}});
  DescriptionSet d;
  d.title = "T";
  d.headings = {"A", "B"};
  const auto rec = compose_pretraining_record(d, linearize_v1(g, classify_header(g), v1()), v1());
  EXPECT_EQ(rec.text, "T A B Team : Portugal. ");
  EXPECT_EQ(rec.text.find("  "), std::string::npos);
}

TEST(ComposeRecord, LongParagraphIsTrimmed) {
  const auto g = TableGrid::from_texts({{"Team", "Pts"}, {"Portugal", "6"}});
  const auto lin = linearize_v1(g, classify_header(g), v1());
  DescriptionSet d;
  d.title = "T";
  std::vector<std::string> words;
  for (int i = 1; i <= 600; ++i) words.push_back("w" + std::to_string(i));
  d.first_paragraph = text::join(words, " ");
  const auto rec = compose_pretraining_record(d, lin, v1());
  EXPECT_EQ(rec.word_count, 512);
  EXPECT_EQ(tablin_test::count_runs(rec.text), 512);
  ASSERT_GE(rec.text.size(), lin.text.size());
  EXPECT_EQ(rec.text.substr(rec.text.size() - lin.text.size()), lin.text);
  // 1 title word + 505 paragraph words + 6 table words.
  EXPECT_NE(rec.text.find("T w1 w2 "), std::string::npos);
  EXPECT_NE(rec.text.find("w505 Team"), std::string::npos);
  EXPECT_EQ(rec.text.find("w506"), std::string::npos);
}

TEST(LinearizeProperties, EveryRowCarriesEveryHeader) {
  for (const auto& t : tablin_test::corpus_tables(TABLIN_CORPUS_DIR)) {
    for (const auto& cfg : {v1(), v2()}) {
      const auto lin = linearize(t.grid, t.headers, cfg);
      const auto rows = tablin_test::reference_rows(t.grid, t.headers.flat_headers,
                                                    t.headers.header_row_count, cfg);
      std::string expected;
      for (int i = 0; i < lin.rows_emitted; ++i) expected += rows[static_cast<std::size_t>(i)];
      EXPECT_EQ(lin.text, expected) << t.id;
      for (int i = 0; i < lin.rows_emitted; ++i) {
        for (const auto& h : t.headers.flat_headers) {
          EXPECT_NE(rows[static_cast<std::size_t>(i)].find(h + cfg.header_cell_sep), std::string::npos);
        }
      }
    }
  }
}

TEST(LinearizeProperties, BudgetMonotonic) {
  const auto g = wide_grid(14, 7);
  const auto h = classify_header(g);
  int last = 0;
  for (int budget = 33; budget <= 470; budget += 7) {
    auto cfg = v2();
    cfg.budget_min = std::min(cfg.budget_min, budget);
    cfg.budget_max = budget;
    cfg.max_sequence_words = std::max(512, budget);
    const auto lin = linearize(g, h, cfg);
    EXPECT_GE(lin.rows_emitted, last);
    EXPECT_LE(lin.word_count, budget);
    last = lin.rows_emitted;
  }
  EXPECT_EQ(last, 14);
}
