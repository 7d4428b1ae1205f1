#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "tablin/dataset_io.hpp"
#include "tablin/errors.hpp"
#include "tablin/extractor.hpp"
#include "tablin/numeric.hpp"
#include "tablin/qa_oracle.hpp"
#include "tablin/question_gen.hpp"
#include "tablin/templates.hpp"

using namespace tablin;

TEST(GridProperties, NormalizedGridsAreValid) {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 300; ++i) {
    const auto raw = tablin_test::random_raw_table(rng);
    const auto g = normalize_grid(raw);
    EXPECT_TRUE(validate_grid(g).valid());
    EXPECT_EQ(classify_header(g).flat_headers.size(), static_cast<std::size_t>(g.n_cols()));

    std::string literal;
    for (const auto& row : g.rows()) {
      for (const auto& c : row) {
        if (c.origin == CellOrigin::Literal) literal += c.text;
      }
    }
    std::string source;
    for (const auto& row : raw.rows) {
      for (const auto& c : row) source += c.text;
    }
    EXPECT_EQ(literal, source);
  }
}

namespace {

struct Generated {
  std::map<int, std::vector<QARecord>> by_level;
};

Generated generate_all(const TableGrid& g, std::uint64_t seed) {
  Generated out;
  const auto h = classify_header(g);
  DescriptionSet d;
  d.title = "표";
  GenerateOptions o;
  o.seed = seed;
  o.table_id = "rand";
  for (int level = 1; level <= 5; ++level) {
    try {
      out.by_level[level] = generate(g, h, d, default_templates(), level, o);
    } catch (const Error&) {
    }
  }
  return out;
}

}  // namespace

TEST(GenerationProperties, LevelPartitionAndDeterminism) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 40; ++i) {
    const auto tg = tablin_test::random_qa_grid(rng, 6 + i % 9, 2 + i % 9);
    const auto a = generate_all(tg.grid, static_cast<std::uint64_t>(i));
    const auto b = generate_all(tg.grid, static_cast<std::uint64_t>(i));
    for (const auto& [level, recs] : a.by_level) {
      EXPECT_EQ(recs, b.by_level.at(level));
      for (const auto& r : recs) EXPECT_EQ(r.level, level);
    }
  }
}

TEST(GenerationProperties, L1L3Duality) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 60; ++i) {
    const auto tg = tablin_test::random_qa_grid(rng, 6 + i % 9, 2 + i % 9);
    const auto gen = generate_all(tg.grid, 1);
    if (!gen.by_level.count(1)) continue;
    const auto& l3 = gen.by_level.count(3) ? gen.by_level.at(3) : std::vector<QARecord>{};
    for (const auto& r1 : gen.by_level.at(1)) {
      const int c = r1.query->target_col;
      int occurrences = 0;
      for (int r = 2; r <= tg.grid.n_rows(); ++r) occurrences += tg.grid.text(c, r) == r1.answer;
      if (occurrences != 1 || r1.answer.empty()) continue;
      const auto it = std::find_if(l3.begin(), l3.end(), [&](const QARecord& r3) {
        return r3.query->filter_col == c && r3.query->match_value == r1.answer;
      });
      ASSERT_NE(it, l3.end()) << r1.question;
      EXPECT_EQ(it->answer, *r1.query->match_value);
    }
  }
}

TEST(GenerationProperties, NoTiedExtrema) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 80; ++i) {
    const auto tg = tablin_test::random_qa_grid(rng, 6 + i % 9, 2 + i % 9);
    const auto gen = generate_all(tg.grid, 2);
    if (!gen.by_level.count(5)) continue;
    for (const auto& r : gen.by_level.at(5)) {
      if (r.query->agg != AggKind::Min && r.query->agg != AggKind::Max) continue;
      EXPECT_EQ(tablin_test::brute_exec(*r.query, tg).size(), 1u) << r.question;
    }
  }
}

TEST(IoProperties, WriteReadWriteIsStable) {
  std::mt19937_64 rng(10);
  QADatasetFile f;
  for (int i = 0; i < 10; ++i) {
    const auto tg = tablin_test::random_qa_grid(rng, 7, 4);
    for (const auto& [level, recs] : generate_all(tg.grid, 3).by_level) {
      f.data.insert(f.data.end(), recs.begin(), recs.end());
    }
  }
  const auto once = serialize_qa(f);
  EXPECT_EQ(serialize_qa(parse_qa(once)), once);
}
