#include <gtest/gtest.h>

#include <filesystem>
#include <set>

#include "json.hpp"
#include "support.hpp"
#include "tablin/dataset_io.hpp"
#include "tablin/errors.hpp"

using namespace tablin;

namespace {

QARecord sample(int i, std::string table) {
  QARecord r;
  r.id = table + "/L1/" + std::to_string(i);
  r.url = "https://ko.wikipedia.org/wiki/UEFA_유로_2004";
  r.title = "UEFA 유로 2004";
  r.context = {{"Team", "Pts"}, {"Portugal", "6"}};
  r.question = "포르투갈의 승점은?";
  r.answer = "6";
  r.answer_cell = CellRef{2, 2};
  r.level = 1 + i % 5;
  r.table_id = std::move(table);
  r.source = "generated";
  StructuredQuery q;
  q.match_value = "Portugal";
  q.target_col = 2;
  q.other_col = 2;
  r.query = q;
  return r;
}

std::string without_c_row(const std::string& s) {
  auto j = nlohmann::json::parse(s);
  j["data"][0]["C"][1].erase(1);
  return j.dump();
}

}  // namespace

TEST(QaIo, EmptyFile) {
  const auto s = serialize_qa({});
  EXPECT_NE(s.find("\"data\": []"), std::string::npos) << s;
  EXPECT_EQ(s.back(), '\n');
  EXPECT_TRUE(parse_qa(s).data.empty());
}

TEST(QaIo, RoundTrip) {
  QADatasetFile f{"1.0", {sample(0, "t#0")}};
  const auto s = serialize_qa(f);
  EXPECT_EQ(parse_qa(s).data, f.data);
  EXPECT_EQ(serialize_qa(parse_qa(s)), s);
}

TEST(QaIo, KeyOrder) {
  const auto s = serialize_qa({"1.0", {sample(0, "t#0")}});
  const auto pos = [&](const char* k) { return s.find(std::string("\"") + k + "\":"); };
  EXPECT_LT(pos("version"), pos("data"));
  EXPECT_LT(pos("U"), pos("T"));
  EXPECT_LT(pos("T"), pos("C"));
  EXPECT_LT(pos("C"), pos("Q"));
  EXPECT_LT(pos("Q"), pos("A"));
  EXPECT_LT(pos("A"), pos("level"));
}

TEST(QaIo, MinimalExternalRecord) {
  const auto f = parse_qa(R"({"version": "1.0", "data": [
    {"U": "u", "T": "t", "C": [["a"], ["b"]], "Q": "q?", "A": "b", "level": 3}]})");
  ASSERT_EQ(f.data.size(), 1u);
  EXPECT_FALSE(f.data[0].answer_cell);
  EXPECT_FALSE(f.data[0].query);
  EXPECT_EQ(f.data[0].level, 3);
}

TEST(QaIo, NonRectangularContext) {
  const auto bad = without_c_row(serialize_qa({"1.0", {sample(0, "t#0")}}));
  try {
    parse_qa(bad);
    FAIL() << bad;
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SchemaViolation);
    EXPECT_EQ(std::string(e.what()).rfind("data[0].C row 2", 0), 0u) << e.what();
  }
}

TEST(QaIo, LevelRangeAndTypes) {
  EXPECT_THROW(parse_qa(R"({"version":"1.0","data":[{"U":"u","T":"t","C":[["a"]],"Q":"q","A":"a","level":6}]})"),
               Error);
  EXPECT_THROW(parse_qa(R"({"version":"1.0","data":[{"U":"u","T":"t","C":[["a"]],"Q":"q","A":1,"level":1}]})"),
               Error);
  EXPECT_THROW(parse_qa(R"({"version":"1.0","data":{}})"), Error);
  EXPECT_THROW(parse_qa("not json"), Error);
}

TEST(PretrainIo, RoundTrip) {
  PretrainRecord r{"T Team : Portugal. ", 4, "u", "T", Format::V2, "u#t0"};
  const auto line = serialize_pretrain_record(r);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  EXPECT_EQ(parse_pretrain_record(line), r);
  for (const char* key : {"\"text\"", "\"word_count\"", "\"url\"", "\"title\"", "\"format\":\"v2\""}) {
    EXPECT_NE(line.find(key), std::string::npos) << key;
  }
}

TEST(TablesIo, RoundTrip) {
  for (const auto& t : tablin_test::corpus_tables(TABLIN_CORPUS_DIR)) {
    const auto line = serialize_table(t);
    const auto back = parse_table(line);
    EXPECT_EQ(back.grid, t.grid);
    EXPECT_EQ(back.headers, t.headers);
    EXPECT_EQ(back.descriptions, t.descriptions);
    EXPECT_EQ(serialize_table(back), line);
  }
}

TEST(Stats, ByLevel) {
  QADatasetFile f;
  for (int i = 0; i < 5; ++i) f.data.push_back(sample(i, "t#" + std::to_string(i)));
  const auto s = stats(f);
  ASSERT_EQ(s.by_level.size(), 5u);
  for (const auto& [level, n] : s.by_level) EXPECT_EQ(n, 1u);
  EXPECT_EQ(s.tables, 5u);
}

TEST(Stats, WordCounts) {
  std::vector<PretrainRecord> recs;
  for (int n : {100, 200, 300}) {
    std::string text;
    for (int i = 0; i < n; ++i) text += "w ";
    recs.push_back({text, n, "u", "t", Format::V1, ""});
  }
  const auto s = stats(recs);
  ASSERT_TRUE(s.word_counts);
  EXPECT_DOUBLE_EQ(s.word_counts->mean, 200);
  EXPECT_DOUBLE_EQ(s.word_counts->max, 300);
  EXPECT_DOUBLE_EQ(s.word_counts->min, 100);
}

TEST(Split, FiveTables) {
  std::vector<QARecord> recs;
  for (int i = 0; i < 5; ++i) recs.push_back(sample(i, "t#" + std::to_string(i)));
  const auto s = split_by_table(recs, 0.2, 9);
  EXPECT_EQ(s.train.size(), 4u);
  EXPECT_EQ(s.test.size(), 1u);
}

TEST(Split, ByTableDeterministicDisjoint) {
  std::vector<QARecord> recs;
  for (int i = 0; i < 60; ++i) recs.push_back(sample(i, "t#" + std::to_string(i % 13)));
  const auto a = split_by_table(recs, 0.2, 4);
  const auto b = split_by_table(recs, 0.2, 4);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.test, b.test);
  EXPECT_EQ(a.train.size() + a.test.size(), recs.size());
  std::set<std::string> train_tables;
  std::set<std::string> test_tables;
  for (const auto& r : a.train) train_tables.insert(r.table_id);
  for (const auto& r : a.test) test_tables.insert(r.table_id);
  for (const auto& t : test_tables) EXPECT_FALSE(train_tables.count(t)) << t;
  EXPECT_EQ(test_tables.size(), 3u);  // round(0.2 * 13)
  EXPECT_EQ(a.test_tables, 3u);
}

TEST(Split, KeyWithoutTableId) {
  auto a = sample(0, "");
  auto b = sample(1, "");
  EXPECT_EQ(table_key(a), table_key(b));
  b.context[1][1] = "7";
  EXPECT_NE(table_key(a), table_key(b));
}

TEST(Manifest, TrainingConstants) {
  const auto m = serialize_manifest({LinearizerConfig{}, 3, 1});
  for (const char* s : {"512", "0.15", "119547", "\" : \"", "300"}) {
    EXPECT_NE(m.find(s), std::string::npos) << s;
  }
}

TEST(Files, MissingFileIsIoError) {
  try {
    read_qa("/nonexistent/x.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Io);
  }
}
