#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tablin/extractor.hpp"
#include "tablin/linearizer.hpp"
#include "tablin/table_model.hpp"

namespace tablin {

inline constexpr std::string_view kQaFormatVersion = "1.0";

// {"version": ..., "data": [ {U, T, C, Q, A, level, ...} ]}
struct QADatasetFile {
  std::string version{kQaFormatVersion};
  std::vector<QARecord> data;

  friend bool operator==(const QADatasetFile&, const QADatasetFile&) = default;
};

// Canonical form: fixed key order, two-space indent, raw UTF-8, trailing
// newline. Optional keys are omitted when empty.
std::string serialize_qa(const QADatasetFile& file);

// Throws Error(SchemaViolation) naming the offending path, e.g.
// "data[0].C row 2".
QADatasetFile parse_qa(std::string_view content);

void write_qa(const std::filesystem::path& path, const QADatasetFile& file);
QADatasetFile read_qa(const std::filesystem::path& path);

std::string serialize_pretrain_record(const PretrainRecord& rec);
PretrainRecord parse_pretrain_record(std::string_view line);
void write_pretrain(const std::filesystem::path& path, const std::vector<PretrainRecord>& recs);
std::vector<PretrainRecord> read_pretrain(const std::filesystem::path& path);

// One ExtractedTable per line; produced by `extract`, consumed by the other
// subcommands.
std::string serialize_table(const ExtractedTable& table);
ExtractedTable parse_table(std::string_view line);
void write_tables(const std::filesystem::path& path, const std::vector<ExtractedTable>& tables);
std::vector<ExtractedTable> read_tables(const std::filesystem::path& path);

// Config echo for downstream trainers.
struct ManifestInfo {
  LinearizerConfig config;
  std::size_t records = 0;
  std::size_t tables_skipped = 0;
};
inline constexpr int kTrainMaxSequenceLength = 512;
inline constexpr double kTrainMaskRate = 0.15;
inline constexpr int kTrainVocabularySize = 119547;

std::string serialize_manifest(const ManifestInfo& info);

// Partition key of a record: its table_id, or the URL plus a hash of the
// context when the file came from elsewhere.
std::string table_key(const QARecord& rec);

struct Split {
  std::vector<QARecord> train;
  std::vector<QARecord> test;
  std::size_t train_tables = 0;
  std::size_t test_tables = 0;
};

// round(ratio * tables) whole tables go to test; records keep file order.
Split split_by_table(const std::vector<QARecord>& records, double ratio, std::uint64_t seed);

struct Distribution {
  std::size_t n = 0;
  double min = 0;
  double max = 0;
  double mean = 0;
  double median = 0;
};

struct StatsReport {
  std::string kind;  // "qa" or "pretrain"
  std::size_t records = 0;
  std::size_t tables = 0;
  std::map<int, std::size_t> by_level;
  std::map<std::string, std::size_t> by_source;
  std::map<std::string, std::size_t> table_sizes;  // "<rows>x<cols>" -> tables
  std::map<std::string, std::size_t> by_format;
  std::optional<Distribution> word_counts;
  std::map<int, std::size_t> word_histogram;  // bucket start (width 50) -> records
  std::optional<Split> split;
};

StatsReport stats(const QADatasetFile& file);
StatsReport stats(const std::vector<PretrainRecord>& records);

std::string render_stats_json(const StatsReport& report);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace tablin
