#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "tablin/dataset_io.hpp"
#include "tablin/extractor.hpp"
#include "tablin/linearizer.hpp"
#include "tablin/metrics.hpp"
#include "tablin/templates.hpp"

namespace tablin {

// Runs fn(i) for i in [0, n) on up to `jobs` threads and returns the results
// in index order. The exception of the lowest failing index is rethrown.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, int jobs, Fn fn) {
  std::vector<std::optional<T>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  std::vector<T> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

struct ManifestEntry {
  std::string url;
  std::string title;
  std::filesystem::path path;
};

// `url<TAB>title<TAB>path` per line; relative paths resolve against the
// manifest's directory. Blank lines and '#' comments are skipped.
std::vector<ManifestEntry> read_input_manifest(const std::filesystem::path& manifest);

struct ExtractResult {
  std::vector<ExtractedTable> tables;
  std::size_t documents = 0;
};

ExtractResult run_extract(const std::vector<ManifestEntry>& docs, int jobs);

struct LinearizeResult {
  std::vector<PretrainRecord> records;
  // Tables that had no data rows or whose first row overflowed the budget.
  std::size_t skipped = 0;
};

LinearizeResult run_linearize(const std::vector<ExtractedTable>& tables,
                              const LinearizerConfig& cfg, int jobs);

struct GenqaOptions {
  std::vector<int> levels = {1, 2, 3, 4, 5};
  std::uint64_t seed = 0;
  int per_level_cap = 0;
  std::string source = "generated";
};

// Tables failing filter_for_qa are skipped; levels with nothing generable
// for a table are skipped for that table.
QADatasetFile run_genqa(const std::vector<ExtractedTable>& tables, const TemplateSet& templates,
                        const GenqaOptions& options, int jobs);

struct RecordCheck {
  std::string id;
  bool consistent = false;
  std::string detail;
};

std::vector<RecordCheck> run_validate(const QADatasetFile& qa,
                                      const std::vector<ExtractedTable>& tables);

// pred_jsonl holds {"id": ..., "answer": ...} lines. Gold records without an
// id are addressed by their index in `data`. Missing predictions score 0.
EvalReport run_eval(std::string_view pred_jsonl, const QADatasetFile& gold);

}  // namespace tablin
