#include "tablin/pipeline.hpp"

#include <map>

#include <spdlog/spdlog.h>

#include "json.hpp"
#include "tablin/errors.hpp"
#include "tablin/qa_oracle.hpp"
#include "tablin/question_gen.hpp"
#include "tablin/text.hpp"

namespace tablin {

std::vector<ManifestEntry> read_input_manifest(const std::filesystem::path& manifest) {
  const std::string content = read_text_file(manifest);
  const auto base = manifest.parent_path();
  std::vector<ManifestEntry> out;
  std::size_t line_no = 0;
  for (std::string line : text::split(content, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = text::split(line, '\t');
    if (fields.size() != 3) {
      throw Error(ErrorKind::SchemaViolation, manifest.string() + " line " + std::to_string(line_no) +
                                                  ": expected url<TAB>title<TAB>path");
    }
    std::filesystem::path p = fields[2];
    if (p.is_relative()) p = base / p;
    if (!std::filesystem::exists(p)) {
      throw Error(ErrorKind::Io, manifest.string() + " line " + std::to_string(line_no) +
                                     ": no such file " + p.string());
    }
    out.push_back({fields[0], fields[1], std::move(p)});
  }
  return out;
}

ExtractResult run_extract(const std::vector<ManifestEntry>& docs, int jobs) {
  auto per_doc = parallel_map<std::vector<ExtractedTable>>(docs.size(), jobs, [&](std::size_t i) {
    const SourceDocument doc{docs[i].url, docs[i].title, read_text_file(docs[i].path)};
    try {
      auto tables = extract_tables(doc);
      spdlog::debug("{}: {} tables", doc.url, tables.size());
      for (const auto& t : tables) {
        for (const auto& w : t.warnings) spdlog::debug("{}: {}", t.id, w);
      }
      return tables;
    } catch (const Error& e) {
      throw Error(e.kind(), docs[i].path.string() + ": " + e.what());
    }
  });
  ExtractResult result;
  result.documents = docs.size();
  for (auto& tables : per_doc) {
    for (auto& t : tables) result.tables.push_back(std::move(t));
  }
  return result;
}

LinearizeResult run_linearize(const std::vector<ExtractedTable>& tables,
                              const LinearizerConfig& cfg, int jobs) {
  cfg.validate();
  auto per_table = parallel_map<std::optional<PretrainRecord>>(tables.size(), jobs, [&](std::size_t i) {
    const ExtractedTable& t = tables[i];
    std::optional<PretrainRecord> rec;
    try {
      const LinearizedTable lin = linearize(t.grid, t.headers, cfg);
      if (lin.rows_emitted == 0) return rec;
      if (lin.rows_truncated > 0) {
        spdlog::debug("{}: {} of {} rows dropped at {} words", t.id, lin.rows_truncated,
                      lin.rows_emitted + lin.rows_truncated, lin.word_count);
      }
      rec = compose_pretraining_record(t.descriptions, lin, cfg);
      rec->url = t.url;
      rec->provenance = t.id;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetUnsatisfiable) throw;
      spdlog::warn("{}: {}", t.id, e.what());
    }
    return rec;
  });
  LinearizeResult result;
  for (auto& r : per_table) {
    if (r) {
      result.records.push_back(std::move(*r));
    } else {
      ++result.skipped;
    }
  }
  return result;
}

QADatasetFile run_genqa(const std::vector<ExtractedTable>& tables, const TemplateSet& templates,
                        const GenqaOptions& options, int jobs) {
  auto per_table = parallel_map<std::vector<QARecord>>(tables.size(), jobs, [&](std::size_t i) {
    const ExtractedTable& t = tables[i];
    std::vector<QARecord> out;
    if (!filter_for_qa(t.grid)) return out;
    GenerateOptions gen;
    gen.seed = options.seed;
    gen.per_level_cap = options.per_level_cap;
    gen.table_id = t.id;
    gen.url = t.url;
    gen.source = options.source;
    for (int level : options.levels) {
      try {
        auto recs = generate(t.grid, t.headers, t.descriptions, templates, level, gen);
        out.insert(out.end(), std::make_move_iterator(recs.begin()), std::make_move_iterator(recs.end()));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NothingGenerable && e.kind() != ErrorKind::NoUsableColumn) throw;
        spdlog::debug("{} level {}: {}", t.id, level, e.what());
      }
    }
    return out;
  });
  QADatasetFile file;
  for (auto& recs : per_table) {
    file.data.insert(file.data.end(), std::make_move_iterator(recs.begin()),
                     std::make_move_iterator(recs.end()));
  }
  return file;
}

std::vector<RecordCheck> run_validate(const QADatasetFile& qa,
                                      const std::vector<ExtractedTable>& tables) {
  std::map<std::string, const ExtractedTable*> by_id;
  for (const auto& t : tables) by_id.emplace(t.id, &t);
  std::vector<RecordCheck> out;
  for (std::size_t i = 0; i < qa.data.size(); ++i) {
    const QARecord& rec = qa.data[i];
    RecordCheck check;
    check.id = rec.id.empty() ? std::to_string(i) : rec.id;
    const ExtractedTable* table = nullptr;
    if (auto it = by_id.find(rec.table_id); it != by_id.end()) {
      table = it->second;
    } else {
      for (const auto& t : tables) {
        if (t.url == rec.url && t.grid.texts() == rec.context) {
          table = &t;
          break;
        }
      }
    }
    if (!table) {
      check.detail = "table not found";
    } else if (!rec.query) {
      check.detail = "missing query";
    } else {
      const Consistency c = validate_record(rec, table->grid, table->headers, *rec.query);
      check.consistent = c.consistent;
      check.detail = c.detail;
    }
    out.push_back(std::move(check));
  }
  return out;
}

EvalReport run_eval(std::string_view pred_jsonl, const QADatasetFile& gold) {
  std::map<std::string, std::string> preds;
  std::size_t line_no = 0;
  for (const auto& line : text::split(pred_jsonl, '\n')) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::SchemaViolation, "pred line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("answer") || !j["answer"].is_string() || !j.contains("id")) {
      throw Error(ErrorKind::SchemaViolation,
                  "pred line " + std::to_string(line_no) + ": expected {\"id\", \"answer\"}");
    }
    const std::string id = j["id"].is_string() ? j["id"].get<std::string>() : j["id"].dump();
    preds[id] = j["answer"].get<std::string>();
  }
  std::vector<EvalItem> items;
  for (std::size_t i = 0; i < gold.data.size(); ++i) {
    const QARecord& rec = gold.data[i];
    const std::string id = rec.id.empty() ? std::to_string(i) : rec.id;
    const auto it = preds.find(id);
    items.push_back({it == preds.end() ? std::string{} : it->second, rec.answer, rec.level,
                     rec.source.empty() ? "(none)" : rec.source});
  }
  return evaluate(items);
}

}  // namespace tablin
