// tablin: table linearization and table-QA corpus toolkit.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "tablin/dataset_io.hpp"
#include "tablin/errors.hpp"
#include "tablin/pipeline.hpp"
#include "tablin/templates.hpp"
#include "tablin/text.hpp"

namespace fs = std::filesystem;
using namespace tablin;

namespace {

struct Inputs {
  std::string manifest;
  std::string tables;
  std::vector<std::string> html_files;
};

void require_parent(const std::string& out) {
  const fs::path parent = fs::absolute(out).parent_path();
  if (!fs::is_directory(parent)) {
    throw Error(ErrorKind::Io, "output directory does not exist: " + parent.string());
  }
}

std::vector<ExtractedTable> load_tables(const Inputs& in, int jobs) {
  if (!in.tables.empty()) return read_tables(in.tables);
  std::vector<ManifestEntry> docs;
  if (!in.manifest.empty()) docs = read_input_manifest(in.manifest);
  for (const auto& f : in.html_files) {
    if (!fs::exists(f)) throw Error(ErrorKind::Io, "no such file " + f);
    docs.push_back({f, fs::path(f).stem().string(), f});
  }
  return run_extract(docs, jobs).tables;
}

std::vector<int> parse_levels(const std::string& list) {
  std::vector<int> levels;
  for (const auto& part : text::split(list, ',')) {
    if (part.size() != 1 || part[0] < '1' || part[0] > '5') {
      throw CLI::ValidationError("--levels", "levels are 1-5, got '" + part + "'");
    }
    levels.push_back(part[0] - '0');
  }
  return levels;
}

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("tablin");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("TABLIN_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();

  CLI::App app{"Table linearization and table question answering corpus toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with option defaults, e.g. [genqa] seed=7");
  int jobs = 1;

  Inputs in;
  std::string out;

  auto* extract = app.add_subcommand("extract", "Parse HTML documents into a tables file");
  extract->add_option("--input-manifest", in.manifest, "url<TAB>title<TAB>path per line");
  extract->add_option("html", in.html_files, "HTML files (url = path)");
  extract->add_option("--out", out, "tables JSONL")->required();
  extract->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  LinearizerConfig lin_cfg;
  std::string format = "v1";
  std::string manifest_out;
  auto* linearize = app.add_subcommand("linearize", "Write pre-training JSONL");
  linearize->add_option("--tables", in.tables, "tables JSONL from extract");
  linearize->add_option("--input-manifest", in.manifest, "extract on the fly");
  linearize->add_option("--format", format, "v1 or v2")->check(CLI::IsMember({"v1", "v2"}));
  linearize->add_option("--budget-max", lin_cfg.budget_max, "word cap per table string");
  linearize->add_option("--budget-min", lin_cfg.budget_min, "lower end of the word window");
  linearize->add_option("--max-sequence-words", lin_cfg.max_sequence_words, "cap per record");
  linearize->add_option("--header-cell-sep", lin_cfg.header_cell_sep);
  linearize->add_option("--unit-sep", lin_cfg.unit_sep);
  linearize->add_option("--row-terminator", lin_cfg.row_terminator);
  linearize->add_option("--desc-table-sep", lin_cfg.desc_table_sep);
  linearize->add_option("--out", out, "pre-training JSONL")->required();
  linearize->add_option("--manifest", manifest_out, "config echo (default: manifest.json next to --out)");
  linearize->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

  std::string levels = "1,2,3,4,5";
  std::string templates_dir;
  GenqaOptions gen;
  auto* genqa = app.add_subcommand("genqa", "Generate Level1-5 QA pairs");
  genqa->add_option("--tables", in.tables, "tables JSONL from extract");
  genqa->add_option("--input-manifest", in.manifest, "extract on the fly");
  genqa->add_option("--levels", levels, "comma-separated levels");
  genqa->add_option("--templates", templates_dir, "template directory (default: bundled)");
  genqa->add_option("--seed", gen.seed);
  genqa->add_option("--per-level-cap", gen.per_level_cap, "max records per level and table (0 = all)")
      ->check(CLI::NonNegativeNumber);
  genqa->add_option("--source", gen.source, "source label stored on every record");
  genqa->add_option("--out", out, "QA JSON")->required();
  genqa->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

  std::string qa_path;
  auto* validate = app.add_subcommand("validate", "Check QA records against the oracle");
  validate->add_option("--qa", qa_path)->required();
  validate->add_option("--tables", in.tables)->required();
  validate->add_option("--out", out, "per-record JSONL report (default: stdout)");

  std::string pred_path;
  std::string gold_path;
  bool as_json = false;
  auto* eval = app.add_subcommand("eval", "EM/F1 report");
  eval->add_option("--pred", pred_path, "JSONL of {id, answer}")->required();
  eval->add_option("--gold", gold_path, "QA JSON")->required();
  eval->add_option("--out", out, "write the JSON report here");
  eval->add_flag("--json", as_json, "print JSON instead of the table");

  std::string stats_path;
  double split_ratio = -1;
  std::uint64_t split_seed = 0;
  auto* stats_cmd = app.add_subcommand("stats", "Corpus statistics");
  stats_cmd->add_option("file", stats_path, "QA JSON or pre-training JSONL")->required();
  stats_cmd->add_option("--split", split_ratio, "test ratio; partitions by table")
      ->check(CLI::Range(0.0, 1.0));
  stats_cmd->add_option("--seed", split_seed);
  stats_cmd->add_option("--out", out, "directory for train.json/test.json when splitting");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*extract) {
      if (in.manifest.empty() && in.html_files.empty()) {
        std::cerr << "extract: give --input-manifest or HTML files\n";
        return 2;
      }
      require_parent(out);
      const auto tables = load_tables(in, jobs);
      write_tables(out, tables);
      nlohmann::ordered_json summary;
      summary["tables"] = tables.size();
      std::cout << summary.dump() << "\n";
    } else if (*linearize) {
      if (in.tables.empty() && in.manifest.empty()) {
        std::cerr << "linearize: give --tables or --input-manifest\n";
        return 2;
      }
      lin_cfg.format = *parse_format(format);
      lin_cfg.validate();
      require_parent(out);
      const auto result = run_linearize(load_tables(in, jobs), lin_cfg, jobs);
      write_pretrain(out, result.records);
      if (manifest_out.empty()) manifest_out = (fs::absolute(out).parent_path() / "manifest.json").string();
      write_text_file(manifest_out, serialize_manifest({lin_cfg, result.records.size(), result.skipped}));
      nlohmann::ordered_json summary;
      summary["records"] = result.records.size();
      summary["skipped"] = result.skipped;
      std::cout << summary.dump() << "\n";
    } else if (*genqa) {
      if (in.tables.empty() && in.manifest.empty()) {
        std::cerr << "genqa: give --tables or --input-manifest\n";
        return 2;
      }
      gen.levels = parse_levels(levels);
      require_parent(out);
      const TemplateSet templates = templates_dir.empty() ? default_templates() : load_templates(templates_dir);
      const QADatasetFile file = run_genqa(load_tables(in, jobs), templates, gen, jobs);
      write_qa(out, file);
      nlohmann::ordered_json summary;
      summary["records"] = file.data.size();
      std::cout << summary.dump() << "\n";
    } else if (*validate) {
      const auto checks = run_validate(read_qa(qa_path), read_tables(in.tables));
      std::string report;
      std::size_t bad = 0;
      for (const auto& c : checks) {
        nlohmann::ordered_json j;
        j["id"] = c.id;
        j["status"] = c.consistent ? "Consistent" : "Inconsistent";
        if (!c.consistent) j["detail"] = c.detail;
        report += j.dump() + "\n";
        bad += c.consistent ? 0 : 1;
      }
      if (out.empty()) {
        std::cout << report;
      } else {
        require_parent(out);
        write_text_file(out, report);
      }
      nlohmann::ordered_json summary;
      summary["records"] = checks.size();
      summary["inconsistent"] = bad;
      std::cerr << summary.dump() << "\n";
      return bad == 0 ? 0 : 1;
    } else if (*eval) {
      const EvalReport report = run_eval(read_text_file(pred_path), read_qa(gold_path));
      const std::string js = render_report_json(report);
      if (!out.empty()) {
        require_parent(out);
        write_text_file(out, js);
      }
      std::cout << (as_json ? js : render_report_table(report));
    } else if (*stats_cmd) {
      const std::string content = read_text_file(stats_path);
      const bool is_qa = !content.empty() && content.find_first_not_of(" \t\r\n") != std::string::npos &&
                         content[content.find_first_not_of(" \t\r\n")] == '{' &&
                         content.find("\"data\"") != std::string::npos &&
                         fs::path(stats_path).extension() != ".jsonl";
      StatsReport report;
      if (is_qa) {
        const QADatasetFile file = parse_qa(content);
        report = stats(file);
        if (split_ratio >= 0) {
          report.split = split_by_table(file.data, split_ratio, split_seed);
          if (!out.empty()) {
            if (!fs::is_directory(out)) throw Error(ErrorKind::Io, "not a directory: " + out);
            write_qa(fs::path(out) / "train.json", {file.version, report.split->train});
            write_qa(fs::path(out) / "test.json", {file.version, report.split->test});
          }
        }
      } else {
        if (split_ratio >= 0) {
          std::cerr << "stats: --split applies to QA files only\n";
          return 2;
        }
        report = stats(read_pretrain(stats_path));
      }
      std::cout << render_stats_json(report);
    }
  } catch (const Error& e) {
    nlohmann::ordered_json j;
    j["error"] = std::string(error_kind_name(e.kind()));
    j["message"] = e.what();
    std::cerr << j.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace) << "\n";
    return 1;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
