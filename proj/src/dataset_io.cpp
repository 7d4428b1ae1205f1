#include "tablin/dataset_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tablin/errors.hpp"
#include "tablin/rng.hpp"
#include "tablin/text.hpp"

namespace tablin {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::SchemaViolation, path + ": " + what);
}

std::string dump(const json& j, int indent) {
  return j.dump(indent, ' ', false, json::error_handler_t::replace);
}

json parse_json(std::string_view content, const std::string& where) {
  try {
    return json::parse(content.begin(), content.end());
  } catch (const json::parse_error& e) {
    schema(where, std::string("invalid JSON: ") + e.what());
  }
}

const json& member(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) schema(path, "expected object");
  const auto it = obj.find(key);
  if (it == obj.end()) schema(path + "." + key, "missing");
  return *it;
}

std::string get_string(const json& obj, const char* key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_string()) schema(path + "." + key, "expected string");
  return v.get<std::string>();
}

int get_int(const json& obj, const char* key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_number_integer()) schema(path + "." + key, "expected integer");
  return v.get<int>();
}

std::optional<std::string> opt_string(const json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) return std::nullopt;
  return get_string(obj, key, path);
}

std::vector<std::string> string_list(const json& v, const std::string& path) {
  if (!v.is_array()) schema(path, "expected array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) schema(path + "[" + std::to_string(i) + "]", "expected string");
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

json query_to_json(const StructuredQuery& q) {
  json j;
  j["kind"] = to_string(q.kind);
  j["base_col"] = q.base_col;
  if (q.other_col) j["other_col"] = *q.other_col;
  j["filter_col"] = q.filter_col;
  if (q.match_value) j["match_value"] = *q.match_value;
  if (q.condition) {
    json c;
    c["op"] = to_string(q.condition->op);
    c["operands"] = q.condition->operands;
    j["condition"] = c;
  }
  if (q.agg) j["agg"] = to_string(*q.agg);
  j["target_col"] = q.target_col;
  return j;
}

StructuredQuery query_from_json(const json& j, const std::string& path) {
  StructuredQuery q;
  const auto kind = parse_query_kind(get_string(j, "kind", path));
  if (!kind) schema(path + ".kind", "unknown query kind");
  q.kind = *kind;
  q.base_col = get_int(j, "base_col", path);
  if (j.contains("other_col")) q.other_col = get_int(j, "other_col", path);
  q.filter_col = get_int(j, "filter_col", path);
  q.match_value = opt_string(j, "match_value", path);
  if (j.contains("condition")) {
    const json& c = j["condition"];
    const std::string cp = path + ".condition";
    const auto op = parse_compare_op(get_string(c, "op", cp));
    if (!op) schema(cp + ".op", "unknown operator");
    const json& ops = member(c, "operands", cp);
    if (!ops.is_array()) schema(cp + ".operands", "expected array");
    Condition cond{*op, {}};
    for (const auto& o : ops) {
      if (!o.is_number()) schema(cp + ".operands", "expected numbers");
      cond.operands.push_back(o.get<double>());
    }
    const std::size_t need = *op == CompareOp::BETWEEN ? 2 : 1;
    if (cond.operands.size() != need) schema(cp + ".operands", "expected " + std::to_string(need));
    q.condition = std::move(cond);
  }
  if (j.contains("agg")) {
    const auto agg = parse_agg_kind(get_string(j, "agg", path));
    if (!agg) schema(path + ".agg", "unknown aggregate");
    q.agg = agg;
  }
  q.target_col = get_int(j, "target_col", path);
  if (q.kind == QueryKind::SelectWhere && !q.match_value && !q.condition) {
    schema(path, "SelectWhere needs match_value or condition");
  }
  if (q.kind == QueryKind::Aggregate && !q.agg) schema(path, "Aggregate needs agg");
  return q;
}

json record_to_json(const QARecord& r) {
  json j;
  if (!r.id.empty()) j["id"] = r.id;
  j["U"] = r.url;
  j["T"] = r.title;
  j["C"] = r.context;
  j["Q"] = r.question;
  j["A"] = r.answer;
  j["level"] = r.level;
  if (r.answer_cell) j["answer_cell"] = {r.answer_cell->col, r.answer_cell->row};
  if (!r.table_id.empty()) j["table_id"] = r.table_id;
  if (!r.source.empty()) j["source"] = r.source;
  if (r.query) j["query"] = query_to_json(*r.query);
  return j;
}

QARecord record_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) schema(path, "expected object");
  QARecord r;
  r.id = opt_string(j, "id", path).value_or("");
  r.url = get_string(j, "U", path);
  r.title = get_string(j, "T", path);
  const json& c = member(j, "C", path);
  if (!c.is_array() || c.empty()) schema(path + ".C", "expected non-empty two-dimensional list");
  std::size_t width = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::string rp = path + ".C row " + std::to_string(i + 1);
    auto row = string_list(c[i], rp);
    if (i == 0) width = row.size();
    if (row.size() != width || width == 0) {
      schema(rp, "length " + std::to_string(row.size()) + " ≠ " + std::to_string(width));
    }
    r.context.push_back(std::move(row));
  }
  r.question = get_string(j, "Q", path);
  r.answer = get_string(j, "A", path);
  r.level = get_int(j, "level", path);
  if (r.level < 1 || r.level > 5) schema(path + ".level", "must be 1-5");
  if (j.contains("answer_cell")) {
    const json& a = j["answer_cell"];
    if (!a.is_array() || a.size() != 2 || !a[0].is_number_integer() || !a[1].is_number_integer()) {
      schema(path + ".answer_cell", "expected [col, row]");
    }
    CellRef ref{a[0].get<int>(), a[1].get<int>()};
    if (ref.row < 1 || ref.row > static_cast<int>(r.context.size()) || ref.col < 1 ||
        ref.col > static_cast<int>(width)) {
      schema(path + ".answer_cell", "outside C");
    }
    r.answer_cell = ref;
  }
  r.table_id = opt_string(j, "table_id", path).value_or("");
  r.source = opt_string(j, "source", path).value_or("");
  if (j.contains("query")) r.query = query_from_json(j["query"], path + ".query");
  return r;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

std::string serialize_qa(const QADatasetFile& file) {
  json j;
  j["version"] = file.version;
  json data = json::array();
  for (const auto& r : file.data) data.push_back(record_to_json(r));
  j["data"] = std::move(data);
  return dump(j, 2) + "\n";
}

QADatasetFile parse_qa(std::string_view content) {
  const json j = parse_json(content, "$");
  if (!j.is_object()) schema("$", "expected object");
  QADatasetFile file;
  file.version = get_string(j, "version", "$");
  const json& data = member(j, "data", "$");
  if (!data.is_array()) schema("data", "expected array");
  for (std::size_t i = 0; i < data.size(); ++i) {
    file.data.push_back(record_from_json(data[i], "data[" + std::to_string(i) + "]"));
  }
  return file;
}

void write_qa(const std::filesystem::path& path, const QADatasetFile& file) {
  write_text_file(path, serialize_qa(file));
}

QADatasetFile read_qa(const std::filesystem::path& path) { return parse_qa(read_text_file(path)); }

std::string serialize_pretrain_record(const PretrainRecord& rec) {
  json j;
  j["text"] = rec.text;
  j["word_count"] = rec.word_count;
  j["url"] = rec.url;
  j["title"] = rec.title;
  j["format"] = to_string(rec.format);
  if (!rec.provenance.empty()) j["table_id"] = rec.provenance;
  return dump(j, -1);
}

PretrainRecord parse_pretrain_record(std::string_view line) {
  const json j = parse_json(line, "$");
  PretrainRecord r;
  r.text = get_string(j, "text", "$");
  r.word_count = get_int(j, "word_count", "$");
  r.url = get_string(j, "url", "$");
  r.title = get_string(j, "title", "$");
  const auto fmt = parse_format(get_string(j, "format", "$"));
  if (!fmt) schema("$.format", "expected v1 or v2");
  r.format = *fmt;
  r.provenance = opt_string(j, "table_id", "$").value_or("");
  return r;
}

namespace {

template <typename T, typename Fn>
std::vector<T> read_lines(const std::filesystem::path& path, Fn parse_line) {
  const std::string content = read_text_file(path);
  std::vector<T> out;
  std::size_t line_no = 0;
  for (const auto& line : text::split(content, '\n')) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(parse_line(line));
    } catch (const Error& e) {
      throw Error(e.kind(), path.string() + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

void write_pretrain(const std::filesystem::path& path, const std::vector<PretrainRecord>& recs) {
  std::string out;
  for (const auto& r : recs) out += serialize_pretrain_record(r) + "\n";
  write_text_file(path, out);
}

std::vector<PretrainRecord> read_pretrain(const std::filesystem::path& path) {
  return read_lines<PretrainRecord>(path, [](const std::string& l) { return parse_pretrain_record(l); });
}

std::string serialize_table(const ExtractedTable& t) {
  json j;
  j["id"] = t.id;
  j["url"] = t.url;
  j["title"] = t.title;
  j["kind"] = to_string(t.grid.kind());
  if (t.grid.caption()) j["caption"] = *t.grid.caption();
  json h;
  h["structure"] = to_string(t.headers.structure);
  h["header_row_count"] = t.headers.header_row_count;
  h["flat_headers"] = t.headers.flat_headers;
  h["inferred"] = t.headers.inferred;
  h["warnings"] = t.headers.warnings;
  j["header"] = h;
  json d;
  d["title"] = t.descriptions.title;
  if (t.descriptions.first_paragraph) d["first_paragraph"] = *t.descriptions.first_paragraph;
  d["headings"] = t.descriptions.headings;
  if (t.descriptions.caption) d["caption"] = *t.descriptions.caption;
  j["descriptions"] = d;
  j["warnings"] = t.warnings;
  j["n_cols"] = t.grid.n_cols();
  json rows = json::array();
  for (const auto& row : t.grid.rows()) {
    json r = json::array();
    for (const auto& c : row) r.push_back({c.text, c.is_header, c.origin == CellOrigin::SpanCopy});
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return dump(j, -1);
}

ExtractedTable parse_table(std::string_view line) {
  const json j = parse_json(line, "$");
  ExtractedTable t;
  t.id = get_string(j, "id", "$");
  t.url = get_string(j, "url", "$");
  t.title = get_string(j, "title", "$");
  const auto kind = parse_table_kind(get_string(j, "kind", "$"));
  if (!kind) schema("$.kind", "unknown table kind");
  const auto caption = opt_string(j, "caption", "$");

  const json& h = member(j, "header", "$");
  const auto structure = parse_header_structure(get_string(h, "structure", "$.header"));
  if (!structure) schema("$.header.structure", "unknown structure");
  t.headers.structure = *structure;
  t.headers.header_row_count = get_int(h, "header_row_count", "$.header");
  t.headers.flat_headers = string_list(member(h, "flat_headers", "$.header"), "$.header.flat_headers");
  const json& inferred = member(h, "inferred", "$.header");
  if (!inferred.is_boolean()) schema("$.header.inferred", "expected boolean");
  t.headers.inferred = inferred.get<bool>();
  t.headers.warnings = string_list(member(h, "warnings", "$.header"), "$.header.warnings");

  const json& d = member(j, "descriptions", "$");
  t.descriptions.title = get_string(d, "title", "$.descriptions");
  t.descriptions.first_paragraph = opt_string(d, "first_paragraph", "$.descriptions");
  t.descriptions.headings = string_list(member(d, "headings", "$.descriptions"), "$.descriptions.headings");
  t.descriptions.caption = opt_string(d, "caption", "$.descriptions");
  t.warnings = string_list(member(j, "warnings", "$"), "$.warnings");

  const int n_cols = get_int(j, "n_cols", "$");
  const json& rows = member(j, "rows", "$");
  if (!rows.is_array()) schema("$.rows", "expected array");
  std::vector<std::vector<Cell>> cells;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string rp = "$.rows[" + std::to_string(r) + "]";
    if (!rows[r].is_array()) schema(rp, "expected array");
    std::vector<Cell> row;
    for (const auto& c : rows[r]) {
      if (!c.is_array() || c.size() != 3 || !c[0].is_string() || !c[1].is_boolean() ||
          !c[2].is_boolean()) {
        schema(rp, "cell must be [text, header, span_copy]");
      }
      row.push_back(Cell{c[0].get<std::string>(), c[1].get<bool>(),
                         c[2].get<bool>() ? CellOrigin::SpanCopy : CellOrigin::Literal});
    }
    cells.push_back(std::move(row));
  }
  t.grid = TableGrid(std::move(cells), n_cols, *kind, caption);
  const auto report = validate_table(t.grid, t.headers);
  if (!report.valid()) schema("$.rows", report.errors().front());
  return t;
}

void write_tables(const std::filesystem::path& path, const std::vector<ExtractedTable>& tables) {
  std::string out;
  for (const auto& t : tables) out += serialize_table(t) + "\n";
  write_text_file(path, out);
}

std::vector<ExtractedTable> read_tables(const std::filesystem::path& path) {
  return read_lines<ExtractedTable>(path, [](const std::string& l) { return parse_table(l); });
}

std::string serialize_manifest(const ManifestInfo& info) {
  const LinearizerConfig& c = info.config;
  json j;
  j["format_version"] = kQaFormatVersion;
  json lin;
  lin["format"] = to_string(c.format);
  lin["header_cell_sep"] = c.header_cell_sep;
  lin["unit_sep"] = c.unit_sep;
  lin["row_terminator"] = c.row_terminator;
  lin["desc_table_sep"] = c.desc_table_sep;
  lin["budget_min"] = c.budget_min;
  lin["budget_max"] = c.budget_max;
  lin["max_sequence_words"] = c.max_sequence_words;
  j["linearizer"] = lin;
  json train;
  train["max_sequence_length"] = kTrainMaxSequenceLength;
  train["mask_rate"] = kTrainMaskRate;
  train["vocabulary_size"] = kTrainVocabularySize;
  j["training_constants"] = train;
  j["records"] = info.records;
  j["tables_skipped"] = info.tables_skipped;
  return dump(j, 2) + "\n";
}

std::string table_key(const QARecord& rec) {
  if (!rec.table_id.empty()) return rec.table_id;
  std::string flat;
  for (const auto& row : rec.context) {
    for (const auto& cell : row) {
      flat += cell;
      flat.push_back('\x1f');
    }
    flat.push_back('\x1e');
  }
  return rec.url + "#" + std::to_string(text::fnv1a(flat));
}

Split split_by_table(const std::vector<QARecord>& records, double ratio, std::uint64_t seed) {
  if (!(ratio >= 0.0 && ratio <= 1.0)) {
    throw Error(ErrorKind::InvalidConfig, "split ratio must be within [0, 1]");
  }
  std::set<std::string> keys_set;
  for (const auto& r : records) keys_set.insert(table_key(r));
  std::vector<std::string> keys(keys_set.begin(), keys_set.end());
  Rng rng(derive_seed(seed, "split"));
  rng.shuffle(keys);
  const auto n_test = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(keys.size())));
  const std::set<std::string> test_keys(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(n_test));

  Split split;
  split.test_tables = n_test;
  split.train_tables = keys.size() - n_test;
  for (const auto& r : records) {
    (test_keys.count(table_key(r)) ? split.test : split.train).push_back(r);
  }
  return split;
}

namespace {

Distribution distribution(std::vector<double> values) {
  Distribution d;
  d.n = values.size();
  if (values.empty()) return d;
  std::sort(values.begin(), values.end());
  d.min = values.front();
  d.max = values.back();
  double sum = 0;
  for (double v : values) sum += v;
  d.mean = sum / static_cast<double>(values.size());
  const std::size_t mid = values.size() / 2;
  d.median = values.size() % 2 ? values[mid] : (values[mid - 1] + values[mid]) / 2;
  return d;
}

}  // namespace

StatsReport stats(const QADatasetFile& file) {
  StatsReport s;
  s.kind = "qa";
  s.records = file.data.size();
  std::map<std::string, std::string> sizes;
  for (const auto& r : file.data) {
    ++s.by_level[r.level];
    ++s.by_source[r.source.empty() ? "(none)" : r.source];
    const std::size_t cols = r.context.empty() ? 0 : r.context.front().size();
    sizes.emplace(table_key(r), std::to_string(r.context.size()) + "x" + std::to_string(cols));
  }
  s.tables = sizes.size();
  for (const auto& [key, size] : sizes) ++s.table_sizes[size];
  return s;
}

StatsReport stats(const std::vector<PretrainRecord>& records) {
  StatsReport s;
  s.kind = "pretrain";
  s.records = records.size();
  std::vector<double> counts;
  std::set<std::string> tables;
  for (const auto& r : records) {
    const int words = count_budget_words(r.text);
    counts.push_back(words);
    ++s.word_histogram[(words / 50) * 50];
    ++s.by_format[std::string(to_string(r.format))];
    ++s.by_source[r.url];
    tables.insert(r.provenance.empty() ? r.url + "#" + std::to_string(text::fnv1a(r.text))
                                       : r.provenance);
  }
  s.tables = tables.size();
  s.word_counts = distribution(std::move(counts));
  return s;
}

std::string render_stats_json(const StatsReport& s) {
  json j;
  j["kind"] = s.kind;
  j["records"] = s.records;
  j["tables"] = s.tables;
  if (s.kind == "qa") {
    json levels = json::object();
    for (const auto& [l, n] : s.by_level) levels[std::to_string(l)] = n;
    j["by_level"] = levels;
    j["by_source"] = s.by_source;
    j["table_sizes"] = s.table_sizes;
  } else {
    j["by_format"] = s.by_format;
    j["by_url"] = s.by_source;
    if (s.word_counts) {
      json w;
      w["n"] = s.word_counts->n;
      w["min"] = s.word_counts->min;
      w["max"] = s.word_counts->max;
      w["mean"] = s.word_counts->mean;
      w["median"] = s.word_counts->median;
      j["word_counts"] = w;
    }
    json hist = json::object();
    for (const auto& [bucket, n] : s.word_histogram) hist[std::to_string(bucket)] = n;
    j["word_histogram"] = hist;
  }
  if (s.split) {
    json sp;
    sp["train_records"] = s.split->train.size();
    sp["test_records"] = s.split->test.size();
    sp["train_tables"] = s.split->train_tables;
    sp["test_tables"] = s.split->test_tables;
    j["split"] = sp;
  }
  return dump(j, 2) + "\n";
}

}  // namespace tablin
