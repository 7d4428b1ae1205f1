#include "tablin/linearizer.hpp"

#include "tablin/errors.hpp"
#include "tablin/text.hpp"

namespace tablin {

std::string_view to_string(Format f) { return f == Format::V1 ? "v1" : "v2"; }

std::optional<Format> parse_format(std::string_view s) {
  if (s == "v1" || s == "V1") return Format::V1;
  if (s == "v2" || s == "V2") return Format::V2;
  return std::nullopt;
}

void LinearizerConfig::validate() const {
  if (!(0 < budget_min && budget_min <= budget_max && budget_max <= max_sequence_words)) {
    throw Error(ErrorKind::InvalidConfig,
                "budget must satisfy 0 < budget_min <= budget_max <= max_sequence_words (got " +
                    std::to_string(budget_min) + ", " + std::to_string(budget_max) + ", " +
                    std::to_string(max_sequence_words) + ")");
  }
  const std::string* seps[] = {&header_cell_sep, &unit_sep, &row_terminator, &desc_table_sep};
  for (const auto* s : seps) {
    if (s->empty()) throw Error(ErrorKind::InvalidConfig, "separators must be non-empty");
  }
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (*seps[i] == *seps[j]) {
        throw Error(ErrorKind::InvalidConfig, "separators must be mutually distinct");
      }
    }
  }
}

int count_budget_words(std::string_view text) { return static_cast<int>(text::count_words(text)); }

namespace {

// Word count of a + b given the counts of each part.
int joined_count(std::string_view a, int a_words, std::string_view b, int b_words) {
  int total = a_words + b_words;
  if (a_words > 0 && b_words > 0 && !text::ends_with_space(a) && !text::starts_with_space(b)) {
    --total;
  }
  return total;
}

std::string render_row(const TableGrid& grid, const HeaderInfo& headers,
                       const LinearizerConfig& cfg, int row, Format format) {
  std::string out;
  const std::string& key_header = headers.flat_headers.at(0);
  const std::string& key_value = grid.text(1, row);
  for (int c = 1; c <= grid.n_cols(); ++c) {
    if (c > 1) out += cfg.unit_sep;
    if (format == Format::V2 && c > 1) {
      out += key_header;
      if (!key_value.empty()) {
        out += ' ';
        out += key_value;
      }
      out += ' ';
    }
    out += headers.flat_headers.at(static_cast<std::size_t>(c - 1));
    out += cfg.header_cell_sep;
    out += grid.text(c, row);
  }
  out += cfg.row_terminator;
  return out;
}

LinearizedTable linearize_impl(const TableGrid& grid, const HeaderInfo& headers,
                               const LinearizerConfig& cfg, Format format) {
  cfg.validate();
  if (cfg.format != format) {
    throw Error(ErrorKind::InvalidConfig, "config format " + std::string(to_string(cfg.format)) +
                                              " does not match linearizer " +
                                              std::string(to_string(format)));
  }
  if (static_cast<int>(headers.flat_headers.size()) != grid.n_cols()) {
    throw Error(ErrorKind::InvalidConfig, "flat_headers length does not match n_cols");
  }
  LinearizedTable lin;
  lin.format = format;
  const int first = headers.header_row_count + 1;
  for (int r = first; r <= grid.n_rows(); ++r) {
    const std::string row = render_row(grid, headers, cfg, r, format);
    const int row_words = count_budget_words(row);
    const int total = joined_count(lin.text, lin.word_count, row, row_words);
    if (total > cfg.budget_max) {
      if (lin.rows_emitted == 0) {
        throw Error(ErrorKind::BudgetUnsatisfiable,
                    "first data row needs " + std::to_string(row_words) + " words, budget is " +
                        std::to_string(cfg.budget_max));
      }
      lin.rows_truncated = grid.n_rows() - r + 1;
      break;
    }
    lin.text += row;
    lin.word_count = total;
    ++lin.rows_emitted;
  }
  return lin;
}

}  // namespace

LinearizedTable linearize_v1(const TableGrid& grid, const HeaderInfo& headers,
                             const LinearizerConfig& cfg) {
  return linearize_impl(grid, headers, cfg, Format::V1);
}

LinearizedTable linearize_v2(const TableGrid& grid, const HeaderInfo& headers,
                             const LinearizerConfig& cfg) {
  return linearize_impl(grid, headers, cfg, Format::V2);
}

LinearizedTable linearize(const TableGrid& grid, const HeaderInfo& headers,
                          const LinearizerConfig& cfg) {
  return linearize_impl(grid, headers, cfg, cfg.format);
}

namespace {

std::string keep_words(std::string_view s, int n) {
  if (n <= 0) return {};
  const auto words = text::split_words(s);
  if (static_cast<int>(words.size()) <= n) return std::string(s);
  const auto& last = words[static_cast<std::size_t>(n - 1)];
  return std::string(s.substr(0, static_cast<std::size_t>(last.data() + last.size() - s.data())));
}

std::string serialize(const DescriptionSet& d) { return text::join(d.ordered_texts(), " "); }

}  // namespace

PretrainRecord compose_pretraining_record(const DescriptionSet& desc, const LinearizedTable& lin,
                                          const LinearizerConfig& cfg) {
  PretrainRecord rec;
  rec.format = lin.format;
  rec.title = desc.title;

  auto build = [&](const DescriptionSet& d) { return serialize(d) + cfg.desc_table_sep + lin.text; };

  DescriptionSet d = desc;
  std::string out = build(d);
  int words = count_budget_words(out);
  const int limit = cfg.max_sequence_words;

  if (words > limit && d.first_paragraph) {
    const int para_words = count_budget_words(*d.first_paragraph);
    const int keep = para_words - (words - limit);
    if (keep > 0) {
      d.first_paragraph = keep_words(*d.first_paragraph, keep);
    } else {
      d.first_paragraph.reset();
    }
    out = build(d);
    words = count_budget_words(out);
  }
  if (words > limit) {
    // Headings and caption alone overflow: cut the description prefix.
    const std::string prefix = serialize(d);
    const int excess = words - limit;
    const int keep = count_budget_words(prefix) - excess;
    out = keep_words(prefix, keep) + cfg.desc_table_sep + lin.text;
    words = count_budget_words(out);
  }
  rec.text = std::move(out);
  rec.word_count = words;
  return rec;
}

}  // namespace tablin
