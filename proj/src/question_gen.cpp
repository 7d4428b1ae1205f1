#include "tablin/question_gen.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>

#include "tablin/errors.hpp"
#include "tablin/qa_oracle.hpp"
#include "tablin/text.hpp"

namespace tablin {

namespace {

struct Candidate {
  int level = 1;
  StructuredQuery query;
  std::string answer;
  std::optional<CellRef> answer_cell;
  std::optional<AggKind> agg;
  // Slots other than {condition}.
  SlotValues slots;
  // Column header for the {condition} phrase, when the query has one.
  std::string condition_col;
};

struct Context {
  const TableGrid& grid;
  const HeaderInfo& headers;
  const DescriptionSet& desc;
  const TemplateSet& templates;
  int first_row;
  int base;
  std::vector<NumericColumn> numeric;

  const std::string& header(int col) const {
    return headers.flat_headers.at(static_cast<std::size_t>(col - 1));
  }
};

std::map<std::string, int> value_counts(const TableGrid& grid, int col, int first_row) {
  std::map<std::string, int> counts;
  for (int r = first_row; r <= grid.n_rows(); ++r) {
    const std::string& t = grid.text(col, r);
    if (!t.empty()) ++counts[t];
  }
  return counts;
}

bool conditionable(NumericKind k) { return k != NumericKind::Date; }
bool averageable(NumericKind k) {
  return k == NumericKind::Integer || k == NumericKind::Decimal || k == NumericKind::Money;
}

// The value a rendered operand reads back as, so question text and query
// agree exactly.
double as_rendered(double v) { return std::strtod(render_number(v, 2).c_str(), nullptr); }

std::vector<int> matching_rows(const NumericColumn& nc, const Condition& cond) {
  std::vector<int> rows;
  for (const auto& [row, v] : nc.parsed_values) {
    if (cond.holds(v)) rows.push_back(row);
  }
  return rows;
}

std::vector<double> distinct_sorted(const NumericColumn& nc) {
  std::vector<double> d;
  for (const auto& [row, v] : nc.parsed_values) d.push_back(v);
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  return d;
}

// A condition that `row` alone satisfies: the top value via GE, the bottom
// value via LE, an interior value via BETWEEN its neighbours' midpoints.
std::optional<Condition> isolating_condition(const NumericColumn& nc, int row) {
  const auto it = std::find_if(nc.parsed_values.begin(), nc.parsed_values.end(),
                               [&](const auto& p) { return p.first == row; });
  if (it == nc.parsed_values.end()) return std::nullopt;
  const double v = it->second;
  const auto d = distinct_sorted(nc);
  const auto idx = static_cast<std::size_t>(std::lower_bound(d.begin(), d.end(), v) - d.begin());
  Condition cond;
  if (idx + 1 == d.size()) {
    cond = {CompareOp::GE, {as_rendered(v)}};
  } else if (idx == 0) {
    cond = {CompareOp::LE, {as_rendered(v)}};
  } else {
    cond = {CompareOp::BETWEEN, {as_rendered((d[idx - 1] + v) / 2), as_rendered((v + d[idx + 1]) / 2)}};
  }
  const auto rows = matching_rows(nc, cond);
  if (rows.size() != 1 || rows.front() != row) return std::nullopt;
  return cond;
}

std::string agg_label(const Lexicon& lex, AggKind kind) {
  const std::string key = "@" + std::string(to_string(kind));
  for (const auto& [term, alts] : lex.synonyms) {
    if (term == key) return alts.front();
  }
  switch (kind) {
    case AggKind::Min: return "가장 낮은";
    case AggKind::Max: return "가장 높은";
    case AggKind::Count: return "개수";
    case AggKind::Avg: return "평균";
  }
  return {};
}

SlotValues base_slots(const Context& ctx) {
  SlotValues s;
  s["title"] = ctx.desc.title;
  s["base_col"] = ctx.header(ctx.base);
  return s;
}

void level1(const Context& ctx, std::vector<Candidate>& out) {
  const auto counts = value_counts(ctx.grid, ctx.base, ctx.first_row);
  for (int c = ctx.base + 1; c <= ctx.grid.n_cols(); ++c) {
    for (int r = ctx.first_row; r <= ctx.grid.n_rows(); ++r) {
      const std::string& v = ctx.grid.text(ctx.base, r);
      const std::string& a = ctx.grid.text(c, r);
      if (v.empty() || a.empty() || counts.at(v) != 1) continue;
      Candidate cand;
      cand.level = 1;
      cand.query = {QueryKind::SelectWhere, ctx.base, c, ctx.base, v, std::nullopt, std::nullopt, c};
      cand.answer = a;
      cand.answer_cell = CellRef{c, r};
      cand.slots = base_slots(ctx);
      cand.slots["other_col"] = ctx.header(c);
      cand.slots["value"] = v;
      out.push_back(std::move(cand));
    }
  }
}

void level2(const Context& ctx, std::vector<Candidate>& out) {
  for (const auto& nc : ctx.numeric) {
    if (!conditionable(nc.kind)) continue;
    for (int c = 1; c <= ctx.grid.n_cols(); ++c) {
      if (c == nc.col) continue;
      for (const auto& [row, value] : nc.parsed_values) {
        const std::string& a = ctx.grid.text(c, row);
        if (a.empty()) continue;
        auto cond = isolating_condition(nc, row);
        if (!cond) continue;
        Candidate cand;
        cand.level = 2;
        cand.query = {QueryKind::SelectWhere, ctx.base, c, nc.col, std::nullopt, std::move(cond),
                      std::nullopt, c};
        cand.answer = a;
        cand.answer_cell = CellRef{c, row};
        cand.slots = base_slots(ctx);
        cand.slots["other_col"] = ctx.header(c);
        cand.condition_col = ctx.header(nc.col);
        out.push_back(std::move(cand));
      }
    }
  }
}

void level3(const Context& ctx, std::vector<Candidate>& out) {
  for (int c = 1; c <= ctx.grid.n_cols(); ++c) {
    if (c == ctx.base) continue;
    const auto counts = value_counts(ctx.grid, c, ctx.first_row);
    for (int r = ctx.first_row; r <= ctx.grid.n_rows(); ++r) {
      const std::string& v = ctx.grid.text(c, r);
      const std::string& a = ctx.grid.text(ctx.base, r);
      if (v.empty() || a.empty() || counts.at(v) != 1) continue;
      Candidate cand;
      cand.level = 3;
      cand.query = {QueryKind::SelectWhere, ctx.base, c, c, v, std::nullopt, std::nullopt, ctx.base};
      cand.answer = a;
      cand.answer_cell = CellRef{ctx.base, r};
      cand.slots = base_slots(ctx);
      cand.slots["other_col"] = ctx.header(c);
      cand.slots["value"] = v;
      out.push_back(std::move(cand));
    }
  }
}

void level5(const Context& ctx, std::vector<Candidate>& out) {
  for (const auto& nc : ctx.numeric) {
    if (nc.col == ctx.base || nc.parsed_values.empty()) continue;
    for (AggKind agg : {AggKind::Min, AggKind::Max, AggKind::Count, AggKind::Avg}) {
      if (ctx.templates.for_level(5, agg).empty()) continue;
      Candidate cand;
      cand.level = 5;
      cand.agg = agg;
      cand.slots = base_slots(ctx);
      cand.slots["other_col"] = ctx.header(nc.col);
      cand.slots["agg"] = agg_label(ctx.templates.lexicon, agg);
      cand.query = {QueryKind::Aggregate, ctx.base, nc.col, nc.col, std::nullopt, std::nullopt,
                    agg, ctx.base};
      if (agg == AggKind::Min || agg == AggKind::Max) {
        const auto best = agg == AggKind::Min
                              ? std::min_element(nc.parsed_values.begin(), nc.parsed_values.end(),
                                                 [](auto& a, auto& b) { return a.second < b.second; })
                              : std::max_element(nc.parsed_values.begin(), nc.parsed_values.end(),
                                                 [](auto& a, auto& b) { return a.second < b.second; });
        const double extreme = best->second;
        const auto ties = std::count_if(nc.parsed_values.begin(), nc.parsed_values.end(),
                                        [&](const auto& p) { return p.second == extreme; });
        if (ties != 1) continue;
        const std::string& a = ctx.grid.text(ctx.base, best->first);
        if (a.empty()) continue;
        cand.answer = a;
        cand.answer_cell = CellRef{ctx.base, best->first};
      } else if (agg == AggKind::Count) {
        if (!conditionable(nc.kind)) continue;
        const auto d = distinct_sorted(nc);
        Condition cond{CompareOp::GE, {as_rendered(d[d.size() / 2])}};
        cand.answer = std::to_string(matching_rows(nc, cond).size());
        cand.query.condition = std::move(cond);
        cand.condition_col = ctx.header(nc.col);
      } else {
        if (!averageable(nc.kind)) continue;
        double sum = 0;
        for (const auto& [row, v] : nc.parsed_values) sum += v;
        cand.answer = render_number(sum / static_cast<double>(nc.parsed_values.size()), 2);
        cand.query.target_col = nc.col;
      }
      out.push_back(std::move(cand));
    }
  }
}

std::vector<Candidate> candidates(const Context& ctx, int level) {
  std::vector<Candidate> out;
  switch (level) {
    case 1: level1(ctx, out); break;
    case 2: level2(ctx, out); break;
    case 3: level3(ctx, out); break;
    case 5: level5(ctx, out); break;
    default: break;
  }
  return out;
}

std::optional<std::string> render_condition(const Context& ctx, const Candidate& cand, Rng& rng) {
  const Condition& cond = *cand.query.condition;
  const auto options = ctx.templates.for_op(cond.op);
  if (options.empty()) return std::nullopt;
  const ConditionTemplate& t = *options[rng.below(options.size())];
  SlotValues s;
  s["col"] = cand.condition_col;
  s["value"] = render_number(cond.operands.at(0), 2);
  s["low"] = render_number(cond.operands.at(0), 2);
  if (cond.operands.size() > 1) s["high"] = render_number(cond.operands[1], 2);
  return render_template(t.pattern, s);
}

// Renders `cand` with the template chosen by `rng`. For level 4 a variation
// is applied to the chosen source template first.
std::optional<QARecord> realize(const Context& ctx, const Candidate& cand, int level, Rng& rng) {
  const auto options = ctx.templates.for_level(cand.level, cand.agg);
  if (options.empty()) return std::nullopt;
  const QuestionTemplate& t = *options[rng.below(options.size())];

  SlotValues slots = cand.slots;
  if (cand.query.condition) {
    auto phrase = render_condition(ctx, cand, rng);
    if (!phrase) return std::nullopt;
    slots["condition"] = std::move(*phrase);
  }
  std::string question = render_template(t.pattern, slots);

  if (level == 4) {
    std::vector<Variation> order = {Variation::SlotOrderInversion, Variation::SynonymSubstitution,
                                    Variation::PolitenessSuffix};
    rng.shuffle(order);
    std::optional<std::string> varied;
    for (Variation v : order) {
      auto pattern = vary_pattern(t.pattern, v, ctx.templates.lexicon, rng);
      if (!pattern) continue;
      std::string q = render_template(*pattern, slots);
      if (q != question) {
        varied = std::move(q);
        break;
      }
    }
    if (!varied) return std::nullopt;
    question = std::move(*varied);
  }

  QARecord rec;
  rec.title = ctx.desc.title;
  rec.context = ctx.grid.texts();
  rec.question = std::move(question);
  rec.answer = cand.answer;
  rec.answer_cell = cand.answer_cell;
  rec.level = level;
  rec.query = cand.query;
  return rec;
}

// Position of `term` in `pattern` outside any {slot}, or npos.
std::size_t find_outside_slots(std::string_view pattern, std::string_view term) {
  std::size_t pos = 0;
  while ((pos = pattern.find(term, pos)) != std::string_view::npos) {
    const std::size_t open = pattern.rfind('{', pos);
    const std::size_t close = pattern.rfind('}', pos);
    const bool inside = open != std::string_view::npos &&
                        (close == std::string_view::npos || close < open);
    const bool overlaps = pattern.substr(pos, term.size()).find_first_of("{}") != std::string_view::npos;
    if (!inside && !overlaps) return pos;
    ++pos;
  }
  return std::string_view::npos;
}

}  // namespace

int select_base_column(const TableGrid& grid, const HeaderInfo& headers) {
  const int first = headers.header_row_count + 1;
  const int data_rows = grid.n_rows() - headers.header_row_count;
  int best_col = 0;
  std::size_t best_distinct = 0;
  for (int c = 1; c <= grid.n_cols(); ++c) {
    std::set<std::string> distinct;
    int non_empty = 0;
    for (int r = first; r <= grid.n_rows(); ++r) {
      const std::string& t = grid.text(c, r);
      if (t.empty()) continue;
      ++non_empty;
      distinct.insert(t);
    }
    const bool all_distinct = data_rows > 0 && non_empty == data_rows &&
                              static_cast<int>(distinct.size()) == data_rows;
    if (all_distinct && !numeric_column(grid, headers.header_row_count, c)) return c;
    if (distinct.size() > best_distinct) {
      best_distinct = distinct.size();
      best_col = c;
    }
  }
  if (best_col == 0) throw Error(ErrorKind::NoUsableColumn, "every column is empty");
  return best_col;
}

std::optional<std::string> vary_pattern(std::string_view pattern, Variation variation,
                                        const Lexicon& lexicon, Rng& rng) {
  switch (variation) {
    case Variation::SlotOrderInversion: {
      auto chunks = text::split(pattern, ' ');
      if (chunks.size() < 3) return std::nullopt;
      std::string first = chunks.front();
      chunks.erase(chunks.begin());
      chunks.insert(chunks.end() - 1, std::move(first));
      std::string out = text::join(chunks, " ");
      if (out == pattern) return std::nullopt;
      return out;
    }
    case Variation::SynonymSubstitution: {
      std::vector<std::pair<std::size_t, const std::pair<std::string, std::vector<std::string>>*>> hits;
      for (const auto& entry : lexicon.synonyms) {
        if (entry.first.empty() || entry.first[0] == '@') continue;
        const std::size_t pos = find_outside_slots(pattern, entry.first);
        if (pos != std::string_view::npos) hits.emplace_back(pos, &entry);
      }
      if (hits.empty()) return std::nullopt;
      const auto& [pos, entry] = hits[rng.below(hits.size())];
      const auto& alts = entry->second;
      std::string out(pattern);
      out.replace(pos, entry->first.size(), alts[rng.below(alts.size())]);
      return out;
    }
    case Variation::PolitenessSuffix: {
      for (const auto& [ending, alts] : lexicon.endings) {
        if (pattern.size() < ending.size() ||
            pattern.substr(pattern.size() - ending.size()) != ending) {
          continue;
        }
        std::string out(pattern.substr(0, pattern.size() - ending.size()));
        out += alts[rng.below(alts.size())];
        return out;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::vector<QARecord> generate(const TableGrid& grid, const HeaderInfo& headers,
                               const DescriptionSet& desc, const TemplateSet& templates, int level,
                               const GenerateOptions& options) {
  if (level < 1 || level > 5) throw Error(ErrorKind::InvalidConfig, "level must be 1-5");
  const std::vector<int> source_levels = level == 4 ? std::vector<int>{1, 2, 3}
                                                    : std::vector<int>{level};
  bool have_templates = false;
  for (int l : source_levels) have_templates = have_templates || !templates.for_level(l).empty();
  if (!have_templates) {
    throw Error(ErrorKind::InvalidConfig, "no templates for level " + std::to_string(level));
  }

  const Context ctx{grid,
                    headers,
                    desc,
                    templates,
                    headers.header_row_count + 1,
                    select_base_column(grid, headers),
                    detect_numeric_columns(grid, headers.header_row_count)};

  std::vector<Candidate> cands;
  for (int l : source_levels) {
    if (templates.for_level(l).empty()) continue;
    auto c = candidates(ctx, l);
    cands.insert(cands.end(), std::make_move_iterator(c.begin()), std::make_move_iterator(c.end()));
  }

  Rng rng(derive_seed(options.seed, options.table_id, static_cast<std::uint64_t>(level)));
  std::vector<QARecord> records;
  for (const Candidate& cand : cands) {
    if (auto rec = realize(ctx, cand, level, rng)) records.push_back(std::move(*rec));
  }
  if (records.empty()) {
    throw Error(ErrorKind::NothingGenerable,
                "no level " + std::to_string(level) + " question survives the skip rules");
  }
  if (options.per_level_cap > 0 && records.size() > static_cast<std::size_t>(options.per_level_cap)) {
    std::vector<QARecord> kept;
    for (std::size_t i : rng.sample(records.size(), static_cast<std::size_t>(options.per_level_cap))) {
      kept.push_back(std::move(records[i]));
    }
    records = std::move(kept);
  }

  for (std::size_t i = 0; i < records.size(); ++i) {
    QARecord& rec = records[i];
    rec.id = options.table_id + "/L" + std::to_string(level) + "/" + std::to_string(i + 1);
    rec.url = options.url;
    rec.table_id = options.table_id;
    rec.source = options.source;
    const Consistency check = validate_record(rec, grid, headers, *rec.query);
    if (!check.consistent) {
      throw std::logic_error("generated record " + rec.id + " fails the oracle: " + check.detail);
    }
  }
  return records;
}

}  // namespace tablin
