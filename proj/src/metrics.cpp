#include "tablin/metrics.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

#include "json.hpp"

#include "tablin/errors.hpp"
#include "tablin/text.hpp"

namespace tablin {

namespace {

constexpr std::array<std::pair<std::string_view, std::string_view>, 9> kQuotes = {{
    {"\"", "\""},
    {"'", "'"},
    {"\xE2\x80\x9C", "\xE2\x80\x9D"},  // “ ”
    {"\xE2\x80\x98", "\xE2\x80\x99"},  // ‘ ’
    {"\xC2\xAB", "\xC2\xBB"},          // « »
    {"\xE3\x80\x8C", "\xE3\x80\x8D"},  // 「 」
    {"\xE3\x80\x8E", "\xE3\x80\x8F"},  // 『 』
    {"\xE3\x80\x8A", "\xE3\x80\x8B"},  // 《 》
    {"\xE3\x80\x88", "\xE3\x80\x89"},  // 〈 〉
}};

std::string strip_quotes(std::string s) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [open, close] : kQuotes) {
      if (s.size() >= open.size() + close.size() && s.compare(0, open.size(), open) == 0 &&
          s.compare(s.size() - close.size(), close.size(), close) == 0) {
        s = text::normalize(s.substr(open.size(), s.size() - open.size() - close.size()));
        changed = true;
        break;
      }
    }
  }
  return s;
}

std::vector<std::string> tokens(const std::string& s, bool by_char) {
  std::vector<std::string> out;
  if (by_char) {
    for (auto& cp : text::code_points(s)) out.push_back(std::move(cp));
  } else {
    for (auto w : text::split_words(s)) out.emplace_back(w);
  }
  return out;
}

std::string fmt1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

}  // namespace

std::string normalize_answer(std::string_view s) { return strip_quotes(text::normalize(s)); }

int em(std::string_view pred, std::string_view gold) {
  return normalize_answer(pred) == normalize_answer(gold) ? 1 : 0;
}

double f1(std::string_view pred, std::string_view gold) {
  const std::string p = normalize_answer(pred);
  const std::string g = normalize_answer(gold);
  if (p.empty() && g.empty()) return 1.0;
  if (p.empty() || g.empty()) return 0.0;
  const bool by_char = !text::has_space(p) && !text::has_space(g);
  auto pt = tokens(p, by_char);
  auto gt = tokens(g, by_char);
  std::sort(pt.begin(), pt.end());
  std::sort(gt.begin(), gt.end());
  std::vector<std::string> common;
  std::set_intersection(pt.begin(), pt.end(), gt.begin(), gt.end(), std::back_inserter(common));
  if (common.empty()) return 0.0;
  const double precision = static_cast<double>(common.size()) / static_cast<double>(pt.size());
  const double recall = static_cast<double>(common.size()) / static_cast<double>(gt.size());
  return 2 * precision * recall / (precision + recall);
}

EvalReport evaluate(const std::vector<EvalItem>& items) {
  if (items.empty()) throw Error(ErrorKind::EmptyInput, "nothing to evaluate");
  struct Sum {
    double em = 0, f1 = 0;
    std::size_t n = 0;
  };
  Sum overall;
  std::map<int, Sum> levels;
  std::map<std::string, Sum> sources;
  for (const auto& item : items) {
    const double e = em(item.pred, item.gold);
    const double f = f1(item.pred, item.gold);
    for (Sum* s : {&overall, &levels[item.level], &sources[item.source]}) {
      s->em += e;
      s->f1 += f;
      ++s->n;
    }
  }
  auto score = [](const Sum& s) {
    return Score{100.0 * s.em / static_cast<double>(s.n), 100.0 * s.f1 / static_cast<double>(s.n), s.n};
  };
  EvalReport report;
  report.overall = score(overall);
  for (const auto& [k, s] : levels) report.by_level[k] = score(s);
  for (const auto& [k, s] : sources) report.by_source[k] = score(s);
  return report;
}

std::string render_report_table(const EvalReport& report) {
  std::string out;
  auto line = [&](const std::string& label, const Score& s) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-24s %8s %8s %8zu\n", label.c_str(), fmt1(s.em).c_str(),
                  fmt1(s.f1).c_str(), s.n);
    out += buf;
  };
  char head[160];
  std::snprintf(head, sizeof head, "%-24s %8s %8s %8s\n", "bucket", "EM", "F1", "n");
  out += head;
  for (const auto& [level, s] : report.by_level) line("Level" + std::to_string(level), s);
  for (const auto& [source, s] : report.by_source) {
    line("source:" + (source.empty() ? std::string("(none)") : source), s);
  }
  line("Overall", report.overall);
  return out;
}

std::string render_report_json(const EvalReport& report) {
  using json = nlohmann::ordered_json;
  auto score = [](const Score& s) {
    json j;
    j["em"] = std::stod(fmt1(s.em));
    j["f1"] = std::stod(fmt1(s.f1));
    j["n"] = s.n;
    return j;
  };
  json j;
  j["overall"] = score(report.overall);
  json levels = json::object();
  for (const auto& [level, s] : report.by_level) levels[std::to_string(level)] = score(s);
  j["by_level"] = levels;
  json sources = json::object();
  for (const auto& [source, s] : report.by_source) sources[source] = score(s);
  j["by_source"] = sources;
  return j.dump(2) + "\n";
}

}  // namespace tablin
