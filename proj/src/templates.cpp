#include "tablin/templates.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "tablin/errors.hpp"
#include "tablin/text.hpp"

namespace tablin {

namespace {

struct EmbeddedFile {
  const char* name;
  const char* content;
};

constexpr EmbeddedFile kEmbedded[] = {
#include "default_templates.inc"
};

std::string_view embedded(std::string_view name) {
  for (const auto& f : kEmbedded) {
    if (name == f.name) return f.content;
  }
  return {};
}

std::vector<std::pair<int, std::vector<std::string>>> data_lines(std::string_view content) {
  std::vector<std::pair<int, std::vector<std::string>>> out;
  int line_no = 0;
  for (std::string line : text::split(content, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = text::split(line, '\t');
    out.emplace_back(line_no, std::move(fields));
  }
  return out;
}

[[noreturn]] void bad_line(std::string_view source, int line, const std::string& why) {
  throw Error(ErrorKind::InvalidConfig,
              std::string(source) + ":" + std::to_string(line) + ": " + why);
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

bool has_final_consonant_digit(char c) {
  // 영 일 이 삼 사 오 육 칠 팔 구
  static constexpr bool batchim[10] = {true, true, false, true, false,
                                       false, true, true, true, false};
  return batchim[c - '0'];
}

}  // namespace

std::vector<const QuestionTemplate*> TemplateSet::for_level(int level,
                                                            std::optional<AggKind> agg) const {
  std::vector<const QuestionTemplate*> out;
  for (const auto& t : questions) {
    if (t.level == level && (!agg || t.agg_kind == agg)) out.push_back(&t);
  }
  return out;
}

std::vector<const ConditionTemplate*> TemplateSet::for_op(CompareOp op) const {
  std::vector<const ConditionTemplate*> out;
  for (const auto& t : conditions) {
    if (t.op == op) out.push_back(&t);
  }
  return out;
}

std::vector<std::string> template_slots(std::string_view pattern) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while ((i = pattern.find('{', i)) != std::string_view::npos) {
    const std::size_t close = pattern.find('}', i);
    if (close == std::string_view::npos) break;
    std::string_view body = pattern.substr(i + 1, close - i - 1);
    body = body.substr(0, body.find(':'));
    out.emplace_back(body);
    i = close + 1;
  }
  return out;
}

void validate_template(const QuestionTemplate& t) {
  const auto slots = template_slots(t.pattern);
  auto need = [&](std::string_view slot) {
    if (std::find(slots.begin(), slots.end(), slot) == slots.end()) {
      throw Error(ErrorKind::InvalidConfig, "level " + std::to_string(t.level) +
                                                " template lacks {" + std::string(slot) +
                                                "}: " + t.pattern);
    }
  };
  switch (t.level) {
    case 1:
    case 3:
      need("base_col");
      need("other_col");
      need("value");
      break;
    case 2:
      need("condition");
      break;
    case 5:
      need("agg");
      need("base_col");
      if (!t.agg_kind) {
        throw Error(ErrorKind::InvalidConfig, "level 5 template needs an agg kind: " + t.pattern);
      }
      break;
    case 4:
      throw Error(ErrorKind::InvalidConfig,
                  "level 4 questions are derived from levels 1-3 and take no templates");
    default:
      throw Error(ErrorKind::InvalidConfig, "template level must be 1-5");
  }
}

std::vector<QuestionTemplate> parse_question_templates(std::string_view content,
                                                       std::string_view source) {
  std::vector<QuestionTemplate> out;
  for (auto& [line, fields] : data_lines(content)) {
    if (fields.size() < 2 || fields.size() > 3) bad_line(source, line, "expected 2 or 3 fields");
    QuestionTemplate t;
    if (fields[0].size() != 1 || fields[0][0] < '1' || fields[0][0] > '5') {
      bad_line(source, line, "level must be 1-5");
    }
    t.level = fields[0][0] - '0';
    t.pattern = fields[1];
    if (fields.size() == 3 && !fields[2].empty()) {
      t.agg_kind = parse_agg_kind(fields[2]);
      if (!t.agg_kind) bad_line(source, line, "unknown agg kind " + fields[2]);
    }
    try {
      validate_template(t);
    } catch (const Error& e) {
      bad_line(source, line, e.what());
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<ConditionTemplate> parse_condition_templates(std::string_view content,
                                                         std::string_view source) {
  std::vector<ConditionTemplate> out;
  for (auto& [line, fields] : data_lines(content)) {
    if (fields.size() != 2) bad_line(source, line, "expected 2 fields");
    const auto op = parse_compare_op(fields[0]);
    if (!op) bad_line(source, line, "unknown operator " + fields[0]);
    out.push_back({*op, fields[1]});
  }
  return out;
}

Lexicon parse_lexicon(std::string_view content, std::string_view source) {
  Lexicon lex;
  for (auto& [line, fields] : data_lines(content)) {
    if (fields.size() != 2 || fields[0].empty()) bad_line(source, line, "expected term<TAB>synonyms");
    std::vector<std::string> alts;
    for (auto& s : text::split(fields[1], ',')) {
      if (!s.empty()) alts.push_back(s);
    }
    if (alts.empty()) bad_line(source, line, "no synonyms");
    if (fields[0][0] == '~') {
      lex.endings.emplace_back(fields[0].substr(1), std::move(alts));
    } else {
      lex.synonyms.emplace_back(fields[0], std::move(alts));
    }
  }
  return lex;
}

TemplateSet default_templates() {
  TemplateSet set;
  for (int level : {1, 2, 3, 5}) {
    const std::string name = "level" + std::to_string(level) + ".tsv";
    auto qs = parse_question_templates(embedded(name), name);
    set.questions.insert(set.questions.end(), qs.begin(), qs.end());
  }
  set.conditions = parse_condition_templates(embedded("conditions.tsv"), "conditions.tsv");
  set.lexicon = parse_lexicon(embedded("lexicon.tsv"), "lexicon.tsv");
  return set;
}

TemplateSet load_templates(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorKind::Io, "template directory not found: " + dir.string());
  }
  TemplateSet set;
  for (int level = 1; level <= 5; ++level) {
    const auto path = dir / ("level" + std::to_string(level) + ".tsv");
    if (!std::filesystem::exists(path)) continue;
    auto qs = parse_question_templates(read_file(path), path.string());
    for (auto& q : qs) {
      if (q.level != level) {
        throw Error(ErrorKind::InvalidConfig, path.string() + ": holds a level " +
                                                  std::to_string(q.level) + " template");
      }
    }
    set.questions.insert(set.questions.end(), qs.begin(), qs.end());
  }
  const auto cond = dir / "conditions.tsv";
  set.conditions = std::filesystem::exists(cond)
                       ? parse_condition_templates(read_file(cond), cond.string())
                       : default_templates().conditions;
  const auto lex = dir / "lexicon.tsv";
  set.lexicon = std::filesystem::exists(lex) ? parse_lexicon(read_file(lex), lex.string())
                                             : default_templates().lexicon;
  return set;
}

std::string korean_particle(std::string_view word, std::string_view after_consonant,
                            std::string_view after_vowel) {
  const auto cps = text::decode(word);
  std::optional<bool> consonant;
  if (!cps.empty()) {
    const char32_t last = cps.back();
    if (last >= 0xAC00 && last <= 0xD7A3) {
      const int final_index = static_cast<int>((last - 0xAC00) % 28);
      // 으로/로 treats a final ㄹ like a vowel.
      consonant = final_index != 0 && !(final_index == 8 && after_vowel == "로");
    } else if (last >= U'0' && last <= U'9') {
      const char d = static_cast<char>(last);
      const bool rieul = d == '1' || d == '7' || d == '8';
      consonant = has_final_consonant_digit(d) && !(rieul && after_vowel == "로");
    }
  }
  if (!consonant) {
    return std::string(after_consonant) + "(" + std::string(after_vowel) + ")";
  }
  return std::string(*consonant ? after_consonant : after_vowel);
}

std::string render_template(std::string_view pattern, const SlotValues& slots) {
  std::string out;
  std::size_t i = 0;
  while (i < pattern.size()) {
    const std::size_t open = pattern.find('{', i);
    if (open == std::string_view::npos) {
      out.append(pattern.substr(i));
      break;
    }
    out.append(pattern.substr(i, open - i));
    const std::size_t close = pattern.find('}', open);
    if (close == std::string_view::npos) {
      out.append(pattern.substr(open));
      break;
    }
    const std::string_view body = pattern.substr(open + 1, close - open - 1);
    const std::size_t colon = body.find(':');
    const std::string_view name = body.substr(0, colon);
    const auto it = slots.find(name);
    if (it == slots.end()) {
      out.append(pattern.substr(open, close - open + 1));
    } else {
      out += it->second;
      if (colon != std::string_view::npos) {
        const std::string_view forms = body.substr(colon + 1);
        const std::size_t slash = forms.find('/');
        if (slash == std::string_view::npos) {
          out.append(forms);
        } else {
          out += korean_particle(it->second, forms.substr(0, slash), forms.substr(slash + 1));
        }
      }
    }
    i = close + 1;
  }
  return out;
}

}  // namespace tablin
