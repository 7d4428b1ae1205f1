#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tablin/query.hpp"

namespace tablin {

// Slots: {base_col} {other_col} {value} {condition} {agg} {title}. A slot may
// carry a Korean particle pair, e.g. {base_col:이/가}; the form after a final
// consonant comes first.
struct QuestionTemplate {
  int level = 1;
  std::string pattern;
  std::optional<AggKind> agg_kind;
};

// Slots: {col} {value} {low} {high}.
struct ConditionTemplate {
  CompareOp op = CompareOp::GE;
  std::string pattern;
};

struct Lexicon {
  // term -> synonyms, applied to a template's fixed text.
  std::vector<std::pair<std::string, std::vector<std::string>>> synonyms;
  // question ending -> politer/colloquial endings ("~" entries in the file).
  std::vector<std::pair<std::string, std::vector<std::string>>> endings;
};

struct TemplateSet {
  std::vector<QuestionTemplate> questions;
  std::vector<ConditionTemplate> conditions;
  Lexicon lexicon;

  std::vector<const QuestionTemplate*> for_level(int level,
                                                 std::optional<AggKind> agg = std::nullopt) const;
  std::vector<const ConditionTemplate*> for_op(CompareOp op) const;
};

// `level<TAB>pattern<TAB>agg_kind?`; '#' starts a comment line.
// Throws Error(InvalidConfig) with the line number on a bad line.
std::vector<QuestionTemplate> parse_question_templates(std::string_view content,
                                                       std::string_view source = "templates");

// `op<TAB>pattern`.
std::vector<ConditionTemplate> parse_condition_templates(std::string_view content,
                                                         std::string_view source = "conditions");

// `term<TAB>synonym1,synonym2`; a term starting with '~' is a question
// ending.
Lexicon parse_lexicon(std::string_view content, std::string_view source = "lexicon");

// Requires every slot the level needs: L1/L3 base_col, other_col, value;
// L2 condition; L5 agg and base_col plus an agg kind. Level 4 has no
// templates of its own, it is derived from L1-L3.
void validate_template(const QuestionTemplate& t);

// Loads level<N>.tsv, conditions.tsv and lexicon.tsv from `dir`. Missing
// condition or lexicon files fall back to the bundled defaults.
TemplateSet load_templates(const std::filesystem::path& dir);

// The bundled Korean templates.
TemplateSet default_templates();

using SlotValues = std::map<std::string, std::string, std::less<>>;

// Fills every {slot}. Unknown slots are left verbatim.
std::string render_template(std::string_view pattern, const SlotValues& slots);

// Picks the particle form for `word`: `after_consonant` when its last
// syllable has a final consonant, `after_vowel` otherwise. Unknown endings
// (Latin letters, symbols) give "after_consonant(after_vowel)".
std::string korean_particle(std::string_view word, std::string_view after_consonant,
                            std::string_view after_vowel);

std::vector<std::string> template_slots(std::string_view pattern);

}  // namespace tablin
