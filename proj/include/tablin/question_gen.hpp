#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tablin/numeric.hpp"
#include "tablin/rng.hpp"
#include "tablin/table_model.hpp"
#include "tablin/templates.hpp"

namespace tablin {

struct GenerateOptions {
  std::uint64_t seed = 0;
  // Maximum records per level; 0 keeps every candidate.
  int per_level_cap = 0;
  std::string table_id;
  std::string url;
  std::string source;
};

// Leftmost non-numeric column whose data cells are all non-empty and
// distinct, else the leftmost column with the most distinct non-empty
// values. Throws Error(NoUsableColumn) when every data cell is empty.
int select_base_column(const TableGrid& grid, const HeaderInfo& headers);

enum class Variation { SlotOrderInversion, SynonymSubstitution, PolitenessSuffix };

// Applies one mechanical paraphrase to a template pattern. Slots are never
// touched. nullopt when the variation does not apply.
std::optional<std::string> vary_pattern(std::string_view pattern, Variation variation,
                                        const Lexicon& lexicon, Rng& rng);

// Questions for one level. Every record carries its StructuredQuery and is
// checked against the oracle before it is returned.
// Throws Error(NothingGenerable) when no candidate survives the skip rules and
// Error(InvalidConfig) when the template set has nothing for the level.
std::vector<QARecord> generate(const TableGrid& grid, const HeaderInfo& headers,
                               const DescriptionSet& desc, const TemplateSet& templates, int level,
                               const GenerateOptions& options);

}  // namespace tablin
