#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Minimal tolerant HTML tree builder. It covers the subset of tree
// construction that matters for table extraction: implied end tags for
// p/li/tr/td/th/table sections, void elements, raw-text elements, entity
// decoding, and recovery from stray or unclosed tags.
namespace tablin::html {

struct Node {
  enum class Type { Document, Element, Text };

  Type type = Type::Element;
  std::string tag;  // lower case; empty for text and document nodes
  std::vector<std::pair<std::string, std::string>> attributes;
  std::string text;  // decoded character data for text nodes
  int parent = -1;
  std::vector<int> children;

  std::optional<std::string_view> attribute(std::string_view name) const;
  bool has_class_containing(std::string_view needle) const;
};

class Document {
 public:
  static constexpr int kRoot = 0;

  const Node& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return nodes_.size(); }

  // Pre-order ids of the subtree rooted at `id`, excluding `id` itself.
  std::vector<int> descendants(int id) const;

  // Elements with `tag` among the direct children of `id`.
  std::vector<int> children_with_tag(int id, std::string_view tag) const;

  bool has_ancestor(int id, std::string_view tag) const;

  // Concatenated character data with <br> and block boundaries turned into
  // spaces. Script/style content and citation superscripts are skipped.
  std::string text_content(int id, bool skip_tables = false) const;

 private:
  friend class TreeBuilder;
  std::vector<Node> nodes_;
};

std::string decode_entities(std::string_view s);

// Throws Error(MalformedDocument) when the input cannot yield any tree.
Document parse(std::string_view html);

}  // namespace tablin::html
