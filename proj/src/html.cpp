#include "tablin/html.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>

#include "tablin/errors.hpp"
#include "tablin/text.hpp"

namespace tablin::html {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

template <std::size_t N>
bool one_of(std::string_view tag, const std::array<std::string_view, N>& set) {
  return std::find(set.begin(), set.end(), tag) != set.end();
}

constexpr std::array<std::string_view, 14> kVoid = {
    "area", "base", "br", "col", "embed", "hr", "img",
    "input", "link", "meta", "param", "source", "track", "wbr"};

constexpr std::array<std::string_view, 4> kRawText = {"script", "style", "textarea", "title"};

// Start tags that implicitly close an open <p>.
constexpr std::array<std::string_view, 24> kClosesP = {
    "address", "article", "aside", "blockquote", "div", "dl", "fieldset",
    "figure", "footer", "form", "h1", "h2", "h3", "h4", "h5", "h6",
    "header", "hr", "main", "nav", "ol", "pre", "section", "table"};

constexpr std::array<std::string_view, 6> kHeadings = {"h1", "h2", "h3", "h4", "h5", "h6"};

constexpr std::array<std::string_view, 3> kTableSections = {"thead", "tbody", "tfoot"};

constexpr std::array<std::string_view, 12> kBlockText = {
    "p", "div", "li", "dd", "dt", "tr", "table", "ul", "ol", "h2", "h3", "h4"};

struct NamedEntity {
  std::string_view name;
  char32_t cp;
};

constexpr NamedEntity kEntities[] = {
    {"amp", U'&'},      {"lt", U'<'},       {"gt", U'>'},       {"quot", U'"'},
    {"apos", U'\''},    {"nbsp", 0xA0},     {"middot", 0xB7},   {"ndash", 0x2013},
    {"mdash", 0x2014},  {"hellip", 0x2026}, {"laquo", 0xAB},    {"raquo", 0xBB},
    {"copy", 0xA9},     {"reg", 0xAE},      {"times", 0xD7},    {"minus", 0x2212},
    {"deg", 0xB0},      {"plusmn", 0xB1},   {"lsquo", 0x2018},  {"rsquo", 0x2019},
    {"ldquo", 0x201C},  {"rdquo", 0x201D},  {"bull", 0x2022},   {"euro", 0x20AC},
    {"pound", 0xA3},    {"yen", 0xA5},      {"cent", 0xA2},     {"sect", 0xA7},
    {"para", 0xB6},     {"shy", 0xAD},      {"zwj", 0x200D},    {"zwnj", 0x200C},
    {"thinsp", 0x2009}, {"ensp", 0x2002},   {"emsp", 0x2003},   {"larr", 0x2190},
    {"rarr", 0x2192},   {"uarr", 0x2191},   {"darr", 0x2193},
};

}  // namespace

std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '&') {
      out.push_back(s[i++]);
      continue;
    }
    const std::size_t semi = s.find(';', i + 1);
    if (i + 1 < s.size() && s[i + 1] == '#') {
      std::size_t j = i + 2;
      int base = 10;
      if (j < s.size() && (s[j] == 'x' || s[j] == 'X')) {
        base = 16;
        ++j;
      }
      std::size_t k = j;
      while (k < s.size() && std::isxdigit(static_cast<unsigned char>(s[k])) &&
             (base == 16 || std::isdigit(static_cast<unsigned char>(s[k])))) {
        ++k;
      }
      unsigned long value = 0;
      const auto res = std::from_chars(s.data() + j, s.data() + k, value, base);
      if (k > j && res.ec == std::errc{}) {
        if (value == 0 || value > 0x10FFFF || (value >= 0xD800 && value <= 0xDFFF)) {
          value = 0xFFFD;
        }
        out += text::encode(static_cast<char32_t>(value));
        i = (k < s.size() && s[k] == ';') ? k + 1 : k;
        continue;
      }
    } else if (semi != std::string_view::npos && semi - i <= 10) {
      const std::string_view name = s.substr(i + 1, semi - i - 1);
      bool matched = false;
      for (const auto& e : kEntities) {
        if (e.name == name) {
          out += text::encode(e.cp);
          matched = true;
          break;
        }
      }
      if (matched) {
        i = semi + 1;
        continue;
      }
    }
    out.push_back(s[i++]);
  }
  return out;
}

std::optional<std::string_view> Node::attribute(std::string_view name) const {
  for (const auto& [k, v] : attributes) {
    if (k == name) return std::string_view(v);
  }
  return std::nullopt;
}

bool Node::has_class_containing(std::string_view needle) const {
  const auto cls = attribute("class");
  if (!cls) return false;
  return lower(*cls).find(lower(needle)) != std::string::npos;
}

std::vector<int> Document::descendants(int id) const {
  std::vector<int> out;
  std::vector<int> stack(node(id).children.rbegin(), node(id).children.rend());
  while (!stack.empty()) {
    const int cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    const auto& ch = node(cur).children;
    stack.insert(stack.end(), ch.rbegin(), ch.rend());
  }
  return out;
}

std::vector<int> Document::children_with_tag(int id, std::string_view tag) const {
  std::vector<int> out;
  for (int c : node(id).children) {
    if (node(c).type == Node::Type::Element && node(c).tag == tag) out.push_back(c);
  }
  return out;
}

bool Document::has_ancestor(int id, std::string_view tag) const {
  for (int p = node(id).parent; p >= 0; p = node(p).parent) {
    if (node(p).tag == tag) return true;
  }
  return false;
}

std::string Document::text_content(int id, bool skip_tables) const {
  std::string out;
  auto walk = [&](auto&& self, int cur) -> void {
    const Node& n = node(cur);
    if (n.type == Node::Type::Text) {
      out += n.text;
      return;
    }
    if (n.tag == "script" || n.tag == "style") return;
    if (skip_tables && n.tag == "table") return;
    if (n.tag == "sup" && n.has_class_containing("reference")) return;
    if (n.tag == "span" && n.has_class_containing("mw-editsection")) return;
    if (n.tag == "br") {
      out.push_back(' ');
      return;
    }
    const bool block = one_of(n.tag, kBlockText);
    if (block) out.push_back(' ');
    for (int c : n.children) self(self, c);
    if (block) out.push_back(' ');
  };
  for (int c : node(id).children) walk(walk, c);
  return out;
}

class TreeBuilder {
 public:
  explicit TreeBuilder(std::string_view input) : in_(input) {
    Node root;
    root.type = Node::Type::Document;
    doc_.nodes_.push_back(std::move(root));
    open_.push_back(Document::kRoot);
  }

  Document build() {
    while (pos_ < in_.size()) {
      if (in_[pos_] == '<' && try_markup()) continue;
      const std::size_t next = in_.find('<', pos_ + 1);
      const std::size_t end = next == std::string_view::npos ? in_.size() : next;
      add_text(in_.substr(pos_, end - pos_));
      pos_ = end;
    }
    return std::move(doc_);
  }

 private:
  bool try_markup() {
    if (in_.compare(pos_, 4, "<!--") == 0) {
      const std::size_t end = in_.find("-->", pos_ + 4);
      pos_ = end == std::string_view::npos ? in_.size() : end + 3;
      return true;
    }
    if (pos_ + 1 >= in_.size()) return false;
    const char next = in_[pos_ + 1];
    if (next == '!' || next == '?') {
      const std::size_t end = in_.find('>', pos_);
      pos_ = end == std::string_view::npos ? in_.size() : end + 1;
      return true;
    }
    if (next == '/') {
      if (pos_ + 2 >= in_.size() || !std::isalpha(static_cast<unsigned char>(in_[pos_ + 2]))) {
        return false;
      }
      std::size_t i = pos_ + 2;
      const std::string name = read_name(i);
      const std::size_t end = in_.find('>', i);
      pos_ = end == std::string_view::npos ? in_.size() : end + 1;
      end_tag(name);
      return true;
    }
    if (!std::isalpha(static_cast<unsigned char>(next))) return false;

    std::size_t i = pos_ + 1;
    Node el;
    el.type = Node::Type::Element;
    el.tag = read_name(i);
    bool self_closing = false;
    while (i < in_.size() && in_[i] != '>') {
      if (std::isspace(static_cast<unsigned char>(in_[i]))) {
        ++i;
        continue;
      }
      if (in_[i] == '/') {
        self_closing = true;
        ++i;
        continue;
      }
      self_closing = false;
      std::size_t name_start = i;
      while (i < in_.size() && !std::isspace(static_cast<unsigned char>(in_[i])) &&
             in_[i] != '=' && in_[i] != '>' && in_[i] != '/') {
        ++i;
      }
      std::string attr = lower(in_.substr(name_start, i - name_start));
      while (i < in_.size() && std::isspace(static_cast<unsigned char>(in_[i]))) ++i;
      std::string value;
      if (i < in_.size() && in_[i] == '=') {
        ++i;
        while (i < in_.size() && std::isspace(static_cast<unsigned char>(in_[i]))) ++i;
        if (i < in_.size() && (in_[i] == '"' || in_[i] == '\'')) {
          const char q = in_[i++];
          const std::size_t close = in_.find(q, i);
          const std::size_t stop = close == std::string_view::npos ? in_.size() : close;
          value = decode_entities(in_.substr(i, stop - i));
          i = close == std::string_view::npos ? in_.size() : close + 1;
        } else {
          const std::size_t vs = i;
          while (i < in_.size() && !std::isspace(static_cast<unsigned char>(in_[i])) &&
                 in_[i] != '>') {
            ++i;
          }
          value = decode_entities(in_.substr(vs, i - vs));
        }
      }
      if (!attr.empty() && !el.attribute(attr)) el.attributes.emplace_back(attr, value);
    }
    pos_ = i < in_.size() ? i + 1 : in_.size();

    const std::string tag = el.tag;
    start_tag(std::move(el));
    if (one_of(tag, kVoid)) {
      open_.pop_back();
    } else if (self_closing) {
      end_tag(tag);
    } else if (one_of(tag, kRawText)) {
      read_raw_text(tag);
    }
    return true;
  }

  std::string read_name(std::size_t& i) {
    const std::size_t start = i;
    while (i < in_.size() && (std::isalnum(static_cast<unsigned char>(in_[i])) ||
                              in_[i] == '-' || in_[i] == ':' || in_[i] == '_')) {
      ++i;
    }
    return lower(in_.substr(start, i - start));
  }

  void read_raw_text(const std::string& tag) {
    const std::string close = "</" + tag;
    std::size_t end = pos_;
    while (true) {
      end = in_.find("</", end);
      if (end == std::string_view::npos) break;
      if (lower(in_.substr(end, close.size())) == close) break;
      end += 2;
    }
    const std::size_t stop = end == std::string_view::npos ? in_.size() : end;
    std::string raw(in_.substr(pos_, stop - pos_));
    if (tag == "title" || tag == "textarea") raw = decode_entities(raw);
    append_text_node(std::move(raw));
    pos_ = stop;
    if (end != std::string_view::npos) {
      const std::size_t gt = in_.find('>', end);
      pos_ = gt == std::string_view::npos ? in_.size() : gt + 1;
    }
    end_tag(tag);
  }

  const std::string& current_tag() const { return doc_.nodes_[open_.back()].tag; }

  // Index in open_ of the nearest element named `tag`, not crossing any tag
  // in `boundary`. -1 when absent.
  template <std::size_t N>
  int find_open(std::string_view tag, const std::array<std::string_view, N>& boundary) const {
    for (int i = static_cast<int>(open_.size()) - 1; i > 0; --i) {
      const std::string& t = doc_.nodes_[open_[i]].tag;
      if (t == tag) return i;
      if (one_of(t, boundary)) return -1;
    }
    return -1;
  }

  void pop_to(int index) { open_.resize(static_cast<std::size_t>(index)); }

  void close_p() {
    static constexpr std::array<std::string_view, 6> boundary = {
        "table", "td", "th", "caption", "button", "html"};
    const int i = find_open("p", boundary);
    if (i > 0) pop_to(i);
  }

  void start_tag(Node el) {
    const std::string& tag = el.tag;
    static constexpr std::array<std::string_view, 1> table_only = {"table"};
    static constexpr std::array<std::string_view, 3> list_boundary = {"ul", "ol", "table"};
    static constexpr std::array<std::string_view, 2> dl_boundary = {"dl", "table"};

    if (tag == "p" || one_of(tag, kClosesP) || tag == "li" || tag == "dd" || tag == "dt") {
      close_p();
    }
    if (one_of(tag, kHeadings) && one_of(current_tag(), kHeadings)) open_.pop_back();
    if (tag == "li") {
      const int i = find_open("li", list_boundary);
      if (i > 0) pop_to(i);
    }
    if (tag == "dd" || tag == "dt") {
      int i = find_open("dd", dl_boundary);
      if (i <= 0) i = find_open("dt", dl_boundary);
      if (i > 0) pop_to(i);
    }

    const int table = find_open("table", std::array<std::string_view, 0>{});
    if (table > 0 && (tag == "tr" || tag == "td" || tag == "th" || one_of(tag, kTableSections) ||
                      tag == "caption")) {
      // Close cells and rows of the innermost table up to the level the new
      // element belongs at.
      auto close_until = [&](auto&& keep) {
        while (static_cast<int>(open_.size()) - 1 > table) {
          const std::string& t = current_tag();
          if (keep(t)) break;
          open_.pop_back();
        }
      };
      if (tag == "td" || tag == "th") {
        close_until([](const std::string& t) { return t == "tr"; });
        if (current_tag() != "tr") {
          Node tr;
          tr.tag = "tr";
          push_element(std::move(tr));
        }
      } else if (tag == "tr") {
        close_until([](const std::string& t) { return one_of(t, kTableSections); });
      } else {
        close_until([](const std::string&) { return false; });
      }
    } else if (tag == "table" && find_open("table", table_only) > 0 &&
               current_tag() == "table") {
      // <table> directly inside <table> closes the outer one, as browsers do.
      open_.pop_back();
    }
    push_element(std::move(el));
  }

  void push_element(Node el) {
    el.parent = open_.back();
    const int id = static_cast<int>(doc_.nodes_.size());
    doc_.nodes_.push_back(std::move(el));
    doc_.nodes_[open_.back()].children.push_back(id);
    open_.push_back(id);
  }

  void end_tag(const std::string& tag) {
    static constexpr std::array<std::string_view, 4> cell_scope = {"td", "th", "caption", "table"};
    static constexpr std::array<std::string_view, 0> none = {};
    int i = -1;
    if (tag == "table") {
      i = find_open("table", none);
    } else if (tag == "td" || tag == "th" || tag == "caption") {
      static constexpr std::array<std::string_view, 1> t = {"table"};
      i = find_open(tag, t);
    } else if (tag == "tr" || one_of(tag, kTableSections)) {
      static constexpr std::array<std::string_view, 1> t = {"table"};
      i = find_open(tag, t);
    } else {
      i = find_open(tag, cell_scope);
    }
    if (i > 0) pop_to(i);
  }

  void add_text(std::string_view raw) {
    if (raw.empty()) return;
    append_text_node(decode_entities(raw));
  }

  void append_text_node(std::string decoded) {
    Node t;
    t.type = Node::Type::Text;
    t.text = std::move(decoded);
    t.parent = open_.back();
    auto& siblings = doc_.nodes_[open_.back()].children;
    if (!siblings.empty() && doc_.nodes_[siblings.back()].type == Node::Type::Text) {
      doc_.nodes_[siblings.back()].text += t.text;
      return;
    }
    const int id = static_cast<int>(doc_.nodes_.size());
    const int parent = open_.back();
    doc_.nodes_.push_back(std::move(t));
    doc_.nodes_[parent].children.push_back(id);
  }

  std::string_view in_;
  std::size_t pos_ = 0;
  Document doc_;
  std::vector<int> open_;
};

Document parse(std::string_view html) {
  if (html.find('\0') != std::string_view::npos) {
    throw Error(ErrorKind::MalformedDocument, "document contains NUL bytes");
  }
  bool blank = true;
  for (char c : html) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      blank = false;
      break;
    }
  }
  if (blank) throw Error(ErrorKind::MalformedDocument, "document is empty");
  return TreeBuilder(html).build();
}

}  // namespace tablin::html
