#include "tablin/extractor.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "tablin/errors.hpp"
#include "tablin/html.hpp"
#include "tablin/text.hpp"

namespace tablin {

namespace {

int parse_span(std::optional<std::string_view> attr) {
  if (!attr) return 1;
  std::string_view s = *attr;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  int value = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec == std::errc::result_out_of_range) return kMaxSpan;
  if (res.ec != std::errc{} || value < 1) return 1;
  return std::min(value, kMaxSpan);
}

std::vector<int> table_rows(const html::Document& dom, int table) {
  std::vector<int> rows;
  for (int child : dom.node(table).children) {
    const auto& n = dom.node(child);
    if (n.type != html::Node::Type::Element) continue;
    if (n.tag == "tr") {
      rows.push_back(child);
    } else if (n.tag == "thead" || n.tag == "tbody" || n.tag == "tfoot") {
      for (int tr : dom.children_with_tag(child, "tr")) rows.push_back(tr);
    }
  }
  return rows;
}

ParsedTable read_table(const html::Document& dom, int table, int position) {
  ParsedTable out;
  out.position = position;
  const auto& node = dom.node(table);
  out.kind = node.has_class_containing("infobox") ? TableKind::Infobox : TableKind::WikiTable;
  const auto captions = dom.children_with_tag(table, "caption");
  if (!captions.empty()) {
    std::string cap = text::normalize(dom.text_content(captions.front()));
    if (!cap.empty()) out.caption = std::move(cap);
  }
  for (int tr : table_rows(dom, table)) {
    std::vector<RawCell> row;
    for (int c : dom.node(tr).children) {
      const auto& cell = dom.node(c);
      if (cell.type != html::Node::Type::Element || (cell.tag != "td" && cell.tag != "th")) {
        continue;
      }
      RawCell rc;
      rc.text = text::normalize(dom.text_content(c));
      rc.is_header = cell.tag == "th";
      rc.colspan = parse_span(cell.attribute("colspan"));
      rc.rowspan = parse_span(cell.attribute("rowspan"));
      row.push_back(std::move(rc));
    }
    out.raw.rows.push_back(std::move(row));
  }
  return out;
}

// Document-order events used for description extraction.
struct Outline {
  struct Event {
    enum class Kind { Paragraph, Heading2, Heading3, Table } kind;
    std::string text;
  };
  std::vector<Event> events;
  std::vector<int> table_nodes;
  std::string fallback_title;
};

Outline outline(const html::Document& dom) {
  Outline o;
  std::string h1;
  std::string title_el;
  for (int id : dom.descendants(html::Document::kRoot)) {
    const auto& n = dom.node(id);
    if (n.type != html::Node::Type::Element) continue;
    if (n.tag == "title" && title_el.empty()) {
      title_el = text::normalize(dom.text_content(id));
      continue;
    }
    if (dom.has_ancestor(id, "table")) continue;
    if (n.tag == "table") {
      o.events.push_back({Outline::Event::Kind::Table, {}});
      o.table_nodes.push_back(id);
    } else if (n.tag == "p") {
      o.events.push_back({Outline::Event::Kind::Paragraph, text::normalize(dom.text_content(id))});
    } else if (n.tag == "h1" && h1.empty()) {
      h1 = text::normalize(dom.text_content(id, true));
    } else if (n.tag == "h2") {
      o.events.push_back({Outline::Event::Kind::Heading2, text::normalize(dom.text_content(id, true))});
    } else if (n.tag == "h3") {
      o.events.push_back({Outline::Event::Kind::Heading3, text::normalize(dom.text_content(id, true))});
    }
  }
  o.fallback_title = !h1.empty() ? h1 : title_el;
  return o;
}

DescriptionSet describe(const SourceDocument& doc, const Outline& o,
                        const std::optional<std::string>& caption, int table_position) {
  DescriptionSet d;
  d.title = text::normalize(doc.title);
  if (d.title.empty()) d.title = o.fallback_title;
  if (d.title.empty()) d.title = text::normalize(doc.url);
  if (d.title.empty()) d.title = "untitled";

  using Kind = Outline::Event::Kind;
  for (const auto& e : o.events) {
    if (e.kind == Kind::Heading2 || e.kind == Kind::Heading3) break;
    if (e.kind == Kind::Paragraph && !e.text.empty()) {
      d.first_paragraph = e.text;
      break;
    }
  }

  std::optional<std::string> h2;
  std::optional<std::string> h3;
  int seen_tables = 0;
  for (const auto& e : o.events) {
    if (e.kind == Kind::Table) {
      if (seen_tables++ == table_position) break;
    } else if (e.kind == Kind::Heading2) {
      h2 = e.text;
      h3.reset();
    } else if (e.kind == Kind::Heading3) {
      h3 = e.text;
    }
  }
  if (h2 && !h2->empty()) d.headings.push_back(*h2);
  if (h3 && !h3->empty()) d.headings.push_back(*h3);
  d.caption = caption;
  return d;
}

}  // namespace

std::vector<ParsedTable> parse_document(const SourceDocument& doc) {
  const html::Document dom = html::parse(doc.html);
  const Outline o = outline(dom);
  std::vector<ParsedTable> out;
  for (std::size_t i = 0; i < o.table_nodes.size(); ++i) {
    out.push_back(read_table(dom, o.table_nodes[i], static_cast<int>(i)));
  }
  return out;
}

TableGrid normalize_grid(const RawTable& raw, TableKind kind, std::optional<std::string> caption) {
  std::size_t total = 0;
  for (const auto& row : raw.rows) total += row.size();
  if (raw.rows.empty() || total == 0) throw Error(ErrorKind::EmptyTable, "table has no cells");

  const int n_rows = static_cast<int>(raw.rows.size());
  std::vector<std::vector<std::optional<Cell>>> slots(static_cast<std::size_t>(n_rows));

  auto free_at = [&](int r, int c) {
    const auto& row = slots[r];
    return c >= static_cast<int>(row.size()) || !row[c].has_value();
  };

  for (int r = 0; r < n_rows; ++r) {
    int x = 0;
    for (const RawCell& rc : raw.rows[r]) {
      const int colspan = std::clamp(rc.colspan, 1, kMaxSpan);
      const int rowspan = std::min(std::clamp(rc.rowspan, 1, kMaxSpan), n_rows - r);
      auto fits = [&](int at) {
        for (int dy = 0; dy < rowspan; ++dy) {
          for (int dx = 0; dx < colspan; ++dx) {
            if (!free_at(r + dy, at + dx)) return false;
          }
        }
        return true;
      };
      while (!fits(x)) ++x;
      const std::string t = text::normalize(rc.text);
      for (int dy = 0; dy < rowspan; ++dy) {
        auto& row = slots[r + dy];
        if (static_cast<int>(row.size()) < x + colspan) row.resize(x + colspan);
        for (int dx = 0; dx < colspan; ++dx) {
          const bool anchor = dy == 0 && dx == 0;
          row[x + dx] = Cell{t, rc.is_header, anchor ? CellOrigin::Literal : CellOrigin::SpanCopy};
        }
      }
      x += colspan;
    }
  }

  std::size_t width = 0;
  for (const auto& row : slots) width = std::max(width, row.size());
  std::vector<std::vector<Cell>> cells(static_cast<std::size_t>(n_rows));
  for (int r = 0; r < n_rows; ++r) {
    cells[r].reserve(width);
    for (std::size_t c = 0; c < width; ++c) {
      if (c < slots[r].size() && slots[r][c]) {
        cells[r].push_back(std::move(*slots[r][c]));
      } else {
        cells[r].push_back(Cell{});
      }
    }
  }
  return TableGrid(std::move(cells), static_cast<int>(width), kind, std::move(caption));
}

namespace {

std::vector<std::string> flatten_impl(const TableGrid& grid, int header_row_count,
                                      std::vector<std::string>* warnings) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(grid.n_cols()));
  const int rows = std::min(header_row_count, grid.n_rows());
  for (int c = 1; c <= grid.n_cols(); ++c) {
    std::vector<std::string> parts;
    for (int r = 1; r <= rows; ++r) {
      const std::string& t = grid.text(c, r);
      if (t.empty()) continue;
      if (!parts.empty() && parts.back() == t) continue;
      parts.push_back(t);
    }
    std::string flat = text::join(parts, " ");
    if (flat.empty()) {
      flat = "col" + std::to_string(c);
      if (warnings) warnings->push_back("empty header for column " + std::to_string(c) +
                                        " replaced by placeholder \"" + flat + "\"");
    }
    out.push_back(std::move(flat));
  }
  return out;
}

}  // namespace

std::vector<std::string> flatten_headers(const TableGrid& grid, int header_row_count) {
  return flatten_impl(grid, std::max(header_row_count, 1), nullptr);
}

HeaderInfo classify_header(const TableGrid& grid) {
  HeaderInfo info;
  int leading = 0;
  for (int r = 1; r <= grid.n_rows(); ++r) {
    const auto& row = grid.rows()[r - 1];
    const bool all_header =
        !row.empty() && std::all_of(row.begin(), row.end(), [](const Cell& c) { return c.is_header; });
    if (!all_header) break;
    ++leading;
  }
  if (leading == 0) {
    info.inferred = true;
    info.warnings.push_back("row 1 has no header markup; adopted as header row");
    leading = std::min(1, grid.n_rows());
  }
  info.header_row_count = leading;

  bool merged = false;
  for (int r = 1; r <= leading && !merged; ++r) {
    for (const Cell& c : grid.rows()[r - 1]) {
      if (c.origin == CellOrigin::SpanCopy) {
        merged = true;
        break;
      }
    }
  }
  info.structure = merged ? HeaderStructure::Merged
                          : (leading >= 2 ? HeaderStructure::Multi : HeaderStructure::Single);
  info.flat_headers = flatten_impl(grid, leading, &info.warnings);
  return info;
}

DescriptionSet extract_descriptions(const SourceDocument& doc, int table_position) {
  const html::Document dom = html::parse(doc.html);
  const Outline o = outline(dom);
  std::optional<std::string> caption;
  if (table_position >= 0 && table_position < static_cast<int>(o.table_nodes.size())) {
    caption = read_table(dom, o.table_nodes[table_position], table_position).caption;
  }
  return describe(doc, o, caption, table_position);
}

bool filter_for_qa(const TableGrid& grid) {
  const int data_rows = grid.n_rows() - classify_header(grid).header_row_count;
  return data_rows >= kQaMinDataRows && data_rows <= kQaMaxDataRows &&
         grid.n_cols() <= kQaMaxColumns;
}

std::string table_id(const std::string& url, int position) {
  return url + "#t" + std::to_string(position);
}

std::vector<ExtractedTable> extract_tables(const SourceDocument& doc) {
  const html::Document dom = html::parse(doc.html);
  const Outline o = outline(dom);
  std::vector<ExtractedTable> out;
  for (std::size_t i = 0; i < o.table_nodes.size(); ++i) {
    const ParsedTable parsed = read_table(dom, o.table_nodes[i], static_cast<int>(i));
    ExtractedTable t;
    try {
      t.grid = normalize_grid(parsed.raw, parsed.kind, parsed.caption);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::EmptyTable) continue;
      throw;
    }
    if (parsed.kind == TableKind::Infobox) t.grid = t.grid.transposed();
    t.id = table_id(doc.url, parsed.position);
    t.url = doc.url;
    t.headers = classify_header(t.grid);
    t.descriptions = describe(doc, o, parsed.caption, parsed.position);
    t.title = t.descriptions.title;
    t.warnings = validate_table(t.grid, t.headers).warnings();
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace tablin
