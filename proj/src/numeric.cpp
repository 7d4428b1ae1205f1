#include "tablin/numeric.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "tablin/extractor.hpp"
#include "tablin/text.hpp"

namespace tablin {

std::string_view to_string(NumericKind k) {
  switch (k) {
    case NumericKind::Integer: return "Integer";
    case NumericKind::Decimal: return "Decimal";
    case NumericKind::Rank: return "Rank";
    case NumericKind::Money: return "Money";
    case NumericKind::Date: return "Date";
  }
  return "Integer";
}

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string_view trim_spaces(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

bool strip_prefix(std::string_view& s, std::string_view p) {
  if (s.substr(0, p.size()) != p) return false;
  s.remove_prefix(p.size());
  return true;
}

bool strip_suffix(std::string_view& s, std::string_view p) {
  if (s.size() < p.size() || s.substr(s.size() - p.size()) != p) return false;
  s.remove_suffix(p.size());
  return true;
}

// [sign] digits-with-optional-grouping [. digits]
std::optional<double> parse_plain(std::string_view s, bool allow_fraction) {
  s = trim_spaces(s);
  bool negative = false;
  if (strip_prefix(s, "-") || strip_prefix(s, "\xE2\x88\x92")) {
    negative = true;
  } else {
    strip_prefix(s, "+");
  }
  if (s.empty()) return std::nullopt;

  std::size_t i = 0;
  std::string digits;
  std::size_t group_len = 0;
  bool grouped = false;
  while (i < s.size() && (is_digit(s[i]) || s[i] == ',')) {
    if (s[i] == ',') {
      if (digits.empty() || (grouped && group_len != 3) || (!grouped && group_len > 3)) {
        return std::nullopt;
      }
      grouped = true;
      group_len = 0;
    } else {
      digits.push_back(s[i]);
      ++group_len;
    }
    ++i;
  }
  if (grouped && group_len != 3) return std::nullopt;
  std::string fraction;
  if (i < s.size() && s[i] == '.') {
    if (!allow_fraction) return std::nullopt;
    ++i;
    while (i < s.size() && is_digit(s[i])) fraction.push_back(s[i++]);
    if (fraction.empty()) return std::nullopt;
  }
  if (i != s.size() || (digits.empty() && fraction.empty())) return std::nullopt;
  if (digits.size() > 15) return std::nullopt;
  std::string literal = (digits.empty() ? "0" : digits) + (fraction.empty() ? "" : "." + fraction);
  const double v = std::strtod(literal.c_str(), nullptr);
  return negative ? -v : v;
}

std::optional<double> parse_rank(std::string_view s) {
  static constexpr std::array<std::string_view, 6> suffixes = {"위", "등", "st", "nd", "rd", "th"};
  for (auto suf : suffixes) {
    std::string_view rest = s;
    if (!strip_suffix(rest, suf)) continue;
    rest = trim_spaces(rest);
    if (rest.empty()) continue;
    for (char c : rest) {
      if (!is_digit(c)) return std::nullopt;
    }
    return parse_plain(rest, false);
  }
  return std::nullopt;
}

std::optional<double> parse_money(std::string_view s) {
  static constexpr std::array<std::string_view, 8> prefixes = {"US$", "$", "₩", "€", "£", "¥", "￥", "KRW"};
  for (auto p : prefixes) {
    std::string_view rest = s;
    if (strip_prefix(rest, p)) return parse_plain(rest, true);
  }
  static constexpr std::array<std::string_view, 6> suffixes = {"원", "달러", "엔", "유로", "위안", "USD"};
  for (auto suf : suffixes) {
    std::string_view rest = s;
    if (!strip_suffix(rest, suf)) continue;
    rest = trim_spaces(rest);
    double scale = 1.0;
    if (strip_suffix(rest, "만")) {
      scale = 1e4;
    } else if (strip_suffix(rest, "억")) {
      scale = 1e8;
    }
    const auto v = parse_plain(rest, true);
    if (v) return *v * scale;
    return std::nullopt;
  }
  return std::nullopt;
}

std::optional<int> parse_uint(std::string_view s, std::size_t min_len, std::size_t max_len) {
  s = trim_spaces(s);
  if (s.size() < min_len || s.size() > max_len) return std::nullopt;
  int v = 0;
  for (char c : s) {
    if (!is_digit(c)) return std::nullopt;
    v = v * 10 + (c - '0');
  }
  return v;
}

std::optional<double> days_from(int y, int m, int d) {
  using namespace std::chrono;
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return static_cast<double>(sys_days{ymd}.time_since_epoch().count());
}

std::optional<double> parse_date(std::string_view s) {
  for (char sep : {'-', '.', '/'}) {
    std::string_view body = s;
    if (sep == '.') strip_suffix(body, ".");
    const auto parts = text::split(body, sep);
    if (parts.size() != 3) continue;
    const auto y = parse_uint(parts[0], 4, 4);
    const auto m = parse_uint(parts[1], 1, 2);
    const auto d = parse_uint(parts[2], 1, 2);
    if (y && m && d) return days_from(*y, *m, *d);
    return std::nullopt;
  }
  // 2004년 6월 12일 / 2004년 6월
  const std::size_t ypos = s.find("년");
  if (ypos == std::string_view::npos) return std::nullopt;
  const auto y = parse_uint(s.substr(0, ypos), 4, 4);
  std::string_view rest = trim_spaces(s.substr(ypos + std::string_view("년").size()));
  const std::size_t mpos = rest.find("월");
  if (!y || mpos == std::string_view::npos) return std::nullopt;
  const auto m = parse_uint(rest.substr(0, mpos), 1, 2);
  rest = trim_spaces(rest.substr(mpos + std::string_view("월").size()));
  if (!m) return std::nullopt;
  if (rest.empty()) return days_from(*y, *m, 1);
  if (!strip_suffix(rest, "일")) return std::nullopt;
  const auto d = parse_uint(rest, 1, 2);
  if (!d) return std::nullopt;
  return days_from(*y, *m, *d);
}

constexpr std::array<NumericKind, 5> kKindPriority = {
    NumericKind::Integer, NumericKind::Decimal, NumericKind::Rank, NumericKind::Money,
    NumericKind::Date};

}  // namespace

std::optional<double> parse_numeric(std::string_view cell, NumericKind kind) {
  const std::string_view s = trim_spaces(cell);
  if (s.empty()) return std::nullopt;
  switch (kind) {
    case NumericKind::Integer: return parse_plain(s, false);
    case NumericKind::Decimal: return parse_plain(s, true);
    case NumericKind::Rank: return parse_rank(s);
    case NumericKind::Money: return parse_money(s);
    case NumericKind::Date: return parse_date(s);
  }
  return std::nullopt;
}

std::optional<NumericColumn> numeric_column(const TableGrid& grid, int header_row_count, int col) {
  std::vector<std::string_view> cells;
  std::vector<int> rows;
  for (int r = header_row_count + 1; r <= grid.n_rows(); ++r) {
    const std::string& t = grid.text(col, r);
    if (t.empty()) continue;
    cells.push_back(t);
    rows.push_back(r);
  }
  if (cells.empty()) return std::nullopt;

  std::optional<NumericColumn> best;
  std::size_t best_count = 0;
  for (NumericKind kind : kKindPriority) {
    NumericColumn candidate{col, kind, {}};
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (auto v = parse_numeric(cells[i], kind)) candidate.parsed_values.emplace_back(rows[i], *v);
    }
    const std::size_t n = candidate.parsed_values.size();
    const double needed = kNumericThreshold * static_cast<double>(cells.size());
    if (static_cast<double>(n) + 1e-9 < needed || n <= best_count) continue;
    best_count = n;
    best = std::move(candidate);
  }
  return best;
}

std::vector<NumericColumn> detect_numeric_columns(const TableGrid& grid, int header_row_count) {
  std::vector<NumericColumn> out;
  for (int c = 1; c <= grid.n_cols(); ++c) {
    if (auto nc = numeric_column(grid, header_row_count, c)) out.push_back(std::move(*nc));
  }
  return out;
}

std::vector<NumericColumn> detect_numeric_columns(const TableGrid& grid) {
  return detect_numeric_columns(grid, classify_header(grid).header_row_count);
}

std::string render_number(double value, int max_decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", max_decimals, value);
  std::string s = buf;
  if (s.find('.') != std::string::npos) {
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

}  // namespace tablin
