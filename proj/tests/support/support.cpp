#include "support.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>

#include "tablin/pipeline.hpp"

namespace tablin_test {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

const std::vector<std::string> kHeaderPool = {
    "팀", "승점", "경기", "순위", "금액", "날짜", "이름", "도시", "인구", "면적",
    "비고", "득점", "실점", "감독", "구장", "창단", "리그", "지역", "연도", "점수"};

const std::vector<std::string> kNamePool = {
    "포르투갈", "스페인", "러시아", "그리스", "독일", "네덜란드", "체코", "라트비아",
    "잉글랜드", "프랑스", "스위스", "크로아티아", "이탈리아", "스웨덴", "덴마크", "불가리아",
    "서울", "부산", "대구", "인천", "광주", "대전", "울산", "수원"};

std::string grouped(long long v) {
  std::string digits = std::to_string(v < 0 ? -v : v);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out.push_back(',');
    out.push_back(digits[i]);
  }
  return v < 0 ? "-" + out : out;
}

}  // namespace

std::string strip_trailing_zeros(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

TableGrid portugal_grid() {
  return TableGrid::from_texts({{"Team", "Pts"}, {"Portugal", "6"}, {"Spain", "5"}, {"Russia", "3"}});
}

TruthGrid random_qa_grid(std::mt19937_64& rng, int data_rows, int n_cols) {
  TruthGrid out;
  std::vector<std::string> headers = kHeaderPool;
  std::shuffle(headers.begin(), headers.end(), rng);
  std::vector<std::vector<std::string>> rows(static_cast<std::size_t>(data_rows) + 1);
  for (int c = 1; c <= n_cols; ++c) rows[0].push_back(headers[c - 1]);

  for (int c = 1; c <= n_cols; ++c) {
    // Column 1 is usually a distinct name column, as in real tables.
    const int kind = (c == 1 && uniform(rng, 0, 3) > 0) ? 0 : uniform(rng, 0, 7);
    std::vector<std::optional<double>> truth(static_cast<std::size_t>(data_rows) + 2);
    bool numeric = true;
    bool avg = false;
    bool date = false;
    std::vector<std::string> names = kNamePool;
    std::shuffle(names.begin(), names.end(), rng);
    for (int r = 1; r <= data_rows; ++r) {
      std::string cell;
      double v = 0;
      switch (kind) {
        case 0:  // distinct names
          cell = names[static_cast<std::size_t>(r - 1) % names.size()];
          if (r > static_cast<int>(names.size())) cell += std::to_string(r);
          numeric = false;
          break;
        case 1:  // names with duplicates
          cell = names[static_cast<std::size_t>(uniform(rng, 0, 3))];
          numeric = false;
          break;
        case 2:  // small integers, ties likely
          v = uniform(rng, 0, 9);
          cell = std::to_string(static_cast<int>(v));
          avg = true;
          break;
        case 3:  // grouped integers
          v = uniform(rng, -5000, 2000000);
          cell = grouped(static_cast<long long>(v));
          avg = true;
          break;
        case 4:  // decimals
          v = uniform(rng, 0, 99999) / 100.0;
          cell = strip_trailing_zeros(v);
          avg = true;
          break;
        case 5:  // ranks
          v = uniform(rng, 1, 20);
          cell = std::to_string(static_cast<int>(v)) + "위";
          break;
        case 6: {  // money
          v = uniform(rng, 1, 300) * 50;
          cell = "₩" + grouped(static_cast<long long>(v));
          avg = true;
          break;
        }
        default: {  // dates
          using namespace std::chrono;
          const year_month_day ymd{year{uniform(rng, 1990, 2030)},
                                   month{static_cast<unsigned>(uniform(rng, 1, 12))},
                                   day{static_cast<unsigned>(uniform(rng, 1, 28))}};
          v = sys_days{ymd}.time_since_epoch().count();
          char buf[32];
          std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                        static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
          cell = buf;
          date = true;
          break;
        }
      }
      if (kind >= 2) truth[static_cast<std::size_t>(r) + 1] = v;
      rows[static_cast<std::size_t>(r)].push_back(cell);
    }
    if (numeric && kind >= 2) {
      out.numeric_truth[c] = truth;
      out.averageable[c] = avg;
      out.is_date[c] = date;
    }
  }
  out.grid = TableGrid::from_texts(rows);
  return out;
}

std::vector<std::string> brute_exec(const tablin::StructuredQuery& q, const TruthGrid& g) {
  using tablin::AggKind;
  const TableGrid& grid = g.grid;
  auto value = [&](int col, int row) -> std::optional<double> {
    auto it = g.numeric_truth.find(col);
    if (it == g.numeric_truth.end()) return std::nullopt;
    return it->second[static_cast<std::size_t>(row)];
  };
  auto matches = [&](int row) {
    if (q.match_value) return grid.text(q.filter_col, row) == *q.match_value;
    if (q.condition) {
      const auto v = value(q.filter_col, row);
      if (!v) return false;
      const auto& o = q.condition->operands;
      switch (q.condition->op) {
        case tablin::CompareOp::EQ: return *v == o[0];
        case tablin::CompareOp::GE: return *v >= o[0];
        case tablin::CompareOp::LE: return *v <= o[0];
        case tablin::CompareOp::GT: return *v > o[0];
        case tablin::CompareOp::LT: return *v < o[0];
        case tablin::CompareOp::BETWEEN: return *v >= o[0] && *v <= o[1];
      }
    }
    return true;
  };

  std::vector<std::string> out;
  if (q.kind == tablin::QueryKind::SelectWhere) {
    for (int r = 2; r <= grid.n_rows(); ++r) {
      if (matches(r)) out.push_back(grid.text(q.target_col, r));
    }
    return out;
  }
  if (*q.agg == AggKind::Count) {
    int n = 0;
    for (int r = 2; r <= grid.n_rows(); ++r) n += matches(r) ? 1 : 0;
    return {std::to_string(n)};
  }
  std::vector<std::pair<double, int>> vals;
  for (int r = 2; r <= grid.n_rows(); ++r) {
    if (auto v = value(q.filter_col, r)) vals.emplace_back(*v, r);
  }
  if (vals.empty()) return {};
  if (*q.agg == AggKind::Avg) {
    double sum = 0;
    for (const auto& [v, r] : vals) sum += v;
    return {strip_trailing_zeros(sum / static_cast<double>(vals.size()))};
  }
  double best = vals[0].first;
  for (const auto& [v, r] : vals) best = *q.agg == AggKind::Min ? std::min(best, v) : std::max(best, v);
  for (const auto& [v, r] : vals) {
    if (v == best) out.push_back(grid.text(q.target_col, r));
  }
  return out;
}

std::vector<std::vector<PaintedCell>> paint(const tablin::RawTable& raw) {
  const int height = static_cast<int>(raw.rows.size());
  std::map<std::pair<int, int>, PaintedCell> canvas;  // (row, col), 0-based
  for (int r = 0; r < height; ++r) {
    int col = 0;
    for (const auto& cell : raw.rows[static_cast<std::size_t>(r)]) {
      const int w = std::max(1, std::min(cell.colspan, tablin::kMaxSpan));
      const int h = std::max(1, std::min({cell.rowspan, tablin::kMaxSpan, height - r}));
      for (;; ++col) {
        bool clear = true;
        for (int y = r; y < r + h && clear; ++y) {
          for (int x = col; x < col + w && clear; ++x) clear = !canvas.count({y, x});
        }
        if (clear) break;
      }
      for (int y = r; y < r + h; ++y) {
        for (int x = col; x < col + w; ++x) {
          canvas[{y, x}] = PaintedCell{cell.text, cell.is_header, !(y == r && x == col)};
        }
      }
      col += w;
    }
  }
  int width = 0;
  for (const auto& [pos, cell] : canvas) width = std::max(width, pos.second + 1);
  std::vector<std::vector<PaintedCell>> out(static_cast<std::size_t>(height),
                                            std::vector<PaintedCell>(static_cast<std::size_t>(width)));
  for (const auto& [pos, cell] : canvas) out[pos.first][pos.second] = cell;
  return out;
}

tablin::RawTable random_raw_table(std::mt19937_64& rng) {
  tablin::RawTable raw;
  const int rows = uniform(rng, 1, 8);
  int serial = 0;
  for (int r = 0; r < rows; ++r) {
    std::vector<tablin::RawCell> row;
    const int cells = uniform(rng, r == 0 ? 1 : 0, 6);
    for (int i = 0; i < cells; ++i) {
      tablin::RawCell c;
      c.text = "c" + std::to_string(serial++);
      c.is_header = uniform(rng, 0, 3) == 0 || r == 0;
      const int roll = uniform(rng, 0, 9);
      c.colspan = roll < 6 ? 1 : uniform(rng, 2, 4);
      c.rowspan = uniform(rng, 0, 9) < 7 ? 1 : uniform(rng, 2, 5);
      if (uniform(rng, 0, 199) == 0) c.rowspan = 5000;
      if (uniform(rng, 0, 299) == 0) c.colspan = 0;
      row.push_back(std::move(c));
    }
    raw.rows.push_back(std::move(row));
  }
  return raw;
}

std::vector<std::string> reference_rows(const TableGrid& grid,
                                        const std::vector<std::string>& headers,
                                        int header_rows, const tablin::LinearizerConfig& cfg) {
  std::vector<std::string> out;
  for (int r = header_rows + 1; r <= grid.n_rows(); ++r) {
    std::string row;
    for (int c = 1; c <= grid.n_cols(); ++c) {
      if (c > 1) row += cfg.unit_sep;
      if (cfg.format == tablin::Format::V2 && c > 1) {
        row += headers[0] + " ";
        if (!grid.text(1, r).empty()) row += grid.text(1, r) + " ";
      }
      row += headers[static_cast<std::size_t>(c) - 1] + cfg.header_cell_sep + grid.text(c, r);
    }
    out.push_back(row + cfg.row_terminator);
  }
  return out;
}

int count_runs(const std::string& s) {
  int n = 0;
  bool in = false;
  for (unsigned char ch : s) {
    const bool space = ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r';
    if (!space && !in) ++n;
    in = !space;
  }
  return n;
}

std::vector<tablin::ExtractedTable> corpus_tables(const std::string& corpus_dir) {
  return tablin::run_extract(tablin::read_input_manifest(corpus_dir + "/manifest.tsv"), 1).tables;
}

}  // namespace tablin_test
