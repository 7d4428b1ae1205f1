#include "tablin/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <stdexcept>

#include "tablin/errors.hpp"

namespace tablin {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedDocument: return "MalformedDocument";
    case ErrorKind::EmptyTable: return "EmptyTable";
    case ErrorKind::BudgetUnsatisfiable: return "BudgetUnsatisfiable";
    case ErrorKind::NoUsableColumn: return "NoUsableColumn";
    case ErrorKind::NothingGenerable: return "NothingGenerable";
    case ErrorKind::ColumnNotNumeric: return "ColumnNotNumeric";
    case ErrorKind::SchemaViolation: return "SchemaViolation";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::Io: return "IoError";
  }
  return "Unknown";
}

namespace text {

namespace {

const icu::Normalizer2& nfkc_instance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFKCInstance(status);
  if (U_FAILURE(status) || n == nullptr) {
    throw std::runtime_error("ICU NFKC normalizer unavailable");
  }
  return *n;
}

template <typename Fn>
void for_each_code_point(std::string_view s, Fn&& fn) {
  const auto* data = reinterpret_cast<const uint8_t*>(s.data());
  const auto length = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t start = i;
    UChar32 cp = 0;
    U8_NEXT(data, i, length, cp);
    if (cp < 0) cp = 0xFFFD;
    fn(static_cast<char32_t>(cp), start, i);
  }
}

}  // namespace

bool is_space(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' ||
         cp == U'\f' || cp == U'\v' || u_isUWhiteSpace(static_cast<UChar32>(cp));
}

bool is_control(char32_t cp) {
  // Format characters such as ZERO WIDTH SPACE are treated like controls.
  if (cp == 0x200B || cp == 0xFEFF) return true;
  return u_iscntrl(static_cast<UChar32>(cp)) != 0;
}

std::string nfkc(std::string_view s) {
  const auto input = icu::UnicodeString::fromUTF8(
      icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
  UErrorCode status = U_ZERO_ERROR;
  const icu::UnicodeString normalized = nfkc_instance().normalize(input, status);
  if (U_FAILURE(status)) return std::string(s);
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

std::string normalize(std::string_view s) {
  const std::string folded = nfkc(s);
  std::string out;
  out.reserve(folded.size());
  bool pending_space = false;
  for_each_code_point(folded, [&](char32_t cp, int32_t begin, int32_t end) {
    if (is_space(cp)) {
      pending_space = !out.empty();
      return;
    }
    if (is_control(cp)) return;
    if (pending_space) out.push_back(' ');
    pending_space = false;
    // ICU has already replaced malformed sequences with U+FFFD.
    out.append(folded, begin, end - begin);
  });
  return out;
}

std::vector<char32_t> decode(std::string_view s) {
  std::vector<char32_t> out;
  for_each_code_point(s, [&](char32_t cp, int32_t, int32_t) { out.push_back(cp); });
  return out;
}

std::string encode(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  return out;
}

std::vector<std::string> code_points(std::string_view s) {
  std::vector<std::string> out;
  for_each_code_point(s, [&](char32_t, int32_t begin, int32_t end) {
    out.emplace_back(s.substr(begin, end - begin));
  });
  return out;
}

std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> out;
  int32_t word_begin = -1;
  int32_t last_end = 0;
  for_each_code_point(s, [&](char32_t cp, int32_t begin, int32_t end) {
    if (is_space(cp)) {
      if (word_begin >= 0) out.push_back(s.substr(word_begin, begin - word_begin));
      word_begin = -1;
    } else if (word_begin < 0) {
      word_begin = begin;
    }
    last_end = end;
  });
  if (word_begin >= 0) out.push_back(s.substr(word_begin, last_end - word_begin));
  return out;
}

std::size_t count_words(std::string_view s) {
  std::size_t count = 0;
  bool in_word = false;
  for_each_code_point(s, [&](char32_t cp, int32_t, int32_t) {
    if (is_space(cp)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++count;
    }
  });
  return count;
}

bool has_space(std::string_view s) {
  bool found = false;
  for_each_code_point(s, [&](char32_t cp, int32_t, int32_t) { found = found || is_space(cp); });
  return found;
}

bool starts_with_space(std::string_view s) {
  const auto cps = decode(s.substr(0, std::min<std::size_t>(s.size(), 4)));
  return !cps.empty() && is_space(cps.front());
}

bool ends_with_space(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = s.size() - 1;
  while (i > 0 && (static_cast<unsigned char>(s[i]) & 0xC0) == 0x80) --i;
  const auto cps = decode(s.substr(i));
  return !cps.empty() && is_space(cps.back());
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace text
}  // namespace tablin
