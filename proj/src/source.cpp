#include "mlsniff/source.hpp"

#include <stdexcept>
#include <vector>

namespace mlsniff {

namespace {

std::size_t count_lines(std::string_view text) {
  if (text.empty()) return 0;
  std::size_t n = 0;
  for (char c : text) n += c == '\n';
  if (text.back() != '\n') ++n;
  return n;
}

// Length of a well-formed UTF-8 sequence starting at `i`, or 0.
std::size_t utf8_sequence_length(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return 1;
  std::size_t len = 0;
  unsigned char lo = 0x80, hi = 0xBF;
  if (b0 >= 0xC2 && b0 <= 0xDF) {
    len = 2;
  } else if (b0 >= 0xE0 && b0 <= 0xEF) {
    len = 3;
    if (b0 == 0xE0) lo = 0xA0;
    if (b0 == 0xED) hi = 0x9F;
  } else if (b0 >= 0xF0 && b0 <= 0xF4) {
    len = 4;
    if (b0 == 0xF0) lo = 0x90;
    if (b0 == 0xF4) hi = 0x8F;
  } else {
    return 0;
  }
  if (i + len > s.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    const unsigned char min = k == 1 ? lo : 0x80;
    const unsigned char max = k == 1 ? hi : 0xBF;
    if (b < min || b > max) return 0;
  }
  return len;
}

}  // namespace

std::string sanitize_utf8(std::string_view bytes) {
  std::string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  while (i < bytes.size()) {
    const std::size_t len = utf8_sequence_length(bytes, i);
    if (len == 0) {
      out += "\xEF\xBF\xBD";
      ++i;
    } else {
      out.append(bytes.substr(i, len));
      i += len;
    }
  }
  return out;
}

SourceFile::SourceFile(std::string path, std::string text)
    : path_(std::move(path)), text_(std::move(text)), line_count_(count_lines(text_)) {
  if (path_.empty()) throw std::invalid_argument("SourceFile path must be non-empty");
}

SourceFile SourceFile::from_bytes(std::string path, std::string_view bytes) {
  if (bytes.starts_with("\xEF\xBB\xBF")) bytes.remove_prefix(3);
  std::string utf8 = sanitize_utf8(bytes);
  std::string text;
  text.reserve(utf8.size());
  for (std::size_t i = 0; i < utf8.size(); ++i) {
    if (utf8[i] == '\r') {
      text += '\n';
      if (i + 1 < utf8.size() && utf8[i + 1] == '\n') ++i;
    } else {
      text += utf8[i];
    }
  }
  return SourceFile(std::move(path), std::move(text));
}

std::string SourceFile::slice(const Span& span) const {
  // Offsets of each line start.
  std::vector<std::size_t> starts{0};
  for (std::size_t i = 0; i < text_.size(); ++i)
    if (text_[i] == '\n') starts.push_back(i + 1);
  auto offset = [&](int line, int col) -> std::size_t {
    if (line < 1 || static_cast<std::size_t>(line) > starts.size()) return std::string::npos;
    const std::size_t off = starts[line - 1] + static_cast<std::size_t>(col);
    return off > text_.size() ? std::string::npos : off;
  };
  const std::size_t b = offset(span.line, span.column);
  const std::size_t e = offset(span.end_line, span.end_column);
  if (b == std::string::npos || e == std::string::npos || e < b) return {};
  return text_.substr(b, e - b);
}

}  // namespace mlsniff
