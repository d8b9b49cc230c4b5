#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace mlsniff {

/// A 1-based line and 0-based byte column pair.
struct Position {
  int line = 1;
  int column = 0;

  friend auto operator<=>(const Position&, const Position&) = default;
};

/// Half-open source range. Columns are UTF-8 byte offsets.
struct Span {
  int line = 1;
  int column = 0;
  int end_line = 1;
  int end_column = 0;

  Span() = default;
  Span(int l, int c, int el, int ec) : line(l), column(c), end_line(el), end_column(ec) {}
  Span(Position begin, Position end)
      : line(begin.line), column(begin.column), end_line(end.line), end_column(end.column) {}

  Position begin() const { return {line, column}; }
  Position end() const { return {end_line, end_column}; }

  bool valid() const {
    return line >= 1 && line <= end_line && (line != end_line || column <= end_column);
  }
  bool contains(const Span& other) const {
    return begin() <= other.begin() && other.end() <= end();
  }

  friend bool operator==(const Span&, const Span&) = default;
  friend auto operator<=>(const Span&, const Span&) = default;
};

/// One decoded Python source file. `text` is valid UTF-8 with LF line endings.
class SourceFile {
 public:
  SourceFile(std::string path, std::string text);

  /// Decodes raw bytes: strips a UTF-8 BOM, replaces invalid sequences with
  /// U+FFFD and normalizes CRLF / CR to LF.
  static SourceFile from_bytes(std::string path, std::string_view bytes);

  const std::string& path() const { return path_; }
  const std::string& text() const { return text_; }
  std::size_t line_count() const { return line_count_; }

  /// Text covered by `span`, or empty when the span lies outside the file.
  std::string slice(const Span& span) const;

 private:
  std::string path_;
  std::string text_;
  std::size_t line_count_ = 0;
};

std::string sanitize_utf8(std::string_view bytes);

}  // namespace mlsniff
