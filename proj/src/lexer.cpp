#include "lexer.hpp"

#include <array>
#include <cctype>
#include <cstring>

namespace mlsniff::detail {

namespace {

bool is_ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool is_ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; }

constexpr std::array<std::string_view, 26> kMultiCharOps = {
    "**=", "//=", ">>=", "<<=", "...", "->", ":=", "**", "//", "<<", ">>", "<=", ">=",
    "==",  "!=",  "+=",  "-=",  "*=",  "/=", "%=", "&=", "|=", "^=", "@=", "<>", "!"};

constexpr std::string_view kSingleCharOps = "+-*/%@&|^~<>()[]{},:.;=";

class Lexer {
 public:
  explicit Lexer(std::string_view text) : src_(text) {}

  std::vector<Token> run() {
    indents_.push_back(0);
    while (pos_ < src_.size()) {
      if (at_line_start_) {
        if (!handle_line_start()) continue;
      }
      const char c = src_[pos_];
      if (c == '\n') {
        newline();
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\f') {
        advance(1);
        continue;
      }
      if (c == '#') {
        skip_comment();
        continue;
      }
      if (c == '\\') {
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '\n') {
          advance(1);
          advance_newline();
          continue;
        }
        if (pos_ + 1 >= src_.size()) fail(here(), "unexpected EOF while parsing");
        fail(here(), "unexpected character after line continuation character");
      }
      lex_token();
    }
    finish();
    return std::move(tokens_);
  }

 private:
  Position here() const { return {line_, col_}; }

  [[noreturn]] void fail(Position at, std::string message) { throw LexError{at, std::move(message)}; }

  void advance(std::size_t n) {
    pos_ += n;
    col_ += static_cast<int>(n);
  }
  void advance_newline() {
    ++pos_;
    ++line_;
    col_ = 0;
  }

  void skip_comment() {
    while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
  }

  void emit(TokenKind kind, std::size_t start, Position begin) {
    tokens_.push_back({kind, src_.substr(start, pos_ - start), begin, here()});
    line_has_tokens_ = true;
  }

  void newline() {
    if (depth_ == 0 && line_has_tokens_) {
      tokens_.push_back({TokenKind::Newline, src_.substr(pos_, 1), here(), {line_, col_ + 1}});
      line_has_tokens_ = false;
    }
    advance_newline();
    if (depth_ == 0) at_line_start_ = true;
  }

  // Measures indentation and emits INDENT / DEDENT. Returns false when the
  // line is blank or comment-only and has been consumed.
  bool handle_line_start() {
    int width = 0;
    std::size_t p = pos_;
    while (p < src_.size()) {
      const char c = src_[p];
      if (c == ' ') {
        ++width;
      } else if (c == '\t') {
        width = (width / 8 + 1) * 8;
      } else if (c == '\f') {
        width = 0;
      } else {
        break;
      }
      ++p;
    }
    const std::size_t skipped = p - pos_;
    if (p >= src_.size()) {
      advance(skipped);
      return false;
    }
    if (src_[p] == '\n' || src_[p] == '#') {
      advance(skipped);
      skip_comment();
      if (pos_ < src_.size()) advance_newline();
      return false;
    }
    advance(skipped);
    at_line_start_ = false;
    const Position at = here();
    if (width > indents_.back()) {
      indents_.push_back(width);
      tokens_.push_back({TokenKind::Indent, {}, {line_, 0}, at});
    } else {
      while (width < indents_.back()) {
        indents_.pop_back();
        tokens_.push_back({TokenKind::Dedent, {}, at, at});
      }
      if (width != indents_.back()) fail(at, "unindent does not match any outer indentation level");
    }
    return true;
  }

  void lex_token() {
    const std::size_t start = pos_;
    const Position begin = here();
    const auto c = static_cast<unsigned char>(src_[pos_]);

    if (is_ident_start(c)) {
      std::size_t p = pos_;
      while (p < src_.size() && is_ident_char(static_cast<unsigned char>(src_[p]))) ++p;
      const std::string_view word = src_.substr(pos_, p - pos_);
      if (p < src_.size() && (src_[p] == '\'' || src_[p] == '"') && is_string_prefix(word)) {
        advance(word.size());
        lex_string(start, begin);
        return;
      }
      advance(word.size());
      emit(TokenKind::Name, start, begin);
      return;
    }
    if (c == '\'' || c == '"') {
      lex_string(start, begin);
      return;
    }
    if (std::isdigit(c) || (c == '.' && pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      lex_number(start, begin);
      return;
    }
    for (std::string_view op : kMultiCharOps) {
      if (src_.substr(pos_).starts_with(op)) {
        if (op == "!" || op == "<>") fail(begin, "invalid syntax");
        advance(op.size());
        emit(TokenKind::Op, start, begin);
        return;
      }
    }
    if (kSingleCharOps.find(static_cast<char>(c)) != std::string_view::npos) {
      if (c == '(' || c == '[' || c == '{') {
        brackets_.push_back({static_cast<char>(c), begin});
        ++depth_;
      } else if (c == ')' || c == ']' || c == '}') {
        if (brackets_.empty()) fail(begin, std::string("unmatched '") + static_cast<char>(c) + "'");
        const char open = brackets_.back().first;
        const char want = open == '(' ? ')' : open == '[' ? ']' : '}';
        if (want != static_cast<char>(c))
          fail(begin, std::string("closing parenthesis '") + static_cast<char>(c) +
                          "' does not match opening parenthesis '" + open + "'");
        brackets_.pop_back();
        --depth_;
      }
      advance(1);
      emit(TokenKind::Op, start, begin);
      return;
    }
    fail(begin, "invalid character in source");
  }

  static bool is_string_prefix(std::string_view w) {
    if (w.empty() || w.size() > 2) return false;
    std::string lower;
    for (char ch : w) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return lower == "r" || lower == "u" || lower == "b" || lower == "f" || lower == "br" ||
           lower == "rb" || lower == "fr" || lower == "rf";
  }

  void lex_string(std::size_t start, Position begin) {
    const char quote = src_[pos_];
    const bool triple = src_.substr(pos_).starts_with(std::string(3, quote));
    advance(triple ? 3 : 1);
    while (true) {
      if (pos_ >= src_.size()) {
        fail(begin, triple ? "unterminated triple-quoted string literal" : "unterminated string literal");
      }
      const char ch = src_[pos_];
      if (ch == '\\') {
        advance(1);
        if (pos_ < src_.size()) {
          if (src_[pos_] == '\n') {
            advance_newline();
          } else {
            advance(1);
          }
        }
        continue;
      }
      if (ch == '\n') {
        if (!triple) fail(begin, "unterminated string literal");
        advance_newline();
        continue;
      }
      if (ch == quote) {
        if (!triple) {
          advance(1);
          break;
        }
        if (src_.substr(pos_).starts_with(std::string(3, quote))) {
          advance(3);
          break;
        }
      }
      advance(1);
    }
    emit(TokenKind::String, start, begin);
  }

  void lex_number(std::size_t start, Position begin) {
    auto digits = [&](auto pred) {
      while (pos_ < src_.size() && (pred(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) advance(1);
    };
    auto is_dec = [](unsigned char ch) { return std::isdigit(ch) != 0; };
    if (src_[pos_] == '0' && pos_ + 1 < src_.size() && std::strchr("xXoObB", src_[pos_ + 1]) != nullptr) {
      const char base = static_cast<char>(std::tolower(static_cast<unsigned char>(src_[pos_ + 1])));
      advance(2);
      if (base == 'x') digits([](unsigned char ch) { return std::isxdigit(ch) != 0; });
      if (base == 'o') digits([](unsigned char ch) { return ch >= '0' && ch <= '7'; });
      if (base == 'b') digits([](unsigned char ch) { return ch == '0' || ch == '1'; });
    } else {
      digits(is_dec);
      if (pos_ < src_.size() && src_[pos_] == '.') {
        advance(1);
        digits(is_dec);
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        std::size_t p = pos_ + 1;
        if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
        if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
          advance(p - pos_);
          digits(is_dec);
        }
      }
      if (pos_ < src_.size() && (src_[pos_] == 'j' || src_[pos_] == 'J')) advance(1);
    }
    if (pos_ < src_.size() && is_ident_char(static_cast<unsigned char>(src_[pos_])))
      fail(begin, "invalid decimal literal");
    emit(TokenKind::Number, start, begin);
  }

  void finish() {
    if (!brackets_.empty()) {
      const auto& [open, at] = brackets_.back();
      fail(at, std::string("'") + open + "' was never closed");
    }
    if (line_has_tokens_) tokens_.push_back({TokenKind::Newline, {}, here(), here()});
    while (indents_.size() > 1) {
      indents_.pop_back();
      tokens_.push_back({TokenKind::Dedent, {}, here(), here()});
    }
    tokens_.push_back({TokenKind::EndMarker, {}, here(), here()});
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 0;
  int depth_ = 0;
  bool at_line_start_ = true;
  bool line_has_tokens_ = false;
  std::vector<int> indents_;
  std::vector<std::pair<char, Position>> brackets_;
  std::vector<Token> tokens_;
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

}  // namespace mlsniff::detail
