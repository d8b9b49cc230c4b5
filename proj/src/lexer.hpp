#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mlsniff/source.hpp"

namespace mlsniff::detail {

enum class TokenKind { Name, Number, String, Op, Newline, Indent, Dedent, EndMarker };

struct Token {
  TokenKind kind;
  std::string_view text;
  Position begin;
  Position end;
};

struct LexError {
  Position at;
  std::string message;
};

/// Python tokenizer producing logical-line NEWLINE and INDENT/DEDENT tokens.
/// Comments and blank lines are dropped. Throws LexError.
std::vector<Token> tokenize(std::string_view text);

}  // namespace mlsniff::detail
