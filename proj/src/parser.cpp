#include <array>
#include <cstdlib>
#include <optional>
#include <string>

#include "lexer.hpp"
#include "mlsniff/ast.hpp"

namespace mlsniff {

namespace {

using detail::Token;
using detail::TokenKind;

struct ParseFailure {
  Position at;
  std::string message;
};

// An expression together with its outer extent, which includes any
// enclosing parentheses. Composite nodes use the outer extent of operands.
struct Expr {
  Node node;
  Position begin;
  Position end;
};

constexpr std::array<std::string_view, 35> kKeywords = {
    "False", "None",   "True",    "and",      "as",     "assert", "async",  "await",  "break",
    "class", "continue", "def",   "del",      "elif",   "else",   "except", "finally", "for",
    "from",  "global", "if",      "import",   "in",     "is",     "lambda", "nonlocal", "not",
    "or",    "pass",   "raise",   "return",   "try",    "while",  "with",   "yield"};

bool is_keyword(std::string_view w) {
  for (auto k : kKeywords)
    if (k == w) return true;
  return false;
}

constexpr int kMaxDepth = 200;

Node make(NodeKind kind, Position begin, Position end) {
  Node n;
  n.kind = kind;
  n.span = Span(begin, end);
  return n;
}

void finish_plain(Node& n) {
  n.header_begin = 0;
  n.body_begin = n.body_end = static_cast<std::uint32_t>(n.children.size());
}

double parse_number(std::string_view lit, bool& imaginary) {
  std::string s;
  for (char c : lit)
    if (c != '_') s += c;
  imaginary = !s.empty() && (s.back() == 'j' || s.back() == 'J');
  if (imaginary) s.pop_back();
  if (s.size() > 2 && s[0] == '0' && std::isalpha(static_cast<unsigned char>(s[1]))) {
    const char b = static_cast<char>(std::tolower(static_cast<unsigned char>(s[1])));
    const int base = b == 'x' ? 16 : b == 'o' ? 8 : 2;
    return static_cast<double>(std::strtoull(s.c_str() + 2, nullptr, base));
  }
  return std::strtod(s.c_str(), nullptr);
}

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : toks_(tokens) {}

  Node parse_module() {
    Node module = make(NodeKind::Module, {1, 0}, {1, 0});
    while (peek().kind != TokenKind::EndMarker) parse_statement(module.children);
    if (!module.children.empty()) {
      module.span = Span(module.children.front().span.begin(), module.children.back().span.end());
      module.span.line = 1;
      module.span.column = 0;
    }
    module.header_begin = module.body_begin = 0;
    module.body_end = static_cast<std::uint32_t>(module.children.size());
    return module;
  }

 private:
  // ---- token helpers -------------------------------------------------------

  const Token& peek(std::size_t k = 0) const {
    const std::size_t i = std::min(pos_ + k, toks_.size() - 1);
    return toks_[i];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    if (t.kind != TokenKind::Newline && t.kind != TokenKind::Indent && t.kind != TokenKind::Dedent)
      last_end_ = t.end;
    return t;
  }
  bool at_op(std::string_view op, std::size_t k = 0) const {
    const Token& t = peek(k);
    return t.kind == TokenKind::Op && t.text == op;
  }
  bool at_kw(std::string_view kw, std::size_t k = 0) const {
    const Token& t = peek(k);
    return t.kind == TokenKind::Name && t.text == kw;
  }
  bool accept_op(std::string_view op) {
    if (!at_op(op)) return false;
    next();
    return true;
  }
  bool accept_kw(std::string_view kw) {
    if (!at_kw(kw)) return false;
    next();
    return true;
  }
  [[noreturn]] void fail(const Token& t, std::string message) const {
    if (t.kind == TokenKind::EndMarker) message = "unexpected EOF while parsing";
    if (t.kind == TokenKind::Indent) message = "unexpected indent";
    throw ParseFailure{t.begin, std::move(message)};
  }
  const Token& expect_op(std::string_view op) {
    if (!at_op(op)) fail(peek(), "expected '" + std::string(op) + "'");
    return next();
  }
  const Token& expect_kw(std::string_view kw) {
    if (!at_kw(kw)) fail(peek(), "expected '" + std::string(kw) + "'");
    return next();
  }
  const Token& expect_name() {
    const Token& t = peek();
    if (t.kind != TokenKind::Name || is_keyword(t.text)) fail(t, "invalid syntax");
    return next();
  }

  bool starts_expression(const Token& t) const {
    switch (t.kind) {
      case TokenKind::Number:
      case TokenKind::String:
        return true;
      case TokenKind::Name:
        return !is_keyword(t.text) || t.text == "not" || t.text == "lambda" || t.text == "await" ||
               t.text == "None" || t.text == "True" || t.text == "False" || t.text == "yield";
      case TokenKind::Op:
        return t.text == "(" || t.text == "[" || t.text == "{" || t.text == "-" || t.text == "+" ||
               t.text == "~" || t.text == "*" || t.text == "..." || t.text == "**";
      default:
        return false;
    }
  }

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth_ > kMaxDepth) p.fail(p.peek(), "too many nested parentheses");
    }
    ~DepthGuard() { --p.depth_; }
  };

  // ---- statements ----------------------------------------------------------

  void parse_statement(std::vector<Node>& out) {
    DepthGuard guard(*this);
    const Token& t = peek();
    if (t.kind == TokenKind::Indent) fail(t, "unexpected indent");
    if (t.kind == TokenKind::Op && t.text == "@") {
      out.push_back(parse_decorated());
      return;
    }
    if (t.kind == TokenKind::Name) {
      const std::string_view w = t.text;
      if (w == "def") return out.push_back(parse_funcdef({}, t.begin));
      if (w == "class") return out.push_back(parse_classdef({}, t.begin));
      if (w == "if") return out.push_back(parse_if());
      if (w == "while") return out.push_back(parse_while());
      if (w == "for") return out.push_back(parse_for(t.begin));
      if (w == "try") return out.push_back(parse_try());
      if (w == "with") return out.push_back(parse_with(t.begin));
      if (w == "async") {
        const Position begin = next().begin;
        if (at_kw("def")) return out.push_back(parse_funcdef({}, begin));
        if (at_kw("for")) return out.push_back(parse_for(begin));
        if (at_kw("with")) return out.push_back(parse_with(begin));
        fail(peek(), "invalid syntax");
      }
      if (w == "match") {
        if (auto m = try_parse_match()) return out.push_back(std::move(*m));
      }
    }
    parse_simple_statements(out);
  }

  void parse_simple_statements(std::vector<Node>& out) {
    while (true) {
      out.push_back(parse_small_statement());
      if (accept_op(";")) {
        if (peek().kind == TokenKind::Newline) break;
        continue;
      }
      break;
    }
    if (peek().kind != TokenKind::Newline) fail(peek(), "invalid syntax");
    next();
  }

  std::vector<Node> parse_block() {
    expect_op(":");
    std::vector<Node> body;
    if (peek().kind == TokenKind::Newline) {
      next();
      if (peek().kind != TokenKind::Indent) fail(peek(), "expected an indented block");
      next();
      while (peek().kind != TokenKind::Dedent && peek().kind != TokenKind::EndMarker) parse_statement(body);
      if (peek().kind == TokenKind::Dedent) next();
    } else {
      parse_simple_statements(body);
    }
    return body;
  }

  static void append_body(Node& n, std::vector<Node>&& body) {
    n.body_begin = static_cast<std::uint32_t>(n.children.size());
    for (auto& s : body) n.children.push_back(std::move(s));
    n.body_end = static_cast<std::uint32_t>(n.children.size());
  }

  static bool docstring_first(const Node& n) {
    const auto body = n.body();
    return !body.empty() && body.front().kind == NodeKind::Expr && !body.front().children.empty() &&
           body.front().children.front().is_string();
  }

  Node parse_small_statement() {
    const Token& t = peek();
    const Position begin = t.begin;
    if (t.kind == TokenKind::Name) {
      const std::string_view w = t.text;
      if (w == "pass" || w == "break" || w == "continue") {
        next();
        Node n = make(NodeKind::Other, begin, last_end_);
        n.text = std::string(w);
        finish_plain(n);
        return n;
      }
      if (w == "return") {
        next();
        Node n = make(NodeKind::Return, begin, begin);
        if (starts_expression(peek())) n.children.push_back(parse_star_expressions().node);
        n.span = Span(begin, last_end_);
        finish_plain(n);
        return n;
      }
      if (w == "raise") {
        next();
        Node n = make(NodeKind::Other, begin, begin);
        n.text = "raise";
        if (starts_expression(peek())) {
          n.children.push_back(parse_test().node);
          if (accept_kw("from")) n.children.push_back(parse_test().node);
        }
        n.span = Span(begin, last_end_);
        finish_plain(n);
        return n;
      }
      if (w == "global" || w == "nonlocal") {
        next();
        expect_name();
        while (accept_op(",")) expect_name();
        Node n = make(NodeKind::Other, begin, last_end_);
        n.text = std::string(w);
        finish_plain(n);
        return n;
      }
      if (w == "del") {
        next();
        Node n = make(NodeKind::Other, begin, begin);
        n.text = "del";
        Expr targets = parse_exprlist_bitor();
        check_target(targets, "delete");
        n.children.push_back(std::move(targets.node));
        n.span = Span(begin, last_end_);
        finish_plain(n);
        return n;
      }
      if (w == "assert") {
        next();
        Node n = make(NodeKind::Other, begin, begin);
        n.text = "assert";
        n.children.push_back(parse_test().node);
        if (accept_op(",")) n.children.push_back(parse_test().node);
        n.span = Span(begin, last_end_);
        finish_plain(n);
        return n;
      }
      if (w == "import") return parse_import();
      if (w == "from") return parse_import_from();
    }
    return parse_expression_statement();
  }

  Node parse_import() {
    const Position begin = next().begin;
    Node n = make(NodeKind::Import, begin, begin);
    do {
      ImportAlias a;
      a.name = parse_dotted_name();
      if (accept_kw("as")) a.asname = std::string(expect_name().text);
      n.aliases.push_back(std::move(a));
    } while (accept_op(","));
    n.span = Span(begin, last_end_);
    finish_plain(n);
    return n;
  }

  std::string parse_dotted_name() {
    std::string name(expect_name().text);
    while (at_op(".") && peek(1).kind == TokenKind::Name) {
      next();
      name += '.';
      name += expect_name().text;
    }
    return name;
  }

  Node parse_import_from() {
    const Position begin = next().begin;
    Node n = make(NodeKind::ImportFrom, begin, begin);
    std::string module;
    int level = 0;
    while (at_op(".") || at_op("...")) {
      level += peek().text == "..." ? 3 : 1;
      next();
    }
    module.assign(static_cast<std::size_t>(level), '.');
    if (!at_kw("import")) module += parse_dotted_name();
    else if (level == 0) fail(peek(), "invalid syntax");
    expect_kw("import");
    n.text = module;
    n.import_level = level;
    if (accept_op("*")) {
      n.aliases.push_back({"*", ""});
    } else {
      const bool paren = accept_op("(");
      do {
        if (paren && at_op(")")) break;
        ImportAlias a;
        a.name = std::string(expect_name().text);
        if (accept_kw("as")) a.asname = std::string(expect_name().text);
        n.aliases.push_back(std::move(a));
      } while (accept_op(","));
      if (paren) expect_op(")");
      if (n.aliases.empty()) fail(peek(), "invalid syntax");
    }
    n.span = Span(begin, last_end_);
    finish_plain(n);
    return n;
  }

  static bool is_aug_op(const Token& t) {
    if (t.kind != TokenKind::Op) return false;
    static constexpr std::array<std::string_view, 13> ops = {"+=", "-=", "*=", "/=", "//=", "%=", "@=",
                                                             "&=", "|=", "^=", ">>=", "<<=", "**="};
    for (auto o : ops)
      if (t.text == o) return true;
    return false;
  }

  void check_target(const Expr& e, std::string_view what) const {
    const Node& n = e.node;
    switch (n.kind) {
      case NodeKind::Name:
      case NodeKind::Attribute:
      case NodeKind::Subscript:
        return;
      case NodeKind::Starred:
        if (n.text == "*" && !n.children.empty())
          return check_target({n.children.front(), n.children.front().span.begin(), n.children.front().span.end()}, what);
        break;
      case NodeKind::Tuple:
      case NodeKind::List:
        for (const Node& c : n.children) check_target({c, c.span.begin(), c.span.end()}, what);
        return;
      default:
        break;
    }
    throw ParseFailure{e.begin, "cannot " + std::string(what) + " " + std::string(describe(n))};
  }

  static std::string_view describe(const Node& n) {
    switch (n.kind) {
      case NodeKind::Call: return "function call";
      case NodeKind::Constant: return "literal";
      case NodeKind::BinOp:
      case NodeKind::UnaryOp: return "expression";
      case NodeKind::Compare: return "comparison";
      case NodeKind::Lambda: return "lambda";
      default: return "expression";
    }
  }

  Expr parse_assign_value() {
    if (at_kw("yield")) return parse_yield();
    return parse_star_expressions();
  }

  Node parse_expression_statement() {
    const Position begin = peek().begin;
    Expr first = parse_assign_value();
    if (at_op("=")) {
      std::vector<Expr> parts{std::move(first)};
      while (accept_op("=")) parts.push_back(parse_assign_value());
      Node n = make(NodeKind::Assign, begin, last_end_);
      for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        check_target(parts[i], "assign to");
        n.children.push_back(std::move(parts[i].node));
      }
      n.children.push_back(std::move(parts.back().node));
      finish_plain(n);
      return n;
    }
    if (is_aug_op(peek())) {
      const Token& op = next();
      if (first.node.kind != NodeKind::Name && first.node.kind != NodeKind::Attribute &&
          first.node.kind != NodeKind::Subscript)
        throw ParseFailure{first.begin, "illegal expression for augmented assignment"};
      Expr value = parse_assign_value();
      Node n = make(NodeKind::AugAssign, begin, last_end_);
      n.text = std::string(op.text.substr(0, op.text.size() - 1));
      n.children.push_back(std::move(first.node));
      n.children.push_back(std::move(value.node));
      finish_plain(n);
      return n;
    }
    if (at_op(":")) {
      next();
      if (first.node.kind != NodeKind::Name && first.node.kind != NodeKind::Attribute &&
          first.node.kind != NodeKind::Subscript)
        throw ParseFailure{first.begin, "illegal target for annotation"};
      Node n = make(NodeKind::AnnAssign, begin, begin);
      n.children.push_back(std::move(first.node));
      n.children.push_back(parse_test().node);
      if (accept_op("=")) n.children.push_back(parse_assign_value().node);
      n.span = Span(begin, last_end_);
      finish_plain(n);
      return n;
    }
    Node n = make(NodeKind::Expr, begin, last_end_);
    n.children.push_back(std::move(first.node));
    finish_plain(n);
    return n;
  }

  Node parse_decorated() {
    const Position begin = peek().begin;
    std::vector<Node> decorators;
    while (accept_op("@")) {
      decorators.push_back(parse_namedexpr().node);
      if (peek().kind != TokenKind::Newline) fail(peek(), "invalid syntax");
      next();
    }
    if (at_kw("def")) return parse_funcdef(std::move(decorators), begin);
    if (at_kw("class")) return parse_classdef(std::move(decorators), begin);
    if (at_kw("async") && at_kw("def", 1)) {
      next();
      return parse_funcdef(std::move(decorators), begin);
    }
    fail(peek(), "invalid syntax");
  }

  Node parse_funcdef(std::vector<Node> decorators, Position begin) {
    expect_kw("def");
    Node n = make(NodeKind::FunctionDef, begin, begin);
    n.text = std::string(expect_name().text);
    n.children = std::move(decorators);
    n.header_begin = static_cast<std::uint32_t>(n.children.size());
    expect_op("(");
    parse_parameters(n.children, ")", true);
    expect_op(")");
    if (accept_op("->")) n.children.push_back(parse_test().node);
    append_body(n, parse_block());
    n.has_docstring = docstring_first(n);
    n.span = Span(begin, last_end_);
    return n;
  }

  // Parameters up to (not including) `close`.
  void parse_parameters(std::vector<Node>& out, std::string_view close, bool annotations) {
    while (!at_op(close)) {
      const Position begin = peek().begin;
      if (accept_op("/")) {
        if (!at_op(close)) expect_op(",");
        continue;
      }
      std::string prefix;
      if (accept_op("*")) prefix = "*";
      else if (accept_op("**")) prefix = "**";
      if (prefix == "*" && (at_op(",") || at_op(close))) {
        if (!at_op(close)) expect_op(",");
        continue;
      }
      Node p = make(NodeKind::Parameter, begin, begin);
      p.text = prefix + std::string(expect_name().text);
      if (annotations && accept_op(":")) p.children.push_back(parse_test().node);
      if (accept_op("=")) p.children.push_back(parse_test().node);
      p.span = Span(begin, last_end_);
      finish_plain(p);
      out.push_back(std::move(p));
      if (!at_op(close)) expect_op(",");
    }
  }

  Node parse_classdef(std::vector<Node> decorators, Position begin) {
    expect_kw("class");
    Node n = make(NodeKind::ClassDef, begin, begin);
    n.text = std::string(expect_name().text);
    n.children = std::move(decorators);
    n.header_begin = static_cast<std::uint32_t>(n.children.size());
    if (accept_op("(")) {
      parse_call_arguments(n.children);
      expect_op(")");
    }
    append_body(n, parse_block());
    n.has_docstring = docstring_first(n);
    n.span = Span(begin, last_end_);
    return n;
  }

  Node parse_if() {
    const Position begin = next().begin;  // 'if' or 'elif'
    Node n = make(NodeKind::If, begin, begin);
    n.children.push_back(parse_namedexpr().node);
    append_body(n, parse_block());
    if (at_kw("elif")) {
      n.children.push_back(parse_if());
    } else if (accept_kw("else")) {
      for (auto& s : parse_block()) n.children.push_back(std::move(s));
    }
    n.span = Span(begin, last_end_);
    return n;
  }

  Node parse_while() {
    const Position begin = next().begin;
    Node n = make(NodeKind::While, begin, begin);
    n.children.push_back(parse_namedexpr().node);
    append_body(n, parse_block());
    if (accept_kw("else"))
      for (auto& s : parse_block()) n.children.push_back(std::move(s));
    n.span = Span(begin, last_end_);
    return n;
  }

  Node parse_for(Position begin) {
    expect_kw("for");
    Node n = make(NodeKind::For, begin, begin);
    Expr target = parse_exprlist_bitor();
    check_target(target, "assign to");
    n.children.push_back(std::move(target.node));
    expect_kw("in");
    n.children.push_back(parse_star_expressions().node);
    append_body(n, parse_block());
    if (accept_kw("else"))
      for (auto& s : parse_block()) n.children.push_back(std::move(s));
    n.span = Span(begin, last_end_);
    return n;
  }

  Node clause(std::string tag, Position begin, std::vector<Node> header, std::vector<Node> body) {
    Node c = make(NodeKind::Other, begin, last_end_);
    c.text = std::move(tag);
    c.children = std::move(header);
    append_body(c, std::move(body));
    return c;
  }

  Node parse_try() {
    const Position begin = next().begin;
    Node n = make(NodeKind::Try, begin, begin);
    append_body(n, parse_block());
    bool handlers = false;
    while (at_kw("except")) {
      const Position hb = next().begin;
      accept_op("*");
      std::vector<Node> header;
      if (!at_op(":")) {
        header.push_back(parse_test().node);
        if (accept_kw("as")) {
          const Token& name = expect_name();
          Node nm = make(NodeKind::Name, name.begin, name.end);
          nm.text = std::string(name.text);
          finish_plain(nm);
          header.push_back(std::move(nm));
        }
      }
      auto body = parse_block();
      n.children.push_back(clause("except", hb, std::move(header), std::move(body)));
      handlers = true;
    }
    if (handlers && at_kw("else")) {
      const Position eb = next().begin;
      auto body = parse_block();
      n.children.push_back(clause("else", eb, {}, std::move(body)));
    }
    if (at_kw("finally")) {
      const Position fb = next().begin;
      auto body = parse_block();
      n.children.push_back(clause("finally", fb, {}, std::move(body)));
      handlers = true;
    }
    if (!handlers) fail(peek(), "expected 'except' or 'finally' block");
    n.span = Span(begin, last_end_);
    return n;
  }

  void parse_with_items(std::vector<Node>& out, std::string_view stop) {
    do {
      if (!stop.empty() && at_op(stop)) break;
      out.push_back(parse_test().node);
      if (accept_kw("as")) {
        Expr target = parse_target();
        check_target(target, "assign to");
        out.push_back(std::move(target.node));
      }
    } while (accept_op(","));
  }

  Node parse_with(Position begin) {
    expect_kw("with");
    Node n = make(NodeKind::With, begin, begin);
    bool parsed = false;
    if (at_op("(")) {
      // Parenthesized item list, distinguished from a parenthesized expression
      // by the ':' that must follow the closing bracket.
      const std::size_t save = pos_;
      const Position save_end = last_end_;
      try {
        next();
        std::vector<Node> items;
        parse_with_items(items, ")");
        expect_op(")");
        if (at_op(":")) {
          n.children = std::move(items);
          parsed = true;
        }
      } catch (const ParseFailure&) {
      }
      if (!parsed) {
        pos_ = save;
        last_end_ = save_end;
      }
    }
    if (!parsed) parse_with_items(n.children, "");
    n.header_begin = 0;
    append_body(n, parse_block());
    n.span = Span(begin, last_end_);
    return n;
  }

  std::optional<Node> try_parse_match() {
    const std::size_t save = pos_;
    const Position save_end = last_end_;
    try {
      const Position begin = next().begin;
      Node n = make(NodeKind::Other, begin, begin);
      n.text = "match";
      n.children.push_back(parse_star_expressions().node);
      expect_op(":");
      if (peek().kind != TokenKind::Newline) fail(peek(), "invalid syntax");
      next();
      if (peek().kind != TokenKind::Indent) fail(peek(), "expected an indented block");
      next();
      if (!at_kw("case")) fail(peek(), "expected 'case'");
      n.header_begin = 0;
      n.body_begin = 1;
      while (at_kw("case")) {
        const Position cb = next().begin;
        // Patterns are skipped; only guard and body are kept.
        int depth = 0;
        std::vector<Node> header;
        while (!(depth == 0 && (at_op(":") || at_kw("if")))) {
          const Token& t = peek();
          if (t.kind == TokenKind::Newline || t.kind == TokenKind::EndMarker) fail(t, "invalid syntax");
          if (t.kind == TokenKind::Op && (t.text == "(" || t.text == "[" || t.text == "{")) ++depth;
          if (t.kind == TokenKind::Op && (t.text == ")" || t.text == "]" || t.text == "}")) --depth;
          next();
        }
        if (accept_kw("if")) header.push_back(parse_namedexpr().node);
        auto body = parse_block();
        n.children.push_back(clause("case", cb, std::move(header), std::move(body)));
      }
      if (peek().kind == TokenKind::Dedent) next();
      n.body_end = static_cast<std::uint32_t>(n.children.size());
      n.span = Span(begin, last_end_);
      return n;
    } catch (const ParseFailure&) {
      pos_ = save;
      last_end_ = save_end;
      return std::nullopt;
    }
  }

  // ---- expressions ---------------------------------------------------------

  Expr finish(Node n, Position begin) {
    n.span = Span(begin, last_end_);
    finish_plain(n);
    return {std::move(n), begin, last_end_};
  }

  Expr wrap(Node n) {
    finish_plain(n);
    const Position b = n.span.begin(), e = n.span.end();
    return {std::move(n), b, e};
  }

  // Comma-separated list; a comma makes a Tuple.
  template <class Elem>
  Expr parse_list_of(Elem elem) {
    const Position begin = peek().begin;
    Expr first = (this->*elem)();
    if (!at_op(",")) return first;
    Node tuple = make(NodeKind::Tuple, first.begin, first.end);
    tuple.children.push_back(std::move(first.node));
    while (accept_op(",")) {
      if (!starts_expression(peek())) break;
      tuple.children.push_back((this->*elem)().node);
    }
    return finish(std::move(tuple), begin);
  }

  Expr parse_star_expressions() { return parse_list_of(&Parser::parse_star_or_namedexpr); }
  Expr parse_exprlist_bitor() { return parse_list_of(&Parser::parse_star_or_bitor); }
  Expr parse_target() { return parse_star_or_bitor(); }

  Expr parse_star_or_namedexpr() {
    if (at_op("*")) {
      const Position begin = next().begin;
      Node n = make(NodeKind::Starred, begin, begin);
      n.text = "*";
      n.children.push_back(parse_bitor().node);
      return finish(std::move(n), begin);
    }
    return parse_namedexpr();
  }

  Expr parse_star_or_bitor() {
    if (at_op("*")) {
      const Position begin = next().begin;
      Node n = make(NodeKind::Starred, begin, begin);
      n.text = "*";
      n.children.push_back(parse_bitor().node);
      return finish(std::move(n), begin);
    }
    return parse_bitor();
  }

  Expr parse_namedexpr() {
    if (peek().kind == TokenKind::Name && at_op(":=", 1) && !is_keyword(peek().text)) {
      const Token& name = next();
      next();
      Node n = make(NodeKind::Other, name.begin, name.begin);
      n.text = "namedexpr";
      Node target = make(NodeKind::Name, name.begin, name.end);
      target.text = std::string(name.text);
      finish_plain(target);
      n.children.push_back(std::move(target));
      n.children.push_back(parse_test().node);
      return finish(std::move(n), name.begin);
    }
    return parse_test();
  }

  Expr parse_yield() {
    const Position begin = expect_kw("yield").begin;
    Node n = make(NodeKind::Other, begin, begin);
    n.text = "yield";
    if (accept_kw("from")) {
      n.text = "yield from";
      n.children.push_back(parse_test().node);
    } else if (starts_expression(peek())) {
      n.children.push_back(parse_star_expressions().node);
    }
    return finish(std::move(n), begin);
  }

  Expr parse_test() {
    DepthGuard guard(*this);
    if (at_kw("lambda")) return parse_lambda();
    Expr body = parse_or();
    if (!at_kw("if")) return body;
    next();
    Node n = make(NodeKind::IfExp, body.begin, body.begin);
    n.children.push_back(std::move(body.node));
    n.children.push_back(parse_or().node);
    expect_kw("else");
    n.children.push_back(parse_test().node);
    return finish(std::move(n), body.begin);
  }

  Expr parse_lambda() {
    const Position begin = expect_kw("lambda").begin;
    Node n = make(NodeKind::Lambda, begin, begin);
    parse_parameters(n.children, ":", false);
    expect_op(":");
    n.children.push_back(parse_test().node);
    return finish(std::move(n), begin);
  }

  Expr parse_bool(std::string_view op, Expr (Parser::*operand)()) {
    Expr first = (this->*operand)();
    if (!at_kw(op)) return first;
    Node n = make(NodeKind::BoolOp, first.begin, first.begin);
    n.text = std::string(op);
    const Position begin = first.begin;
    n.children.push_back(std::move(first.node));
    while (accept_kw(op)) n.children.push_back((this->*operand)().node);
    return finish(std::move(n), begin);
  }

  Expr parse_or() { return parse_bool("or", &Parser::parse_and); }
  Expr parse_and() { return parse_bool("and", &Parser::parse_not); }

  Expr parse_not() {
    if (at_kw("not")) {
      const Position begin = next().begin;
      Node n = make(NodeKind::UnaryOp, begin, begin);
      n.text = "not";
      n.children.push_back(parse_not().node);
      return finish(std::move(n), begin);
    }
    return parse_comparison();
  }

  std::optional<std::string> comparison_op() {
    const Token& t = peek();
    if (t.kind == TokenKind::Op &&
        (t.text == "<" || t.text == ">" || t.text == "==" || t.text == ">=" || t.text == "<=" || t.text == "!=")) {
      next();
      return std::string(t.text);
    }
    if (at_kw("in")) {
      next();
      return "in";
    }
    if (at_kw("not") && at_kw("in", 1)) {
      next();
      next();
      return "not in";
    }
    if (at_kw("is")) {
      next();
      if (accept_kw("not")) return "is not";
      return "is";
    }
    return std::nullopt;
  }

  Expr parse_comparison() {
    Expr first = parse_bitor();
    auto op = comparison_op();
    if (!op) return first;
    const Position begin = first.begin;
    Node n = make(NodeKind::Compare, begin, begin);
    n.children.push_back(std::move(first.node));
    n.text = *op;
    n.children.push_back(parse_bitor().node);
    while ((op = comparison_op())) {
      n.text += ' ';
      n.text += *op;
      n.children.push_back(parse_bitor().node);
    }
    return finish(std::move(n), begin);
  }

  template <std::size_t N>
  Expr parse_binary(const std::array<std::string_view, N>& ops, Expr (Parser::*operand)()) {
    Expr left = (this->*operand)();
    while (true) {
      const Token& t = peek();
      bool match = false;
      if (t.kind == TokenKind::Op)
        for (auto o : ops) match = match || t.text == o;
      if (!match) return left;
      next();
      Expr right = (this->*operand)();
      Node n = make(NodeKind::BinOp, left.begin, right.end);
      n.text = std::string(t.text);
      const Position begin = left.begin;
      n.children.push_back(std::move(left.node));
      n.children.push_back(std::move(right.node));
      left = finish(std::move(n), begin);
    }
  }

  Expr parse_bitor() { return parse_binary(std::array<std::string_view, 1>{"|"}, &Parser::parse_xor); }
  Expr parse_xor() { return parse_binary(std::array<std::string_view, 1>{"^"}, &Parser::parse_bitand); }
  Expr parse_bitand() { return parse_binary(std::array<std::string_view, 1>{"&"}, &Parser::parse_shift); }
  Expr parse_shift() { return parse_binary(std::array<std::string_view, 2>{"<<", ">>"}, &Parser::parse_arith); }
  Expr parse_arith() { return parse_binary(std::array<std::string_view, 2>{"+", "-"}, &Parser::parse_term); }
  Expr parse_term() {
    return parse_binary(std::array<std::string_view, 5>{"*", "/", "//", "%", "@"}, &Parser::parse_factor);
  }

  Expr parse_factor() {
    DepthGuard guard(*this);
    if (at_op("-") || at_op("+") || at_op("~")) {
      const Token& op = next();
      Node n = make(NodeKind::UnaryOp, op.begin, op.begin);
      n.text = std::string(op.text);
      n.children.push_back(parse_factor().node);
      return finish(std::move(n), op.begin);
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_await();
    if (!at_op("**")) return base;
    next();
    Expr exponent = parse_factor();
    const Position begin = base.begin;
    Node n = make(NodeKind::BinOp, begin, begin);
    n.text = "**";
    n.children.push_back(std::move(base.node));
    n.children.push_back(std::move(exponent.node));
    return finish(std::move(n), begin);
  }

  Expr parse_await() {
    if (at_kw("await")) {
      const Position begin = next().begin;
      Node n = make(NodeKind::UnaryOp, begin, begin);
      n.text = "await";
      n.children.push_back(parse_primary().node);
      return finish(std::move(n), begin);
    }
    return parse_primary();
  }

  Expr parse_primary() {
    Expr e = parse_atom();
    while (true) {
      const Position begin = e.begin;
      if (accept_op(".")) {
        const Token& name = peek();
        if (name.kind != TokenKind::Name) fail(name, "invalid syntax");
        next();
        Node n = make(NodeKind::Attribute, begin, begin);
        n.text = std::string(name.text);
        n.children.push_back(std::move(e.node));
        e = finish(std::move(n), begin);
      } else if (accept_op("(")) {
        Node n = make(NodeKind::Call, begin, begin);
        n.children.push_back(std::move(e.node));
        parse_call_arguments(n.children);
        expect_op(")");
        e = finish(std::move(n), begin);
      } else if (accept_op("[")) {
        Node n = make(NodeKind::Subscript, begin, begin);
        n.children.push_back(std::move(e.node));
        n.children.push_back(parse_slices().node);
        expect_op("]");
        e = finish(std::move(n), begin);
      } else {
        return e;
      }
    }
  }

  void parse_call_arguments(std::vector<Node>& out) {
    const std::size_t first_arg = out.size();
    while (!at_op(")")) {
      const Position begin = peek().begin;
      if (accept_op("**")) {
        Node kw = make(NodeKind::Keyword, begin, begin);
        kw.children.push_back(parse_test().node);
        out.push_back(finish(std::move(kw), begin).node);
      } else if (at_op("*")) {
        out.push_back(parse_star_or_namedexpr().node);
      } else if (peek().kind == TokenKind::Name && at_op("=", 1)) {
        const Token& name = expect_name();
        next();
        Node kw = make(NodeKind::Keyword, begin, begin);
        kw.text = std::string(name.text);
        kw.children.push_back(parse_test().node);
        out.push_back(finish(std::move(kw), begin).node);
      } else {
        Expr arg = parse_namedexpr();
        if (at_kw("for") || (at_kw("async") && at_kw("for", 1))) {
          if (out.size() != first_arg) fail(peek(), "Generator expression must be parenthesized");
          out.push_back(parse_comprehension("generator", std::move(arg), {}).node);
          if (!at_op(")")) fail(peek(), "Generator expression must be parenthesized");
          break;
        }
        out.push_back(std::move(arg.node));
      }
      if (!at_op(")")) expect_op(",");
    }
  }

  Expr parse_slice_item() {
    const Position begin = peek().begin;
    std::optional<Expr> lower;
    if (!at_op(":")) {
      Expr e = parse_star_or_namedexpr();
      if (!at_op(":")) return e;
      lower = std::move(e);
    }
    Node n = make(NodeKind::Slice, begin, begin);
    std::string shape = lower ? "x" : "";
    if (lower) n.children.push_back(std::move(lower->node));
    expect_op(":");
    shape += ':';
    auto slice_end = [&] { return at_op(":") || at_op(",") || at_op("]"); };
    if (!slice_end()) {
      n.children.push_back(parse_test().node);
      shape += 'x';
    }
    if (accept_op(":")) {
      shape += ':';
      if (!at_op(",") && !at_op("]")) {
        n.children.push_back(parse_test().node);
        shape += 'x';
      }
    }
    n.text = shape;
    return finish(std::move(n), begin);
  }

  Expr parse_slices() {
    const Position begin = peek().begin;
    Expr first = parse_slice_item();
    if (!at_op(",")) return first;
    Node tuple = make(NodeKind::Tuple, begin, begin);
    tuple.children.push_back(std::move(first.node));
    while (accept_op(",")) {
      if (at_op("]")) break;
      tuple.children.push_back(parse_slice_item().node);
    }
    return finish(std::move(tuple), begin);
  }

  Node string_constant() {
    const Token& first = peek();
    Node n = make(NodeKind::Constant, first.begin, first.end);
    n.constant_kind = ConstantKind::String;
    bool bytes = false;
    while (peek().kind == TokenKind::String) {
      const Token& t = next();
      if (!n.text.empty()) n.text += ' ';
      n.text += t.text;
      const auto quote = t.text.find_first_of("'\"");
      for (std::size_t i = 0; i < quote; ++i) bytes = bytes || t.text[i] == 'b' || t.text[i] == 'B';
    }
    if (bytes) n.constant_kind = ConstantKind::Bytes;
    n.span = Span(first.begin, last_end_);
    finish_plain(n);
    return n;
  }

  Expr parse_atom() {
    DepthGuard guard(*this);
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Name: {
        if (t.text == "True" || t.text == "False" || t.text == "None") {
          next();
          Node n = make(NodeKind::Constant, t.begin, t.end);
          n.constant_kind = t.text == "None" ? ConstantKind::NoneValue : ConstantKind::Bool;
          n.text = std::string(t.text);
          return wrap(std::move(n));
        }
        if (is_keyword(t.text)) fail(t, "invalid syntax");
        next();
        Node n = make(NodeKind::Name, t.begin, t.end);
        n.text = std::string(t.text);
        return wrap(std::move(n));
      }
      case TokenKind::Number: {
        next();
        Node n = make(NodeKind::Constant, t.begin, t.end);
        n.constant_kind = ConstantKind::Number;
        n.text = std::string(t.text);
        n.number = parse_number(t.text, n.imaginary);
        return wrap(std::move(n));
      }
      case TokenKind::String:
        return wrap(string_constant());
      case TokenKind::Op:
        if (t.text == "...") {
          next();
          Node n = make(NodeKind::Constant, t.begin, t.end);
          n.constant_kind = ConstantKind::Ellipsis;
          n.text = "...";
          return wrap(std::move(n));
        }
        if (t.text == "(") return parse_paren();
        if (t.text == "[") return parse_list_display();
        if (t.text == "{") return parse_brace_display();
        break;
      default:
        break;
    }
    fail(t, "invalid syntax");
  }

  Expr parse_paren() {
    const Position begin = next().begin;
    if (accept_op(")")) return finish(make(NodeKind::Tuple, begin, begin), begin);
    if (at_kw("yield")) {
      Expr y = parse_yield();
      expect_op(")");
      return {std::move(y.node), begin, last_end_};
    }
    Expr first = parse_star_or_namedexpr();
    if (at_kw("for") || (at_kw("async") && at_kw("for", 1))) {
      Expr gen = parse_comprehension("generator", std::move(first), {});
      expect_op(")");
      return {std::move(gen.node), begin, last_end_};
    }
    if (at_op(",")) {
      Node tuple = make(NodeKind::Tuple, begin, begin);
      tuple.children.push_back(std::move(first.node));
      while (accept_op(",")) {
        if (at_op(")")) break;
        tuple.children.push_back(parse_star_or_namedexpr().node);
      }
      expect_op(")");
      return finish(std::move(tuple), begin);
    }
    expect_op(")");
    return {std::move(first.node), begin, last_end_};
  }

  Expr parse_list_display() {
    const Position begin = next().begin;
    Node n = make(NodeKind::List, begin, begin);
    if (accept_op("]")) return finish(std::move(n), begin);
    Expr first = parse_star_or_namedexpr();
    if (at_kw("for") || (at_kw("async") && at_kw("for", 1))) {
      Expr comp = parse_comprehension("list", std::move(first), begin);
      expect_op("]");
      return finish(std::move(comp.node), begin);
    }
    n.children.push_back(std::move(first.node));
    while (accept_op(",")) {
      if (at_op("]")) break;
      n.children.push_back(parse_star_or_namedexpr().node);
    }
    expect_op("]");
    return finish(std::move(n), begin);
  }

  Expr parse_brace_display() {
    const Position begin = next().begin;
    if (accept_op("}")) return finish(make(NodeKind::Dict, begin, begin), begin);
    auto dict_entry = [&](Node& dict) {
      if (at_op("**")) {
        const Position sb = next().begin;
        Node s = make(NodeKind::Starred, sb, sb);
        s.text = "**";
        s.children.push_back(parse_bitor().node);
        dict.children.push_back(finish(std::move(s), sb).node);
        return;
      }
      dict.children.push_back(parse_test().node);
      expect_op(":");
      dict.children.push_back(parse_test().node);
    };
    if (at_op("**")) {
      Node dict = make(NodeKind::Dict, begin, begin);
      dict_entry(dict);
      while (accept_op(",")) {
        if (at_op("}")) break;
        dict_entry(dict);
      }
      expect_op("}");
      return finish(std::move(dict), begin);
    }
    Expr first = parse_star_or_namedexpr();
    if (accept_op(":")) {
      Expr value = parse_test();
      if (at_kw("for") || (at_kw("async") && at_kw("for", 1))) {
        Expr comp = parse_comprehension("dict", std::move(first), begin, std::move(value));
        expect_op("}");
        return finish(std::move(comp.node), begin);
      }
      Node dict = make(NodeKind::Dict, begin, begin);
      dict.children.push_back(std::move(first.node));
      dict.children.push_back(std::move(value.node));
      while (accept_op(",")) {
        if (at_op("}")) break;
        dict_entry(dict);
      }
      expect_op("}");
      return finish(std::move(dict), begin);
    }
    if (at_kw("for") || (at_kw("async") && at_kw("for", 1))) {
      Expr comp = parse_comprehension("set", std::move(first), begin);
      expect_op("}");
      return finish(std::move(comp.node), begin);
    }
    Node set = make(NodeKind::Set, begin, begin);
    set.children.push_back(std::move(first.node));
    while (accept_op(",")) {
      if (at_op("}")) break;
      set.children.push_back(parse_star_or_namedexpr().node);
    }
    expect_op("}");
    return finish(std::move(set), begin);
  }

  // `element for target in iter [if cond]...`; `begin` is the opening bracket
  // for displays or the element start for bare generators.
  Expr parse_comprehension(std::string tag, Expr element, std::optional<Position> begin,
                           std::optional<Expr> value = std::nullopt) {
    const Position start = begin.value_or(element.begin);
    Node n = make(NodeKind::Comprehension, start, start);
    n.text = std::move(tag);
    n.children.push_back(std::move(element.node));
    if (value) n.children.push_back(std::move(value->node));
    while (at_kw("for") || (at_kw("async") && at_kw("for", 1))) {
      accept_kw("async");
      next();
      Expr target = parse_exprlist_bitor();
      check_target(target, "assign to");
      n.children.push_back(std::move(target.node));
      expect_kw("in");
      n.children.push_back(parse_or().node);
      while (accept_kw("if")) n.children.push_back(parse_or().node);
    }
    return finish(std::move(n), start);
  }

  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
  Position last_end_{1, 0};
  int depth_ = 0;
};

}  // namespace

ParseResult parse_source(const SourceFile& file) {
  try {
    std::vector<Token> tokens = detail::tokenize(file.text());
    Node root = Parser(tokens).parse_module();
    return SyntaxTree(file, std::move(root));
  } catch (const detail::LexError& e) {
    return SyntaxError{file.path(), e.at.line, e.at.column, e.message};
  } catch (const ParseFailure& e) {
    return SyntaxError{file.path(), e.at.line, e.at.column, e.message};
  }
}

}  // namespace mlsniff
