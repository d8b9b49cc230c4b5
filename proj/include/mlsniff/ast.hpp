#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mlsniff/source.hpp"

namespace mlsniff {

enum class NodeKind : std::uint8_t {
  Module,
  Import,
  ImportFrom,
  FunctionDef,
  ClassDef,
  Assign,
  AugAssign,
  AnnAssign,
  For,
  While,
  If,
  With,
  Try,
  Return,
  Expr,
  Call,
  Subscript,
  Attribute,
  Name,
  Constant,
  Keyword,
  BinOp,
  UnaryOp,
  BoolOp,
  Compare,
  IfExp,
  Lambda,
  List,
  Tuple,
  Set,
  Dict,
  Comprehension,
  Slice,
  Starred,
  Parameter,
  Other,
};

std::string_view to_string(NodeKind kind);

enum class ConstantKind : std::uint8_t { None, Number, String, Bytes, Bool, NoneValue, Ellipsis };

/// One name bound by an import statement: `import a.b as c` or
/// `from m import name as alias`.
struct ImportAlias {
  std::string name;
  std::string asname;  // empty when no `as` clause
  friend bool operator==(const ImportAlias&, const ImportAlias&) = default;
};

/// Syntax tree node.
///
/// `text` holds the kind-specific payload:
///   Name: identifier; Attribute: attribute name; Keyword: argument name
///   (empty for `**kwargs`); Constant: literal source text; BinOp, UnaryOp,
///   BoolOp, AugAssign: operator; Compare: space-joined operators;
///   FunctionDef / ClassDef / Parameter: declared name; ImportFrom: module
///   including leading dots; Comprehension: list/set/dict/generator;
///   Other: a short tag naming the construct (pass, except, match, ...).
///
/// Children are in source order. Compound statements split their children
/// into decorators `[0, header_begin)`, header `[header_begin, body_begin)`,
/// body `[body_begin, body_end)` and trailing clauses `[body_end, size)`.
struct Node {
  NodeKind kind = NodeKind::Other;
  Span span;
  std::vector<Node> children;
  std::string text;

  ConstantKind constant_kind = ConstantKind::None;
  double number = 0.0;          // Constant numbers (imaginary literals keep 0)
  bool imaginary = false;
  bool has_docstring = false;   // FunctionDef / ClassDef
  int import_level = 0;         // ImportFrom relative level
  std::vector<ImportAlias> aliases;  // Import / ImportFrom; "*" for star

  std::uint32_t header_begin = 0;
  std::uint32_t body_begin = 0;
  std::uint32_t body_end = 0;

  // Set once the tree is complete.
  const Node* parent = nullptr;
  std::uint32_t index = 0;  // preorder position

  std::span<const Node> decorators() const { return range(0, header_begin); }
  std::span<const Node> header() const { return range(header_begin, body_begin); }
  std::span<const Node> body() const { return range(body_begin, body_end); }
  std::span<const Node> trailer() const { return range(body_end, children.size()); }

  bool is(NodeKind k) const { return kind == k; }
  bool is_string() const { return kind == NodeKind::Constant && constant_kind == ConstantKind::String; }
  bool is_number() const { return kind == NodeKind::Constant && constant_kind == ConstantKind::Number; }

 private:
  std::span<const Node> range(std::size_t b, std::size_t e) const {
    e = std::min(e, children.size());
    b = std::min(b, e);
    return std::span<const Node>(children).subspan(b, e - b);
  }
};

/// Structural equality: kinds, payloads and children, ignoring positions.
bool structurally_equal(const Node& a, const Node& b);

/// Indented one-node-per-line dump, used by tests and debugging.
std::string dump(const Node& node, bool with_spans = false);

struct SyntaxError {
  std::string path;
  int line = 1;
  int column = 0;
  std::string message;
  friend bool operator==(const SyntaxError&, const SyntaxError&) = default;
};

/// Parsed file. Nodes are immutable and hold stable parent links, so the tree
/// is move-only and can be shared read-only across threads.
class SyntaxTree {
 public:
  SyntaxTree(SourceFile source, Node root);
  SyntaxTree(SyntaxTree&&) noexcept = default;
  SyntaxTree& operator=(SyntaxTree&&) noexcept = default;

  const SourceFile& source() const { return source_; }
  const Node& root() const { return *root_; }

  /// All nodes in preorder (source order). `nodes()[n.index] == &n`.
  const std::vector<const Node*>& nodes() const { return preorder_; }

 private:
  SourceFile source_;
  std::unique_ptr<Node> root_;
  std::vector<const Node*> preorder_;
};

using ParseResult = std::variant<SyntaxTree, SyntaxError>;

/// Parses a whole file. Malformed input yields a SyntaxError value.
ParseResult parse_source(const SourceFile& file);

/// Preorder walk. Returning false from the visitor skips the node's children.
void walk(const Node& node, const std::function<bool(const Node&)>& visit);

}  // namespace mlsniff
