#include <sstream>

#include "mlsniff/ast.hpp"

namespace mlsniff {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Module: return "Module";
    case NodeKind::Import: return "Import";
    case NodeKind::ImportFrom: return "ImportFrom";
    case NodeKind::FunctionDef: return "FunctionDef";
    case NodeKind::ClassDef: return "ClassDef";
    case NodeKind::Assign: return "Assign";
    case NodeKind::AugAssign: return "AugAssign";
    case NodeKind::AnnAssign: return "AnnAssign";
    case NodeKind::For: return "For";
    case NodeKind::While: return "While";
    case NodeKind::If: return "If";
    case NodeKind::With: return "With";
    case NodeKind::Try: return "Try";
    case NodeKind::Return: return "Return";
    case NodeKind::Expr: return "Expr";
    case NodeKind::Call: return "Call";
    case NodeKind::Subscript: return "Subscript";
    case NodeKind::Attribute: return "Attribute";
    case NodeKind::Name: return "Name";
    case NodeKind::Constant: return "Constant";
    case NodeKind::Keyword: return "Keyword";
    case NodeKind::BinOp: return "BinOp";
    case NodeKind::UnaryOp: return "UnaryOp";
    case NodeKind::BoolOp: return "BoolOp";
    case NodeKind::Compare: return "Compare";
    case NodeKind::IfExp: return "IfExp";
    case NodeKind::Lambda: return "Lambda";
    case NodeKind::List: return "List";
    case NodeKind::Tuple: return "Tuple";
    case NodeKind::Set: return "Set";
    case NodeKind::Dict: return "Dict";
    case NodeKind::Comprehension: return "Comprehension";
    case NodeKind::Slice: return "Slice";
    case NodeKind::Starred: return "Starred";
    case NodeKind::Parameter: return "Parameter";
    case NodeKind::Other: return "Other";
  }
  return "Other";
}

bool structurally_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind || a.text != b.text || a.constant_kind != b.constant_kind ||
      a.import_level != b.import_level || a.aliases != b.aliases || a.has_docstring != b.has_docstring ||
      a.header_begin != b.header_begin || a.body_begin != b.body_begin || a.body_end != b.body_end ||
      a.children.size() != b.children.size())
    return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!structurally_equal(a.children[i], b.children[i])) return false;
  return true;
}

namespace {

void dump_into(std::ostringstream& out, const Node& n, int depth, bool with_spans) {
  out << std::string(static_cast<std::size_t>(depth) * 2, ' ') << to_string(n.kind);
  if (!n.text.empty()) out << ' ' << n.text;
  for (const auto& a : n.aliases) out << ' ' << a.name << (a.asname.empty() ? "" : " as " + a.asname);
  if (with_spans)
    out << " @" << n.span.line << ':' << n.span.column << '-' << n.span.end_line << ':' << n.span.end_column;
  out << '\n';
  for (const Node& c : n.children) dump_into(out, c, depth + 1, with_spans);
}

void link(Node& n, std::vector<const Node*>& order) {
  n.index = static_cast<std::uint32_t>(order.size());
  order.push_back(&n);
  for (Node& c : n.children) {
    c.parent = &n;
    link(c, order);
  }
}

}  // namespace

std::string dump(const Node& node, bool with_spans) {
  std::ostringstream out;
  dump_into(out, node, 0, with_spans);
  return out.str();
}

SyntaxTree::SyntaxTree(SourceFile source, Node root)
    : source_(std::move(source)), root_(std::make_unique<Node>(std::move(root))) {
  root_->parent = nullptr;
  link(*root_, preorder_);
}

void walk(const Node& node, const std::function<bool(const Node&)>& visit) {
  if (!visit(node)) return;
  for (const Node& c : node.children) walk(c, visit);
}

}  // namespace mlsniff
