#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mlsniff/ast.hpp"

namespace mlsniff {

/// Local alias -> fully qualified module path, e.g. "pd" -> "pandas",
/// "train_test_split" -> "sklearn.model_selection.train_test_split".
class ImportTable {
 public:
  void add(std::string alias, std::string qualified);
  void add_module(std::string module) { modules_.push_back(std::move(module)); }

  std::optional<std::string> resolve(std::string_view alias) const;

  /// Resolves the head of a dotted name through the table; unknown heads are
  /// returned unchanged.
  std::string qualify(std::string_view dotted) const;

  const std::map<std::string, std::string, std::less<>>& entries() const { return entries_; }
  /// Every module named by an import statement, in source order.
  const std::vector<std::string>& modules() const { return modules_; }
  bool empty() const { return entries_.empty() && modules_.empty(); }

 private:
  std::map<std::string, std::string, std::less<>> entries_;
  std::vector<std::string> modules_;
};

ImportTable collect_imports(const SyntaxTree& tree);

enum class ValueKind { DataFrameLike, ArrayLike, ModelLike, TokenizerLike, Unknown };

std::string_view to_string(ValueKind kind);

class BindingTable {
 public:
  struct Binding {
    std::string name;
    const Node* scope = nullptr;      // Module or FunctionDef
    const Node* statement = nullptr;  // the binding statement
    const Node* value = nullptr;      // right-hand side
    Position effective;               // binding is visible from here on
    ValueKind kind = ValueKind::Unknown;
  };

  void add(Binding b) { bindings_.push_back(std::move(b)); }

  /// Kind of `name` as seen at `use_site`: the last binding in the use
  /// site's scope that precedes it. Unknown when there is none.
  ValueKind lookup(std::string_view name, const Node& use_site) const;

  /// The binding `lookup` would pick, if any.
  const Binding* find(std::string_view name, const Node& use_site) const;

  const std::vector<Binding>& bindings() const { return bindings_; }

 private:
  std::vector<Binding> bindings_;
};

BindingTable infer_value_kinds(const SyntaxTree& tree, const ImportTable& imports);

/// Module, or the outermost function enclosing `node`.
const Node& scope_of(const SyntaxTree& tree, const Node& node);

/// True iff some ancestor of `node` is a For or While statement.
bool is_within_loop(const SyntaxTree& tree, const Node& node);

// Name helpers -------------------------------------------------------------

/// "a.b.c" for Name / Attribute chains, empty for anything else.
std::string dotted_name(const Node& node);
std::string qualified_name(const Node& node, const ImportTable& imports);
std::string_view last_component(std::string_view dotted);

/// Call helpers. `node` must be a Call.
const Node& callee(const Node& call);
std::vector<const Node*> positional_args(const Node& call);
std::vector<const Node*> keyword_args(const Node& call);
std::set<std::string> keyword_names(const Node& call);
bool has_keyword(const Node& call, std::string_view name);
/// Object a method is called on: `x` in `x.f()`, or nullptr.
const Node* receiver(const Node& call);
/// Attribute name for method calls (`f` in `x.f()`), else empty.
std::string_view method_name(const Node& call);

}  // namespace mlsniff
