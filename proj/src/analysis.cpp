#include "mlsniff/analysis.hpp"

#include <algorithm>

namespace mlsniff {

namespace {

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

bool is_numpy_constructor(std::string_view q) {
  return q == "numpy.array" || q == "numpy.zeros" || q == "numpy.ones" || q == "numpy.asarray" ||
         q == "numpy.arange";
}

bool is_keras_model(std::string_view q) {
  const auto last = last_component(q);
  return last == "Sequential" || last == "Model" || q.find("keras.models.") != std::string_view::npos;
}

// Classes defined in the file that derive (possibly through other local
// classes) from something named *Module.
std::set<std::string, std::less<>> module_subclasses(const SyntaxTree& tree, const ImportTable& imports) {
  std::vector<std::pair<std::string, std::vector<std::string>>> classes;
  for (const Node* n : tree.nodes()) {
    if (n->kind != NodeKind::ClassDef) continue;
    std::vector<std::string> bases;
    for (const Node& b : n->header())
      if (b.kind != NodeKind::Keyword) bases.push_back(qualified_name(b, imports));
    classes.emplace_back(n->text, std::move(bases));
  }
  std::set<std::string, std::less<>> result;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [name, bases] : classes) {
      if (result.count(name)) continue;
      for (const auto& b : bases) {
        if (b.ends_with("Module") || result.count(b)) {
          result.insert(name);
          changed = true;
          break;
        }
      }
    }
  }
  return result;
}

ValueKind classify(const Node& value, const ImportTable& imports, const std::set<std::string, std::less<>>& modules) {
  if (value.kind != NodeKind::Call) return ValueKind::Unknown;
  const std::string q = qualified_name(callee(value), imports);
  if (q.empty()) return ValueKind::Unknown;
  if (starts_with(q, "pandas.read_") || q == "pandas.DataFrame") return ValueKind::DataFrameLike;
  if (is_numpy_constructor(q)) return ValueKind::ArrayLike;
  if (last_component(q) == "from_pretrained") {
    const Node* recv = receiver(value);
    const std::string owner = recv ? dotted_name(*recv) : std::string();
    if (last_component(owner).find("Tokenizer") != std::string_view::npos) return ValueKind::TokenizerLike;
    return ValueKind::ModelLike;
  }
  if (callee(value).kind == NodeKind::Name && modules.count(callee(value).text)) return ValueKind::ModelLike;
  if (is_keras_model(q) && q.find("keras") != std::string::npos) return ValueKind::ModelLike;
  return ValueKind::Unknown;
}

}  // namespace

// ---- ImportTable ------------------------------------------------------------

void ImportTable::add(std::string alias, std::string qualified) {
  entries_.insert_or_assign(std::move(alias), std::move(qualified));
}

std::optional<std::string> ImportTable::resolve(std::string_view alias) const {
  const auto it = entries_.find(alias);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string ImportTable::qualify(std::string_view dotted) const {
  if (dotted.empty()) return {};
  const auto dot = dotted.find('.');
  const std::string_view head = dotted.substr(0, dot);
  const auto it = entries_.find(head);
  if (it == entries_.end()) return std::string(dotted);
  std::string out = it->second;
  if (dot != std::string_view::npos) out += dotted.substr(dot);
  return out;
}

ImportTable collect_imports(const SyntaxTree& tree) {
  ImportTable table;
  for (const Node* n : tree.nodes()) {
    if (n->kind == NodeKind::Import) {
      for (const auto& a : n->aliases) {
        table.add_module(a.name);
        if (!a.asname.empty()) {
          table.add(a.asname, a.name);
        } else {
          const std::string head = a.name.substr(0, a.name.find('.'));
          table.add(head, head);
        }
      }
    } else if (n->kind == NodeKind::ImportFrom) {
      table.add_module(n->text);
      for (const auto& a : n->aliases) {
        if (a.name == "*") continue;
        std::string qualified = n->text;
        if (!qualified.empty() && qualified.back() != '.') qualified += '.';
        qualified += a.name;
        table.add(a.asname.empty() ? a.name : a.asname, std::move(qualified));
      }
    }
  }
  return table;
}

// ---- names ------------------------------------------------------------------

std::string dotted_name(const Node& node) {
  if (node.kind == NodeKind::Name) return node.text;
  if (node.kind == NodeKind::Attribute && !node.children.empty()) {
    std::string base = dotted_name(node.children.front());
    if (base.empty()) return {};
    return base + "." + node.text;
  }
  return {};
}

std::string qualified_name(const Node& node, const ImportTable& imports) {
  return imports.qualify(dotted_name(node));
}

std::string_view last_component(std::string_view dotted) {
  const auto dot = dotted.rfind('.');
  return dot == std::string_view::npos ? dotted : dotted.substr(dot + 1);
}

const Node& callee(const Node& call) { return call.children.front(); }

std::vector<const Node*> positional_args(const Node& call) {
  std::vector<const Node*> out;
  for (std::size_t i = 1; i < call.children.size(); ++i)
    if (call.children[i].kind != NodeKind::Keyword) out.push_back(&call.children[i]);
  return out;
}

std::vector<const Node*> keyword_args(const Node& call) {
  std::vector<const Node*> out;
  for (std::size_t i = 1; i < call.children.size(); ++i)
    if (call.children[i].kind == NodeKind::Keyword) out.push_back(&call.children[i]);
  return out;
}

std::set<std::string> keyword_names(const Node& call) {
  std::set<std::string> out;
  for (const Node* k : keyword_args(call))
    if (!k->text.empty()) out.insert(k->text);
  return out;
}

bool has_keyword(const Node& call, std::string_view name) {
  for (std::size_t i = 1; i < call.children.size(); ++i)
    if (call.children[i].kind == NodeKind::Keyword && call.children[i].text == name) return true;
  return false;
}

const Node* receiver(const Node& call) {
  const Node& f = callee(call);
  if (f.kind == NodeKind::Attribute && !f.children.empty()) return &f.children.front();
  return nullptr;
}

std::string_view method_name(const Node& call) {
  const Node& f = callee(call);
  return f.kind == NodeKind::Attribute ? std::string_view(f.text) : std::string_view();
}

// ---- scopes and loops -------------------------------------------------------

const Node& scope_of(const SyntaxTree& tree, const Node& node) {
  const Node* scope = &tree.root();
  for (const Node* p = node.parent; p != nullptr; p = p->parent)
    if (p->kind == NodeKind::FunctionDef) scope = p;
  return *scope;
}

bool is_within_loop(const SyntaxTree&, const Node& node) {
  for (const Node* p = node.parent; p != nullptr; p = p->parent)
    if (p->kind == NodeKind::For || p->kind == NodeKind::While) return true;
  return false;
}

// ---- bindings ---------------------------------------------------------------

std::string_view to_string(ValueKind kind) {
  switch (kind) {
    case ValueKind::DataFrameLike: return "DataFrameLike";
    case ValueKind::ArrayLike: return "ArrayLike";
    case ValueKind::ModelLike: return "ModelLike";
    case ValueKind::TokenizerLike: return "TokenizerLike";
    case ValueKind::Unknown: return "Unknown";
  }
  return "Unknown";
}

const BindingTable::Binding* BindingTable::find(std::string_view name, const Node& use_site) const {
  // Scope of the use site: walk up to the outermost function.
  const Node* scope = nullptr;
  const Node* root = &use_site;
  for (const Node* p = &use_site; p != nullptr; p = p->parent) {
    if (p->kind == NodeKind::FunctionDef) scope = p;
    root = p;
  }
  if (scope == nullptr) scope = root;

  auto search = [&](const Node* s, bool require_before) -> const Binding* {
    const Binding* best = nullptr;
    for (const Binding& b : bindings_) {
      if (b.scope != s || b.name != name) continue;
      if (require_before && !(b.effective <= use_site.span.begin())) continue;
      if (best == nullptr || best->effective < b.effective) best = &b;
    }
    return best;
  };

  if (const Binding* b = search(scope, true)) return b;
  if (scope != root) {
    // Reads of a name the function never assigns see the module binding.
    const bool assigned_locally =
        std::any_of(bindings_.begin(), bindings_.end(), [&](const Binding& b) { return b.scope == scope && b.name == name; });
    if (!assigned_locally) return search(root, false);
  }
  return nullptr;
}

ValueKind BindingTable::lookup(std::string_view name, const Node& use_site) const {
  const Binding* b = find(name, use_site);
  return b ? b->kind : ValueKind::Unknown;
}

BindingTable infer_value_kinds(const SyntaxTree& tree, const ImportTable& imports) {
  BindingTable table;
  const auto modules = module_subclasses(tree, imports);
  for (const Node* n : tree.nodes()) {
    const Node* value = nullptr;
    std::vector<const Node*> targets;
    if (n->kind == NodeKind::Assign && n->children.size() >= 2) {
      value = &n->children.back();
      for (std::size_t i = 0; i + 1 < n->children.size(); ++i) targets.push_back(&n->children[i]);
    } else if (n->kind == NodeKind::AnnAssign && n->children.size() == 3) {
      value = &n->children[2];
      targets.push_back(&n->children[0]);
    } else {
      continue;
    }
    const Node& scope = scope_of(tree, *n);
    const ValueKind kind = classify(*value, imports, modules);
    for (const Node* t : targets) {
      if (t->kind != NodeKind::Name) continue;
      table.add({t->text, &scope, n, value, n->span.end(), kind});
    }
  }
  return table;
}

}  // namespace mlsniff
