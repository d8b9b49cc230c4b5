// Pandas and NumPy rules.

#include <optional>

#include "rules.hpp"

namespace mlsniff::rules {

namespace {

bool is_pandas_read(std::string_view path) { return path.substr(0, 12) == "pandas.read_"; }

// Rank of a literal shape argument: a tuple/list of integer literals, or a
// single integer literal. nullopt when the shape cannot be read statically.
std::optional<std::size_t> literal_rank(const Node& shape) {
  if (shape.is_number()) return 1;
  if (shape.kind == NodeKind::Tuple || shape.kind == NodeKind::List) {
    for (const Node& c : shape.children)
      if (!c.is_number()) return std::nullopt;
    return shape.children.size();
  }
  return std::nullopt;
}

std::optional<std::size_t> constructor_rank(const RuleMatchContext& ctx, const Node& operand) {
  if (operand.kind != NodeKind::Call) return std::nullopt;
  const std::string path = callee_path(ctx, operand);
  if (!one_of(path, {"numpy.zeros", "numpy.ones", "numpy.empty", "numpy.full"})) return std::nullopt;
  const auto args = positional_args(operand);
  if (!args.empty()) return literal_rank(*args.front());
  for (const Node* kw : keyword_args(operand))
    if (kw->text == "shape" && !kw->children.empty()) return literal_rank(kw->children.front());
  return std::nullopt;
}

}  // namespace

void pd01_chain_indexing(const RuleMatchContext& ctx, Hits& out) {
  for (const Node* n : ctx.tree.nodes()) {
    if (n->kind != NodeKind::Subscript || n->children.empty()) continue;
    if (n->children.front().kind != NodeKind::Subscript) continue;
    const Node* base = &n->children.front();
    while (base->kind == NodeKind::Subscript && !base->children.empty()) base = &base->children.front();
    const std::string name = dotted_name(*base);
    out.push_back({n, name.empty() ? "Chain indexing detected" : "Chain indexing detected on '" + name + "'"});
  }
}

void pd02_column_selection(const RuleMatchContext& ctx, Hits& out) {
  for (const auto& b : ctx.bindings.bindings()) {
    if (b.kind != ValueKind::DataFrameLike || b.value->kind != NodeKind::Call) continue;
    if (!is_pandas_read(callee_path(ctx, *b.value))) continue;
    bool selected = false;
    for (const Node* n : ctx.tree.nodes()) {
      if (n->kind != NodeKind::Subscript || n->children.size() < 2) continue;
      const Node& value = n->children[0];
      if (value.kind != NodeKind::Name || value.text != b.name) continue;
      if (n->children[1].kind != NodeKind::List) continue;
      if (&scope_of(ctx.tree, *n) != b.scope) continue;
      selected = true;
      break;
    }
    if (!selected) out.push_back({b.value, "DataFrame '" + b.name + "' is loaded without selecting a list of columns"});
  }
}

void pd03_dataframe_conversion(const RuleMatchContext& ctx, Hits& out) {
  for (const Node* n : ctx.tree.nodes()) {
    if (n->kind != NodeKind::Attribute || n->text != "values" || n->children.empty()) continue;
    const Node& value = n->children.front();
    if (value.kind != NodeKind::Name) continue;
    if (ctx.bindings.lookup(value.text, *n) == ValueKind::DataFrameLike)
      out.push_back({n, "'.values' used to convert DataFrame '" + value.text + "'"});
  }
}

void pd04_datatype(const RuleMatchContext& ctx, Hits& out) {
  for_each_call(ctx, [&](const Node& call) {
    const std::string path = callee_path(ctx, call);
    if (!one_of(path, {"pandas.read_csv", "pandas.read_table", "pandas.read_excel"})) return;
    if (!has_keyword(call, "dtype"))
      out.push_back({&call, std::string(last_component(path)) + "() called without dtype"});
  });
}

void np01_array_creation_in_loop(const RuleMatchContext& ctx, Hits& out) {
  for_each_call(ctx, [&](const Node& call) {
    const std::string path = callee_path(ctx, call);
    if (!one_of(path, {"numpy.append", "numpy.concatenate", "numpy.vstack", "numpy.hstack", "numpy.array",
                       "numpy.asarray"}))
      return;
    if (is_within_loop(ctx.tree, call)) out.push_back({&call, path + "() called inside a loop"});
  });
}

void np02_missing_axis(const RuleMatchContext& ctx, Hits& out) {
  for_each_call(ctx, [&](const Node& call) {
    const std::string path = callee_path(ctx, call);
    if (!one_of(path, {"numpy.sum", "numpy.mean", "numpy.std", "numpy.var", "numpy.min", "numpy.max",
                       "numpy.median", "numpy.argmax", "numpy.argmin", "numpy.prod", "numpy.any", "numpy.all"}))
      return;
    if (!has_keyword(call, "axis")) out.push_back({&call, path + "() called without axis"});
  });
}

void np03_numpy_randomness(const RuleMatchContext& ctx, Hits& out) {
  auto is_guard = [&](const Node& call) {
    const std::string path = callee_path(ctx, call);
    return path == "numpy.random.seed" || (path == "numpy.random.default_rng" && call.children.size() > 1);
  };
  if (any_call(ctx, is_guard)) return;
  for_each_call(ctx, [&](const Node& call) {
    const std::string path = callee_path(ctx, call);
    if (path.rfind("numpy.random.", 0) == 0) out.push_back({&call, path + "() used without a seed"});
  });
}

void np04_broadcasting_risk(const RuleMatchContext& ctx, Hits& out) {
  for (const Node* n : ctx.tree.nodes()) {
    if (n->kind != NodeKind::BinOp || n->children.size() != 2) continue;
    const auto left = constructor_rank(ctx, n->children[0]);
    const auto right = constructor_rank(ctx, n->children[1]);
    if (left && right && *left != *right)
      out.push_back({n, "operands of rank " + std::to_string(*left) + " and " + std::to_string(*right) +
                            " are broadcast together"});
  }
}

}  // namespace mlsniff::rules
