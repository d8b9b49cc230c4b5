#include <algorithm>
#include <cctype>

#include "rules.hpp"

namespace mlsniff::rules {

void for_each_call(const RuleMatchContext& ctx, const std::function<void(const Node&)>& fn) {
  for (const Node* n : ctx.tree.nodes())
    if (n->kind == NodeKind::Call) fn(*n);
}

bool any_call(const RuleMatchContext& ctx, const std::function<bool(const Node&)>& pred) {
  const auto& nodes = ctx.tree.nodes();
  return std::any_of(nodes.begin(), nodes.end(),
                     [&](const Node* n) { return n->kind == NodeKind::Call && pred(*n); });
}

std::string callee_path(const RuleMatchContext& ctx, const Node& call) {
  return qualified_name(callee(call), ctx.imports);
}

std::string callee_last(const Node& call) { return std::string(last_component(dotted_name(callee(call)))); }

bool one_of(std::string_view s, std::initializer_list<std::string_view> options) {
  return std::find(options.begin(), options.end(), s) != options.end();
}

bool ends_with_ci(std::string_view s, std::string_view suffix) {
  if (suffix.size() > s.size()) return false;
  const auto tail = s.substr(s.size() - suffix.size());
  for (std::size_t i = 0; i < suffix.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(tail[i])) != std::tolower(static_cast<unsigned char>(suffix[i])))
      return false;
  return true;
}

bool module_mentions(const RuleMatchContext& ctx, std::initializer_list<std::string_view> names) {
  for (const Node* n : ctx.tree.nodes())
    if ((n->kind == NodeKind::Name || n->kind == NodeKind::Attribute) && one_of(n->text, names)) return true;
  for (const auto& [alias, qualified] : ctx.imports.entries())
    if (one_of(alias, names) || one_of(last_component(qualified), names)) return true;
  return false;
}

}  // namespace mlsniff::rules
