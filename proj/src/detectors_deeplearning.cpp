// PyTorch and TensorFlow rules.

#include "rules.hpp"

namespace mlsniff::rules {

void pt01_deterministic_algorithms(const RuleMatchContext& ctx, Hits& out) {
  if (any_call(ctx, [](const Node& c) { return callee_last(c) == "use_deterministic_algorithms"; })) return;
  for_each_call(ctx, [&](const Node& call) {
    if (method_name(call) == "backward")
      out.push_back({&call, ".backward() without torch.use_deterministic_algorithms"});
  });
}

void pt02_model_eval(const RuleMatchContext& ctx, Hits& out) {
  if (any_call(ctx, [](const Node& c) { return method_name(c) == "eval"; })) return;
  for (const Node* n : ctx.tree.nodes()) {
    if (n->kind != NodeKind::With) continue;
    for (const Node& item : n->header()) {
      if (item.kind != NodeKind::Call) continue;
      const std::string path = callee_path(ctx, item);
      if (path == "torch.no_grad" || callee_last(item) == "no_grad")
        out.push_back({&item, "torch.no_grad() block without model.eval()"});
    }
  }
}

void pt03_torch_randomness(const RuleMatchContext& ctx, Hits& out) {
  if (any_call(ctx, [&](const Node& c) { return callee_path(ctx, c) == "torch.manual_seed"; })) return;
  for_each_call(ctx, [&](const Node& call) {
    const std::string path = callee_path(ctx, call);
    if (path.rfind("torch.rand", 0) == 0) out.push_back({&call, path + "() used without torch.manual_seed"});
  });
}

void pt04_batch_norm(const RuleMatchContext& ctx, Hits& out) {
  for (const Node* n : ctx.tree.nodes()) {
    if (n->kind != NodeKind::ClassDef) continue;
    bool is_module = false;
    for (const Node& base : n->header())
      if (base.kind != NodeKind::Keyword && dotted_name(base).ends_with("Module")) is_module = true;
    if (!is_module) continue;
    for (const Node& stmt : n->body()) {
      if (stmt.kind != NodeKind::FunctionDef || stmt.text != "__init__") continue;
      int layers = 0;
      bool batch_norm = false;
      walk(stmt, [&](const Node& c) {
        if (c.kind == NodeKind::Call) {
          const std::string last = callee_last(c);
          if (one_of(last, {"Linear", "Conv1d", "Conv2d", "Conv3d"})) ++layers;
          if (last.rfind("BatchNorm", 0) == 0) batch_norm = true;
        }
        return true;
      });
      if (layers >= 2 && !batch_norm)
        out.push_back({n, "Module '" + n->text + "' stacks " + std::to_string(layers) +
                              " linear/conv layers without batch normalisation"});
    }
  }
}

void pt05_forward_docstring(const RuleMatchContext& ctx, Hits& out) {
  for (const Node* n : ctx.tree.nodes())
    if (n->kind == NodeKind::FunctionDef && n->text == "forward" && !n->has_docstring)
      out.push_back({n, "Missing docstring for function: forward"});
}

void tf01_memory_release(const RuleMatchContext& ctx, Hits& out) {
  if (any_call(ctx, [](const Node& c) { return callee_last(c) == "clear_session"; })) return;
  for_each_call(ctx, [&](const Node& call) {
    const std::string last = callee_last(call);
    const std::string path = callee_path(ctx, call);
    const bool model = last == "Sequential" || last == "Model" || path.find("keras.models.") != std::string::npos;
    if (model && is_within_loop(ctx.tree, call))
      out.push_back({&call, "Keras model " + last + "() built inside a loop without clear_session()"});
  });
}

void tf02_logging(const RuleMatchContext& ctx, Hits& out) {
  const bool logged = any_call(ctx, [&](const Node& c) {
    return callee_last(c) == "TensorBoard" || callee_path(ctx, c).rfind("tensorflow.summary.", 0) == 0;
  });
  if (logged) return;
  for_each_call(ctx, [&](const Node& call) {
    if (method_name(call) == "fit") out.push_back({&call, ".fit() without TensorBoard or tf.summary logging"});
  });
}

void tf03_data_augmentation(const RuleMatchContext& ctx, Hits& out) {
  for_each_call(ctx, [&](const Node& call) {
    if (callee_last(call) == "ImageDataGenerator" && keyword_args(call).empty())
      out.push_back({&call, "ImageDataGenerator() without augmentation parameters"});
  });
}

void tf04_model_evaluation(const RuleMatchContext& ctx, Hits& out) {
  if (any_call(ctx, [](const Node& c) { return method_name(c) == "evaluate"; })) return;
  for_each_call(ctx, [&](const Node& call) {
    if (method_name(call) == "fit") out.push_back({&call, "model trained with .fit() but never evaluated"});
  });
}

}  // namespace mlsniff::rules
