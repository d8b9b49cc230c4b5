// Hugging Face, scikit-learn and framework-agnostic rules.

#include <algorithm>
#include <set>

#include "rules.hpp"

namespace mlsniff::rules {

namespace {

bool is_training_arguments(const Node& call) { return callee_last(call).ends_with("TrainingArguments"); }

bool transformer_like_name(std::string_view name) {
  for (std::string_view s : {"scaler", "normalizer", "imputer", "encoder"})
    if (ends_with_ci(name, s)) return true;
  return false;
}

// `scaler.fit(...)`, `StandardScaler().fit_transform(...)` and friends.
bool fits_transformer(const Node& call) {
  const Node* recv = receiver(call);
  if (recv == nullptr) return false;
  if (recv->kind == NodeKind::Call) return transformer_like_name(callee_last(*recv));
  return transformer_like_name(last_component(dotted_name(*recv)));
}

const Node* enclosing_statement(const Node& n) {
  const Node* p = &n;
  while (p->parent != nullptr && p->parent->kind != NodeKind::Module && p->parent->body_begin == p->parent->body_end)
    p = p->parent;
  return p;
}

// A numeric literal, optionally negated: `10`, `-0.5`.
bool numeric_literal(const Node& n) {
  if (n.is_number()) return true;
  return n.kind == NodeKind::UnaryOp && (n.text == "-" || n.text == "+") && n.children.size() == 1 &&
         n.children.front().is_number();
}

bool upper_case_name(std::string_view s) {
  bool letter = false;
  for (char c : s) {
    if (c >= 'A' && c <= 'Z') letter = true;
    else if (!(c == '_' || (c >= '0' && c <= '9'))) return false;
  }
  return letter;
}

bool under_constant_assignment(const Node& n) {
  for (const Node* p = n.parent; p != nullptr; p = p->parent) {
    if (p->kind == NodeKind::Assign && p->children.size() == 2 && p->children[0].kind == NodeKind::Name &&
        upper_case_name(p->children[0].text))
      return true;
    if (p->kind == NodeKind::AnnAssign && !p->children.empty() && p->children[0].kind == NodeKind::Name &&
        upper_case_name(p->children[0].text))
      return true;
  }
  return false;
}

}  // namespace

// ---- Hugging Face -----------------------------------------------------------

void hf01_model_versioning(const RuleMatchContext& ctx, Hits& out) {
  for_each_call(ctx, [&](const Node& call) {
    if (method_name(call) == "from_pretrained" && !has_keyword(call, "revision"))
      out.push_back({&call, dotted_name(callee(call)) + "() without revision"});
  });
}

void hf02_tokenization_settings(const RuleMatchContext& ctx, Hits& out) {
  for_each_call(ctx, [&](const Node& call) {
    const Node& f = callee(call);
    const Node* target = nullptr;
    if (f.kind == NodeKind::Name) {
      target = &f;
    } else if (one_of(method_name(call), {"encode", "encode_plus", "batch_encode_plus", "__call__"})) {
      const Node* recv = receiver(call);
      if (recv != nullptr && recv->kind == NodeKind::Name) target = recv;
    }
    if (target == nullptr || ctx.bindings.lookup(target->text, call) != ValueKind::TokenizerLike) return;
    if (!has_keyword(call, "truncation") && !has_keyword(call, "padding"))
      out.push_back({&call, "tokenizer '" + target->text + "' called without truncation or padding"});
  });
}

void hf03_early_stopping(const RuleMatchContext& ctx, Hits& out) {
  const bool best_model = any_call(ctx, [](const Node& c) {
    if (!is_training_arguments(c)) return false;
    for (const Node* kw : keyword_args(c)) {
      if (kw->text != "load_best_model_at_end") continue;
      const Node& v = kw->children.front();
      if (!(v.kind == NodeKind::Constant && v.constant_kind == ConstantKind::Bool && v.text == "False")) return true;
    }
    return false;
  });
  if (best_model) return;
  for_each_call(ctx, [&](const Node& call) {
    if (!callee_last(call).ends_with("Trainer")) return;
    bool early_stopping = false;
    for (std::size_t i = 1; i < call.children.size(); ++i) {
      walk(call.children[i], [&](const Node& n) {
        if ((n.kind == NodeKind::Name || n.kind == NodeKind::Attribute) && n.text == "EarlyStoppingCallback")
          early_stopping = true;
        return !early_stopping;
      });
    }
    if (!early_stopping) out.push_back({&call, callee_last(call) + "() without early stopping"});
  });
}

void hf04_data_loading(const RuleMatchContext& ctx, Hits& out) {
  for_each_call(ctx, [&](const Node& call) {
    if (is_training_arguments(call) && !has_keyword(call, "dataloader_num_workers"))
      out.push_back({&call, callee_last(call) + "() without dataloader_num_workers"});
  });
}

void hf05_tokenizer_caching(const RuleMatchContext& ctx, Hits& out) {
  for_each_call(ctx, [&](const Node& call) {
    if (method_name(call) == "from_pretrained" && is_within_loop(ctx.tree, call))
      out.push_back({&call, dotted_name(callee(call)) + "() called inside a loop"});
  });
}

void hf06_pipeline_in_loop(const RuleMatchContext& ctx, Hits& out) {
  for_each_call(ctx, [&](const Node& call) {
    if (callee_last(call) == "pipeline" && is_within_loop(ctx.tree, call))
      out.push_back({&call, "pipeline() constructed inside a loop"});
  });
}

void hf07_training_arguments_seed(const RuleMatchContext& ctx, Hits& out) {
  for_each_call(ctx, [&](const Node& call) {
    if (is_training_arguments(call) && !has_keyword(call, "seed"))
      out.push_back({&call, callee_last(call) + "() without seed"});
  });
}

// ---- scikit-learn -----------------------------------------------------------

void sk01_data_leakage(const RuleMatchContext& ctx, Hits& out) {
  std::vector<const Node*> splits;
  for_each_call(ctx, [&](const Node& call) {
    if (callee_last(call) == "train_test_split") splits.push_back(&call);
  });
  if (splits.empty()) return;

  for_each_call(ctx, [&](const Node& call) {
    if (!one_of(method_name(call), {"fit", "fit_transform"}) || !fits_transformer(call)) return;
    std::set<std::string, std::less<>> names;
    for (const Node* arg : positional_args(call))
      if (arg->kind == NodeKind::Name) names.insert(arg->text);
    const Node* stmt = enclosing_statement(call);
    if (stmt->kind == NodeKind::Assign && &stmt->children.back() == &call)
      for (std::size_t i = 0; i + 1 < stmt->children.size(); ++i)
        if (stmt->children[i].kind == NodeKind::Name) names.insert(stmt->children[i].text);

    const Node& scope = scope_of(ctx.tree, call);
    for (const Node* split : splits) {
      if (&scope_of(ctx.tree, *split) != &scope || !(call.span.end() <= split->span.begin())) continue;
      bool uses = false;
      for (std::size_t i = 1; i < split->children.size(); ++i) {
        const Node* arg = &split->children[i];
        if (arg->kind == NodeKind::Keyword && !arg->children.empty()) arg = &arg->children.front();
        if (arg->kind == NodeKind::Name && names.count(arg->text)) uses = true;
      }
      if (uses) {
        out.push_back({&call, "transformer fitted before train_test_split on line " +
                                  std::to_string(split->span.line) + " (data leakage)"});
        return;
      }
    }
  });
}

void sk02_cross_validation(const RuleMatchContext& ctx, Hits& out) {
  if (module_mentions(ctx, {"cross_val_score", "cross_validate", "KFold", "StratifiedKFold", "GridSearchCV",
                            "RandomizedSearchCV"}))
    return;
  for_each_call(ctx, [&](const Node& call) {
    if (method_name(call) == "fit" && !fits_transformer(call))
      out.push_back({&call, "estimator fitted without cross-validation"});
  });
}

void sk03_split_randomness(const RuleMatchContext& ctx, Hits& out) {
  for_each_call(ctx, [&](const Node& call) {
    if (callee_last(call) == "train_test_split" && !has_keyword(call, "random_state"))
      out.push_back({&call, "train_test_split() without random_state"});
  });
}

void sk04_scaling(const RuleMatchContext& ctx, Hits& out) {
  const bool scaled = any_call(ctx, [](const Node& c) {
    const std::string last = callee_last(c);
    return last.ends_with("Scaler") || last == "Normalizer";
  });
  if (scaled) return;
  for_each_call(ctx, [&](const Node& call) {
    const std::string last = callee_last(call);
    if (one_of(last, {"SVC", "SVR", "KNeighborsClassifier", "KNeighborsRegressor", "LogisticRegression"}))
      out.push_back({&call, last + " used without feature scaling"});
  });
}

void sk05_metrics(const RuleMatchContext& ctx, Hits& out) {
  if (module_mentions(ctx, {"f1_score", "precision_score", "recall_score", "roc_auc_score", "classification_report"}))
    return;
  for_each_call(ctx, [&](const Node& call) {
    if (callee_last(call) == "accuracy_score") out.push_back({&call, "accuracy_score used as the only metric"});
  });
}

void sk06_default_hyperparameters(const RuleMatchContext& ctx, Hits& out) {
  for_each_call(ctx, [&](const Node& call) {
    if (call.children.size() != 1) return;
    const std::string last = callee_last(call);
    if (one_of(last, {"SVC", "SVR", "LinearSVC", "LinearSVR", "KNeighborsClassifier", "KNeighborsRegressor",
                      "LogisticRegression", "LinearRegression", "Ridge", "Lasso", "ElasticNet",
                      "RandomForestClassifier", "RandomForestRegressor", "GradientBoostingClassifier",
                      "GradientBoostingRegressor", "DecisionTreeClassifier", "DecisionTreeRegressor",
                      "AdaBoostClassifier", "AdaBoostRegressor", "ExtraTreesClassifier", "ExtraTreesRegressor",
                      "KMeans", "DBSCAN", "MLPClassifier", "MLPRegressor", "GaussianNB", "SGDClassifier"}))
      out.push_back({&call, last + "() constructed with default hyperparameters"});
  });
}

// ---- General ML -------------------------------------------------------------

void ml01_magic_number(const RuleMatchContext& ctx, Hits& out) {
  for (const Node* n : ctx.tree.nodes()) {
    if (!numeric_literal(*n)) continue;
    const Node* parent = n->parent;
    if (parent == nullptr) continue;
    // The inner literal of `-5` is handled through its UnaryOp.
    if (n->kind == NodeKind::Constant && parent->kind == NodeKind::UnaryOp && numeric_literal(*parent)) continue;

    bool position = false;
    if (parent->kind == NodeKind::Call) position = &parent->children.front() != n;
    if (parent->kind == NodeKind::Keyword) position = parent->parent != nullptr && parent->parent->kind == NodeKind::Call;
    if (parent->kind == NodeKind::BinOp) position = true;
    if (!position) continue;

    const Node& lit = n->kind == NodeKind::Constant ? *n : n->children.front();
    const double value = n->kind == NodeKind::UnaryOp && n->text == "-" ? -lit.number : lit.number;
    if (!lit.imaginary && (value == 0.0 || value == 1.0 || value == -1.0 || value == 2.0)) continue;
    if (under_constant_assignment(*n)) continue;

    const std::string text = n->kind == NodeKind::UnaryOp ? n->text + lit.text : lit.text;
    out.push_back({n, "Magic number detected: " + text});
  }
}

void ml02_random_seed(const RuleMatchContext& ctx, Hits& out) {
  if (any_call(ctx, [&](const Node& c) { return callee_path(ctx, c) == "random.seed"; })) return;
  for_each_call(ctx, [&](const Node& call) {
    const std::string path = callee_path(ctx, call);
    if (one_of(path, {"random.random", "random.randint", "random.choice", "random.shuffle", "random.sample",
                      "random.uniform"}))
      out.push_back({&call, path + "() used without random.seed"});
  });
}

void ml03_hyperparameters(const RuleMatchContext& ctx, Hits& out) {
  for (const Node* n : ctx.tree.nodes()) {
    if (n->kind != NodeKind::Keyword || n->children.empty()) continue;
    if (!one_of(n->text, {"lr", "learning_rate", "epochs", "batch_size", "n_estimators", "max_depth", "num_layers",
                          "hidden_size"}))
      continue;
    if (numeric_literal(n->children.front()))
      out.push_back({n, "hardcoded hyperparameter " + ctx.tree.source().slice(n->span)});
  }
}

void ml04_function_docstring(const RuleMatchContext& ctx, Hits& out) {
  for (const Node* n : ctx.tree.nodes())
    if (n->kind == NodeKind::FunctionDef && n->body().size() > 5 && !n->has_docstring)
      out.push_back({n, "Missing docstring for function: " + n->text});
}

}  // namespace mlsniff::rules
