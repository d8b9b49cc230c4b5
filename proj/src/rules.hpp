#pragma once

// Rule implementations and the helpers they share. Internal to the library.

#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "mlsniff/engine.hpp"

namespace mlsniff::rules {

using Hits = std::vector<RuleHit>;

// Pandas
void pd01_chain_indexing(const RuleMatchContext&, Hits&);
void pd02_column_selection(const RuleMatchContext&, Hits&);
void pd03_dataframe_conversion(const RuleMatchContext&, Hits&);
void pd04_datatype(const RuleMatchContext&, Hits&);
// NumPy
void np01_array_creation_in_loop(const RuleMatchContext&, Hits&);
void np02_missing_axis(const RuleMatchContext&, Hits&);
void np03_numpy_randomness(const RuleMatchContext&, Hits&);
void np04_broadcasting_risk(const RuleMatchContext&, Hits&);
// PyTorch
void pt01_deterministic_algorithms(const RuleMatchContext&, Hits&);
void pt02_model_eval(const RuleMatchContext&, Hits&);
void pt03_torch_randomness(const RuleMatchContext&, Hits&);
void pt04_batch_norm(const RuleMatchContext&, Hits&);
void pt05_forward_docstring(const RuleMatchContext&, Hits&);
// TensorFlow
void tf01_memory_release(const RuleMatchContext&, Hits&);
void tf02_logging(const RuleMatchContext&, Hits&);
void tf03_data_augmentation(const RuleMatchContext&, Hits&);
void tf04_model_evaluation(const RuleMatchContext&, Hits&);
// Hugging Face
void hf01_model_versioning(const RuleMatchContext&, Hits&);
void hf02_tokenization_settings(const RuleMatchContext&, Hits&);
void hf03_early_stopping(const RuleMatchContext&, Hits&);
void hf04_data_loading(const RuleMatchContext&, Hits&);
void hf05_tokenizer_caching(const RuleMatchContext&, Hits&);
void hf06_pipeline_in_loop(const RuleMatchContext&, Hits&);
void hf07_training_arguments_seed(const RuleMatchContext&, Hits&);
// scikit-learn
void sk01_data_leakage(const RuleMatchContext&, Hits&);
void sk02_cross_validation(const RuleMatchContext&, Hits&);
void sk03_split_randomness(const RuleMatchContext&, Hits&);
void sk04_scaling(const RuleMatchContext&, Hits&);
void sk05_metrics(const RuleMatchContext&, Hits&);
void sk06_default_hyperparameters(const RuleMatchContext&, Hits&);
// General ML
void ml01_magic_number(const RuleMatchContext&, Hits&);
void ml02_random_seed(const RuleMatchContext&, Hits&);
void ml03_hyperparameters(const RuleMatchContext&, Hits&);
void ml04_function_docstring(const RuleMatchContext&, Hits&);

// ---- shared helpers ---------------------------------------------------------

/// Visits every Call node in source order.
void for_each_call(const RuleMatchContext& ctx, const std::function<void(const Node&)>& fn);
bool any_call(const RuleMatchContext& ctx, const std::function<bool(const Node&)>& pred);

/// Qualified callee path of a call ("pandas.read_csv"), empty for computed callees.
std::string callee_path(const RuleMatchContext& ctx, const Node& call);
/// Last component of the callee's dotted name ("ImageDataGenerator").
std::string callee_last(const Node& call);

bool one_of(std::string_view s, std::initializer_list<std::string_view> options);
bool ends_with_ci(std::string_view s, std::string_view suffix);

/// Identifiers used anywhere in the module: Name ids, attribute names and
/// imported symbol names.
bool module_mentions(const RuleMatchContext& ctx, std::initializer_list<std::string_view> names);

}  // namespace mlsniff::rules
