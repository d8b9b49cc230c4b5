#include <algorithm>
#include <cctype>

#include "mlsniff/engine.hpp"
#include "rules.hpp"

namespace mlsniff {

std::string_view display_name(Framework f) {
  switch (f) {
    case Framework::GeneralML: return "General ML";
    case Framework::Pandas: return "Pandas";
    case Framework::NumPy: return "NumPy";
    case Framework::ScikitLearn: return "Scikit-learn";
    case Framework::TensorFlow: return "TensorFlow";
    case Framework::PyTorch: return "PyTorch";
    case Framework::HuggingFace: return "Hugging Face";
  }
  return "General ML";
}

std::optional<Framework> parse_framework(std::string_view name) {
  std::string key;
  for (char c : name)
    if (std::isalnum(static_cast<unsigned char>(c))) key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (key == "generalml" || key == "general" || key == "ml") return Framework::GeneralML;
  if (key == "pandas" || key == "pd") return Framework::Pandas;
  if (key == "numpy" || key == "np") return Framework::NumPy;
  if (key == "scikitlearn" || key == "sklearn") return Framework::ScikitLearn;
  if (key == "tensorflow" || key == "tf" || key == "keras") return Framework::TensorFlow;
  if (key == "pytorch" || key == "torch" || key == "pt") return Framework::PyTorch;
  if (key == "huggingface" || key == "hf" || key == "transformers") return Framework::HuggingFace;
  return std::nullopt;
}

std::optional<Framework> framework_of_id(std::string_view id) {
  const std::string_view p = id.substr(0, 2);
  if (p == "PD") return Framework::Pandas;
  if (p == "NP") return Framework::NumPy;
  if (p == "PT") return Framework::PyTorch;
  if (p == "TF") return Framework::TensorFlow;
  if (p == "HF") return Framework::HuggingFace;
  if (p == "SK") return Framework::ScikitLearn;
  if (p == "ML") return Framework::GeneralML;
  return std::nullopt;
}

namespace {

std::vector<DetectorRule> build_registry() {
  using F = Framework;
  std::vector<DetectorRule> r = {
      {{"PD01", "Chain Indexing", F::Pandas,
        "Chain Indexing: consecutive subscripts such as df['a']['b'] index a DataFrame through an intermediate copy or view.",
        "Use one .loc/.iloc access, e.g. df.loc[row, 'col']."},
       rules::pd01_chain_indexing},
      {{"PD02", "Column Selection Checker", F::Pandas,
        "Column Selection Checker: a DataFrame loaded by a pandas read_* call is never narrowed to a list of columns in its scope.",
        "Select only the columns you need, e.g. df[['a', 'b']]."},
       rules::pd02_column_selection},
      {{"PD03", "DataFrame Conversion Checker", F::Pandas,
        "DataFrame Conversion Checker: .values is used to turn a DataFrame into an array.",
        "Use DataFrame.to_numpy() instead of .values."},
       rules::pd03_dataframe_conversion},
      {{"PD04", "Datatype Checker", F::Pandas,
        "Datatype Checker: read_csv, read_table or read_excel is called without an explicit dtype.",
        "Pass dtype= so column types are fixed at load time."},
       rules::pd04_datatype},
      {{"NP01", "Array Creation Efficiency", F::NumPy,
        "Array Creation Efficiency: numpy append/concatenate/vstack/hstack/array/asarray is called inside a loop.",
        "Preallocate the array, or collect items in a list and build the array once after the loop."},
       rules::np01_array_creation_in_loop},
      {{"NP02", "Missing Axis Specification", F::NumPy,
        "Missing Axis Specification: a numpy reduction (sum, mean, std, max, ...) is called without axis=.",
        "Pass axis= to state which dimension is reduced."},
       rules::np02_missing_axis},
      {{"NP03", "Randomness Control Checker", F::NumPy,
        "Randomness Control Checker: numpy.random is used but the module never calls numpy.random.seed or a seeded default_rng.",
        "Seed the generator, e.g. rng = np.random.default_rng(42)."},
       rules::np03_numpy_randomness},
      {{"NP04", "Broadcasting Risk", F::NumPy,
        "Broadcasting Risk: arrays built with literal shapes of different rank are combined in one arithmetic operation.",
        "Reshape explicitly so both operands have the same rank."},
       rules::np04_broadcasting_risk},
      {{"PT01", "Deterministic Algorithm Usage Checker", F::PyTorch,
        "Deterministic Algorithm Usage Checker: training code calls .backward() but never enables torch.use_deterministic_algorithms.",
        "Call torch.use_deterministic_algorithms(True) for reproducible training."},
       rules::pt01_deterministic_algorithms},
      {{"PT02", "Model Evaluation Checker", F::PyTorch,
        "Model Evaluation Checker: inference runs under torch.no_grad() but no .eval() call exists in the module.",
        "Call model.eval() before evaluation so dropout and batch norm use inference behaviour."},
       rules::pt02_model_eval},
      {{"PT03", "Randomness Control Checker", F::PyTorch,
        "Randomness Control Checker: torch.rand/randn/randint is used but torch.manual_seed is never called.",
        "Call torch.manual_seed(<seed>) before drawing random tensors."},
       rules::pt03_torch_randomness},
      {{"PT04", "Batch Normalisation Checker", F::PyTorch,
        "Batch Normalisation Checker: a Module builds two or more Linear/Conv layers in __init__ and no BatchNorm layer.",
        "Consider BatchNorm layers between stacked linear or convolution layers."},
       rules::pt04_batch_norm},
      {{"PT05", "Missing Forward Docstring", F::PyTorch,
        "Missing Forward Docstring: a forward() definition does not start with a docstring (message: Missing docstring for function: forward).",
        "Document the expected input and output tensor shapes in a docstring."},
       rules::pt05_forward_docstring},
      {{"TF01", "Memory Release Checker", F::TensorFlow,
        "Memory Release Checker: a Keras model is constructed inside a loop and clear_session() is never called.",
        "Call tf.keras.backend.clear_session() before building each model in the loop."},
       rules::tf01_memory_release},
      {{"TF02", "Logging Checker", F::TensorFlow,
        "Logging Checker: .fit() is called but the module has no TensorBoard callback and no tf.summary logging.",
        "Add a TensorBoard callback or tf.summary logging to track training."},
       rules::tf02_logging},
      {{"TF03", "Data Augmentation Checker", F::TensorFlow,
        "Data Augmentation Checker: ImageDataGenerator is constructed without any augmentation arguments.",
        "Configure augmentation, e.g. rotation_range, zoom_range or horizontal_flip."},
       rules::tf03_data_augmentation},
      {{"TF04", "Model Evaluation Checker", F::TensorFlow,
        "Model Evaluation Checker: a model is trained with .fit() but .evaluate() is never called.",
        "Evaluate the trained model on held-out data with model.evaluate()."},
       rules::tf04_model_evaluation},
      {{"HF01", "Model Versioning Not Specified", F::HuggingFace,
        "Model Versioning Not Specified: from_pretrained() is called without revision=.",
        "Pin the model with revision= set to a tag or commit hash."},
       rules::hf01_model_versioning},
      {{"HF02", "Deterministic Tokenization Settings Not Specified", F::HuggingFace,
        "Deterministic Tokenization Settings Not Specified: a tokenizer is called with neither truncation= nor padding=.",
        "Set truncation= and padding= explicitly."},
       rules::hf02_tokenization_settings},
      {{"HF03", "Early Stopping Not Implemented", F::HuggingFace,
        "Early Stopping Not Implemented: Trainer has no EarlyStoppingCallback and no TrainingArguments sets load_best_model_at_end.",
        "Add EarlyStoppingCallback and set load_best_model_at_end=True."},
       rules::hf03_early_stopping},
      {{"HF04", "Efficient Data Loading Not Detected", F::HuggingFace,
        "Efficient Data Loading Not Detected: TrainingArguments does not set dataloader_num_workers.",
        "Set dataloader_num_workers so batches load in parallel."},
       rules::hf04_data_loading},
      {{"HF05", "Tokenizer Caching", F::HuggingFace,
        "Tokenizer Caching: from_pretrained() inside a loop reloads the tokenizer or model on every iteration.",
        "Load once before the loop and reuse the object."},
       rules::hf05_tokenizer_caching},
      {{"HF06", "Pipeline Component Usage", F::HuggingFace,
        "Pipeline Component Usage: pipeline() is constructed inside a loop.",
        "Create the pipeline once outside the loop and reuse it."},
       rules::hf06_pipeline_in_loop},
      {{"HF07", "Training Argument Configuration", F::HuggingFace,
        "Training Argument Configuration: TrainingArguments does not set seed.",
        "Pass seed= to TrainingArguments for reproducible runs."},
       rules::hf07_training_arguments_seed},
      {{"SK01", "Data Leakage Checker", F::ScikitLearn,
        "Data Leakage Checker: a scaler or transformer is fitted on data that is later split by train_test_split.",
        "Split first and fit the transformer on the training split only, or use a Pipeline."},
       rules::sk01_data_leakage},
      {{"SK02", "Cross Validation Checker", F::ScikitLearn,
        "Cross Validation Checker: an estimator is fitted but the module uses no cross-validation utility.",
        "Validate with cross_val_score, KFold or a CV search."},
       rules::sk02_cross_validation},
      {{"SK03", "Train Test Split Randomness", F::ScikitLearn,
        "Train Test Split Randomness: train_test_split() is called without random_state.",
        "Pass random_state= for a reproducible split."},
       rules::sk03_split_randomness},
      {{"SK04", "Scaling Checker", F::ScikitLearn,
        "Scaling Checker: a scale-sensitive estimator (SVC, SVR, k-NN, LogisticRegression) is used with no scaler in the module.",
        "Scale features first, e.g. StandardScaler inside a Pipeline."},
       rules::sk04_scaling},
      {{"SK05", "Metrics Checker", F::ScikitLearn,
        "Metrics Checker: accuracy_score is the only classification metric; no precision, recall, F1 or ROC-AUC is reported.",
        "Report precision, recall or F1 alongside accuracy, especially on imbalanced data."},
       rules::sk05_metrics},
      {{"SK06", "Default Hyperparameter Checker", F::ScikitLearn,
        "Default Hyperparameter Checker: an estimator is constructed with no arguments, relying on library defaults.",
        "Set the important hyperparameters explicitly."},
       rules::sk06_default_hyperparameters},
      {{"ML01", "Magic Number Checker", F::GeneralML,
        "Magic Number Checker: an unnamed numeric literal is passed as a call argument or used as an operand.",
        "Replace the literal with a named UPPER_CASE constant."},
       rules::ml01_magic_number},
      {{"ML02", "Randomness Control Checker", F::GeneralML,
        "Randomness Control Checker: the random module is used but random.seed is never called.",
        "Call random.seed(<seed>) for reproducible runs."},
       rules::ml02_random_seed},
      {{"ML03", "Hyperparameter Management", F::GeneralML,
        "Hyperparameter Management: a hyperparameter keyword (lr, epochs, batch_size, ...) receives a hardcoded number.",
        "Move hyperparameters into a configuration file or named constants."},
       rules::ml03_hyperparameters},
      {{"ML04", "Missing Function Docstring", F::GeneralML,
        "Missing Function Docstring: a function with more than 5 statements has no docstring.",
        "Add a docstring describing purpose, inputs and outputs."},
       rules::ml04_function_docstring},
  };
  std::sort(r.begin(), r.end(),
            [](const DetectorRule& a, const DetectorRule& b) { return a.descriptor.id < b.descriptor.id; });
  return r;
}

}  // namespace

const std::vector<DetectorRule>& registry() {
  static const std::vector<DetectorRule> rules = build_registry();
  return rules;
}

std::vector<DetectorDescriptor> registry_list() {
  std::vector<DetectorDescriptor> out;
  for (const auto& r : registry()) out.push_back(r.descriptor);
  return out;
}

const DetectorRule* find_detector(std::string_view id) {
  for (const auto& r : registry())
    if (r.descriptor.id == id) return &r;
  return nullptr;
}

}  // namespace mlsniff
