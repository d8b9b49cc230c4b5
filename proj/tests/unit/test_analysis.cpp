#include <gtest/gtest.h>

#include "mlsniff/analysis.hpp"
#include "support.hpp"

using namespace mlsniff;
using mlsniff::testing::parse_ok;

namespace {

const Node* find_call(const SyntaxTree& t, std::string_view callee_text) {
  for (const Node* n : t.nodes())
    if (n->kind == NodeKind::Call && dotted_name(callee(*n)) == callee_text) return n;
  return nullptr;
}

const Node* find_name(const SyntaxTree& t, std::string_view id, int line) {
  for (const Node* n : t.nodes())
    if (n->kind == NodeKind::Name && n->text == id && n->span.line == line) return n;
  return nullptr;
}

}  // namespace

TEST(Imports, AliasForms) {
  auto t = parse_ok(
      "import pandas as pd\n"
      "import os.path\n"
      "from sklearn.model_selection import train_test_split\n"
      "from torch import nn as tnn\n"
      "from numpy import *\n");
  const ImportTable imports = collect_imports(t);
  EXPECT_EQ(imports.resolve("pd"), "pandas");
  EXPECT_EQ(imports.resolve("os"), "os");
  EXPECT_EQ(imports.resolve("train_test_split"), "sklearn.model_selection.train_test_split");
  EXPECT_EQ(imports.resolve("tnn"), "torch.nn");
  EXPECT_EQ(imports.resolve("np"), std::nullopt);
  EXPECT_EQ(imports.qualify("pd.read_csv"), "pandas.read_csv");
  EXPECT_EQ(imports.qualify("tnn.Linear"), "torch.nn.Linear");
  const auto& mods = imports.modules();
  EXPECT_NE(std::find(mods.begin(), mods.end(), "numpy"), mods.end());
}

TEST(Imports, LaterImportShadows) {
  auto t = parse_ok("import numpy as x\nimport pandas as x\n");
  EXPECT_EQ(collect_imports(t).resolve("x"), "pandas");
}

TEST(Imports, EmptyModule) { EXPECT_TRUE(collect_imports(parse_ok("")).empty()); }

TEST(Bindings, KindsFromConstructors) {
  auto t = parse_ok(
      "import pandas as pd\n"
      "import numpy as np\n"
      "from transformers import AutoTokenizer, AutoModel\n"
      "df = pd.read_csv('a.csv')\n"
      "a = np.zeros((3, 3))\n"
      "x = foo()\n"
      "tok = AutoTokenizer.from_pretrained('b')\n"
      "m = AutoModel.from_pretrained('b')\n"
      "use(df, a, x, tok, m)\n");
  const auto imports = collect_imports(t);
  const auto bindings = infer_value_kinds(t, imports);
  const Node& use = *find_call(t, "use");
  EXPECT_EQ(bindings.lookup("df", use), ValueKind::DataFrameLike);
  EXPECT_EQ(bindings.lookup("a", use), ValueKind::ArrayLike);
  EXPECT_EQ(bindings.lookup("x", use), ValueKind::Unknown);
  EXPECT_EQ(bindings.lookup("tok", use), ValueKind::TokenizerLike);
  EXPECT_EQ(bindings.lookup("m", use), ValueKind::ModelLike);
  EXPECT_EQ(bindings.lookup("nope", use), ValueKind::Unknown);
}

TEST(Bindings, ModelSubclassesAndKeras) {
  auto t = parse_ok(
      "import torch.nn as nn\n"
      "import tensorflow as tf\n"
      "class Base(nn.Module):\n    pass\n"
      "class Net(Base):\n    pass\n"
      "net = Net()\n"
      "k = tf.keras.Sequential([])\n"
      "use(net, k)\n");
  const auto bindings = infer_value_kinds(t, collect_imports(t));
  const Node& use = *find_call(t, "use");
  EXPECT_EQ(bindings.lookup("net", use), ValueKind::ModelLike);
  EXPECT_EQ(bindings.lookup("k", use), ValueKind::ModelLike);
}

TEST(Bindings, StatementOrderAndScopes) {
  auto t = parse_ok(
      "import pandas as pd\n"
      "df = pd.read_csv('a')\n"
      "f(df)\n"
      "df = other()\n"
      "g(df)\n"
      "def h():\n"
      "    k(df)\n"
      "def j():\n"
      "    df = 3\n"
      "    k2(df)\n");
  const auto bindings = infer_value_kinds(t, collect_imports(t));
  EXPECT_EQ(bindings.lookup("df", *find_name(t, "df", 3)), ValueKind::DataFrameLike);
  EXPECT_EQ(bindings.lookup("df", *find_name(t, "df", 5)), ValueKind::Unknown);
  EXPECT_EQ(bindings.lookup("df", *find_name(t, "df", 7)), ValueKind::Unknown);
  EXPECT_EQ(bindings.lookup("df", *find_name(t, "df", 10)), ValueKind::Unknown);
  // A function that never assigns the name sees the module binding.
  auto t3 = parse_ok("import pandas as pd\ndf = pd.read_csv('a')\ndef h():\n    k(df)\n");
  const auto b3 = infer_value_kinds(t3, collect_imports(t3));
  EXPECT_EQ(b3.lookup("df", *find_name(t3, "df", 4)), ValueKind::DataFrameLike);
  // The right-hand side is evaluated before the name is rebound.
  auto t2 = parse_ok("import pandas as pd\ndf = pd.read_csv('a')\ndf = df.values\n");
  const auto b2 = infer_value_kinds(t2, collect_imports(t2));
  EXPECT_EQ(b2.lookup("df", *find_name(t2, "df", 3)), ValueKind::DataFrameLike);
}

TEST(Loops, AncestorQuery) {
  auto t = parse_ok(
      "for i in r:\n"
      "    f()\n"
      "g()\n"
      "while True:\n"
      "    def inner():\n"
      "        h()\n");
  EXPECT_TRUE(is_within_loop(t, *find_call(t, "f")));
  EXPECT_FALSE(is_within_loop(t, *find_call(t, "g")));
  EXPECT_TRUE(is_within_loop(t, *find_call(t, "h")));
}

TEST(Helpers, NamesAndCallees) {
  auto t = parse_ok("import numpy as np\nnp.random.seed(0)\nobj.method(1)\nf()(2)\n");
  const auto imports = collect_imports(t);
  const Node* seed = find_call(t, "np.random.seed");
  ASSERT_NE(seed, nullptr);
  EXPECT_EQ(qualified_name(callee(*seed), imports), "numpy.random.seed");
  EXPECT_EQ(last_component("a.b.c"), "c");
  EXPECT_EQ(last_component("abc"), "abc");
  const Node* m = find_call(t, "obj.method");
  EXPECT_EQ(method_name(*m), "method");
  ASSERT_NE(receiver(*m), nullptr);
  EXPECT_EQ(receiver(*m)->text, "obj");
  EXPECT_EQ(method_name(*find_call(t, "np.random.seed")), "seed");
}
