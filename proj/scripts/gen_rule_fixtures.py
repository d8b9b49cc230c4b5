"""Writes fixtures/rules/<ID>/*.py and expectations.csv.

Expected findings are marked in the fixture text with a trailing `# <- ID`.
"""
import os, re
F = {}
def fx(rule, name, text):
    F[(rule, name)] = text.lstrip("\n")

fx("PD01","positive.py",'''
import pandas as pd

df = pd.DataFrame({"price": [1.0, 2.0]})
price = df["price"][0]  # <- PD01
''')
fx("PD01","negative.py",'''
import pandas as pd

df = pd.DataFrame({"price": [1.0, 2.0]})
price = df.loc[0, "price"]
''')
fx("PD02","positive.py",'''
import pandas as pd

df = pd.read_csv("train.csv")  # <- PD02
print(df.head())
''')
fx("PD02","negative.py",'''
import pandas as pd

df = pd.read_csv("train.csv")
features = df[["age", "income"]]
''')
fx("PD03","positive.py",'''
import pandas as pd

df = pd.read_csv("train.csv")
matrix = df.values  # <- PD03
''')
fx("PD03","negative.py",'''
import pandas as pd

df = pd.read_csv("train.csv")
matrix = df.to_numpy()
''')
fx("PD04","positive.py",'''
import pandas as pd

df = pd.read_csv("train.csv")  # <- PD04
''')
fx("PD04","negative.py",'''
import pandas as pd

df = pd.read_csv("train.csv", dtype={"age": "int64"})
''')
fx("NP01","positive.py",'''
import numpy as np

result = np.array([])
for i in range(10):
    result = np.append(result, i)  # <- NP01
''')
fx("NP01","negative.py",'''
import numpy as np

result = np.zeros(10)
for i in range(10):
    result[i] = i
''')
fx("NP02","positive.py",'''
import numpy as np

x = np.ones((3, 4))
total = np.sum(x)  # <- NP02
''')
fx("NP02","negative.py",'''
import numpy as np

x = np.ones((3, 4))
total = np.sum(x, axis=0)
''')
fx("NP03","positive.py",'''
import numpy as np

noise = np.random.rand(3)  # <- NP03
''')
fx("NP03","negative.py",'''
import numpy as np

np.random.seed(42)
noise = np.random.rand(3)
''')
fx("NP04","positive.py",'''
import numpy as np

c = np.zeros((3, 4)) + np.ones(4)  # <- NP04
''')
fx("NP04","negative.py",'''
import numpy as np

c = np.zeros((3, 4)) + np.ones((3, 4))
''')
fx("PT01","positive.py",'''
import torch


def train_step(model, loss_fn, x, y):
    loss = loss_fn(model(x), y)
    loss.backward()  # <- PT01
''')
fx("PT01","negative.py",'''
import torch

torch.use_deterministic_algorithms(True)


def train_step(model, loss_fn, x, y):
    loss = loss_fn(model(x), y)
    loss.backward()
''')
fx("PT02","positive.py",'''
import torch


def predict(model, x):
    with torch.no_grad():  # <- PT02
        return model(x)
''')
fx("PT02","negative.py",'''
import torch


def predict(model, x):
    model.eval()
    with torch.no_grad():
        return model(x)
''')
fx("PT03","positive.py",'''
import torch

x = torch.randn(2, 3)  # <- PT03
''')
fx("PT03","negative.py",'''
import torch

torch.manual_seed(0)
x = torch.randn(2, 3)
''')
fx("PT04","positive.py",'''
import torch.nn as nn


class Net(nn.Module):  # <- PT04
    def __init__(self):
        super().__init__()
        self.conv1 = nn.Conv2d(1, 8, 3)
        self.conv2 = nn.Conv2d(8, 16, 3)
        self.fc = nn.Linear(16, 10)
''')
fx("PT04","negative.py",'''
import torch.nn as nn


class Net(nn.Module):
    def __init__(self):
        super().__init__()
        self.conv1 = nn.Conv2d(1, 8, 3)
        self.bn1 = nn.BatchNorm2d(8)
        self.conv2 = nn.Conv2d(8, 16, 3)
        self.fc = nn.Linear(16, 10)
''')
fx("PT05","positive.py",'''
import torch.nn as nn


class Head(nn.Module):
    def __init__(self):
        super().__init__()
        self.fc = nn.Linear(4, 2)

    def forward(self, x):  # <- PT05
        return self.fc(x)
''')
fx("PT05","negative.py",'''
import torch.nn as nn


class Head(nn.Module):
    def __init__(self):
        super().__init__()
        self.fc = nn.Linear(4, 2)

    def forward(self, x):
        """Project features to two logits."""
        return self.fc(x)
''')
fx("TF01","positive.py",'''
import tensorflow as tf

for units in [32, 64]:
    model = tf.keras.Sequential([tf.keras.layers.Dense(units)])  # <- TF01
''')
fx("TF01","negative.py",'''
import tensorflow as tf

for units in [32, 64]:
    tf.keras.backend.clear_session()
    model = tf.keras.Sequential([tf.keras.layers.Dense(units)])
''')
fx("TF02","positive.py",'''
import tensorflow as tf

model = tf.keras.Sequential([tf.keras.layers.Dense(1)])
model.compile(optimizer="adam", loss="mse")
model.fit(x, y)  # <- TF02
''')
fx("TF02","negative.py",'''
import tensorflow as tf

model = tf.keras.Sequential([tf.keras.layers.Dense(1)])
model.compile(optimizer="adam", loss="mse")
board = tf.keras.callbacks.TensorBoard(log_dir="logs")
model.fit(x, y, callbacks=[board])
''')
fx("TF03","positive.py",'''
from tensorflow.keras.preprocessing.image import ImageDataGenerator

datagen = ImageDataGenerator()  # <- TF03
''')
fx("TF03","negative.py",'''
from tensorflow.keras.preprocessing.image import ImageDataGenerator

datagen = ImageDataGenerator(rotation_range=20, horizontal_flip=True)
''')
fx("TF04","positive.py",'''
import tensorflow as tf

model = tf.keras.Sequential([tf.keras.layers.Dense(1)])
model.compile(optimizer="adam", loss="mse")
model.fit(x_train, y_train)  # <- TF04
''')
fx("TF04","negative.py",'''
import tensorflow as tf

model = tf.keras.Sequential([tf.keras.layers.Dense(1)])
model.compile(optimizer="adam", loss="mse")
model.fit(x_train, y_train)
model.evaluate(x_test, y_test)
''')
fx("HF01","positive.py",'''
from transformers import AutoModel

model = AutoModel.from_pretrained("bert-base-uncased")  # <- HF01
''')
fx("HF01","negative.py",'''
from transformers import AutoModel

model = AutoModel.from_pretrained("bert-base-uncased", revision="5546055")
''')
fx("HF02","positive.py",'''
from transformers import AutoTokenizer

tokenizer = AutoTokenizer.from_pretrained("bert-base-uncased", revision="main")
batch = tokenizer(["hello world", "hi"])  # <- HF02
ids = tokenizer.encode("hello")  # <- HF02
''')
fx("HF02","negative.py",'''
from transformers import AutoTokenizer

tokenizer = AutoTokenizer.from_pretrained("bert-base-uncased", revision="main")
batch = tokenizer(["hello world", "hi"], truncation=True, padding=True)
''')
fx("HF03","positive.py",'''
from transformers import Trainer, TrainingArguments

args = TrainingArguments(output_dir="out", seed=13)
trainer = Trainer(model=model, args=args)  # <- HF03
''')
fx("HF03","positive_best_model_off.py",'''
from transformers import Trainer, TrainingArguments

args = TrainingArguments(output_dir="out", load_best_model_at_end=False)
trainer = Trainer(model=model, args=args)  # <- HF03
''')
fx("HF03","negative.py",'''
from transformers import EarlyStoppingCallback, Trainer, TrainingArguments

args = TrainingArguments(output_dir="out", seed=13)
trainer = Trainer(model=model, args=args, callbacks=[EarlyStoppingCallback(early_stopping_patience=3)])
''')
fx("HF03","negative_best_model.py",'''
from transformers import Trainer, TrainingArguments

args = TrainingArguments(output_dir="out", load_best_model_at_end=True)
trainer = Trainer(model=model, args=args)
''')
fx("HF04","positive.py",'''
from transformers import TrainingArguments

args = TrainingArguments(output_dir="out")  # <- HF04
''')
fx("HF04","negative.py",'''
from transformers import TrainingArguments

args = TrainingArguments(output_dir="out", dataloader_num_workers=4)
''')
fx("HF05","positive.py",'''
from transformers import AutoTokenizer

for name in ["bert-base-uncased", "roberta-base"]:
    tokenizer = AutoTokenizer.from_pretrained(name)  # <- HF05
''')
fx("HF05","negative.py",'''
from transformers import AutoTokenizer

tokenizer = AutoTokenizer.from_pretrained("bert-base-uncased")
for text in ["a", "b"]:
    ids = tokenizer(text, truncation=True)
''')
fx("HF06","positive.py",'''
from transformers import pipeline

for text in texts:
    classifier = pipeline("sentiment-analysis")  # <- HF06
    print(classifier(text))
''')
fx("HF06","negative.py",'''
from transformers import pipeline

classifier = pipeline("sentiment-analysis")
for text in texts:
    print(classifier(text))
''')
fx("HF07","positive.py",'''
from transformers import TrainingArguments

args = TrainingArguments(output_dir="out")  # <- HF07
''')
fx("HF07","negative.py",'''
from transformers import TrainingArguments

args = TrainingArguments(output_dir="out", seed=42)
''')
fx("SK01","positive.py",'''
from sklearn.model_selection import train_test_split
from sklearn.preprocessing import StandardScaler

scaler = StandardScaler()
X_scaled = scaler.fit_transform(X)  # <- SK01
X_train, X_test, y_train, y_test = train_test_split(X_scaled, y, random_state=0)
''')
fx("SK01","positive_fit_argument.py",'''
from sklearn.model_selection import train_test_split
from sklearn.preprocessing import MinMaxScaler

scaler = MinMaxScaler()
scaler.fit(X)  # <- SK01
X_train, X_test = train_test_split(X, random_state=0)
''')
fx("SK01","negative.py",'''
from sklearn.model_selection import train_test_split
from sklearn.preprocessing import StandardScaler

X_train, X_test, y_train, y_test = train_test_split(X, y, random_state=0)
scaler = StandardScaler()
X_train = scaler.fit_transform(X_train)
X_test = scaler.transform(X_test)
''')
fx("SK02","positive.py",'''
from sklearn.ensemble import RandomForestClassifier

clf = RandomForestClassifier(n_estimators=100)
clf.fit(X_train, y_train)  # <- SK02
''')
fx("SK02","negative.py",'''
from sklearn.ensemble import RandomForestClassifier
from sklearn.model_selection import cross_val_score

clf = RandomForestClassifier(n_estimators=100)
scores = cross_val_score(clf, X, y, cv=5)
clf.fit(X, y)
''')
fx("SK03","positive.py",'''
from sklearn.model_selection import train_test_split

X_train, X_test = train_test_split(X, test_size=0.2)  # <- SK03
''')
fx("SK03","negative.py",'''
from sklearn.model_selection import train_test_split

X_train, X_test = train_test_split(X, test_size=0.2, random_state=42)
''')
fx("SK04","positive.py",'''
from sklearn.svm import SVC

clf = SVC(kernel="rbf")  # <- SK04
''')
fx("SK04","negative.py",'''
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import StandardScaler
from sklearn.svm import SVC

clf = make_pipeline(StandardScaler(), SVC(kernel="rbf"))
''')
fx("SK05","positive.py",'''
from sklearn.metrics import accuracy_score

acc = accuracy_score(y_true, y_pred)  # <- SK05
''')
fx("SK05","negative.py",'''
from sklearn.metrics import accuracy_score, f1_score

acc = accuracy_score(y_true, y_pred)
f1 = f1_score(y_true, y_pred)
''')
fx("SK06","positive.py",'''
from sklearn.ensemble import RandomForestClassifier

clf = RandomForestClassifier()  # <- SK06
''')
fx("SK06","negative.py",'''
from sklearn.ensemble import RandomForestClassifier

clf = RandomForestClassifier(n_estimators=200, max_depth=8)
''')
fx("ML01","positive.py",'''
import numpy as np


def scale(values):
    return values * 255  # <- ML01


clipped = np.clip(scale(x), a_min=-3, a_max=3)  # <- ML01
''')
fx("ML01","negative.py",'''
import numpy as np

MAX_PIXEL = 255
BOUNDS: tuple = (-3, 3)


def scale(values):
    return values / MAX_PIXEL


clipped = np.clip(scale(x), a_min=0, a_max=1)
doubled = values * 2
''')
fx("ML02","positive.py",'''
import random


def pick(items):
    return random.choice(items)  # <- ML02
''')
fx("ML02","negative.py",'''
import random

random.seed(0)


def pick(items):
    return random.choice(items)
''')
fx("ML03","positive.py",'''
def train(model, data):
    model.fit(data, epochs=50, batch_size=32)  # <- ML03
''')
fx("ML03","negative.py",'''
EPOCHS = 50


def train(model, data, config):
    model.fit(data, epochs=EPOCHS, batch_size=config["batch_size"])
''')
fx("ML04","positive.py",'''
import numpy as np


def normalize(x):  # <- ML04
    lo = x.min()
    hi = x.max()
    span = hi - lo
    shifted = x - lo
    scaled = shifted / span
    return scaled
''')
fx("ML04","negative.py",'''
import numpy as np


def normalize(x):
    """Rescale x to the unit interval."""
    lo = x.min()
    hi = x.max()
    span = hi - lo
    shifted = x - lo
    scaled = shifted / span
    return scaled


def short(x):
    return x
''')

root = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "fixtures")
rows = []
for (rule, name), text in sorted(F.items()):
    d = os.path.join(root, "rules", rule)
    os.makedirs(d, exist_ok=True)
    with open(os.path.join(d, name), "w") as f:
        f.write(text)
    for i, line in enumerate(text.splitlines(), 1):
        m = re.search(r"# <- ([A-Z]{2}\d\d)", line)
        if m:
            rows.append((f"rules/{rule}/{name}", i, m.group(1)))
with open(os.path.join(root, "rules", "expectations.csv"), "w") as f:
    f.write("file,line,detector_id,label\n")
    for r in rows:
        f.write(f"{r[0]},{r[1]},{r[2]},present\n")
print(len(F), "fixtures", len(rows), "rows")
