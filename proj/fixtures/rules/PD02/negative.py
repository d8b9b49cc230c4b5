import pandas as pd

df = pd.read_csv("train.csv")
features = df[["age", "income"]]
