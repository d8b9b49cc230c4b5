import pandas as pd

df = pd.read_csv("train.csv", dtype={"age": "int64"})
