import pandas as pd

df = pd.read_csv("train.csv")
matrix = df.to_numpy()
