import pandas as pd

df = pd.read_csv("train.csv")
matrix = df.values  # <- PD03
