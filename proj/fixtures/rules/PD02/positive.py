import pandas as pd

df = pd.read_csv("train.csv")  # <- PD02
print(df.head())
