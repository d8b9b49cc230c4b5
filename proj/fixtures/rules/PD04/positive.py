import pandas as pd

df = pd.read_csv("train.csv")  # <- PD04
