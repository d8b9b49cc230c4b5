import numpy as np
import pandas as pd

frame = pd.read_csv("data.csv")
cols = frame[["a", "b"]]
first = frame["a"]["b"]
total = np.sum(cols)
mean = np.mean(cols)
