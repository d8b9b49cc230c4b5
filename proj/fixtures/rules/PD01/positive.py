import pandas as pd

df = pd.DataFrame({"price": [1.0, 2.0]})
price = df["price"][0]  # <- PD01
