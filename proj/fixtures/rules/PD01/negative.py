import pandas as pd

df = pd.DataFrame({"price": [1.0, 2.0]})
price = df.loc[0, "price"]
