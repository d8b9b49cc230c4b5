import numpy as np

x = np.ones((3, 4))
total = np.sum(x)  # <- NP02
