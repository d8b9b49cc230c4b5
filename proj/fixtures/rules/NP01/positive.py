import numpy as np

result = np.array([])
for i in range(10):
    result = np.append(result, i)  # <- NP01
