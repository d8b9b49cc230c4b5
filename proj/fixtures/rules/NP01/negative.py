import numpy as np

result = np.zeros(10)
for i in range(10):
    result[i] = i
