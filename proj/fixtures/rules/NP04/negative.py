import numpy as np

c = np.zeros((3, 4)) + np.ones((3, 4))
