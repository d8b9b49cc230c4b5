import numpy as np


def scale(values):
    return values * 255  # <- ML01


clipped = np.clip(scale(x), a_min=-3, a_max=3)  # <- ML01
