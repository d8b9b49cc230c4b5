import numpy as np

MAX_PIXEL = 255
BOUNDS: tuple = (-3, 3)


def scale(values):
    return values / MAX_PIXEL


clipped = np.clip(scale(x), a_min=0, a_max=1)
doubled = values * 2
