import numpy as np


def normalize(x):  # <- ML04
    lo = x.min()
    hi = x.max()
    span = hi - lo
    shifted = x - lo
    scaled = shifted / span
    return scaled
