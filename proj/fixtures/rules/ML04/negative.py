import numpy as np


def normalize(x):
    """Rescale x to the unit interval."""
    lo = x.min()
    hi = x.max()
    span = hi - lo
    shifted = x - lo
    scaled = shifted / span
    return scaled


def short(x):
    return x
