import random


def jitter(value):
    return value + random.uniform(0, 0.5)
