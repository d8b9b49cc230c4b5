import random


def pick(items):
    return random.choice(items)  # <- ML02
