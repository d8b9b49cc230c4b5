import random

random.seed(0)


def pick(items):
    return random.choice(items)
