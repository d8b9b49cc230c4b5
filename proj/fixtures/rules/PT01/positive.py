import torch


def train_step(model, loss_fn, x, y):
    loss = loss_fn(model(x), y)
    loss.backward()  # <- PT01
