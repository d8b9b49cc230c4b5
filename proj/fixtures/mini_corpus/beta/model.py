import torch
import torch.nn as nn


class Net(nn.Module):
    def __init__(self, width):
        super().__init__()
        self.body = nn.Linear(width, width)

    def forward(self, x):
        return self.body(x)


def step(model, batch, target, loss_fn):
    loss = loss_fn(model(batch), target)
    loss.backward()


noise = torch.randn(4)
