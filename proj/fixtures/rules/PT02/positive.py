import torch


def predict(model, x):
    with torch.no_grad():  # <- PT02
        return model(x)
