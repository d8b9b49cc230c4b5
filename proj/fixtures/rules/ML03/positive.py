def train(model, data):
    model.fit(data, epochs=50, batch_size=32)  # <- ML03
