EPOCHS = 50


def train(model, data, config):
    model.fit(data, epochs=EPOCHS, batch_size=config["batch_size"])
