import tensorflow as tf


def build(units):
    model = tf.keras.Sequential([tf.keras.layers.Dense(units)])
    model.compile(optimizer="adam", loss="mse")
    return model


def train(model, features, labels):
    model.fit(features, labels)
