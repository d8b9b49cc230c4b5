import tensorflow as tf

for units in [32, 64]:
    tf.keras.backend.clear_session()
    model = tf.keras.Sequential([tf.keras.layers.Dense(units)])
