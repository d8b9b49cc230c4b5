from tensorflow.keras.preprocessing.image import ImageDataGenerator

datagen = ImageDataGenerator()  # <- TF03
