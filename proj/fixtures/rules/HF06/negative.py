from transformers import pipeline

classifier = pipeline("sentiment-analysis")
for text in texts:
    print(classifier(text))
