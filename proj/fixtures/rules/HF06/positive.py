from transformers import pipeline

for text in texts:
    classifier = pipeline("sentiment-analysis")  # <- HF06
    print(classifier(text))
