from transformers import AutoTokenizer

tokenizer = AutoTokenizer.from_pretrained("bert-base-uncased")
for text in ["a", "b"]:
    ids = tokenizer(text, truncation=True)
