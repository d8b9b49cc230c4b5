from transformers import AutoTokenizer

tokenizer = AutoTokenizer.from_pretrained("bert-base-uncased", revision="main")
batch = tokenizer(["hello world", "hi"], truncation=True, padding=True)
