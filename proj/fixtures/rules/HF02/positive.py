from transformers import AutoTokenizer

tokenizer = AutoTokenizer.from_pretrained("bert-base-uncased", revision="main")
batch = tokenizer(["hello world", "hi"])  # <- HF02
ids = tokenizer.encode("hello")  # <- HF02
