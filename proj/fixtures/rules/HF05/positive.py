from transformers import AutoTokenizer

for name in ["bert-base-uncased", "roberta-base"]:
    tokenizer = AutoTokenizer.from_pretrained(name)  # <- HF05
