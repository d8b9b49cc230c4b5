from transformers import Trainer, TrainingArguments

args = TrainingArguments(output_dir="out", seed=13)
trainer = Trainer(model=model, args=args)  # <- HF03
