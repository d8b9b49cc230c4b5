from transformers import Trainer, TrainingArguments

args = TrainingArguments(output_dir="out", load_best_model_at_end=False)
trainer = Trainer(model=model, args=args)  # <- HF03
