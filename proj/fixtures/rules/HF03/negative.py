from transformers import EarlyStoppingCallback, Trainer, TrainingArguments

args = TrainingArguments(output_dir="out", seed=13)
trainer = Trainer(model=model, args=args, callbacks=[EarlyStoppingCallback(early_stopping_patience=3)])
