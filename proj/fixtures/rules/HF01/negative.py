from transformers import AutoModel

model = AutoModel.from_pretrained("bert-base-uncased", revision="5546055")
