from sklearn.metrics import accuracy_score

acc = accuracy_score(y_true, y_pred)  # <- SK05
