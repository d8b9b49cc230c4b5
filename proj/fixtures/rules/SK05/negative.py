from sklearn.metrics import accuracy_score, f1_score

acc = accuracy_score(y_true, y_pred)
f1 = f1_score(y_true, y_pred)
