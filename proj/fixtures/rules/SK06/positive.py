from sklearn.ensemble import RandomForestClassifier

clf = RandomForestClassifier()  # <- SK06
