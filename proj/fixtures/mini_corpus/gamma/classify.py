from sklearn.tree import DecisionTreeClassifier


def make_model():
    return DecisionTreeClassifier()
