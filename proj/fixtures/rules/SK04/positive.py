from sklearn.svm import SVC

clf = SVC(kernel="rbf")  # <- SK04
