from sklearn.model_selection import train_test_split
from sklearn.preprocessing import MinMaxScaler

scaler = MinMaxScaler()
scaler.fit(X)  # <- SK01
X_train, X_test = train_test_split(X, random_state=0)
