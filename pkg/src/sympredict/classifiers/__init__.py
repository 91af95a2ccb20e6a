from .posterior import ClassPosterior
from .knn import KnnModel, euclidean_distance, knn_train, knn_predict
from .naive_bayes import NbModel, nb_train, nb_predict
from .forest import (
    DecisionTree,
    RfModel,
    gini_impurity,
    rf_train,
    rf_predict,
)

__all__ = [
    "ClassPosterior",
    "KnnModel",
    "euclidean_distance",
    "knn_train",
    "knn_predict",
    "NbModel",
    "nb_train",
    "nb_predict",
    "DecisionTree",
    "RfModel",
    "gini_impurity",
    "rf_train",
    "rf_predict",
]
