"""Subtopic label mining: candidate extraction, feature scoring, merging."""

from .candidates import CandidateLabel, extract_candidates
from .features import FEATURE_NAMES, FeatureExtractor, FeatureVector, compute_features
from .lda import TopicModel
from .merge import SubtopicLabel, merge_labels
from .regression import (
    RegressionModel,
    SvrHyperparams,
    TrainingExample,
    fit_svr,
    load_model,
    load_training_data,
    predict_scores,
    save_model,
    train,
)

__all__ = [
    "CandidateLabel",
    "extract_candidates",
    "FEATURE_NAMES",
    "FeatureExtractor",
    "FeatureVector",
    "compute_features",
    "TopicModel",
    "SubtopicLabel",
    "merge_labels",
    "RegressionModel",
    "SvrHyperparams",
    "TrainingExample",
    "fit_svr",
    "load_model",
    "load_training_data",
    "predict_scores",
    "save_model",
    "train",
]
