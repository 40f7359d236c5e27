"""namecast: gender inference for social-media users from listed names.

Three base methods (government name-records matching, name n-grams,
linguistic name structure) feed a coverage-routed stacked ensemble, with a
non-person account filter and county-level aggregate reporting on top.
"""

__version__ = "0.1.0"

from ._kernels import backend_name as kernel_backend
from .ensemble import StackedConfig, StackedModel, predict_ensemble, train_stacked
from .features import (CharClasses, LinguisticFeatures, NgramConfig,
                       NgramVocabulary, build_vocabulary, count_syllables,
                       extract_linguistic, featurize_ngrams)
from .metrics import (BootstrapInterval, EvalReport, bootstrap_metric,
                      kfold_indices, score, stratified_split)
from .methods import (LEARNER_KINDS, LearnerSettings, MethodModel,
                      predict_method, train_method2, train_method3)
from .ml import (Dataset, FeatureVector, ForestConfig, ForestModel,
                 LinearModel, LogisticConfig, NBModel, SvmConfig, TreeConfig,
                 TreeModel, WinnowConfig, WinnowModel, platt_calibrate,
                 predict_score, train_balanced_winnow, train_decision_tree,
                 train_linear_svm, train_logistic, train_naive_bayes,
                 train_random_forest)
from .normalize import (CleanName, DEFAULT_STOP_TOKENS, clean_text,
                        cleaned_display_name, extract_first_name)
from .person import (AccountFeatureConfig, AccountFeatures,
                     extract_account_features, filter_persons,
                     train_person_filter)
from .records import (BRAND, FEMALE, MALE, UNKNOWN, GenderPrediction,
                      UserRecord)
from .serialize import load_model, save_model
from .ssa import NameStats, classify_ssa, load_ssa_corpus
