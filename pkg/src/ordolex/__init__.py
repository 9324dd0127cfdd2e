"""Word-order and word-length analytics for POS-tagged corpora."""

from .corpus import Corpus, Sentence, Token, WordClass, token_length
from .features import (FeatureVector, build_historical_features, build_imputation_features,
                       build_regression_design)
from .gnb import GnbModel, gnb_fit, gnb_predict
from .ingest import (LanguageRecord, OrderLabel, TagMap, load_language_table,
                     parse_conllu_subset, parse_vertical, read_corpus)
from .metrics import CorpusStats, aggregate_stats, length_stats, n1_ratio

__version__ = "0.1.0"
