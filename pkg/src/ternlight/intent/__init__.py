"""Command grammar, synthetic corpus generation, intent-to-action mapping,
and the ternary text classifier."""

from .classifier import (
    FEATURE_DIM,
    IntentClassifier,
    eval_classifier,
    featurize_text,
    train_intent_classifier,
)
from .corpus import (
    CorpusEntry,
    generate_corpus,
    read_corpus,
    split_corpus,
    write_corpus,
)
from .grammar import Lexicon, ParseError, normalize, parse_command
from .mapping import MappingError, intent_to_config
from .types import (
    ALL_ZONES,
    INTENT_LABELS,
    ActivateScene,
    Intent,
    QueryState,
    SetBrightness,
    SetColorTemp,
    TurnOff,
    TurnOn,
    intent_from_doc,
    intent_label,
    intent_to_doc,
)

__all__ = [
    "FEATURE_DIM",
    "IntentClassifier",
    "eval_classifier",
    "featurize_text",
    "train_intent_classifier",
    "CorpusEntry",
    "generate_corpus",
    "read_corpus",
    "split_corpus",
    "write_corpus",
    "Lexicon",
    "ParseError",
    "normalize",
    "parse_command",
    "MappingError",
    "intent_to_config",
    "ALL_ZONES",
    "INTENT_LABELS",
    "ActivateScene",
    "Intent",
    "QueryState",
    "SetBrightness",
    "SetColorTemp",
    "TurnOff",
    "TurnOn",
    "intent_from_doc",
    "intent_label",
    "intent_to_doc",
]
