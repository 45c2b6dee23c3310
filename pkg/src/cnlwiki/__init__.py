"""cnlwiki: a semantic wiki engine for a controlled English subset.

The predictive grammar guarantees every stored sentence is lexically and
grammatically well-formed; the logic layer translates sentences to
first-order discourse structures and classifies them against a small OWL
axiom grammar; a forward-chaining reasoner ranks editor suggestions.
"""

from .grammar import (
    Grammar, Prediction, SentenceAst, Token, parse, predict, restrict,
    tokenize, verbalize,
)
from .lexicon import Lexicon, Word, WordCategory
from .logic import (
    Axiom, AxiomKind, Drs, SentencePattern, ast_to_drs, classify,
    contains_neg_or_impl, pattern_of,
)
from .reasoner import (
    KnowledgeBase, assert_axiom, rank_concepts, rank_individuals,
    retract_axiom,
)
from .wiki import Article, Sentence, StatsReport, Wiki

__all__ = [
    "Article", "Axiom", "AxiomKind", "Drs", "Grammar", "KnowledgeBase",
    "Lexicon", "Prediction", "Sentence", "SentenceAst", "SentencePattern",
    "StatsReport", "Token", "Wiki", "Word", "WordCategory",
    "assert_axiom", "ast_to_drs", "classify", "contains_neg_or_impl",
    "parse", "pattern_of", "predict", "rank_concepts", "rank_individuals",
    "restrict", "retract_axiom", "tokenize", "verbalize",
]
