"""reqlens: an analyst-assisting requirements-analysis toolkit.

Splits requirements documents into sentences, parses each sentence with a
constraint-augmented context-free chart parser, extracts candidate noun
terms from the first parse tree, and manages their classification into a
project knowledge base of functions, entities, and attributes.
"""

__version__ = "0.1.0"

from reqlens.ingest import CompoundList, Document, Sentence, Token, load_compounds, make_document, split_sentences, tokenize
from reqlens.lexicon import LexEntry, Lexicon, load_lexicon
from reqlens.grammar import Constraint, Grammar, GrammarRule, check_constraint, load_grammar
from reqlens.chart import ParseForest, ParseTree, enumerate_trees, first_parse, parse, render_tree
from reqlens.terms import ExtractedTerm, extract_terms, minimal_nps
from reqlens.kb import Claim, Conflict, KBError, KBObject, KnowledgeBase, load_kb, save_kb
from reqlens.pipeline import AnalyzedDocument, AnalyzedSentence, PipelineConfig, analyze_document, load_config, register_document

__all__ = [
    "CompoundList",
    "Document",
    "Sentence",
    "Token",
    "load_compounds",
    "make_document",
    "split_sentences",
    "tokenize",
    "LexEntry",
    "Lexicon",
    "load_lexicon",
    "Constraint",
    "Grammar",
    "GrammarRule",
    "check_constraint",
    "load_grammar",
    "ParseForest",
    "ParseTree",
    "enumerate_trees",
    "first_parse",
    "parse",
    "render_tree",
    "ExtractedTerm",
    "extract_terms",
    "minimal_nps",
    "Claim",
    "Conflict",
    "KBError",
    "KBObject",
    "KnowledgeBase",
    "load_kb",
    "save_kb",
    "AnalyzedDocument",
    "AnalyzedSentence",
    "PipelineConfig",
    "analyze_document",
    "load_config",
    "register_document",
]
