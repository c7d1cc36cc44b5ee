"""End-to-end analysis: raw text in, parsed sentences and terms out.

The pipeline owns resource loading (grammar, lexicon, compound list), with
defaults shipped inside the package and overridable per run via explicit
paths or the ``REQLENS_DATA_DIR`` environment variable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

from reqlens.chart import enumerate_trees, parse, render_tree
from reqlens.grammar import Grammar, load_grammar
from reqlens.ingest import CompoundList, load_compounds, make_document, split_sentences, tokenize
from reqlens.kb import DocumentRecord, KnowledgeBase
from reqlens.lexicon import Lexicon, load_lexicon
from reqlens.terms import ExtractedTerm, extract_terms

DATA_ENV_VAR = "REQLENS_DATA_DIR"
SENTENCE_LIMIT = 500
DEFAULT_TREE_LIMIT = 10

_PACKAGE_DATA = Path(__file__).resolve().parent / "data"


class PipelineError(ValueError):
    """Document cannot be analysed (for example, it is too large)."""


@dataclass(frozen=True)
class PipelineConfig:
    grammar: Grammar
    lexicon: Lexicon
    compounds: CompoundList
    tree_limit: int = DEFAULT_TREE_LIMIT


@dataclass(frozen=True)
class AnalyzedSentence:
    index: int
    text: str
    tokens: tuple[str, ...]
    tree: str | None
    tree_count: int
    terms: tuple[ExtractedTerm, ...]

    @property
    def parsed(self) -> bool:
        return self.tree is not None


@dataclass(frozen=True)
class AnalyzedDocument:
    title: str
    sentences: tuple[AnalyzedSentence, ...]

    @property
    def unparsed_indices(self) -> tuple[int, ...]:
        return tuple(s.index for s in self.sentences if not s.parsed)


def data_dir() -> Path:
    override = os.environ.get(DATA_ENV_VAR)
    return Path(override) if override else _PACKAGE_DATA


def load_config(grammar_path: str | Path | None = None,
                lexicon_path: str | Path | None = None,
                compounds_path: str | Path | None = None,
                tree_limit: int = DEFAULT_TREE_LIMIT) -> PipelineConfig:
    """Build a config from explicit paths, the data-dir override, or seeds."""
    if tree_limit < 1:
        raise PipelineError("tree limit must be positive")
    base = data_dir()
    return PipelineConfig(
        grammar=load_grammar(grammar_path or base / "grammar.cfg"),
        lexicon=load_lexicon(lexicon_path or base / "lexicon.tsv"),
        compounds=load_compounds(compounds_path or base / "compounds.txt"),
        tree_limit=tree_limit,
    )


def analyze_document(config: PipelineConfig, title: str, body: str) -> AnalyzedDocument:
    """Split, tokenise and parse a document; unparseable sentences are kept."""
    document = make_document(doc_id="", title=title, body=body)
    if len(document.sentences) > SENTENCE_LIMIT:
        raise PipelineError(
            f"document has {len(document.sentences)} sentences; the limit is {SENTENCE_LIMIT}"
        )
    analyzed: list[AnalyzedSentence] = []
    for sentence in document.sentences:
        tokens = tokenize(sentence, config.compounds)
        if not tokens:
            analyzed.append(AnalyzedSentence(
                index=sentence.index, text=sentence.text, tokens=(),
                tree=None, tree_count=0, terms=(),
            ))
            continue
        forest = parse(tokens, config.grammar, config.lexicon)
        trees = enumerate_trees(forest, limit=config.tree_limit)
        first = trees[0] if trees else None
        terms = extract_terms(first, sentence.index) if first else []
        analyzed.append(AnalyzedSentence(
            index=sentence.index,
            text=sentence.text,
            tokens=tuple(t.surface for t in tokens),
            tree=render_tree(first) if first else None,
            tree_count=len(trees),
            terms=tuple(terms),
        ))
    return AnalyzedDocument(title=title, sentences=tuple(analyzed))


def register_document(kb: KnowledgeBase, config: PipelineConfig, title: str, body: str) -> DocumentRecord:
    """Analyse ``body`` and add the result to the knowledge base."""
    analyzed = analyze_document(config, title, body)
    return kb.add_document(title, [
        (s.text, list(s.tokens), s.tree, s.tree_count, list(s.terms))
        for s in analyzed.sentences
    ])
