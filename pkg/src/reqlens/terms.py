"""Noun-term extraction from parse trees.

Candidate terms are the nouns of minimal noun phrases (NP nodes with no NP
below them).  Determiners are dropped; other modifiers are kept but
parenthesised in the display form, so "their medical histories" surfaces
as the term "histories" displayed as "(their medical) histories".
"""

from __future__ import annotations

from dataclasses import dataclass

from reqlens.chart import ParseTree

NP_LABEL = "NP"
NOUN_LABEL = "NOUN"
_DROPPED_LABELS = frozenset({"DET"})


@dataclass(frozen=True)
class ExtractedTerm:
    value: str  # the noun as written in the sentence
    display: str  # value with retained modifiers parenthesised
    sentence_index: int


def minimal_nps(tree: ParseTree) -> list[ParseTree]:
    """NP subtrees containing no further NP, in left-to-right order."""
    found: list[ParseTree] = []

    def walk(node: ParseTree) -> bool:
        if node.is_leaf:
            return False
        np_below = False
        for child in node.children:
            np_below = walk(child) or np_below
        if node.label == NP_LABEL and not np_below:
            found.append(node)
        return np_below or node.label == NP_LABEL

    walk(tree)
    return found


def extract_terms(tree: ParseTree, sentence_index: int) -> list[ExtractedTerm]:
    """One term per noun of each minimal NP; pronoun-only NPs yield none."""
    terms: list[ExtractedTerm] = []
    for np in minimal_nps(tree):
        leaves = np.leaves()
        nouns = [leaf for leaf in leaves if leaf.label == NOUN_LABEL]
        modifiers = [
            leaf.leaf
            for leaf in leaves
            if leaf.label != NOUN_LABEL and leaf.label not in _DROPPED_LABELS
        ]
        for noun in nouns:
            if modifiers:
                display = f"({' '.join(modifiers)}) {noun.leaf}"
            else:
                display = noun.leaf
            terms.append(ExtractedTerm(value=noun.leaf, display=display, sentence_index=sentence_index))
    return terms
