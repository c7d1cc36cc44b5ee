"""Document ingestion: sentence splitting and tokenisation.

Tokenisation merges known multi-word phrases (``CompoundList``) into single
tokens using longest-match pattern matching, so that e.g. "information
system" survives as one unit all the way into the term list.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

# Common abbreviations that must not terminate a sentence.  Stored without
# the trailing dot.
_ABBREVIATIONS = frozenset(
    {
        "e.g",
        "i.e",
        "etc",
        "cf",
        "vs",
        "al",
        "dr",
        "mr",
        "mrs",
        "ms",
        "prof",
        "dept",
        "fig",
        "no",
        "inc",
        "ltd",
        "st",
    }
)

_TERMINATOR_RE = re.compile(r"[.!?]+")

# A word: alphanumerics, optionally chained with hyphens/apostrophes
# ("patient's", "on-line"), plus a trailing possessive apostrophe.
_WORD_RE = re.compile(r"\w+(?:[-'’]\w+)*['’]?")


@dataclass(frozen=True)
class Sentence:
    """One sentence of a document body, with its character span."""

    index: int
    text: str
    span: tuple[int, int]


@dataclass(frozen=True)
class Document:
    doc_id: str
    title: str
    body: str
    sentences: tuple[Sentence, ...]


@dataclass(frozen=True)
class Token:
    """A surface word (possibly a merged compound) within one sentence.

    ``span`` is a character range into the sentence text.
    """

    surface: str
    position: int
    span: tuple[int, int]
    is_compound: bool = False


class CompoundListError(ValueError):
    pass


@dataclass(frozen=True)
class CompoundList:
    """Known multi-word noun phrases, matched case-insensitively."""

    entries: frozenset[str]
    max_words: int = field(default=0)

    @staticmethod
    def from_phrases(phrases) -> "CompoundList":
        normalised = set()
        longest = 0
        for phrase in phrases:
            words = phrase.split()
            if len(words) < 2:
                raise CompoundListError(f"compound entry needs at least two words: {phrase!r}")
            normalised.add(" ".join(words).casefold())
            longest = max(longest, len(words))
        return CompoundList(entries=frozenset(normalised), max_words=longest)


EMPTY_COMPOUNDS = CompoundList(entries=frozenset(), max_words=0)


def load_compounds(path: str | Path) -> CompoundList:
    """Load a compound list file: one phrase per line, '#' comments."""
    phrases = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if len(line.split()) < 2:
            raise CompoundListError(f"{path}:{lineno}: compound entry needs at least two words: {line!r}")
        phrases.append(line)
    return CompoundList.from_phrases(phrases)


def _is_abbreviation(before: str) -> bool:
    """True when the word ending at a '.' should suppress a sentence split."""
    m = re.search(r"[A-Za-z][\w.]*$", before)
    if m is None:
        return False
    word = m.group()
    if word.casefold() in _ABBREVIATIONS:
        return True
    # Single letters ("J. Smith") and dotted acronyms ("U.S.") never end
    # a sentence in requirements prose.
    return len(word) == 1 or "." in word


def split_sentences(body: str) -> list[Sentence]:
    """Split a document body into sentences.

    A run of terminal punctuation (. ! ?) ends a sentence when followed by
    whitespace and a capital letter, or by end-of-text.  A built-in
    abbreviation list suppresses false splits after "e.g.", "Dr." etc.
    """
    boundaries = []
    for m in _TERMINATOR_RE.finditer(body):
        end = m.end()
        tail = body[end:]
        if tail.strip():
            if not tail[0].isspace():
                continue
            if not tail.lstrip()[:1].isupper():
                continue
        if "." in m.group() and _is_abbreviation(body[: m.start()]):
            continue
        boundaries.append(end)
    if not boundaries or boundaries[-1] < len(body):
        boundaries.append(len(body))

    sentences = []
    start = 0
    for end in boundaries:
        segment = body[start:end]
        stripped = segment.strip()
        if stripped:
            first = start + segment.index(stripped[0])
            span = (first, first + len(stripped))
            sentences.append(Sentence(index=len(sentences), text=body[span[0] : span[1]], span=span))
        start = end
    return sentences


def make_document(doc_id: str, title: str, body: str) -> Document:
    return Document(doc_id=doc_id, title=title, body=body, sentences=tuple(split_sentences(body)))


def tokenize(sentence: Sentence, compounds: CompoundList = EMPTY_COMPOUNDS) -> list[Token]:
    """Tokenise one sentence, merging compound phrases into single tokens.

    Punctuation is stripped; possessives ("patient's") stay one token.
    Compound matching is longest-match, left to right, case-insensitive,
    and preserves the original surface text (spacing and casing).
    """
    words = [(m.group(), m.start(), m.end()) for m in _WORD_RE.finditer(sentence.text)]
    tokens: list[Token] = []
    i = 0
    while i < len(words):
        merged = False
        limit = min(compounds.max_words, len(words) - i)
        for k in range(limit, 1, -1):
            phrase = " ".join(w[0] for w in words[i : i + k]).casefold()
            if phrase in compounds.entries:
                span = (words[i][1], words[i + k - 1][2])
                tokens.append(
                    Token(
                        surface=sentence.text[span[0] : span[1]],
                        position=len(tokens),
                        span=span,
                        is_compound=True,
                    )
                )
                i += k
                merged = True
                break
        if not merged:
            surface, start, end = words[i]
            tokens.append(Token(surface=surface, position=len(tokens), span=(start, end)))
            i += 1
    return tokens
