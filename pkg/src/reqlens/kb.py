"""Project knowledge base: terms, classifications, conflicts, export.

Terms are merged project-wide by case-folded value.  Classifying a term
records a claim (an object type plus an object value, defaulting to the
term itself).  Objects and conflicts are both derived from claims: claims
sharing an object value but disagreeing on its type form an open conflict,
and resolving a conflict rewrites the losing claims.  Export refuses to
run while any conflict is open, so the emitted object model is always
unambiguous.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from reqlens.terms import ExtractedTerm

SCHEMA_VERSION = 1

OBJECT_TYPES = ("FUNCTION", "ENTITY", "ATTRIBUTE")
_TYPE_RANK = {name: rank for rank, name in enumerate(OBJECT_TYPES)}

PENDING = "pending"
FILTERED = "filtered"
CLASSIFIED = "classified"
STATUSES = (PENDING, FILTERED, CLASSIFIED)

OPEN = "open"
RESOLVED = "resolved"


class KBError(Exception):
    """Base class for knowledge-base failures."""


class KBNotFound(KBError):
    """Named term, sentence or conflict does not exist."""


class KBStateError(KBError):
    """Operation conflicts with the current state of the target."""


class KBValueError(KBError):
    """Malformed input value (unknown type, status, ...)."""


class KBSchemaError(KBError):
    """Persisted knowledge base file does not match the schema."""


@dataclass(frozen=True)
class Claim:
    type: str
    object_value: str


@dataclass
class SentenceRecord:
    index: int
    doc_id: str
    text: str
    tokens: list[str]
    tree: str | None
    tree_count: int


@dataclass
class DocumentRecord:
    doc_id: str
    title: str
    sentences: list[SentenceRecord] = field(default_factory=list)


@dataclass
class TermEntry:
    value: str  # surface of the first occurrence
    display: str
    sentence_indices: list[int] = field(default_factory=list)
    status: str = PENDING
    claims: list[Claim] = field(default_factory=list)


@dataclass(frozen=True)
class Conflict:
    value: str
    types: tuple[str, ...]
    status: str
    resolution: str | None = None


@dataclass(frozen=True)
class KBObject:
    type: str
    value: str

    def to_sexpr(self) -> str:
        value = self.value.replace("\\", "\\\\").replace('"', '\\"')
        return f'(OBJECT (:TYPE {self.type}) (:VALUE "{value}"))'


def _key(value: str) -> str:
    return value.casefold()


class KnowledgeBase:
    """All analysis state for one project."""

    def __init__(self, project_id: str):
        if not project_id or not project_id.strip():
            raise KBValueError("project_id must be a non-empty string")
        self.project_id = project_id
        self.documents: list[DocumentRecord] = []
        self.terms: dict[str, TermEntry] = {}
        self.resolutions: list[Conflict] = []

    # -- documents and sentences -------------------------------------------

    @property
    def sentence_count(self) -> int:
        return sum(len(doc.sentences) for doc in self.documents)

    def add_document(self, title: str, sentences: list[tuple[str, list[str], str | None, int, list[ExtractedTerm]]]) -> DocumentRecord:
        """Record an analysed document.

        ``sentences`` holds per-sentence tuples of (text, token surfaces,
        rendered first parse or None, parse count, extracted terms); the
        sentence indices of the terms are document-local and are shifted
        onto the project-wide numbering here.
        """
        offset = self.sentence_count
        doc = DocumentRecord(doc_id=f"doc-{len(self.documents) + 1}", title=title)
        for local_index, (text, tokens, tree, tree_count, terms) in enumerate(sentences):
            doc.sentences.append(SentenceRecord(
                index=offset + local_index,
                doc_id=doc.doc_id,
                text=text,
                tokens=list(tokens),
                tree=tree,
                tree_count=tree_count,
            ))
            for term in terms:
                self._record_term(term, offset)
        self.documents.append(doc)
        return doc

    def _record_term(self, term: ExtractedTerm, offset: int) -> None:
        entry = self.terms.get(_key(term.value))
        if entry is None:
            entry = TermEntry(value=term.value, display=term.display)
            self.terms[_key(term.value)] = entry
        index = term.sentence_index + offset
        if index not in entry.sentence_indices:
            entry.sentence_indices.append(index)

    def sentence(self, index: int) -> SentenceRecord:
        for doc in self.documents:
            for record in doc.sentences:
                if record.index == index:
                    return record
        raise KBNotFound(f"no sentence with index {index}")

    # -- term state ---------------------------------------------------------

    def term(self, value: str) -> TermEntry:
        entry = self.terms.get(_key(value))
        if entry is None:
            raise KBNotFound(f"unknown term {value!r}")
        return entry

    def terms_by_status(self, status: str | None = None) -> list[TermEntry]:
        if status is not None and status not in STATUSES:
            raise KBValueError(f"unknown status {status!r} (expected one of {', '.join(STATUSES)})")
        return [t for t in self.terms.values() if status is None or t.status == status]

    def filter_term(self, value: str) -> TermEntry:
        entry = self.term(value)
        if entry.status == CLASSIFIED:
            raise KBStateError(f"term {entry.value!r} is classified; declassify it first")
        entry.status = FILTERED
        return entry

    def unfilter_term(self, value: str) -> TermEntry:
        entry = self.term(value)
        if entry.status == CLASSIFIED:
            raise KBStateError(f"term {entry.value!r} is classified, not filtered")
        entry.status = PENDING
        return entry

    def classify_term(self, value: str, type_name: str, object_value: str | None = None) -> TermEntry:
        """Attach a claim to a term.

        Re-classifying with a different type for the same object is allowed
        and surfaces as an open conflict; pointing one term at two distinct
        object values is rejected outright.
        """
        entry = self.term(value)
        if type_name not in OBJECT_TYPES:
            raise KBValueError(f"unknown object type {type_name!r} (expected one of {', '.join(OBJECT_TYPES)})")
        if entry.status == FILTERED:
            raise KBStateError(f"term {entry.value!r} is filtered; unfilter it first")
        object_value = entry.value if object_value is None else object_value
        if not object_value.strip():
            raise KBValueError("object value must be a non-empty string")
        for claim in entry.claims:
            if _key(claim.object_value) != _key(object_value):
                raise KBStateError(
                    f"term {entry.value!r} is already classified as object {claim.object_value!r}"
                )
        claim = Claim(type=type_name, object_value=object_value)
        if claim not in entry.claims:
            entry.claims.append(claim)
        entry.status = CLASSIFIED
        return entry

    def declassify_term(self, value: str) -> TermEntry:
        entry = self.term(value)
        if entry.status != CLASSIFIED:
            raise KBStateError(f"term {entry.value!r} is not classified")
        entry.claims.clear()
        entry.status = PENDING
        return entry

    # -- conflicts and objects ----------------------------------------------

    def _claim_groups(self) -> dict[str, list[Claim]]:
        groups: dict[str, list[Claim]] = {}
        for entry in self.terms.values():
            for claim in entry.claims:
                groups.setdefault(_key(claim.object_value), []).append(claim)
        return groups

    def open_conflicts(self) -> list[Conflict]:
        conflicts = []
        for claims in self._claim_groups().values():
            types = sorted({c.type for c in claims}, key=_TYPE_RANK.__getitem__)
            if len(types) > 1:
                conflicts.append(Conflict(value=claims[0].object_value, types=tuple(types), status=OPEN))
        conflicts.sort(key=lambda c: _key(c.value))
        return conflicts

    def conflicts(self) -> list[Conflict]:
        return self.open_conflicts() + list(self.resolutions)

    def resolve_conflict(self, value: str, type_name: str) -> Conflict:
        """Settle one object's type; every disagreeing claim is rewritten."""
        if type_name not in OBJECT_TYPES:
            raise KBValueError(f"unknown object type {type_name!r} (expected one of {', '.join(OBJECT_TYPES)})")
        target = next((c for c in self.open_conflicts() if _key(c.value) == _key(value)), None)
        if target is None:
            raise KBNotFound(f"no open conflict for object {value!r}")
        if type_name not in target.types:
            raise KBValueError(
                f"type {type_name} is not among the conflicting types {', '.join(target.types)}"
            )
        for entry in self.terms.values():
            entry.claims = [
                Claim(type=type_name, object_value=c.object_value) if _key(c.object_value) == _key(value) else c
                for c in entry.claims
            ]
            deduped: list[Claim] = []
            for claim in entry.claims:
                if claim not in deduped:
                    deduped.append(claim)
            entry.claims = deduped
        resolved = Conflict(value=target.value, types=target.types, status=RESOLVED, resolution=type_name)
        self.resolutions.append(resolved)
        return resolved

    def objects(self) -> list[KBObject]:
        by_identity: dict[tuple[str, str], KBObject] = {}
        for claims in self._claim_groups().values():
            for claim in claims:
                identity = (claim.type, _key(claim.object_value))
                if identity not in by_identity:
                    by_identity[identity] = KBObject(type=claim.type, value=claim.object_value)
        return sorted(by_identity.values(), key=lambda o: (_TYPE_RANK[o.type], _key(o.value)))

    # -- export ---------------------------------------------------------------

    def export_sexpr(self) -> str:
        open_now = self.open_conflicts()
        if open_now:
            names = ", ".join(repr(c.value) for c in open_now)
            raise KBStateError(f"cannot export while conflicts are open: {names}")
        return "".join(obj.to_sexpr() + "\n" for obj in self.objects())

    def terms_table(self) -> str:
        lines = []
        for entry in self.terms.values():
            indices = ",".join(str(i) for i in entry.sentence_indices)
            lines.append(f"{entry.value}\t{indices}\t{entry.status}")
        return "".join(line + "\n" for line in lines)

    # -- persistence ------------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "project_id": self.project_id,
            "documents": [
                {
                    "doc_id": doc.doc_id,
                    "title": doc.title,
                    "sentences": [
                        {
                            "index": s.index,
                            "text": s.text,
                            "tokens": list(s.tokens),
                            "tree": s.tree,
                            "tree_count": s.tree_count,
                        }
                        for s in doc.sentences
                    ],
                }
                for doc in self.documents
            ],
            "terms": [
                {
                    "value": t.value,
                    "display": t.display,
                    "sentence_indices": list(t.sentence_indices),
                    "status": t.status,
                    "claims": [{"type": c.type, "object_value": c.object_value} for c in t.claims],
                }
                for t in self.terms.values()
            ],
            "objects": [{"type": o.type, "value": o.value} for o in self.objects()],
            "conflicts": [
                {"value": c.value, "types": list(c.types), "status": c.status, "resolution": c.resolution}
                for c in self.conflicts()
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "KnowledgeBase":
        if not isinstance(data, dict):
            raise KBSchemaError("top level: expected an object")
        version = _get(data, "schema_version", int, "")
        if version != SCHEMA_VERSION:
            raise KBSchemaError(f"schema_version: expected {SCHEMA_VERSION}, found {version!r}")
        kb = cls(project_id=_get(data, "project_id", str, ""))
        for d, doc_data in enumerate(_get(data, "documents", list, "")):
            path = f"documents[{d}]"
            if not isinstance(doc_data, dict):
                raise KBSchemaError(f"{path}: expected an object")
            doc = DocumentRecord(
                doc_id=_get(doc_data, "doc_id", str, path),
                title=_get(doc_data, "title", str, path),
            )
            for s, sent_data in enumerate(_get(doc_data, "sentences", list, path)):
                spath = f"{path}.sentences[{s}]"
                if not isinstance(sent_data, dict):
                    raise KBSchemaError(f"{spath}: expected an object")
                tree = sent_data.get("tree")
                if tree is not None and not isinstance(tree, str):
                    raise KBSchemaError(f"{spath}.tree: expected a string or null")
                doc.sentences.append(SentenceRecord(
                    index=_get(sent_data, "index", int, spath),
                    doc_id=doc.doc_id,
                    text=_get(sent_data, "text", str, spath),
                    tokens=_string_list(sent_data, "tokens", spath),
                    tree=tree,
                    tree_count=_get(sent_data, "tree_count", int, spath),
                ))
            kb.documents.append(doc)
        for t, term_data in enumerate(_get(data, "terms", list, "")):
            path = f"terms[{t}]"
            if not isinstance(term_data, dict):
                raise KBSchemaError(f"{path}: expected an object")
            entry = TermEntry(
                value=_get(term_data, "value", str, path),
                display=_get(term_data, "display", str, path),
                status=_get(term_data, "status", str, path),
            )
            if entry.status not in STATUSES:
                raise KBSchemaError(f"{path}.status: expected one of {', '.join(STATUSES)}")
            for index in _get(term_data, "sentence_indices", list, path):
                if not isinstance(index, int):
                    raise KBSchemaError(f"{path}.sentence_indices: expected integers")
                entry.sentence_indices.append(index)
            for c, claim_data in enumerate(_get(term_data, "claims", list, path)):
                cpath = f"{path}.claims[{c}]"
                if not isinstance(claim_data, dict):
                    raise KBSchemaError(f"{cpath}: expected an object")
                type_name = _get(claim_data, "type", str, cpath)
                if type_name not in OBJECT_TYPES:
                    raise KBSchemaError(f"{cpath}.type: expected one of {', '.join(OBJECT_TYPES)}")
                entry.claims.append(Claim(type=type_name, object_value=_get(claim_data, "object_value", str, cpath)))
            if entry.claims and entry.status != CLASSIFIED:
                raise KBSchemaError(f"{path}.status: term has claims but status is {entry.status!r}")
            if not entry.claims and entry.status == CLASSIFIED:
                raise KBSchemaError(f"{path}.status: term is classified but has no claims")
            kb.terms[_key(entry.value)] = entry
        for c, conflict_data in enumerate(_get(data, "conflicts", list, "")):
            path = f"conflicts[{c}]"
            if not isinstance(conflict_data, dict):
                raise KBSchemaError(f"{path}: expected an object")
            status = _get(conflict_data, "status", str, path)
            if status not in (OPEN, RESOLVED):
                raise KBSchemaError(f"{path}.status: expected {OPEN!r} or {RESOLVED!r}")
            if status == OPEN:
                continue  # open conflicts are derived from claims, not stored state
            resolution = conflict_data.get("resolution")
            if not isinstance(resolution, str) or resolution not in OBJECT_TYPES:
                raise KBSchemaError(f"{path}.resolution: expected one of {', '.join(OBJECT_TYPES)}")
            types = _string_list(conflict_data, "types", path)
            kb.resolutions.append(Conflict(
                value=_get(conflict_data, "value", str, path),
                types=tuple(types),
                status=RESOLVED,
                resolution=resolution,
            ))
        return kb


def _get(mapping: dict, name: str, expected: type, path: str):
    where = f"{path}.{name}" if path else name
    if name not in mapping:
        raise KBSchemaError(f"{where}: missing")
    value = mapping[name]
    if not isinstance(value, expected) or (expected is int and isinstance(value, bool)):
        raise KBSchemaError(f"{where}: expected {expected.__name__}")
    return value


def _string_list(mapping: dict, name: str, path: str) -> list[str]:
    values = _get(mapping, name, list, path)
    for value in values:
        if not isinstance(value, str):
            raise KBSchemaError(f"{path}.{name}: expected strings")
    return list(values)


def save_kb(kb: KnowledgeBase, path: str | Path) -> None:
    """Write the KB as JSON, atomically (write-then-rename)."""
    path = Path(path)
    payload = json.dumps(kb.to_dict(), indent=2, ensure_ascii=False) + "\n"
    fd, temp_name = tempfile.mkstemp(dir=path.parent or Path("."), prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(payload)
        os.replace(temp_name, path)
    except BaseException:
        try:
            os.unlink(temp_name)
        except OSError:
            pass
        raise


def load_kb(path: str | Path) -> KnowledgeBase:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise KBSchemaError(f"{path}: not valid JSON ({exc})") from exc
    return KnowledgeBase.from_dict(data)
