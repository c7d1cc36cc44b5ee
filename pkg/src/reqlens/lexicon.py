"""Word-to-category dictionary with morphosyntactic features.

The only feature currently carried is grammatical ``number`` with values
``sg``, ``pl`` or ``any``; feature values are stored as sets so that
``any`` simply becomes the full value set and agreement reduces to set
intersection.  Unlisted words are synthesised as nouns so domain names in
requirements text still reach the term list.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

# Feature universe: feature name -> full value set.  A feature missing from
# an entry, or declared "any", denotes the full set.
FEATURE_VALUES: dict[str, frozenset[str]] = {"number": frozenset({"sg", "pl"})}

# Hashable feature map: sorted (name, value-set) pairs.
FeatureMap = tuple[tuple[str, frozenset[str]], ...]

OOV_POS = "NOUN"


class LexiconError(ValueError):
    pass


def freeze_features(mapping: dict[str, frozenset[str]]) -> FeatureMap:
    return tuple(sorted((name, frozenset(values)) for name, values in mapping.items()))


def normalise_surface(surface: str) -> str:
    """Lookup key: case-folded, single-spaced, straight apostrophes."""
    return " ".join(surface.replace("’", "'").split()).casefold()


def feature_values(features: FeatureMap, name: str) -> frozenset[str]:
    """Value set for a feature; absent features denote the full set."""
    for key, values in features:
        if key == name:
            return values
    return FEATURE_VALUES.get(name, frozenset())


@dataclass(frozen=True)
class LexEntry:
    surface: str  # case-folded key
    pos: str
    features: FeatureMap
    oov: bool = False


@dataclass(frozen=True)
class Lexicon:
    entries: dict[str, tuple[LexEntry, ...]] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return sum(len(v) for v in self.entries.values())

    def lookup(self, surface: str) -> list[LexEntry]:
        """All entries for a surface (case-insensitive); never empty.

        Unknown words yield a single synthesised out-of-vocabulary entry:
        a NOUN unconstrained for number.
        """
        key = normalise_surface(surface)
        found = self.entries.get(key)
        if found:
            return list(found)
        return [LexEntry(surface=key, pos=OOV_POS, features=freeze_features({"number": FEATURE_VALUES["number"]}), oov=True)]


def _parse_features(spec: str, where: str) -> FeatureMap:
    mapping: dict[str, frozenset[str]] = {}
    for part in spec.split(";"):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise LexiconError(f"{where}: malformed feature {part!r} (expected name=value)")
        name, _, value = part.partition("=")
        name, value = name.strip(), value.strip()
        if name not in FEATURE_VALUES:
            raise LexiconError(f"{where}: unknown feature {name!r}")
        universe = FEATURE_VALUES[name]
        if value == "any":
            mapping[name] = universe
        elif value in universe:
            mapping[name] = frozenset({value})
        else:
            raise LexiconError(f"{where}: unknown {name} value {value!r}")
    return freeze_features(mapping)


def lookup(lexicon: Lexicon, surface: str) -> list[LexEntry]:
    return lexicon.lookup(surface)


def load_lexicon(path: str | Path) -> Lexicon:
    """Load a tab-separated lexicon file.

    Format: ``surface<TAB>POS[<TAB>feature=value[;feature=value]*]``,
    '#' comments and blank lines ignored.  Exact duplicate entries are
    collapsed; homographs (same surface, different POS or features) are
    all retained.  Loading is order-independent: entries for one surface
    are stored in a canonical sort order.
    """
    path = Path(path)
    collected: dict[str, list[LexEntry]] = {}
    seen: set[tuple[str, str, FeatureMap]] = set()
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) < 2 or len(fields) > 3 or not fields[0].strip() or not fields[1].strip():
            raise LexiconError(f"{path}:{lineno}: malformed line {raw!r} (expected surface<TAB>POS[<TAB>features])")
        surface = normalise_surface(fields[0])
        pos = fields[1].strip()
        features = _parse_features(fields[2], f"{path}:{lineno}") if len(fields) == 3 else freeze_features({})
        key = (surface, pos, features)
        if key in seen:
            continue
        seen.add(key)
        collected.setdefault(surface, []).append(LexEntry(surface=surface, pos=pos, features=features))
    entries = {
        surface: tuple(sorted(items, key=_entry_sort_key))
        for surface, items in sorted(collected.items())
    }
    return Lexicon(entries=entries)


def _entry_sort_key(entry: LexEntry):
    return entry.pos, [(name, tuple(sorted(values))) for name, values in entry.features]
