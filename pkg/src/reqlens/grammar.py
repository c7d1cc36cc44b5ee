"""Context-free grammar with per-rule well-formedness constraints.

Each rule may carry agreement constraints over its right-hand-side
positions and a head designation; a completed constituent takes its head
child's feature map, and an agreement constraint is satisfied exactly when
the named children's value sets for the feature intersect.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from reqlens.lexicon import FEATURE_VALUES, FeatureMap, feature_values

START_SYMBOL = "S"

AGREE = "AGREE"


class GrammarError(ValueError):
    pass


@dataclass(frozen=True)
class Constraint:
    kind: str
    feature: str
    arg_positions: tuple[int, ...]


@dataclass(frozen=True)
class GrammarRule:
    lhs: str
    rhs: tuple[str, ...]
    constraints: tuple[Constraint, ...]
    head_index: int
    rule_index: int

    def __str__(self) -> str:
        return f"{self.lhs} -> {' '.join(self.rhs)}"


@dataclass(frozen=True)
class Grammar:
    rules: tuple[GrammarRule, ...]
    start_symbol: str
    terminals: frozenset[str]
    nonterminals: frozenset[str]

    def rules_for(self, lhs: str) -> tuple[GrammarRule, ...]:
        return self._by_lhs.get(lhs, ())

    @property
    def _by_lhs(self) -> dict[str, tuple[GrammarRule, ...]]:
        cache = self.__dict__.get("_by_lhs_cache")
        if cache is None:
            cache = {}
            for rule in self.rules:
                cache.setdefault(rule.lhs, []).append(rule)
            cache = {lhs: tuple(rules) for lhs, rules in cache.items()}
            object.__setattr__(self, "_by_lhs_cache", cache)
        return cache


def check_constraint(constraint: Constraint, child_features: list[FeatureMap]) -> bool:
    """True iff the constrained children's value sets intersect.

    A child without the feature (or with value ``any``) contributes the
    full value set, so it can never break agreement.
    """
    universe = FEATURE_VALUES.get(constraint.feature, frozenset())
    common = universe
    for position in constraint.arg_positions:
        common = common & feature_values(child_features[position], constraint.feature)
    return bool(common)


def satisfies_constraints(rule: GrammarRule, child_features: list[FeatureMap]) -> bool:
    return all(check_constraint(c, child_features) for c in rule.constraints)


_AGREE_RE = re.compile(r"^agree\(\s*(\w+)\s*((?:,\s*\d+\s*)+)\)$")
_HEAD_RE = re.compile(r"^head\s+(\d+)$")


def _parse_rule(line: str, where: str, rule_index: int) -> GrammarRule:
    if "->" not in line:
        raise GrammarError(f"{where}: malformed rule {line!r} (expected LHS -> RHS)")
    lhs_part, _, rest = line.partition("->")
    lhs = lhs_part.strip()
    clauses = [c.strip() for c in rest.split(":")]
    rhs = tuple(clauses[0].split())
    if not lhs or not rhs:
        raise GrammarError(f"{where}: rule needs a left-hand side and a non-empty right-hand side")
    constraints: list[Constraint] = []
    head_index = len(rhs) - 1  # default head: rightmost symbol
    for clause in clauses[1:]:
        if not clause:
            continue
        m = _AGREE_RE.match(clause)
        if m:
            feature = m.group(1)
            if feature not in FEATURE_VALUES:
                raise GrammarError(f"{where}: unknown feature {feature!r} in constraint")
            positions = tuple(int(p) for p in m.group(2).split(",") if p.strip())
            if len(positions) < 2:
                raise GrammarError(f"{where}: agreement constraint needs at least two positions")
            if len(set(positions)) != len(positions):
                raise GrammarError(f"{where}: constraint positions must be distinct")
            for p in positions:
                if p >= len(rhs):
                    raise GrammarError(f"{where}: constraint position {p} out of range for {len(rhs)}-symbol rule")
            constraints.append(Constraint(kind=AGREE, feature=feature, arg_positions=positions))
            continue
        m = _HEAD_RE.match(clause)
        if m:
            head_index = int(m.group(1))
            if head_index >= len(rhs):
                raise GrammarError(f"{where}: head index {head_index} out of range for {len(rhs)}-symbol rule")
            continue
        raise GrammarError(f"{where}: unrecognised clause {clause!r}")
    return GrammarRule(lhs=lhs, rhs=rhs, constraints=tuple(constraints), head_index=head_index, rule_index=rule_index)


def load_grammar(path: str | Path) -> Grammar:
    """Load a grammar file.

    Line format: ``LHS -> RHS... [: agree(feature, i, j, ...)] [: head k]``
    plus ``%terminals POS...`` declarations; '#' starts a comment.  Rules
    keep their file order as ``rule_index``.
    """
    path = Path(path)
    rules: list[GrammarRule] = []
    rule_lines: list[int] = []
    terminals: set[str] = set()
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("%terminals"):
            terminals.update(line.split()[1:])
            continue
        rules.append(_parse_rule(line, f"{path}:{lineno}", rule_index=len(rules)))
        rule_lines.append(lineno)
    nonterminals = {rule.lhs for rule in rules}
    for rule, lineno in zip(rules, rule_lines):
        for symbol in rule.rhs:
            if symbol not in terminals and symbol not in nonterminals:
                raise GrammarError(f"{path}:{lineno}: undefined symbol {symbol!r} in rule {rule}")
    return build_grammar(rules, terminals, origin=str(path))


def build_grammar(rules: list[GrammarRule], terminals: set[str], origin: str = "<grammar>") -> Grammar:
    """Validate rules and terminals into a Grammar."""
    nonterminals = {rule.lhs for rule in rules}
    overlap = nonterminals & terminals
    if overlap:
        raise GrammarError(f"{origin}: symbols declared terminal but used as a rule LHS: {sorted(overlap)}")
    if START_SYMBOL not in nonterminals:
        raise GrammarError(f"{origin}: no rule for start symbol {START_SYMBOL}")
    for rule in rules:
        for symbol in rule.rhs:
            if symbol not in terminals and symbol not in nonterminals:
                raise GrammarError(f"{origin}: rule {rule.rule_index} ({rule}): undefined symbol {symbol!r}")
    return Grammar(
        rules=tuple(rules),
        start_symbol=START_SYMBOL,
        terminals=frozenset(terminals),
        nonterminals=frozenset(nonterminals),
    )
