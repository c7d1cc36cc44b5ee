"""Chart parser producing a shared parse forest.

An Earley-style predict/scan/complete loop fills a chart with dotted-rule
edges.  Completions that violate a rule's agreement constraints are
discarded, so ill-formed sentences simply end up with no root.  Completed
constituents are packed into nodes keyed by (symbol, span, features);
alternative derivations of one node share all downstream parent work.

Tree enumeration is deterministic: alternatives are ordered by rule index,
then by child split points, and children expand left to right, so the
"first parse" is reproducible for identical input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence, Union

from reqlens.grammar import Grammar, GrammarRule, satisfies_constraints
from reqlens.ingest import Token
from reqlens.lexicon import FeatureMap, Lexicon

NodeKey = tuple[str, int, int, FeatureMap]


class _Node:
    """A completed constituent: one symbol over one span with one feature map."""

    __slots__ = ("symbol", "start", "end", "features", "derivations", "leaf_surface", "_sorted")

    def __init__(self, symbol: str, start: int, end: int, features: FeatureMap, leaf_surface: str | None = None):
        self.symbol = symbol
        self.start = start
        self.end = end
        self.features = features
        self.derivations: list[tuple[GrammarRule, "ChartEdge"]] = []
        self.leaf_surface = leaf_surface
        self._sorted: list[tuple[GrammarRule, tuple["_Node", ...]]] | None = None

    @property
    def key(self) -> NodeKey:
        return (self.symbol, self.start, self.end, self.features)

    def __repr__(self) -> str:
        return f"<{self.symbol} [{self.start},{self.end})>"


class ChartEdge:
    """A dotted-rule edge; complete when the dot reaches the end of the rhs.

    ``child_features`` carries the feature map of every child consumed so
    far; it is part of the edge identity so that agreement can be decided
    per feature combination without unpacking derivations.
    """

    __slots__ = ("rule", "dot", "start", "end", "child_features", "backpointers", "_bp_seen")

    def __init__(self, rule: GrammarRule, dot: int, start: int, end: int, child_features: tuple[FeatureMap, ...]):
        self.rule = rule
        self.dot = dot
        self.start = start
        self.end = end
        self.child_features = child_features
        self.backpointers: list[tuple[Optional["ChartEdge"], _Node]] = []
        self._bp_seen: set[tuple[int, NodeKey]] = set()

    @property
    def is_complete(self) -> bool:
        return self.dot == len(self.rule.rhs)

    @property
    def next_symbol(self) -> str | None:
        return self.rule.rhs[self.dot] if self.dot < len(self.rule.rhs) else None

    def add_backpointer(self, pred: Optional["ChartEdge"], child: _Node) -> None:
        key = (id(pred), child.key)
        if key not in self._bp_seen:
            self._bp_seen.add(key)
            self.backpointers.append((pred, child))

    def __repr__(self) -> str:
        rhs = list(self.rule.rhs)
        rhs.insert(self.dot, "*")
        return f"<{self.rule.lhs} -> {' '.join(rhs)} [{self.start},{self.end})>"


@dataclass(frozen=True)
class ParseTree:
    """A single labelled derivation tree; leaves carry token surfaces."""

    label: str
    children: tuple["ParseTree", ...] = ()
    leaf: str | None = None

    @property
    def is_leaf(self) -> bool:
        return self.leaf is not None

    def leaves(self) -> list["ParseTree"]:
        if self.is_leaf:
            return [self]
        out: list[ParseTree] = []
        for child in self.children:
            out.extend(child.leaves())
        return out


@dataclass
class ParseForest:
    """Shared chart plus the complete start-symbol nodes spanning the input."""

    token_count: int
    chart: tuple[tuple[ChartEdge, ...], ...]
    roots: tuple[_Node, ...] = ()

    @property
    def has_parse(self) -> bool:
        return bool(self.roots)


TokenLike = Union[Token, str]


def _surface(token: TokenLike) -> str:
    return token.surface if isinstance(token, Token) else token


def parse(tokens: Sequence[TokenLike], grammar: Grammar, lexicon: Lexicon) -> ParseForest:
    """Chart-parse one tokenised sentence.

    Every lexicon homograph of a token becomes its own leaf edge; a
    completion that fails a rule constraint never enters the chart.  An
    unparseable sentence yields a forest with no roots (not an error).
    """
    n = len(tokens)
    if n == 0:
        raise ValueError("cannot parse an empty token sequence")

    sets: list[dict[tuple, ChartEdge]] = [{} for _ in range(n + 1)]
    order: list[list[ChartEdge]] = [[] for _ in range(n + 1)]
    predicted: list[set[str]] = [set() for _ in range(n + 1)]
    nodes: dict[NodeKey, _Node] = {}

    # One leaf node per usable homograph per position.
    leaves: list[dict[str, list[_Node]]] = []
    for i, token in enumerate(tokens):
        by_pos: dict[str, list[_Node]] = {}
        for entry in lexicon.lookup(_surface(token)):
            if entry.pos not in grammar.terminals:
                continue
            node = _Node(entry.pos, i, i + 1, entry.features, leaf_surface=_surface(token))
            existing = nodes.get(node.key)
            if existing is None:
                nodes[node.key] = node
                by_pos.setdefault(entry.pos, []).append(node)
        leaves.append(by_pos)

    def add_edge(position: int, rule: GrammarRule, dot: int, start: int, child_features: tuple[FeatureMap, ...],
                 pred: ChartEdge | None, child: _Node | None) -> None:
        key = (rule.rule_index, dot, start, child_features)
        edge = sets[position].get(key)
        if edge is None:
            edge = ChartEdge(rule, dot, start, position, child_features)
            sets[position][key] = edge
            order[position].append(edge)
        if child is not None:
            edge.add_backpointer(pred, child)

    def predict(symbol: str, position: int) -> None:
        if symbol in predicted[position]:
            return
        predicted[position].add(symbol)
        for rule in grammar.rules_for(symbol):
            add_edge(position, rule, 0, position, (), None, None)

    def complete(edge: ChartEdge) -> None:
        child_features = list(edge.child_features)
        if not satisfies_constraints(edge.rule, child_features):
            return
        features = edge.child_features[edge.rule.head_index]
        key: NodeKey = (edge.rule.lhs, edge.start, edge.end, features)
        node = nodes.get(key)
        is_new = node is None
        if node is None:
            node = _Node(edge.rule.lhs, edge.start, edge.end, features)
            nodes[key] = node
        node.derivations.append((edge.rule, edge))
        if is_new:
            for parent in list(order[edge.start]):
                if parent.next_symbol == node.symbol:
                    add_edge(node.end, parent.rule, parent.dot + 1, parent.start,
                             parent.child_features + (node.features,), parent, node)

    predict(grammar.start_symbol, 0)
    for position in range(n + 1):
        queue = order[position]
        index = 0
        while index < len(queue):
            edge = queue[index]
            index += 1
            symbol = edge.next_symbol
            if symbol is None:
                complete(edge)
            elif symbol in grammar.nonterminals:
                # Completion rescans the whole origin set, so prediction is
                # all an incomplete edge needs here (the grammar has no
                # empty rules, hence no same-position completions yet).
                predict(symbol, position)
            elif position < n:
                for leaf in leaves[position].get(symbol, ()):
                    add_edge(position + 1, edge.rule, edge.dot + 1, edge.start,
                             edge.child_features + (leaf.features,), edge, leaf)

    roots = tuple(
        node
        for node in nodes.values()
        if node.symbol == grammar.start_symbol and node.start == 0 and node.end == n and node.derivations
    )
    chart = tuple(tuple(edges) for edges in order)
    return ParseForest(token_count=n, chart=chart, roots=tuple(sorted(roots, key=lambda r: _canon_features(r.features))))


def _canon_features(features: FeatureMap):
    return tuple((name, tuple(sorted(values))) for name, values in features)


def _edge_child_tuples(edge: ChartEdge, memo: dict[int, list[tuple[_Node, ...]]]) -> list[tuple[_Node, ...]]:
    cached = memo.get(id(edge))
    if cached is not None:
        return cached
    if edge.dot == 0:
        result: list[tuple[_Node, ...]] = [()]
    else:
        result = []
        for pred, child in edge.backpointers:
            if pred is None or pred.dot == 0:
                result.append((child,))
            else:
                result.extend(prefix + (child,) for prefix in _edge_child_tuples(pred, memo))
    memo[id(edge)] = result
    return result


def _sorted_derivations(node: _Node, memo: dict) -> list[tuple[GrammarRule, tuple[_Node, ...]]]:
    if node._sorted is None:
        expanded = []
        seen = set()
        for rule, edge in node.derivations:
            for children in _edge_child_tuples(edge, memo):
                key = (rule.rule_index, tuple(c.key for c in children))
                if key in seen:
                    continue
                seen.add(key)
                expanded.append((rule, children))
        expanded.sort(
            key=lambda alt: (
                alt[0].rule_index,
                tuple(c.end for c in alt[1][:-1]),
                tuple(_canon_features(c.features) for c in alt[1]),
            )
        )
        node._sorted = expanded
    return node._sorted


def _node_trees(node: _Node, path: frozenset[NodeKey], memo: dict) -> Iterator[ParseTree]:
    if node.leaf_surface is not None:
        yield ParseTree(label=node.symbol, leaf=node.leaf_surface)
        return
    if node.key in path:
        return  # unary derivation cycle; only acyclic trees are enumerated
    deeper = path | {node.key}
    for rule, children in _sorted_derivations(node, memo):
        for child_trees in _child_combos(children, 0, deeper, memo):
            yield ParseTree(label=node.symbol, children=child_trees)


def _child_combos(children: tuple[_Node, ...], index: int, path: frozenset[NodeKey], memo: dict) -> Iterator[tuple[ParseTree, ...]]:
    if index == len(children):
        yield ()
        return
    for tree in _node_trees(children[index], path, memo):
        for rest in _child_combos(children, index + 1, path, memo):
            yield (tree,) + rest


def enumerate_trees(forest: ParseForest, limit: int = 10) -> list[ParseTree]:
    """Enumerate parse trees in deterministic order, at most ``limit``.

    Derivations are ordered by (rule index, child split points); trees that
    render identically (possible with feature-only lexical variants) are
    reported once.
    """
    if limit < 1:
        raise ValueError("limit must be positive")
    memo: dict = {}
    trees: list[ParseTree] = []
    seen: set[str] = set()
    for root in forest.roots:
        for tree in _node_trees(root, frozenset(), memo):
            rendered = render_tree(tree)
            if rendered in seen:
                continue
            seen.add(rendered)
            trees.append(tree)
            if len(trees) == limit:
                return trees
    return trees


def first_parse(forest: ParseForest) -> ParseTree | None:
    """The first tree of the deterministic enumeration, if any."""
    trees = enumerate_trees(forest, limit=1)
    return trees[0] if trees else None


def render_tree(tree: ParseTree) -> str:
    """Bracket notation: ``(LABEL child ...)`` with leaves ``(POS "word")``."""
    if tree.is_leaf:
        return f'({tree.label} "{tree.leaf}")'
    return f"({tree.label} {' '.join(render_tree(c) for c in tree.children)})"
