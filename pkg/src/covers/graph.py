"""Dominance graphs over named alternatives.

A dominance graph is an irreflexive, asymmetric binary relation ("dominates",
written u > v) over a finite set of named alternatives.  Graphs are immutable.
Alternatives are kept in lexicographic order by name; that order is canonical
and fixes the serialization format and every enumeration order downstream.

The text format (conventionally ``.dg``) is line-based, UTF-8 with LF:

    dg <n>          header: number of alternatives
    <name>          n lines, one alternative name each
    <u> <v>         any number of edge lines, meaning u dominates v

Blank lines and lines starting with ``#`` are ignored.  Names match
``[A-Za-z0-9_]+``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError, ResourceError, ValidationError

# Subset search uses 64-bit member masks, so this is a hard engine limit.
MAX_ALTERNATIVES = 64

_NAME_RE = re.compile(r"[A-Za-z0-9_]+\Z")


@dataclass(frozen=True, order=True)
class Alternative:
    """A named alternative; the name is its identity."""

    id: str

    def __post_init__(self):
        if not self.id or not _NAME_RE.match(self.id):
            raise ValidationError(
                f"invalid alternative name {self.id!r}: must match [A-Za-z0-9_]+"
            )

    def __str__(self) -> str:
        return self.id


Edge = tuple[Alternative, Alternative]


def as_alternative(x: "Alternative | str") -> Alternative:
    return x if isinstance(x, Alternative) else Alternative(x)


@dataclass(frozen=True)
class DominanceGraph:
    """Immutable dominance graph; construct via :func:`new_graph` or :func:`parse_graph`.

    ``alternatives`` is always sorted lexicographically by name, and
    ``edges`` holds pairs ``(u, v)`` meaning u dominates v.
    """

    alternatives: tuple[Alternative, ...]
    edges: frozenset[Edge]
    _index: dict = field(init=False, repr=False, compare=False, default_factory=dict)
    _dom_in: tuple = field(init=False, repr=False, compare=False, default=())
    _dom_out: tuple = field(init=False, repr=False, compare=False, default=())

    def __post_init__(self):
        index = {a.id: i for i, a in enumerate(self.alternatives)}
        dom_in = [0] * len(self.alternatives)   # mask of dominators of i
        dom_out = [0] * len(self.alternatives)  # mask of alternatives i dominates
        for u, v in self.edges:
            ui, vi = index[u.id], index[v.id]
            dom_out[ui] |= 1 << vi
            dom_in[vi] |= 1 << ui
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_dom_in", tuple(dom_in))
        object.__setattr__(self, "_dom_out", tuple(dom_out))

    # -- basic accessors ---------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.alternatives)

    def __contains__(self, x: "Alternative | str") -> bool:
        key = x.id if isinstance(x, Alternative) else x
        return key in self._index

    def index_of(self, x: "Alternative | str") -> int:
        key = x.id if isinstance(x, Alternative) else x
        try:
            return self._index[key]
        except KeyError:
            raise ValidationError(f"unknown alternative: {key}") from None

    def dominates(self, u: "Alternative | str", v: "Alternative | str") -> bool:
        return bool(self._dom_out[self.index_of(u)] >> self.index_of(v) & 1)

    # -- bitmask helpers (alternatives <-> bits of an int) -----------------

    def dominator_mask(self, i: int) -> int:
        return self._dom_in[i]

    def dominated_mask(self, i: int) -> int:
        return self._dom_out[i]

    def member_mask(self, members) -> int:
        mask = 0
        for x in members:
            mask |= 1 << self.index_of(x)
        return mask

    def mask_members(self, mask: int) -> frozenset[Alternative]:
        return frozenset(
            a for i, a in enumerate(self.alternatives) if mask >> i & 1
        )


def new_graph(alternatives, edges=()) -> DominanceGraph:
    """Build a validated graph from names (or Alternatives) and edge pairs.

    Raises :class:`ValidationError` naming the offending element for
    duplicate names, unknown edge endpoints, self-loops, and symmetric
    dominance pairs; raises :class:`ResourceError` beyond the engine limit
    of 64 alternatives.
    """
    alts = [as_alternative(a) for a in alternatives]
    seen: set[str] = set()
    for a in alts:
        if a.id in seen:
            raise ValidationError(f"duplicate alternative name: {a.id}")
        seen.add(a.id)
    if len(alts) > MAX_ALTERNATIVES:
        raise ResourceError(
            f"graph has {len(alts)} alternatives, exceeding the engine limit "
            f"of {MAX_ALTERNATIVES}"
        )
    alts.sort()

    edge_set: set[Edge] = set()
    for u, v in edges:
        u, v = as_alternative(u), as_alternative(v)
        for end in (u, v):
            if end.id not in seen:
                raise ValidationError(
                    f"edge endpoint not among alternatives: {end.id}"
                )
        if u == v:
            raise ValidationError(f"self-loop on alternative: {u.id}")
        edge_set.add((u, v))
    for u, v in edge_set:
        if (v, u) in edge_set:
            pair = sorted([u.id, v.id])
            raise ValidationError(
                f"symmetric dominance pair between {pair[0]} and {pair[1]}"
            )
    return DominanceGraph(tuple(alts), frozenset(edge_set))


def _resolve_within(graph: DominanceGraph, within) -> int:
    if within is None:
        return (1 << graph.size) - 1
    return graph.member_mask(within)


def dominators(graph: DominanceGraph, x, within=None) -> frozenset[Alternative]:
    """The alternatives in ``within`` (default: all) that dominate x."""
    mask = graph.dominator_mask(graph.index_of(x)) & _resolve_within(graph, within)
    return graph.mask_members(mask)


def dominated_by(graph: DominanceGraph, x, within=None) -> frozenset[Alternative]:
    """The alternatives in ``within`` (default: all) that x dominates."""
    mask = graph.dominated_mask(graph.index_of(x)) & _resolve_within(graph, within)
    return graph.mask_members(mask)


def induced_subgraph(graph: DominanceGraph, members) -> DominanceGraph:
    """The restriction of the graph to ``members`` (edges between them only)."""
    keep = {as_alternative(m) for m in members}
    for m in keep:
        if m.id not in graph._index:
            raise ValidationError(f"unknown alternative: {m.id}")
    edges = [(u, v) for u, v in graph.edges if u in keep and v in keep]
    return DominanceGraph(tuple(sorted(keep)), frozenset(edges))


def parse_graph(text: str) -> DominanceGraph:
    """Parse the line-based graph format; syntax errors carry line numbers."""
    significant: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        significant.append((lineno, line.split()))

    if not significant:
        raise ParseError(1, "empty input: expected header 'dg <count>'")

    lineno, tokens = significant[0]
    if len(tokens) != 2 or tokens[0] != "dg" or not tokens[1].isdigit():
        raise ParseError(lineno, "expected header 'dg <count>'")
    count = int(tokens[1])

    if len(significant) - 1 < count:
        last = significant[-1][0]
        raise ParseError(
            last,
            f"expected {count} alternative names, found {len(significant) - 1}",
        )

    names: list[str] = []
    for lineno, tokens in significant[1 : 1 + count]:
        if len(tokens) != 1:
            raise ParseError(lineno, "expected a single alternative name")
        if not _NAME_RE.match(tokens[0]):
            raise ParseError(lineno, f"invalid alternative name {tokens[0]!r}")
        names.append(tokens[0])

    known = set(names)
    edges: list[tuple[str, str]] = []
    for lineno, tokens in significant[1 + count :]:
        if len(tokens) != 2:
            raise ParseError(lineno, "expected an edge line '<u> <v>'")
        u, v = tokens
        for end in (u, v):
            if end not in known:
                raise ParseError(lineno, f"unknown alternative {end!r} in edge")
        edges.append((u, v))

    return new_graph(names, edges)


def serialize_graph(graph: DominanceGraph) -> str:
    """Canonical text form: sorted names, edges sorted by endpoint positions."""
    lines = [f"dg {graph.size}"]
    lines.extend(a.id for a in graph.alternatives)
    indexed = sorted(
        (graph.index_of(u), graph.index_of(v)) for u, v in graph.edges
    )
    lines.extend(
        f"{graph.alternatives[ui].id} {graph.alternatives[vi].id}"
        for ui, vi in indexed
    )
    return "\n".join(lines) + "\n"
