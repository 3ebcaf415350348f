"""Linear-order preference profiles and majority dominance.

A profile holds the alternatives plus a list of voters, each a total order
(best first) over exactly those alternatives.  The majority graph has an
edge u > v iff strictly more voters rank u above v.  Profiles with zero
voters are valid (an edgeless majority graph); the alternative set must be
nonempty for a majority graph to be meaningful.

The realization direction uses the classic two-voters-per-edge scheme: for
each edge (u, v), one voter ranks u > v > rest-in-canonical-order and a
second voter ranks reversed-rest > u > v.  The pair agrees on u > v and
cancels on every other pair, so the resulting majority graph is exactly the
input graph.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ValidationError
from ..graph import Alternative, DominanceGraph, as_alternative, new_graph


@dataclass(frozen=True)
class PreferenceProfile:
    alternatives: tuple  # tuple[Alternative, ...]
    rankings: tuple      # tuple[tuple[Alternative, ...], ...], best first


def new_profile(alternatives, rankings) -> PreferenceProfile:
    alts = tuple(as_alternative(a) for a in alternatives)
    if len(set(alts)) != len(alts):
        raise ValidationError("duplicate alternative in profile")
    universe = set(alts)
    validated = []
    for pos, ranking in enumerate(rankings, start=1):
        order = tuple(as_alternative(a) for a in ranking)
        if len(order) != len(universe) or set(order) != universe:
            raise ValidationError(
                f"ranking {pos} is not a permutation of the alternatives"
            )
        validated.append(order)
    return PreferenceProfile(alts, tuple(validated))


def mcgarvey_profile(graph: DominanceGraph) -> PreferenceProfile:
    """A profile whose majority graph is exactly the given graph
    (two voters per edge)."""
    alternatives = graph.alternatives
    rankings = []
    indexed_edges = sorted(
        (graph.index_of(u), graph.index_of(v)) for u, v in graph.edges
    )
    for ui, vi in indexed_edges:
        u, v = alternatives[ui], alternatives[vi]
        rest = [a for a in alternatives if a != u and a != v]
        rankings.append((u, v, *rest))
        rankings.append((*reversed(rest), u, v))
    return PreferenceProfile(alternatives, tuple(rankings))


def majority_graph(profile: PreferenceProfile) -> DominanceGraph:
    """The strict pairwise-majority dominance graph of a profile."""
    if not profile.alternatives:
        raise ValidationError("profile has no alternatives")
    alternatives = profile.alternatives
    n = len(alternatives)
    index = {a: i for i, a in enumerate(alternatives)}
    margins = [[0] * n for _ in range(n)]
    for ranking in profile.rankings:
        seen: list[int] = []
        for a in ranking:
            ai = index[a]
            for above in seen:
                margins[above][ai] += 1
                margins[ai][above] -= 1
            seen.append(ai)
    edges = [
        (alternatives[i], alternatives[j])
        for i in range(n)
        for j in range(n)
        if margins[i][j] > 0
    ]
    return new_graph(alternatives, edges)


def profile_to_dict(profile: PreferenceProfile) -> dict:
    return {
        "alternatives": [a.id for a in profile.alternatives],
        "rankings": [[a.id for a in ranking] for ranking in profile.rankings],
    }


def profile_from_dict(data: dict) -> PreferenceProfile:
    try:
        return new_profile(data["alternatives"], data["rankings"])
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed profile object: {exc}") from None
