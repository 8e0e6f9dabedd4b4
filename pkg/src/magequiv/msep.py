"""m-separation: a reachability test, a path-enumeration oracle, and signatures."""

from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import NamedTuple

from .graph import GraphError, MixedGraph, VertexLike, guard, label_key

ORACLE_LIMIT = 12


class SepQuery(NamedTuple):
    """The statement ``a ⊥ b | cond``."""

    a: int
    b: int
    cond: frozenset

    def render(self, G: MixedGraph) -> str:
        a, b = sorted((G.labels[self.a], G.labels[self.b]), key=label_key)
        return f"{a} {b} | {','.join(G.names(self.cond))}"


def _query_sets(G: MixedGraph, a: VertexLike, b: VertexLike, cond: VertexLike):
    A, B, C = G._as_set(a), G._as_set(b), G._as_set(cond)
    if not A or not B:
        raise GraphError("m-separation needs nonempty endpoint sets")
    if A & B or A & C or B & C:
        raise GraphError("endpoint sets and conditioning set must be disjoint")
    return A, B, C


def m_separated(G: MixedGraph, a: VertexLike, b: VertexLike, cond: VertexLike = ()) -> bool:
    """Is ``a ⊥_m b | cond`` in ``G``?

    Breadth-first search over (vertex, arrived-with-arrowhead) states, restricted
    to ``an(a ∪ b ∪ cond)``. A vertex is passed as a collider iff it is in
    ``an(cond)``, and as a noncollider iff it is not in ``cond``.
    """
    A, B, C = _query_sets(G, a, b, cond)
    an = G.ancestor_sets
    an_c = frozenset().union(*(an[c] for c in C))
    scope = an_c.union(*(an[x] for x in A | B))

    seen = set()
    queue = deque()
    for x in A:
        for inc in G.incident(x):
            if inc.other in scope:
                state = (inc.other, inc.head_there)
                if state not in seen:
                    seen.add(state)
                    queue.append(state)
    while queue:
        v, head_in = queue.popleft()
        if v in B:
            return False
        if v in A:
            continue
        for inc in G.incident(v):
            if inc.other not in scope:
                continue
            if head_in and inc.head_here:
                if v not in an_c:
                    continue
            elif v in C:
                continue
            state = (inc.other, inc.head_there)
            if state not in seen:
                seen.add(state)
                queue.append(state)
    return True


def m_connected_oracle(G: MixedGraph, a: int, b: int, cond: VertexLike = ()) -> bool:
    """Exhaustive search for an m-connecting path between ``a`` and ``b``.

    Paths are sequences of distinct vertices; parallel edges between the same
    pair count as different paths. Exponential, so limited to small graphs.
    """
    guard(G, ORACLE_LIMIT, "path enumeration")
    _, _, C = _query_sets(G, a, b, cond)
    an_c = frozenset().union(*(G.ancestors(c) for c in C))
    on_path = {a}

    def extend(v: int, head_in: bool) -> bool:
        # v is the current end of the path; head_in is the mark at v on the last edge
        if v == b:
            return True
        for inc in G.incident(v):
            u = inc.other
            if u in on_path:
                continue
            if v != a:
                collider = head_in and inc.head_here
                if collider and v not in an_c:
                    continue
                if not collider and v in C:
                    continue
            on_path.add(u)
            found = extend(u, inc.head_there)
            on_path.discard(u)
            if found:
                return True
        return False

    return extend(a, False)


class SepSignature(NamedTuple):
    """Every true statement ``a ⊥ b | C`` of a graph, with ``a < b``."""

    n: int
    entries: tuple[SepQuery, ...]

    def labelled(self, G: MixedGraph) -> frozenset[tuple[frozenset, frozenset]]:
        """Label-based form, comparable across graphs with different indexing."""
        return frozenset(
            (frozenset((G.labels[q.a], G.labels[q.b])), frozenset(G.labels[c] for c in q.cond))
            for q in self.entries
        )

    def lines(self, G: MixedGraph) -> list[str]:
        def key(q):
            a, b = sorted((G.labels[q.a], G.labels[q.b]), key=label_key)
            return (label_key(a), label_key(b), len(q.cond), [label_key(x) for x in G.names(q.cond)])

        return [q.render(G) for q in sorted(self.entries, key=key)]


def sep_signature(G: MixedGraph) -> SepSignature:
    guard(G, ORACLE_LIMIT, "separation signature")
    out = []
    for a, b in combinations(G.vertices, 2):
        rest = [v for v in G.vertices if v != a and v != b]
        if G.adjacent(a, b):
            continue
        for k in range(len(rest) + 1):
            for C in combinations(rest, k):
                if m_separated(G, a, b, C):
                    out.append(SepQuery(a, b, frozenset(C)))
    return SepSignature(G.n, tuple(out))


def _head_at(G: MixedGraph, at: int, other: int) -> bool:
    """Some edge between ``at`` and ``other`` has an arrowhead at ``at``."""
    return at in G.ch(other) or at in G.sib(other)


def find_discriminating_paths(G: MixedGraph) -> list[tuple[tuple[int, ...], int]]:
    """All discriminating paths ``<x, q1..qm, b, y>`` (m >= 1), each with its ``b``.

    Requirements: ``x`` and ``y`` nonadjacent; ``x *-> q1``; ``q_i <-> q_i+1``;
    every ``q_i -> y``; ``q_m <-* b``; ``b *-> y``. Meant for MAGs.
    """
    guard(G, ORACLE_LIMIT, "discriminating path search")
    found = set()

    def grow(y: int, chain: list[int]) -> None:
        # chain = [b, q_m, ..., q_front], built from b towards x
        front = chain[-1]
        for x in G.adjacencies(front):
            if x == y or x in chain or not _head_at(G, front, x):
                continue
            if not G.adjacent(x, y):
                found.add(((x, *reversed(chain[1:]), chain[0], y), chain[0]))
            elif x in G.pa(y) and x in G.sib(front):
                chain.append(x)
                grow(y, chain)
                chain.pop()

    for y in G.vertices:
        for b in G.adjacencies(y):
            if not _head_at(G, y, b):
                continue
            for qm in G.pa(y):
                if qm != b and G.adjacent(qm, b) and _head_at(G, qm, b):
                    grow(y, [b, qm])
    return sorted(found)


def is_collider_on(G: MixedGraph, path: tuple[int, ...], i: int) -> bool:
    """Is ``path[i]`` a collider on ``path``? (single-edge pairs)"""
    v = path[i]
    return _head_at(G, v, path[i - 1]) and _head_at(G, v, path[i + 1])
