"""Heads, tails and parametrizing sets.

The brute-force routines follow the definitions directly and are meant for
small graphs. :func:`algorithm1` is the polynomial-time extraction of the
reduced set ``S~3`` for a MAG.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple

from .graph import EdgeMark, GraphError, MixedGraph, VertexLike, guard, is_mag, label_key
from .opcount import OpCounter

HEAD_LIMIT = 20


class HeadTail(NamedTuple):
    head: frozenset
    tail: frozenset


@dataclass(frozen=True)
class ParamSet:
    """A canonical collection of vertex sets of one graph.

    ``kind`` is ``full``, ``s3`` or ``s3tilde``. Equality is by labels, so
    parametrizing sets of differently indexed graphs compare correctly.
    """

    sets: frozenset
    labels: tuple
    kind: str = "full"

    def labelled(self) -> frozenset[frozenset[str]]:
        return frozenset(frozenset(self.labels[v] for v in S) for S in self.sets)

    def __eq__(self, other):
        if not isinstance(other, ParamSet):
            return NotImplemented
        return self.labelled() == other.labelled()

    def __hash__(self):
        return hash(self.labelled())

    def __len__(self):
        return len(self.sets)

    def __contains__(self, W) -> bool:
        return frozenset(W) in self.sets

    def __iter__(self) -> Iterator[frozenset]:
        return iter(sorted(self.sets, key=lambda S: lex_key([self.labels[v] for v in S])))

    def lines(self) -> list[str]:
        return [format_labelled(S) for S in sorted(self.labelled(), key=lex_key)]


def labelled_key(S: Iterable[str]):
    """Smaller sets first, then lexicographic."""
    return (len(S), sorted(label_key(x) for x in S))


def lex_key(S: Iterable[str]):
    return sorted(label_key(x) for x in S)


def format_labelled(S: Iterable[str]) -> str:
    return "{" + ",".join(sorted(S, key=label_key)) + "}"


def _check_head_domain(G: MixedGraph, H: frozenset) -> None:
    if not H:
        raise GraphError("a head must be nonempty")
    if H & G.undirected_vertices:
        raise GraphError("heads are only defined on vertices without undirected edges")


def _head_district(G: MixedGraph, H: frozenset) -> frozenset:
    A = G.ancestors(H)
    return G.district(min(H), within=A)


def is_head(G: MixedGraph, H: VertexLike) -> bool:
    """``H`` is barren and lies in a single district of ``G[an(H)]``."""
    H = G._as_set(H)
    _check_head_domain(G, H)
    if G.barren(H) != H:
        return False
    return H <= _head_district(G, H)


def tail(G: MixedGraph, H: VertexLike) -> frozenset:
    """``(D \\ H) ∪ pa(D)`` where ``D`` is the district of ``H`` in ``G[an(H)]``."""
    H = G._as_set(H)
    if not is_head(G, H):
        raise GraphError(f"{G.fmt(H)} is not a head")
    D = _head_district(G, H)
    return (D - H) | G.parents(D)


def _antichains(G: MixedGraph, pool: list[int]) -> Iterator[frozenset]:
    """Nonempty subsets of ``pool`` with no directed path between members."""
    an, de = G.ancestor_sets, [G.descendants(v) for v in G.vertices]

    def rec(start: int, current: list[int], blocked: frozenset):
        for i in range(start, len(pool)):
            v = pool[i]
            if v in blocked:
                continue
            current.append(v)
            yield frozenset(current)
            yield from rec(i + 1, current, blocked | an[v] | de[v])
            current.pop()

    yield from rec(0, [], frozenset())


def enumerate_heads(G: MixedGraph) -> list[HeadTail]:
    """Every head of ``G`` with its tail, in canonical order."""
    guard(G, HEAD_LIMIT, "head enumeration")
    pool = [v for v in G.vertices if v not in G.undirected_vertices]
    out = []
    for H in _antichains(G, pool):
        D = _head_district(G, H)
        if H <= D:
            out.append(HeadTail(H, (D - H) | G.parents(D)))
    out.sort(key=lambda ht: (len(ht.head), sorted(label_key(G.labels[v]) for v in ht.head)))
    return out


def undirected_cliques(G: MixedGraph) -> list[frozenset]:
    """All nonempty complete subsets of the undirected part."""
    U = sorted(G.undirected_vertices)
    out = []

    def rec(start: int, current: frozenset):
        for i in range(start, len(U)):
            v = U[i]
            if current <= G.nbr(v):
                nxt = current | {v}
                out.append(nxt)
                rec(i + 1, nxt)

    rec(0, frozenset())
    return out


def param_set_full(G: MixedGraph) -> ParamSet:
    """``{H ∪ A : H a head, A ⊆ tail(H)}`` together with the undirected cliques."""
    sets = set(undirected_cliques(G))
    for head, tl in enumerate_heads(G):
        tl = sorted(tl)
        for k in range(len(tl) + 1):
            for A in combinations(tl, k):
                sets.add(head | frozenset(A))
    return ParamSet(frozenset(sets), G.labels, "full")


def in_param_set(G: MixedGraph, W: VertexLike) -> bool:
    """Membership in ``S(G)`` without enumerating it."""
    W = G._as_set(W)
    U = G.undirected_vertices
    if W <= U and all(W - {w} <= G.nbr(w) for w in W):
        return True
    # the head must be barren(W); see the characterisation of missing sets
    H = G.barren(W) - U
    if not H or not is_head(G, H):
        return False
    return W <= H | tail(G, H)


def s3_brute(G: MixedGraph) -> ParamSet:
    full = param_set_full(G)
    return ParamSet(frozenset(S for S in full.sets if 2 <= len(S) <= 3), G.labels, "s3")


def _msep_adjacency(G: MixedGraph):
    from .projection import inducing_path_exists

    cache = {}

    def adjacent(u: int, v: int) -> bool:
        if G.adjacent(u, v):
            return True
        key = (min(u, v), max(u, v))
        if key not in cache:
            cache[key] = inducing_path_exists(G, u, v)
        return cache[key]

    return adjacent


def s3_tilde_brute(G: MixedGraph) -> ParamSet:
    """Members of ``S3`` whose vertices carry exactly one or two adjacencies.

    Adjacency here is the m-separation sense (no separating set exists), which
    is edge adjacency when ``G`` is maximal.
    """
    adjacent = _msep_adjacency(G)
    keep = set()
    for S in s3_brute(G).sets:
        k = sum(adjacent(u, v) for u, v in combinations(sorted(S), 2))
        if 1 <= k <= 2:
            keep.add(S)
    return ParamSet(frozenset(keep), G.labels, "s3tilde")


# -- Algorithm 1 --------------------------------------------------------------


def _district_in(G: MixedGraph, v: int, within: frozenset, counter: OpCounter) -> set:
    seen = {v}
    queue = deque((v,))
    while queue:
        x = queue.popleft()
        for s in G.sib(x):
            counter.district_visits += 1
            if s in within and s not in seen:
                seen.add(s)
                queue.append(s)
    return seen


def _global_district(G: MixedGraph, v: int, counter: OpCounter) -> set:
    seen = {v}
    queue = deque((v,))
    while queue:
        x = queue.popleft()
        for s in G.sib(x):
            counter.district_visits += 1
            if s not in seen:
                seen.add(s)
                queue.append(s)
    return seen


def _descendants_of(G: MixedGraph, W: Iterable[int], counter: OpCounter) -> set:
    seen = set(W)
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        for c in G.ch(x):
            counter.descendant_visits += 1
            if c not in seen:
                seen.add(c)
                queue.append(c)
    return seen


def algorithm1_sources(G: MixedGraph, counter: OpCounter | None = None,
                       check_adjacency: bool = True) -> dict[frozenset, set[str]]:
    """Run the extraction and report which step emitted each set.

    Step names: ``parent-pair`` (pairs from directed edges), ``parent-triple``
    (two nonadjacent parents and their child), ``sibling-pair`` (bidirected
    edges), ``tail-triple`` (a bidirected pair with a tail member),
    ``head3`` (size-3 heads), ``undirected-pair``. With
    ``check_adjacency=False`` the "not adjacent" filters are skipped.
    """
    counter = counter if counter is not None else OpCounter()
    out: dict[frozenset, set[str]] = {}

    def emit(S, source):
        out.setdefault(frozenset(S), set()).add(source)

    adj = G.adjacent
    an: list = [None] * G.n
    for v in G.topological_order:
        a = {v}
        for p in G.pa(v):
            counter.ancestor_steps += 1
            a |= an[p]
        an[v] = frozenset(a)
        parents = sorted(G.pa(v))
        for w in parents:
            counter.pair_inserts += 1
            emit((v, w), "parent-pair")
        for w, z in combinations(parents, 2):
            counter.parent_pairs += 1
            if not check_adjacency or not adj(w, z):
                emit((v, w, z), "parent-triple")

    pos = {v: i for i, v in enumerate(G.topological_order)}
    bidirected = sorted(
        (tuple(sorted((e.u, e.v), key=pos.__getitem__)) for e in G.edges
         if e.mark is EdgeMark.BIDIRECTED),
        key=lambda p: (pos[p[0]], pos[p[1]]),
    )
    for v, w in bidirected:
        counter.pair_inserts += 1
        emit((v, w), "sibling-pair")
        A = an[v] | an[w]
        D = _district_in(G, v, A, counter)
        tl = set(D)
        for d in D:
            tl |= G.pa(d)
        tl -= {v, w}
        for z in sorted(tl):
            counter.tail_tests += 1
            if not check_adjacency or not (adj(z, v) and adj(z, w)):
                emit((v, w, z), "tail-triple")

        # third members of size-3 heads: siblings of an({v,w}) in v's district,
        # neither ancestors nor descendants of {v,w}
        dis_v = _global_district(G, v, counter)
        de_vw = _descendants_of(G, (v, w), counter)
        cands = set()
        for x in A:
            cands |= G.sib(x)
        cands = (cands & dis_v) - A - de_vw
        for z in sorted(cands):
            counter.triple_candidates += 1
            if check_adjacency and adj(z, v) and adj(z, w):
                continue
            if z in _district_in(G, v, A | an[z], counter):
                counter.heads3 += 1
                emit((v, w, z), "head3")

    for e in G.edges:
        if e.mark is EdgeMark.UNDIRECTED:
            counter.pair_inserts += 1
            emit((e.u, e.v), "undirected-pair")
    return out


def algorithm1(G: MixedGraph, counter: OpCounter | None = None, check: bool = True) -> ParamSet:
    """``S~3(G)`` of a MAG in ``O(n e^2)`` time.

    Pass an :class:`OpCounter` to record elementary steps. ``check=False``
    skips MAG validation (which itself costs a projection).
    """
    if check and not is_mag(G):
        raise GraphError("algorithm1 requires a MAG")
    sources = algorithm1_sources(G, counter)
    return ParamSet(frozenset(sources), G.labels, "s3tilde")
