"""Projection of ADMGs, summary graphs and latent-variable DAGs onto MAGs."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .graph import EdgeMark, GraphError, MixedGraph, VertexLike, guard

INDUCING_LIMIT = 12


@dataclass(frozen=True)
class ProjectionResult:
    mag: MixedGraph
    added_edges: tuple = ()
    # (a, mark, b) label triple -> "tail" | "head2" | "undirected"
    provenance: dict = field(default_factory=dict)

    def provenance_lines(self) -> list[str]:
        return [f"{a} {m} {b}\t{why}" for (a, m, b), why in sorted(self.provenance.items())]


def algorithm2(G: MixedGraph) -> ProjectionResult:
    """Markov-equivalent MAG of an ADMG or summary graph in ``O(n^2 e)``.

    ``w -> v`` is added for every ``w`` in the tail of ``{v}``, and ``v <-> w``
    for every head ``{v, w}``. Undirected edges are copied unchanged.
    """
    if not G.is_summary():
        raise GraphError("algorithm2 needs an ADMG or summary graph")
    an = G.ancestor_sets
    U = G.undirected_vertices
    D = [v for v in G.vertices if v not in U]
    edges = []
    why = {}

    for v in D:
        dis = G.district(v, within=an[v])
        for w in sorted((dis | G.parents(dis)) - {v}):
            edges.append((w, v, EdgeMark.DIRECTED))
            why[(w, v, EdgeMark.DIRECTED)] = "tail"

    district_of = {}
    for i, d in enumerate(G.districts()):
        for v in d:
            district_of[v] = i
    for v, w in combinations(D, 2):
        if district_of[v] != district_of[w] or v in an[w] or w in an[v]:
            continue
        if w in G.district(v, within=an[v] | an[w]):
            edges.append((v, w, EdgeMark.BIDIRECTED))
            why[(v, w, EdgeMark.BIDIRECTED)] = "head2"

    for e in G.edges:
        if e.mark is EdgeMark.UNDIRECTED:
            edges.append(tuple(e))
            why[tuple(e)] = "undirected"

    mag = MixedGraph(G.labels, edges, kind="mag")
    return _result(G, mag, why)


def _result(G: MixedGraph, mag: MixedGraph, why: dict) -> ProjectionResult:
    before = G.labelled_edges()
    prov = {mag.label_edge(u, v, mark): reason for (u, v, mark), reason in why.items()}
    added = tuple(sorted(t for t in prov if t not in before))
    return ProjectionResult(mag, added, prov)


def inducing_path_exists(G: MixedGraph, a: int, b: int, latent: VertexLike = ()) -> bool:
    """Is there a path between ``a`` and ``b`` whose colliders all lie in
    ``an({a, b})`` and whose noncolliders all lie in ``latent``?"""
    guard(G, INDUCING_LIMIT, "inducing path search")
    L = G._as_set(latent)
    if a == b:
        raise GraphError("inducing paths need distinct endpoints")
    if a in L or b in L:
        raise GraphError("endpoints of an inducing path must be observed")
    an_ab = G.ancestor_sets[a] | G.ancestor_sets[b]
    on_path = {a}

    def extend(v: int, head_in: bool) -> bool:
        if v == b:
            return True
        for inc in G.incident(v):
            u = inc.other
            if u in on_path:
                continue
            if v != a:
                if head_in and inc.head_here:
                    if v not in an_ab:
                        continue
                elif v not in L:
                    continue
            on_path.add(u)
            found = extend(u, inc.head_there)
            on_path.discard(u)
            if found:
                return True
        return False

    return extend(a, False)


def project_latent(G: MixedGraph, latent: VertexLike) -> MixedGraph:
    """MAG over the observed vertices of a graph with latent vertices.

    Observed pairs joined by an inducing path become adjacent. The edge is
    ``a -> b`` when ``a`` is anterior to ``b`` only, undirected when each is
    anterior to the other, and bidirected otherwise.
    """
    L = G._as_set(latent)
    observed = [v for v in G.vertices if v not in L]
    if not observed:
        raise GraphError("the observed margin is empty")
    ant = [G.anteriors(v) for v in G.vertices]
    pos = {v: i for i, v in enumerate(observed)}
    edges = []
    for a, b in combinations(observed, 2):
        if not inducing_path_exists(G, a, b, L):
            continue
        a_to_b, b_to_a = a in ant[b], b in ant[a]
        if a_to_b and b_to_a:
            edges.append((pos[a], pos[b], EdgeMark.UNDIRECTED))
        elif a_to_b:
            edges.append((pos[a], pos[b], EdgeMark.DIRECTED))
        elif b_to_a:
            edges.append((pos[b], pos[a], EdgeMark.DIRECTED))
        else:
            edges.append((pos[a], pos[b], EdgeMark.BIDIRECTED))
    return MixedGraph([G.labels[v] for v in observed], edges, kind="mag")
