"""Mixed graphs with directed, bidirected and undirected edges.

One immutable class, :class:`MixedGraph`, covers DAGs, ADMGs, MAGs and
summary graphs. Vertices are dense integer indices ``0..n-1`` with a label
table; vertex sets are ``frozenset`` objects of indices.
"""

from __future__ import annotations

import enum
import re
from collections import deque
from functools import cached_property
from typing import Iterable, NamedTuple, Union

GRAPH_TYPES = ("dag", "admg", "mag", "summary")

VertexLike = Union[int, Iterable[int]]


class GraphError(ValueError):
    """Raised when a graph violates a structural invariant or cannot be parsed."""


class CycleError(GraphError):
    pass


class GuardError(ValueError):
    """Raised when an exponential routine is called on a graph that is too large."""


class EdgeMark(enum.Enum):
    DIRECTED = "->"
    BIDIRECTED = "<->"
    UNDIRECTED = "-"

    @property
    def order(self) -> int:
        return _MARK_ORDER[self]


_MARK_ORDER = {EdgeMark.DIRECTED: 0, EdgeMark.BIDIRECTED: 1, EdgeMark.UNDIRECTED: 2}


class Edge(NamedTuple):
    """``u -> v`` for directed edges; ``u < v`` for the symmetric kinds."""

    u: int
    v: int
    mark: EdgeMark


class Incidence(NamedTuple):
    """One edge seen from a vertex: the other endpoint and the arrowheads."""

    other: int
    head_here: bool
    head_there: bool


def label_key(label: str):
    """Sort key placing numeric labels in numeric order ahead of the rest."""
    return (0, int(label), "") if label.isdigit() else (1, 0, label)


def guard(G: "MixedGraph", limit: int, what: str) -> None:
    if G.n > limit:
        raise GuardError(f"{what} is exponential; refusing graph with n={G.n} > {limit}")


class MixedGraph:
    """Immutable acyclic mixed graph.

    Parameters
    ----------
    labels:
        Vertex labels; position ``i`` is the label of vertex ``i``.
    edges:
        Iterable of ``(u, v, mark)`` with integer endpoints. Symmetric edges
        are canonicalised to ``u < v``.
    kind:
        One of ``dag``, ``admg``, ``mag``, ``summary``. Stored as metadata and
        used as the file header; the kind-specific invariants are enforced by
        :func:`check_kind` (called from :func:`parse_graph`).
    """

    def __init__(self, labels: Iterable[str], edges: Iterable = (), kind: str = "admg"):
        self.labels = tuple(str(x) for x in labels)
        if kind not in GRAPH_TYPES:
            raise GraphError(f"unknown graph type {kind!r}")
        self.kind = kind
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            raise GraphError("vertex labels must be unique")
        if any(not lab for lab in self.labels):
            raise GraphError("vertex labels must be nonempty")
        n = len(self.labels)

        canon = set()
        for u, v, mark in edges:
            mark = EdgeMark(mark)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge endpoint out of range: {(u, v)}")
            if u == v:
                raise GraphError(f"self-loop at {self.labels[u]}")
            if mark is not EdgeMark.DIRECTED and u > v:
                u, v = v, u
            e = Edge(u, v, mark)
            if e in canon:
                raise GraphError(
                    f"duplicate edge {self.labels[u]} {mark.value} {self.labels[v]}"
                )
            canon.add(e)
        self.edges = frozenset(canon)

        pa, ch, sib, nbr = ([set() for _ in range(n)] for _ in range(4))
        inc = [[] for _ in range(n)]
        for u, v, mark in sorted(self.edges, key=lambda e: (e.mark.order, e.u, e.v)):
            if mark is EdgeMark.DIRECTED:
                pa[v].add(u)
                ch[u].add(v)
                inc[u].append(Incidence(v, False, True))
                inc[v].append(Incidence(u, True, False))
            elif mark is EdgeMark.BIDIRECTED:
                sib[u].add(v)
                sib[v].add(u)
                inc[u].append(Incidence(v, True, True))
                inc[v].append(Incidence(u, True, True))
            else:
                nbr[u].add(v)
                nbr[v].add(u)
                inc[u].append(Incidence(v, False, False))
                inc[v].append(Incidence(u, False, False))
        self._pa = tuple(frozenset(s) for s in pa)
        self._ch = tuple(frozenset(s) for s in ch)
        self._sib = tuple(frozenset(s) for s in sib)
        self._nbr = tuple(frozenset(s) for s in nbr)
        self._inc = tuple(tuple(x) for x in inc)
        self.topological_order = self._kahn()

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_labelled(cls, edges: Iterable[tuple[str, str, str]], vertices: Iterable[str] = (),
                      kind: str = "admg") -> "MixedGraph":
        """Build from ``(a, mark, b)`` label triples, e.g. ``("1", "->", "2")``.

        Vertex indices follow first mention, ``vertices`` first.
        """
        labels: dict[str, int] = {}
        for lab in vertices:
            labels.setdefault(str(lab), len(labels))
        idx_edges = []
        for a, mark, b in edges:
            a, b = str(a), str(b)
            labels.setdefault(a, len(labels))
            labels.setdefault(b, len(labels))
            idx_edges.append((labels[a], labels[b], EdgeMark(mark)))
        return cls(list(labels), idx_edges, kind=kind)

    def _kahn(self) -> tuple[int, ...]:
        import heapq

        indeg = [len(p) for p in self._pa]
        heap = [v for v in range(self.n) if indeg[v] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            v = heapq.heappop(heap)
            order.append(v)
            for c in self._ch[v]:
                indeg[c] -= 1
                if indeg[c] == 0:
                    heapq.heappush(heap, c)
        if len(order) != self.n:
            stuck = sorted(self.labels[v] for v in range(self.n) if indeg[v] > 0)
            raise CycleError(f"directed cycle among {', '.join(stuck)}")
        return tuple(order)

    # -- basic accessors ------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def index(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise GraphError(f"unknown vertex {label!r}") from None

    def vset(self, *labels) -> frozenset[int]:
        """Indices of the given labels, e.g. ``G.vset(1, 2)``."""
        return frozenset(self.index(x) for x in labels)

    def names(self, W: Iterable[int]) -> list[str]:
        """Labels of ``W`` in canonical (natural) order."""
        return sorted((self.labels[w] for w in W), key=label_key)

    def fmt(self, W: Iterable[int]) -> str:
        return "{" + ",".join(self.names(W)) + "}"

    def _as_set(self, W: VertexLike) -> frozenset[int]:
        if isinstance(W, int):
            W = (W,)
        W = frozenset(W)
        for w in W:
            if not (isinstance(w, int) and 0 <= w < self.n):
                raise GraphError(f"vertex {w!r} out of range for n={self.n}")
        return W

    def pa(self, v: int) -> frozenset[int]:
        return self._pa[v]

    def ch(self, v: int) -> frozenset[int]:
        return self._ch[v]

    def sib(self, v: int) -> frozenset[int]:
        return self._sib[v]

    def nbr(self, v: int) -> frozenset[int]:
        return self._nbr[v]

    def incident(self, v: int) -> tuple[Incidence, ...]:
        return self._inc[v]

    def has_edge(self, u: int, v: int, mark: EdgeMark | str) -> bool:
        mark = EdgeMark(mark)
        if mark is not EdgeMark.DIRECTED and u > v:
            u, v = v, u
        return Edge(u, v, mark) in self.edges

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    @cached_property
    def _adj(self) -> tuple[frozenset[int], ...]:
        return tuple(self._pa[v] | self._ch[v] | self._sib[v] | self._nbr[v] for v in self.vertices)

    def adjacencies(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def skeleton(self) -> frozenset[frozenset[str]]:
        """Adjacent pairs as label sets, for comparison across graphs."""
        return frozenset(frozenset((self.labels[e.u], self.labels[e.v])) for e in self.edges)

    def has_multi_edges(self) -> bool:
        return len({frozenset((e.u, e.v)) for e in self.edges}) < len(self.edges)

    @property
    def undirected_vertices(self) -> frozenset[int]:
        """The vertex set ``U`` touched by undirected edges."""
        return frozenset(v for v in self.vertices if self._nbr[v])

    # -- set-valued queries ---------------------------------------------------

    def parents(self, W: VertexLike) -> frozenset[int]:
        return frozenset().union(*(self._pa[w] for w in self._as_set(W)))

    def children(self, W: VertexLike) -> frozenset[int]:
        return frozenset().union(*(self._ch[w] for w in self._as_set(W)))

    def siblings(self, W: VertexLike) -> frozenset[int]:
        return frozenset().union(*(self._sib[w] for w in self._as_set(W)))

    def neighbors(self, W: VertexLike) -> frozenset[int]:
        return frozenset().union(*(self._nbr[w] for w in self._as_set(W)))

    def _closure(self, W: frozenset[int], step) -> frozenset[int]:
        seen = set(W)
        queue = deque(W)
        while queue:
            v = queue.popleft()
            for u in step(v):
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
        return frozenset(seen)

    def ancestors(self, W: VertexLike) -> frozenset[int]:
        """``an(W)``, including ``W`` itself."""
        return self._closure(self._as_set(W), self._pa.__getitem__)

    def descendants(self, W: VertexLike) -> frozenset[int]:
        """``de(W)``, including ``W`` itself."""
        return self._closure(self._as_set(W), self._ch.__getitem__)

    def anteriors(self, W: VertexLike) -> frozenset[int]:
        """Vertices reaching ``W`` along undirected edges and edges pointing toward ``W``."""
        return self._closure(self._as_set(W), lambda v: self._pa[v] | self._nbr[v])

    @cached_property
    def ancestor_sets(self) -> tuple[frozenset[int], ...]:
        """``an(v)`` for every vertex, built once along the topological order."""
        an: list = [None] * self.n
        for v in self.topological_order:
            an[v] = frozenset({v}).union(*(an[p] for p in self._pa[v]))
        return tuple(an)

    def district(self, v: int, within: VertexLike | None = None) -> frozenset[int]:
        """Bidirected-connected component of ``v`` in the subgraph induced by ``within``."""
        if within is None:
            return self._closure(frozenset((v,)), self._sib.__getitem__)
        within = self._as_set(within)
        if v not in within:
            raise GraphError(f"vertex {self.labels[v]} not in the restricting set")
        return self._closure(frozenset((v,)), lambda x: self._sib[x] & within)

    def districts(self) -> list[frozenset[int]]:
        """The partition of the vertex set into districts."""
        out, seen = [], set()
        for v in self.vertices:
            if v not in seen:
                d = self.district(v)
                seen |= d
                out.append(d)
        return out

    def barren(self, W: VertexLike) -> frozenset[int]:
        """Members of ``W`` with no proper descendant in ``W``."""
        W = self._as_set(W)
        return frozenset(w for w in W if self.descendants(w) & W == {w})

    # -- subgraphs --------------------------------------------------------------

    def induced_subgraph(self, W: VertexLike, kind: str | None = None) -> "MixedGraph":
        """Subgraph on ``W``; labels are kept and vertices reindexed in index order."""
        keep = sorted(self._as_set(W))
        remap = {v: i for i, v in enumerate(keep)}
        edges = [(remap[e.u], remap[e.v], e.mark) for e in self.edges
                 if e.u in remap and e.v in remap]
        return MixedGraph([self.labels[v] for v in keep], edges, kind=kind or self.kind)

    def split_summary(self) -> tuple["MixedGraph", "MixedGraph"]:
        """Split a summary graph into its undirected part and the rest.

        Returns ``(G_u, G_d)`` where ``G_u`` is induced on the vertices touched by
        undirected edges and ``G_d`` on the remaining vertices. Directed edges
        from ``U`` into ``D`` appear in neither piece; they stay available as
        parent relations of the original graph (tails need them).
        """
        if not self.is_summary():
            raise GraphError("not a summary graph: undirected endpoints must have no parents or siblings")
        U = self.undirected_vertices
        return (self.induced_subgraph(U, kind="summary"),
                self.induced_subgraph(frozenset(self.vertices) - U, kind="admg"))

    # -- structural predicates ------------------------------------------------

    def is_summary(self) -> bool:
        return all(not self._pa[v] and not self._sib[v] for v in self.undirected_vertices)

    def is_ancestral(self) -> bool:
        an = self.ancestor_sets
        if any(self._sib[v] & an[v] for v in self.vertices):
            return False
        return self.is_summary()

    # -- comparison / text ------------------------------------------------------

    def label_edge(self, u: int, v: int, mark: EdgeMark) -> tuple[str, str, str]:
        """``(a, mark, b)`` label triple; symmetric edges in natural label order."""
        a, b = self.labels[u], self.labels[v]
        if mark is not EdgeMark.DIRECTED and label_key(b) < label_key(a):
            a, b = b, a
        return (a, mark.value, b)

    def labelled_edges(self) -> frozenset[tuple[str, str, str]]:
        return frozenset(self.label_edge(*e) for e in self.edges)

    def __eq__(self, other):
        if not isinstance(other, MixedGraph):
            return NotImplemented
        return (set(self.labels) == set(other.labels)
                and self.labelled_edges() == other.labelled_edges())

    def __hash__(self):
        return hash((frozenset(self.labels), self.labelled_edges()))

    def __repr__(self):
        return f"MixedGraph(n={self.n}, e={len(self.edges)}, kind={self.kind!r})"

    def to_text(self) -> str:
        return serialize_graph(self)


def validate_ancestral(G: MixedGraph) -> bool:
    """No vertex is a sibling of its own ancestor, and undirected edges sit at the top."""
    return G.is_ancestral()


def validate_maximal(G: MixedGraph) -> bool:
    """True iff projecting to a MAG adds no adjacency.

    A nonadjacent pair joined by an inducing path becomes adjacent after
    projection, so an unchanged skeleton means every nonadjacent pair can be
    m-separated.
    """
    from .projection import algorithm2

    return algorithm2(G).mag.skeleton() == G.skeleton()


def is_mag(G: MixedGraph) -> bool:
    return not G.has_multi_edges() and G.is_ancestral() and validate_maximal(G)


def check_kind(G: MixedGraph, kind: str | None = None) -> None:
    """Raise :class:`GraphError` unless ``G`` satisfies the invariants of ``kind``."""
    kind = kind or G.kind
    marks = {e.mark for e in G.edges}
    if kind == "dag" and marks - {EdgeMark.DIRECTED}:
        raise GraphError("a dag may only contain directed edges")
    if kind == "admg" and EdgeMark.UNDIRECTED in marks:
        raise GraphError("an admg may not contain undirected edges (use !type summary)")
    if kind in ("summary", "mag") and not G.is_summary():
        bad = [G.labels[v] for v in sorted(G.undirected_vertices) if G.pa(v) or G.sib(v)]
        raise GraphError(f"undirected edge at vertex with parents or siblings: {', '.join(bad)}")
    if kind == "mag":
        if G.has_multi_edges():
            raise GraphError("a mag has at most one edge between each pair of vertices")
        if not G.is_ancestral():
            raise GraphError("graph is not ancestral")
        if not validate_maximal(G):
            raise GraphError("graph is not maximal")


_LABEL = r"[^\s<>\-#!]+"
_LABEL_RE = re.compile(rf"^{_LABEL}$")
_EDGE_RE = re.compile(rf"^({_LABEL})\s*(<->|->|-)\s*({_LABEL})$")


def parse_graph(text: str, kind: str | None = None, check: bool = True) -> MixedGraph:
    """Parse the line-based graph format.

    Lines are ``!type dag|admg|mag|summary``, ``vertex <label>``, or an edge
    ``a -> b``, ``a <-> b``, ``a - b``. ``#`` starts a comment. Vertex indices
    are assigned in order of first mention. ``check=False`` skips the
    class invariants of the declared type (acyclicity is always enforced).
    """
    header = None
    vertices: list[str] = []
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("!"):
            parts = line[1:].split()
            if len(parts) != 2 or parts[0] != "type" or parts[1] not in GRAPH_TYPES:
                raise GraphError(f"line {lineno}: bad header {line!r}")
            if header is not None:
                raise GraphError(f"line {lineno}: duplicate !type header")
            header = parts[1]
            continue
        parts = line.split()
        if parts[0] == "vertex":
            if len(parts) != 2 or not _LABEL_RE.match(parts[1]):
                raise GraphError(f"line {lineno}: bad vertex declaration {line!r}")
            vertices.append(parts[1])
            continue
        m = _EDGE_RE.match(line)
        if not m:
            raise GraphError(f"line {lineno}: unknown token in {line!r}")
        edges.append((m.group(1), m.group(2), m.group(3)))
    kind = kind or header or "admg"
    G = MixedGraph.from_labelled(edges, vertices, kind=kind)
    if check:
        check_kind(G)
    return G


def serialize_graph(G: MixedGraph) -> str:
    """Canonical text: header, sorted vertex declarations, then sorted edges."""
    lines = [f"!type {G.kind}"]
    lines += [f"vertex {lab}" for lab in sorted(G.labels, key=label_key)]
    for a, mark, b in sorted(G.labelled_edges(),
                             key=lambda t: (EdgeMark(t[1]).order, label_key(t[0]), label_key(t[2]))):
        lines.append(f"{a} {mark} {b}")
    return "\n".join(lines) + "\n"


def read_graph(path, check: bool = True) -> MixedGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read(), check=check)
