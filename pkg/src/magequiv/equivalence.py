"""Markov equivalence tests.

Three independent routes are provided: comparing ``S~3`` via
:func:`algorithm1` (fast), the adjacency/collider/discriminating-path
criterion for MAGs, and brute-force comparison of separation signatures.
Vertices of the two graphs are matched by label.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import GraphError, MixedGraph, guard, is_mag, label_key
from .heads import algorithm1, format_labelled, labelled_key
from .msep import ORACLE_LIMIT, find_discriminating_paths, is_collider_on, m_separated, sep_signature
from .projection import algorithm2, inducing_path_exists

METHODS = ("s3tilde", "thm31", "signature")


@dataclass(frozen=True)
class EquivalenceReport:
    """Verdict of an equivalence test.

    ``witness`` is a vertex set (labels) on which the graphs disagree; it is
    always present when ``equivalent`` is false. ``detail`` says what the
    disagreement is.
    """

    equivalent: bool
    method: str
    witness: frozenset | None = None
    detail: str = ""

    def __bool__(self):
        return self.equivalent

    def describe(self) -> str:
        if self.equivalent:
            return "equivalent"
        return f"not equivalent\nwitness: {format_labelled(self.witness)}\n{self.detail}".rstrip()


def _same_vertices(G1: MixedGraph, G2: MixedGraph) -> None:
    if set(G1.labels) != set(G2.labels):
        raise GraphError("graphs must have the same vertex labels")


def _require_mag(G: MixedGraph, which: str) -> None:
    if not is_mag(G):
        raise GraphError(f"{which} graph is not a MAG")


def _compare_sets(first: frozenset, second: frozenset, method: str, what: str) -> EquivalenceReport:
    diff = first ^ second
    if not diff:
        return EquivalenceReport(True, method)
    W = min(diff, key=labelled_key)
    side = "first" if W in first else "second"
    return EquivalenceReport(False, method, W, f"{format_labelled(W)} is in {what} of the {side} graph only")


def equiv_mags(G1: MixedGraph, G2: MixedGraph, check: bool = True) -> EquivalenceReport:
    """Compare the ``S~3`` sets of two MAGs computed by :func:`algorithm1`."""
    _same_vertices(G1, G2)
    if check:
        _require_mag(G1, "first")
        _require_mag(G2, "second")
    s1 = algorithm1(G1, check=False).labelled()
    s2 = algorithm1(G2, check=False).labelled()
    return _compare_sets(s1, s2, "s3tilde", "S~3")


def equiv_admgs(G1: MixedGraph, G2: MixedGraph) -> EquivalenceReport:
    """Project both graphs to MAGs, then compare as MAGs."""
    _same_vertices(G1, G2)
    return equiv_mags(algorithm2(G1).mag, algorithm2(G2).mag, check=False)


def _unshielded_colliders(G: MixedGraph) -> frozenset:
    out = set()
    for b in G.vertices:
        for a, c in combinations(sorted(G.adjacencies(b)), 2):
            if not G.adjacent(a, c) and is_collider_on(G, (a, b, c), 1):
                out.add(frozenset(G.labels[v] for v in (a, b, c)))
    return frozenset(out)


def _discriminating(G: MixedGraph) -> dict:
    # label path -> is b a collider on it
    return {
        tuple(G.labels[v] for v in path): is_collider_on(G, path, len(path) - 2)
        for path, _ in find_discriminating_paths(G)
    }


def equiv_theorem31(G1: MixedGraph, G2: MixedGraph, check: bool = True) -> EquivalenceReport:
    """Same adjacencies, same unshielded colliders, and agreeing collider status
    on every path that is discriminating in both graphs.

    Every violated condition is listed in ``detail``; the witness comes from the
    first one.
    """
    _same_vertices(G1, G2)
    guard(G1, ORACLE_LIMIT, "discriminating path criterion")
    if check:
        _require_mag(G1, "first")
        _require_mag(G2, "second")
    found = []
    rep = _compare_sets(G1.skeleton(), G2.skeleton(), "thm31", "the adjacencies")
    if not rep:
        # the other two conditions presuppose a common skeleton
        return rep
    rep = _compare_sets(_unshielded_colliders(G1), _unshielded_colliders(G2), "thm31",
                        "the unshielded colliders")
    if not rep:
        found.append((rep.witness, rep.detail))
    d1, d2 = _discriminating(G1), _discriminating(G2)
    for path in sorted(d1.keys() & d2.keys(), key=lambda p: [label_key(x) for x in p]):
        if d1[path] != d2[path]:
            x, b, y = path[0], path[-2], path[-1]
            where = "first" if d1[path] else "second"
            found.append((frozenset((x, b, y)),
                          f"<{','.join(path)}> discriminates {b}, a collider in the {where} graph only"))
    if not found:
        return EquivalenceReport(True, "thm31")
    return EquivalenceReport(False, "thm31", found[0][0], "\n".join(d for _, d in found))


def _separable(sig: frozenset, W: frozenset) -> bool:
    """Some pair of ``W`` is separated by a set containing the rest of ``W``."""
    for pair, cond in sig:
        if pair <= W and W - pair <= cond:
            return True
    return False


def equiv_signature(G1: MixedGraph, G2: MixedGraph) -> EquivalenceReport:
    """Compare the full lists of true m-separations.

    On disagreement the witness is the smallest set ``W`` such that, in one
    graph only, two members of ``W`` can be separated given a set containing
    the rest of ``W``.
    """
    _same_vertices(G1, G2)
    sig1 = sep_signature(G1).labelled(G1)
    sig2 = sep_signature(G2).labelled(G2)
    if sig1 == sig2:
        return EquivalenceReport(True, "signature")
    labels = sorted(G1.labels, key=label_key)
    W = None
    for k in range(2, len(labels) + 1):
        for cand in combinations(labels, k):
            cand = frozenset(cand)
            if _separable(sig1, cand) != _separable(sig2, cand):
                W = cand
                break
        if W is not None:
            break
    pair, cond = min(sig1 ^ sig2, key=lambda q: (labelled_key(q[0]), labelled_key(q[1])))
    a, b = sorted(pair, key=label_key)
    side = "first" if (pair, cond) in sig1 else "second"
    detail = f"{a} _||_ {b} | {','.join(sorted(cond, key=label_key))} holds in the {side} graph only"
    return EquivalenceReport(False, "signature", W if W is not None else pair | cond, detail)


def equivalent(G1: MixedGraph, G2: MixedGraph, method: str = "s3tilde") -> EquivalenceReport:
    """Dispatch on ``method``; non-MAG inputs are projected first where needed."""
    if method == "signature":
        return equiv_signature(G1, G2)
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    M1 = G1 if is_mag(G1) else algorithm2(G1).mag
    M2 = G2 if is_mag(G2) else algorithm2(G2).mag
    if method == "thm31":
        return equiv_theorem31(M1, M2, check=False)
    return equiv_mags(M1, M2, check=False)


def msep_adjacent(G: MixedGraph, v: int, w: int, exhaustive: bool = True) -> bool:
    """No set separates ``v`` and ``w``.

    ``exhaustive=True`` tries every conditioning set; otherwise an inducing
    path search decides it.
    """
    if v == w:
        raise GraphError("need two distinct vertices")
    if G.adjacent(v, w):
        return True
    if not exhaustive:
        return inducing_path_exists(G, v, w)
    guard(G, ORACLE_LIMIT, "exhaustive separating-set search")
    rest = [u for u in G.vertices if u not in (v, w)]
    for k in range(len(rest) + 1):
        for C in combinations(rest, k):
            if m_separated(G, v, w, C):
                return False
    return True
