"""Random graph generators and the empirical studies.

Randomness comes from numpy's ``PCG64``. A run with master seed ``s`` gives
trial ``t`` at size ``n`` its own stream, seeded by
``SeedSequence([s, n, t])``; the 64-bit seed derived from that sequence is
stored in each :class:`BenchRecord`, so any single trial can be regenerated
with :func:`random_admg`.
"""

from __future__ import annotations

import csv
import math
import time
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from itertools import combinations
from typing import Iterable

import numpy as np

from .graph import EdgeMark, MixedGraph
from .heads import algorithm1
from .opcount import OpCounter
from .projection import algorithm2

RNG_NAME = "PCG64"
MODELS = ("fixed-edges", "bernoulli-sparse")


def make_rng(*key: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(list(key))))


def trial_seed(seed: int, n: int, t: int) -> int:
    """The 64-bit seed of trial ``t`` at size ``n`` under master seed ``seed``."""
    return int(np.random.SeedSequence([seed, n, t]).generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class GenConfig:
    n: int
    e: int | None = None
    p_bidirected: float = 0.5
    seed: int = 0
    model: str = "fixed-edges"
    r: float | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if not 0.0 <= self.p_bidirected <= 1.0:
            raise ValueError("p_bidirected must lie in [0, 1]")
        if self.model == "fixed-edges":
            if self.e is None or not 0 <= self.e <= self.n * (self.n - 1) // 2:
                raise ValueError(f"e must be in [0, {self.n * (self.n - 1) // 2}] for n={self.n}")
        elif self.model == "bernoulli-sparse":
            if self.r is None or self.r <= 0 or self.r > self.n:
                raise ValueError("bernoulli-sparse needs 0 < r <= n")
        else:
            raise ValueError(f"unknown model {self.model!r}")


def _labels(n: int) -> list[str]:
    return [str(i + 1) for i in range(n)]


def random_admg(cfg: GenConfig) -> MixedGraph:
    """ADMG over the fixed order ``1 < 2 < ... < n``.

    With ``fixed-edges``, ``e`` pairs are drawn uniformly without replacement
    (a seeded permutation of all pairs); with ``bernoulli-sparse`` each pair is
    kept with probability ``r/n``. Each kept pair is bidirected with
    probability ``p_bidirected``, otherwise directed forward.
    """
    rng = make_rng(cfg.seed)
    pairs = list(combinations(range(cfg.n), 2))
    if cfg.model == "fixed-edges":
        chosen = sorted(rng.permutation(len(pairs))[: cfg.e].tolist())
    else:
        chosen = np.flatnonzero(rng.random(len(pairs)) < cfg.r / cfg.n).tolist()
    bid = rng.random(len(chosen)) < cfg.p_bidirected
    edges = [
        (pairs[k][0], pairs[k][1], EdgeMark.BIDIRECTED if b else EdgeMark.DIRECTED)
        for k, b in zip(chosen, bid)
    ]
    return MixedGraph(_labels(cfg.n), edges, kind="admg")


def random_sparse_dag(n: int, r: float, seed: int) -> MixedGraph:
    """DAG with each forward edge ``i -> j`` present independently w.p. ``r/n``."""
    if r <= 0 or r > n:
        raise ValueError("need 0 < r <= n")
    return random_admg(GenConfig(n, p_bidirected=0.0, seed=seed, model="bernoulli-sparse", r=r))


# -- ancestor counts ---------------------------------------------------------


def _counts(n: int, present: Iterable[tuple[int, int]]) -> tuple[list[int], list[int]]:
    """Ancestor counts (self included) and directed-path counts (trivial path
    included) ending at each vertex of a forward DAG."""
    parents = [[] for _ in range(n)]
    for i, j in present:
        parents[j].append(i)
    anc, paths = [0] * n, [0] * n
    for j in range(n):
        bits, p = 1 << j, 1
        for i in parents[j]:
            bits |= anc[i]
            p += paths[i]
        anc[j], paths[j] = bits, p
    return [a.bit_count() for a in anc], paths


@dataclass(frozen=True)
class ExactExpectation:
    i: int
    ancestors: Fraction
    paths: Fraction
    formula: Fraction


def exact_ancestor_expectation(n: int, r) -> list[ExactExpectation]:
    """Exact ``E A_i`` over all ``2^(n choose 2)`` forward DAGs, edge prob ``r/n``.

    Also returns the expected number of directed paths into ``i`` and the
    closed form ``(1 + r/n)^(i-1)``, all as exact fractions. Sums of integer
    counts are grouped by edge count so only one weight per group is needed.
    """
    if n > 7:
        raise ValueError("exact enumeration is limited to n <= 7")
    p = Fraction(r) / n
    pairs = list(combinations(range(n), 2))
    m = len(pairs)
    by_k_anc = [[0] * n for _ in range(m + 1)]
    by_k_path = [[0] * n for _ in range(m + 1)]
    for mask in range(1 << m):
        k = mask.bit_count()
        a, q = _counts(n, (pairs[t] for t in range(m) if mask >> t & 1))
        for j in range(n):
            by_k_anc[k][j] += a[j]
            by_k_path[k][j] += q[j]
    weight = [p**k * (1 - p) ** (m - k) for k in range(m + 1)]
    out = []
    for j in range(n):
        ea = sum(w * row[j] for w, row in zip(weight, by_k_anc))
        ep = sum(w * row[j] for w, row in zip(weight, by_k_path))
        out.append(ExactExpectation(j + 1, ea, ep, (1 + p) ** j))
    return out


@dataclass(frozen=True)
class AncestorRow:
    i: int
    mean_ancestors: float
    se_ancestors: float
    mean_paths: float
    se_paths: float
    theory: float
    tail_freq: dict


def ancestor_expectation_experiment(n: int, r: float, trials: int, seed: int,
                                    ks: Iterable[int] = ()) -> list[AncestorRow]:
    """Monte Carlo estimate of ``E A_i`` for every ``i``.

    ``tail_freq`` maps each ``k`` in ``ks`` to the observed ``P(A_i >= k)``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    ks = list(ks)
    p = r / n
    iu, ju = np.triu_indices(n, 1)
    A = np.empty((trials, n))
    P = np.empty((trials, n))
    for t in range(trials):
        rng = make_rng(seed, n, t)
        keep = rng.random(len(iu)) < p
        a, q = _counts(n, zip(iu[keep].tolist(), ju[keep].tolist()))
        A[t], P[t] = a, q
    se = math.sqrt(trials)
    rows = []
    for j in range(n):
        rows.append(AncestorRow(
            j + 1,
            float(A[:, j].mean()), float(A[:, j].std(ddof=1) / se) if trials > 1 else 0.0,
            float(P[:, j].mean()), float(P[:, j].std(ddof=1) / se) if trials > 1 else 0.0,
            (1 + p) ** j,
            {k: float((A[:, j] >= k).mean()) for k in ks},
        ))
    return rows


# -- complexity sweep --------------------------------------------------------


@dataclass(frozen=True)
class BenchRecord:
    n: int
    e: int
    seed: int
    total_ops: int
    district_visits: int
    tail_tests: int
    heads3: int
    wall_ms: float
    triple_candidates: int = 0
    mag_edges: int = 0
    rng: str = RNG_NAME


CSV_COLUMNS = ("n", "e", "seed", "total_ops", "district_visits", "tail_tests", "heads3", "wall_ms")


def bench_one(G: MixedGraph, seed: int = 0, e: int | None = None) -> BenchRecord:
    """Project ``G`` to a MAG and count the operations of :func:`algorithm1` on it."""
    mag = algorithm2(G).mag
    counter = OpCounter()
    t0 = time.perf_counter()
    algorithm1(mag, counter, check=False)
    ms = (time.perf_counter() - t0) * 1000.0
    return BenchRecord(G.n, len(G.edges) if e is None else e, seed, counter.total,
                       counter.district_visits, counter.tail_tests, counter.heads3, ms,
                       counter.triple_candidates, len(mag.edges))


def complexity_sweep(ns: Iterable[int], trials: int, seed: int, e_factor: int = 3,
                     p_bidirected: float = 0.5) -> list[BenchRecord]:
    """One record per (n, trial) for random ADMGs with ``e = e_factor * n``
    (capped at the number of pairs)."""
    out = []
    for n in ns:
        e = min(e_factor * n, n * (n - 1) // 2)
        for t in range(trials):
            s = trial_seed(seed, n, t)
            G = random_admg(GenConfig(n, e, p_bidirected, s))
            out.append(bench_one(G, s, e))
    return out


def write_csv(records: Iterable[BenchRecord], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_COLUMNS)
        for rec in records:
            row = asdict(rec)
            w.writerow([f"{row[c]:.3f}" if c == "wall_ms" else row[c] for c in CSV_COLUMNS])


def summarize(records: Iterable[BenchRecord]) -> list[dict]:
    """Per-``n`` means of every numeric field."""
    groups: dict[int, list[BenchRecord]] = {}
    for rec in records:
        groups.setdefault(rec.n, []).append(rec)
    numeric = [f.name for f in fields(BenchRecord) if f.name not in ("n", "seed", "rng")]
    return [
        {"n": n, "trials": len(rs), **{k: float(np.mean([getattr(r, k) for r in rs])) for k in numeric}}
        for n, rs in sorted(groups.items())
    ]


def loglog_slope(xs: Iterable[float], ys: Iterable[float]) -> float:
    """Least-squares slope of ``log y`` against ``log x``."""
    slope, _ = np.polyfit(np.log(list(xs)), np.log(list(ys)), 1)
    return float(slope)


# -- worst case --------------------------------------------------------------


def worst_case_family(N: int, M: int, L: int) -> MixedGraph:
    """The graph in which every ``{v_i, w, z_j}`` is a head of size three.

    Edges: ``w <-> v_i``, ``w <-> x_j``, ``x_j -> z_j``, ``y_1 <-> x_j``,
    ``y_L <-> z_j``, the chain ``y_1 <-> ... <-> y_L``, every ``y_l -> v_i``,
    and ``y_mid -> w`` for the middle chain vertex.
    """
    if min(N, M, L) < 1:
        raise ValueError("N, M and L must be >= 1")
    ys = [f"y{l}" for l in range(1, L + 1)]
    xs = [f"x{j}" for j in range(1, M + 1)]
    vs = [f"v{i}" for i in range(1, N + 1)]
    zs = [f"z{j}" for j in range(1, M + 1)]
    edges = []
    edges += [("w", "<->", v) for v in vs]
    edges += [("w", "<->", x) for x in xs]
    edges += [(x, "->", z) for x, z in zip(xs, zs)]
    edges += [(ys[0], "<->", x) for x in xs]
    edges += [(ys[-1], "<->", z) for z in zs]
    edges += [(a, "<->", b) for a, b in zip(ys, ys[1:])]
    edges += [(y, "->", v) for y in ys for v in vs]
    edges.append((ys[(L - 1) // 2], "->", "w"))
    return MixedGraph.from_labelled(edges, vertices=ys + xs + ["w"] + vs + zs, kind="admg")
