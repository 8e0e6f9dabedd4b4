import csv
import math
from fractions import Fraction

import pytest

from magequiv.graph import EdgeMark, validate_ancestral
from magequiv.heads import enumerate_heads, is_head
from magequiv.randbench import (
    CSV_COLUMNS, RNG_NAME, BenchRecord, GenConfig, ancestor_expectation_experiment, bench_one,
    complexity_sweep, exact_ancestor_expectation, loglog_slope, random_admg, random_sparse_dag,
    summarize, trial_seed, worst_case_family, write_csv,
)


def test_fixed_edge_admg():
    G = random_admg(GenConfig(20, 60, 0.5, seed=11))
    assert G.n == 20 and len(G.edges) == 60
    assert all(e.u < e.v for e in G.edges)
    assert {e.mark for e in G.edges} == {EdgeMark.DIRECTED, EdgeMark.BIDIRECTED}
    assert random_admg(GenConfig(20, 60, 0.5, seed=11)) == G
    assert random_admg(GenConfig(20, 60, 0.5, seed=12)) != G


def test_p_zero_gives_dag():
    G = random_admg(GenConfig(12, 30, 0.0, seed=1))
    assert {e.mark for e in G.edges} == {EdgeMark.DIRECTED}


@pytest.mark.parametrize("kwargs", [
    dict(n=4, e=7), dict(n=0, e=0), dict(n=4, e=2, p_bidirected=1.5),
    dict(n=4, model="bernoulli-sparse"), dict(n=4, e=1, model="other"),
])
def test_bad_configs(kwargs):
    with pytest.raises(ValueError):
        GenConfig(**kwargs)


def test_sparse_dag_extremes():
    full = random_sparse_dag(6, 6, seed=0)
    assert len(full.edges) == 15
    assert len(random_sparse_dag(50, 1e-9, seed=0).edges) == 0
    with pytest.raises(ValueError):
        random_sparse_dag(5, 6, seed=0)


def test_exact_path_expectation_matches_closed_form():
    # the closed form is exact for the expected number of directed paths into i
    for n in range(1, 6):
        for r in (0.5, 1, 2):
            for row in exact_ancestor_expectation(n, r):
                assert row.paths == row.formula


def test_exact_ancestor_expectation_small_case():
    # E A_3 = 1 + 2p + p^2 - p^3: vertex 1 reaches 3 directly or through 2
    p = Fraction(1, 3)
    row = exact_ancestor_expectation(3, 1)[2]
    assert row.ancestors == 1 + 2 * p + p**2 - p**3
    assert row.formula - row.ancestors == p**3


def test_first_vertex_has_one_ancestor():
    rows = ancestor_expectation_experiment(10, 2.0, 50, seed=3)
    assert rows[0].mean_ancestors == 1.0 and rows[0].se_ancestors == 0.0
    assert rows[0].theory == 1.0


def test_monte_carlo_path_counts_track_formula():
    last = ancestor_expectation_experiment(50, 2.0, 2000, seed=9)[-1]
    assert abs(last.mean_paths - last.theory) <= 4 * last.se_paths
    assert last.mean_ancestors <= last.mean_paths
    assert last.theory < math.exp(2.0)


def test_sweep_records_are_reproducible(tmp_path):
    a = complexity_sweep([10, 12], trials=3, seed=5)
    b = complexity_sweep([10, 12], trials=3, seed=5)
    strip = lambda rs: [(r.n, r.e, r.seed, r.total_ops, r.heads3) for r in rs]
    assert strip(a) == strip(b)
    assert all(r.rng == RNG_NAME and r.e == 3 * r.n for r in a)
    rec = a[0]
    again = bench_one(random_admg(GenConfig(rec.n, rec.e, 0.5, rec.seed)), rec.seed, rec.e)
    assert again.total_ops == rec.total_ops
    assert rec.seed == trial_seed(5, 10, 0)

    path = tmp_path / "s.csv"
    write_csv(a, path)
    rows = list(csv.reader(path.open()))
    assert tuple(rows[0]) == CSV_COLUMNS and len(rows) == 7
    summary = summarize(a)
    assert [s["n"] for s in summary] == [10, 12] and summary[0]["trials"] == 3


def test_loglog_slope():
    assert loglog_slope([1, 2, 4, 8], [3, 12, 48, 192]) == pytest.approx(2.0)


def test_worst_case_family_heads():
    G = worst_case_family(2, 2, 2)
    assert validate_ancestral(G)
    for i in (1, 2):
        for j in (1, 2):
            assert is_head(G, G.vset(f"v{i}", "w", f"z{j}"))
    with pytest.raises(ValueError):
        worst_case_family(0, 1, 1)


def test_worst_case_family_has_more_w_heads_than_nm():
    # size-3 heads containing w are not only the {v_i, w, z_j}
    G = worst_case_family(2, 2, 2)
    w = G.index("w")
    with_w = [h for h, _ in enumerate_heads(G) if len(h) == 3 and w in h]
    assert len(with_w) > 4
    assert G.vset("v1", "w", "x1") in with_w


def test_bench_record_fields():
    r = BenchRecord(1, 0, 0, 0, 0, 0, 0, 0.0)
    assert r.rng == "PCG64"
