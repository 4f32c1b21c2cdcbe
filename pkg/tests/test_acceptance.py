"""Acceptance suite: one test per criterion, at the stated tolerances.

Run with `pytest -s tests/test_acceptance.py` to see one PASS line per
criterion; any failure carries the criterion number in the test name.
"""

import time
from fractions import Fraction
from random import Random

from matshare.algebra import Matrix, freivalds_verify, mat_mul, sample_matrix
from matshare.attack import (
    MULTISET,
    ORDERED_DISTINCT,
    SearchProblem,
    count_search_space,
    exhaustive_search,
    ratio_analysis,
)
from matshare.cli import EXIT_OK, main
from matshare.dealer import DealerParams, generate_instance, secrecy_rank_check
from matshare.protocol import CheaterSpec, simulate_run

from oracles import mat_rows


def _passed(number, text):
    print(f"\nACCEPTANCE {number}: PASS - {text}")


def _grid_params():
    """200 deterministic parameter sets spanning the required ranges."""
    pairs = []
    for r in (4, 8, 12, 20):
        for n in range(2, 9):
            if r > n:
                pairs.append((r, n))
    combos = []
    for round_idx in range(4):
        for pair_idx, (r, n) in enumerate(pairs):
            for k_idx, k in enumerate((n, 17, 32)):
                seed = 9000 + 1000 * round_idx + 10 * pair_idx + k_idx
                combos.append(DealerParams(r=r, k=k, n=n, entry_bound=256, seed=seed))
    return combos[:200]


def test_criterion_1_round_trip_correctness():
    params = _grid_params()
    assert len(params) == 200
    assert {p.r for p in params} == {4, 8, 12, 20}
    assert {p.n for p in params} == set(range(2, 9))
    started = time.perf_counter()
    runs = 0
    for p in params:
        instance, bulletin, shares = generate_instance(p)
        for start in range(1, p.n + 1):
            result = simulate_run(bulletin, shares, start, Random(p.seed + start))
            assert result.verdict
            assert result.recovered == instance.secret
            runs += 1
    elapsed = time.perf_counter() - started
    assert elapsed < 120.0, f"took {elapsed:.1f}s"
    _passed(1, f"{len(params)} instances, {runs} reconstructions, all exact, {elapsed:.1f}s")


def test_criterion_2_start_and_blinding_invariance():
    instance, bulletin, shares = generate_instance(
        DealerParams(r=8, k=12, n=5, entry_bound=256, seed=424)
    )
    outcomes = set()
    for start in range(1, 6):
        for draw in range(10):
            result = simulate_run(bulletin, shares, start, Random(7000 + 100 * start + draw))
            assert result.verdict
            outcomes.add(result.recovered)
    assert outcomes == {instance.secret}
    _passed(2, "identical recovery across 5 starts x 10 blinding draws")


def test_criterion_3_cheater_detection():
    detections = 0
    for trial in range(100):
        rng = Random(5000 + trial)
        instance, bulletin, shares = generate_instance(
            DealerParams(r=6, k=8, n=4, entry_bound=256, seed=trial)
        )
        position = rng.randrange(1, 5)
        start = rng.randrange(1, 5)
        forged = sample_matrix(6, 256, rng)
        result = simulate_run(
            bulletin, shares, start, rng, cheater=CheaterSpec(position=position, forged=forged)
        )
        detections += not result.verdict
        assert result.recovered is None
    assert detections == 100
    _passed(3, "forgery detected in 100/100 seeded runs")


def test_criterion_4_freivalds_bound():
    r = 4
    trials = 10_000

    def corrupted_case(seed):
        rng = Random(seed)
        a = sample_matrix(r, 64, rng)
        b = sample_matrix(r, 64, rng)
        c = mat_mul(a, b)
        rows = mat_rows(c)
        rows[rng.randrange(r)][rng.randrange(r)] += 1
        return a, b, Matrix(rows), rng

    accepts_t1 = 0
    accepts_t10 = 0
    for seed in range(trials):
        a, b, c_bad, rng = corrupted_case(seed)
        accepts_t1 += freivalds_verify(a, b, c_bad, 1, rng)
        accepts_t10 += freivalds_verify(a, b, c_bad, 10, rng)
    rate_t1 = accepts_t1 / trials
    rate_t10 = accepts_t10 / trials
    assert rate_t1 <= 0.5 + 0.015, f"t=1 false-accept rate {rate_t1}"
    assert rate_t10 <= 2**-10 + 0.003, f"t=10 false-accept rate {rate_t10}"

    true_accepts = 0
    for seed in range(trials):
        rng = Random(40_000 + seed)
        a = sample_matrix(r, 64, rng)
        b = sample_matrix(r, 64, rng)
        true_accepts += freivalds_verify(a, b, mat_mul(a, b), 1, rng)
    assert true_accepts == trials
    _passed(
        4,
        f"false-accept {rate_t1:.4f} (t=1) and {rate_t10:.5f} (t=10); "
        f"{trials}/{trials} true products accepted",
    )


def test_criterion_5_attack_oracle():
    instance, bulletin, _ = generate_instance(
        DealerParams(r=4, k=6, n=3, entry_bound=256, seed=99)
    )
    problem = SearchProblem(matrices=bulletin.matrices, n=3, target=instance.secret)
    result = exhaustive_search(problem, ORDERED_DISTINCT)
    assert instance.sigma in result.solutions
    assert result.elapsed < 10.0
    assert result.nodes_explored == 120
    assert count_search_space(6, 3, ORDERED_DISTINCT) == 120
    assert count_search_space(6, 3, MULTISET) == 56
    _passed(5, f"sigma found among {len(result.solutions)} solution(s) in {result.elapsed:.3f}s")


def test_criterion_6_secrecy_rank():
    for seed in range(50):
        n = 2 + seed % 3
        instance, bulletin, shares = generate_instance(
            DealerParams(r=20, k=n + 2, n=n, entry_bound=256, seed=seed)
        )
        rank = secrecy_rank_check(shares[0].u, bulletin.u_prime[0], 20)
        assert rank <= 20
        assert 20 * 20 == 400
    _passed(6, "50 instances at r=20: rank <= 20 against 400 unknowns")


def test_criterion_7_leakage_demonstration():
    mismatches = 0
    for trial in range(20):
        rng = Random(6000 + trial)
        n = 2 + trial % 4
        instance, bulletin, shares = generate_instance(
            DealerParams(r=n + 2, k=n + 3, n=n, entry_bound=256, seed=trial)
        )
        start = rng.randrange(1, n + 1)
        result = simulate_run(bulletin, shares, start, rng)
        hits = ratio_analysis(result.transcript.eavesdropper_view, bulletin)
        assert len(hits) == n - 1
        for hit in hits:
            if hit.matrix_index != instance.sigma[hit.position - 1]:
                mismatches += 1
    assert mismatches == 0
    _passed(7, "20 transcripts: n-1 shadow indices identified per run, 0 mismatches")


def test_criterion_8_cli_determinism(tmp_path):
    workspaces = []
    for sub in ("a", "b"):
        ws = tmp_path / sub
        assert main(["deal", "--r", "6", "--k", "9", "--n", "4", "--seed", "17", "--out", str(ws)]) == EXIT_OK
        assert main(["run", "--workspace", str(ws), "--start", "3", "--seed", "23"]) == EXIT_OK
        workspaces.append(ws)
    first, second = workspaces
    names = ["bulletin.json", "transcript.json"] + [f"shares/P{j}.json" for j in range(1, 5)]
    for name in names:
        assert (first / name).read_bytes() == (second / name).read_bytes(), name
    _passed(8, "byte-identical bulletin, shares and transcript on repeated runs")


def test_criterion_9_integer_closure():
    checked = 0
    for seed in range(30):
        r = (4, 8, 20)[seed % 3]
        n = 2 + seed % 3
        instance, bulletin, shares = generate_instance(
            DealerParams(r=r, k=n + 3, n=n, entry_bound=256, seed=8000 + seed)
        )
        result = simulate_run(bulletin, shares, 1 + seed % n, Random(seed))
        assert result.verdict
        for row in result.recovered.rows:
            for entry in row:
                assert Fraction(entry).denominator == 1
        checked += 1
    assert checked == 30
    _passed(9, "all honest recoveries integral (denominator 1 in every entry)")
