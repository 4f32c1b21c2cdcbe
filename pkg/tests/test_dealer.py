import json
from random import Random

import pytest

from matshare.algebra import BinaryVector, Matrix, Vector
from matshare.cli import bulletin_to_json, canonical_json
from matshare.dealer import (
    Bulletin,
    DealerParams,
    Instance,
    compute_check_pairs,
    deliver_shares,
    generate_instance,
    ring_walk,
    rotated_product,
    secrecy_rank_check,
)
from matshare.transport import Network, SECURE

from oracles import chain_vector, mat_rows, minor_rank, ordered_seq_product


def small_instance(seed=42):
    return generate_instance(DealerParams(r=4, k=6, n=3, entry_bound=256, seed=seed))


# ---------------------------------------------------------------------------
# params validation
# ---------------------------------------------------------------------------

def test_params_reject_n_equal_r():
    with pytest.raises(ValueError, match="r > n"):
        DealerParams(r=4, k=6, n=4)


def test_params_reject_n_above_k():
    with pytest.raises(ValueError, match="n <= k"):
        DealerParams(r=8, k=3, n=4)


def test_params_reject_single_participant():
    with pytest.raises(ValueError, match="n >= 2"):
        DealerParams(r=4, k=6, n=1)


def test_params_reject_tiny_bound():
    with pytest.raises(ValueError, match="entry_bound"):
        DealerParams(r=4, k=6, n=3, entry_bound=1)


# ---------------------------------------------------------------------------
# generate_instance
# ---------------------------------------------------------------------------

def test_generate_instance_shape_and_secret():
    instance, bulletin, shares = small_instance()
    assert len(bulletin.matrices) == 6
    assert len(shares) == 3
    # recompute the canonical ordered product with the independent oracle
    expected = ordered_seq_product([mat_rows(m) for m in instance.matrices], instance.sigma)
    assert mat_rows(instance.secret) == expected


def test_sigma_distinct_and_in_range():
    for seed in range(8):
        instance, _, _ = small_instance(seed)
        assert len(set(instance.sigma)) == len(instance.sigma)
        assert all(0 <= idx < 6 for idx in instance.sigma)


def test_selected_shadows_are_invertible():
    from matshare.algebra import is_invertible

    instance, _, _ = small_instance(3)
    assert all(is_invertible(instance.shadow(pos)) for pos in (1, 2, 3))


def test_shares_carry_ring_and_index():
    instance, _, shares = small_instance()
    for j, share in enumerate(shares, start=1):
        assert share.participant == j
        assert share.ring == (1, 2, 3)
        assert share.matrix_index == instance.sigma[j - 1]
        assert share.u.weight >= 2


def test_share_shadow_shape_equals_secret_shape():
    instance, bulletin, shares = small_instance()
    for share in shares:
        assert bulletin.matrices[share.matrix_index].dim == instance.secret.dim


def test_reproducibility():
    first = small_instance(99)
    second = small_instance(99)
    assert first[0] == second[0]
    assert first[2] == second[2]
    assert canonical_json(bulletin_to_json(first[1])) == canonical_json(bulletin_to_json(second[1]))


def test_check_images_match_walk_chains():
    # for every start, walking the ring over U_i must land on u_prime[i]
    instance, bulletin, shares = small_instance(17)
    for i in (1, 2, 3):
        shadows = [mat_rows(instance.shadow(pos)) for pos in ring_walk(i, 3)]
        chained = chain_vector(shadows, shares[i - 1].u.bits)
        assert list(bulletin.u_prime[i - 1].entries) == chained


def test_bulletin_leaks_no_sigma():
    instance, bulletin, _ = small_instance(5)
    doc = bulletin_to_json(bulletin)
    assert set(doc) == {"version", "r", "k", "n", "matrices", "u_prime"}
    text = canonical_json(doc)
    assert "sigma" not in text
    secret_row = json.dumps([str(x) for x in instance.secret.rows[0]])
    assert secret_row not in text


def test_rotated_product_start_one_is_secret():
    instance, _, _ = small_instance(8)
    assert rotated_product(instance, 1) == instance.secret


# ---------------------------------------------------------------------------
# compute_check_pairs
# ---------------------------------------------------------------------------

def manual_instance(matrices, sigma):
    from matshare.algebra import mat_mul

    secret = None
    for idx in sigma:
        secret = matrices[idx] if secret is None else mat_mul(matrices[idx], secret)
    return Instance(matrices=tuple(matrices), sigma=tuple(sigma), secret=secret)


def test_check_pairs_worked_two_party_example():
    # r=2 has a single admissible check vector (1,1), pinning the example
    a1 = Matrix([[1, 1], [0, 1]])
    a2 = Matrix([[1, 0], [1, 1]])
    instance = manual_instance([a1, a2], [0, 1])
    us, u_primes = compute_check_pairs(instance, Random(0))
    assert us[0] == BinaryVector([1, 1])
    assert u_primes[0] == Vector([2, 3])


def test_check_pairs_identity_shadows():
    eye = Matrix.identity(4)
    instance = manual_instance([eye, eye], [0, 1])
    us, u_primes = compute_check_pairs(instance, Random(4))
    for u, u_prime in zip(us, u_primes):
        assert list(u.bits) == list(u_prime.entries)


def test_check_pairs_weight_postcondition():
    instance, _, _ = small_instance(21)
    us, _ = compute_check_pairs(instance, Random(2))
    assert all(u.weight >= 2 for u in us)


# ---------------------------------------------------------------------------
# secrecy_rank_check
# ---------------------------------------------------------------------------

def test_rank_weight_two_r4():
    u = BinaryVector([1, 1, 0, 0])
    u_prime = Vector([1, 2, 3, 4])
    rank = secrecy_rank_check(u, u_prime, 4)
    rows = [[0] * 16 for _ in range(4)]
    for a in range(4):
        rows[a][a * 4] = 1
        rows[a][a * 4 + 1] = 1
    assert rank == minor_rank(rows) == 4


def test_rank_all_ones_r3():
    u = BinaryVector([1, 1, 1])
    u_prime = Vector([1, 1, 1])
    rank = secrecy_rank_check(u, u_prime, 3)
    rows = [[0] * 9 for _ in range(3)]
    for a in range(3):
        for b in range(3):
            rows[a][a * 3 + b] = 1
    assert rank == minor_rank(rows) == 3


def test_rank_under_unknowns_r20():
    instance, bulletin, shares = generate_instance(DealerParams(r=20, k=4, n=2, seed=6))
    rank = secrecy_rank_check(shares[0].u, bulletin.u_prime[0], 20)
    assert rank <= 20
    assert 20 * 20 == 400


def test_rank_dimension_mismatch():
    with pytest.raises(ValueError):
        secrecy_rank_check(BinaryVector([1, 1]), Vector([1, 2, 3]), 2)


# ---------------------------------------------------------------------------
# share delivery
# ---------------------------------------------------------------------------

def test_generation_retry_cap(monkeypatch):
    import matshare.dealer as dealer_mod
    from matshare.errors import GenerationFailure

    monkeypatch.setattr(dealer_mod, "is_invertible", lambda m: False)
    with pytest.raises(GenerationFailure):
        generate_instance(DealerParams(r=4, k=6, n=3, seed=0))


def test_deliver_shares_is_secure_only():
    _, bulletin, shares = small_instance(11)
    net = Network([f"P{j}" for j in (1, 2, 3)])
    deliver_shares(net, shares)
    assert len(net.transcript.envelopes) == 6
    assert all(e.visibility == SECURE for e in net.transcript.envelopes)
    assert net.transcript.eavesdropper_view == []
