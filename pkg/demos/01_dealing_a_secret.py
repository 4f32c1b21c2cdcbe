#!/usr/bin/env python3
"""Walkthrough of the dealer: what gets published, what stays hidden.

The dealer samples k random integer matrices (the public set), privately
picks an ordered selection of n distinct indices, and multiplies the
selected shadows into the secret. Participants receive only an index,
the ring ordering, and a private binary check vector.
"""

from matshare import DealerParams, generate_instance, mat_mul, rotated_product, secrecy_rank_check

params = DealerParams(r=4, k=6, n=3, entry_bound=16, seed=2024)
instance, bulletin, shares = generate_instance(params)

print("== public bulletin ==")
print(f"r={bulletin.r}, k={bulletin.k}, n={bulletin.n}")
print(f"{len(bulletin.matrices)} public matrices, e.g. matrix 0:")
for row in bulletin.matrices[0].rows:
    print("   ", row)
print(f"{len(bulletin.u_prime)} published check images (one per start position)")

print("\n== dealer-private instance ==")
print("sigma (hidden ordered selection):", instance.sigma)
print("secret = shadow_n * ... * shadow_1:")
for row in instance.secret.rows:
    print("   ", row)

# sanity: recompute the product by hand
acc = None
for idx in instance.sigma:
    acc = bulletin.matrices[idx] if acc is None else mat_mul(bulletin.matrices[idx], acc)
assert acc == instance.secret
assert rotated_product(instance, 1) == instance.secret
print("recomputed product matches the secret")

print("\n== per-participant shares (delivered over the secure channel) ==")
for share in shares:
    print(
        f"P{share.participant}: matrix_index={share.matrix_index}, "
        f"ring={share.ring}, U weight={share.u.weight}"
    )

print("\n== why one check pair gives nothing away ==")
rank = secrecy_rank_check(shares[0].u, bulletin.u_prime[0], params.r)
print(
    f"the pair (U_1, U'_1) pins down rank {rank} of {params.r * params.r} unknown "
    f"secret entries: {params.r} equations vs {params.r * params.r} unknowns"
)
