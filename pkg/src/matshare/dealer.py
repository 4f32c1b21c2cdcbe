"""The trusted dealer: instance generation, shares, check pairs, bulletin.

The dealer samples the public matrix set, privately fixes an ordered
selection sigma of n distinct indices, and defines the secret as the
chained product of the selected shadows.  Participants only ever receive
an index into the public set, the ring ordering, and a private binary
check vector; the published check image lets any circular shift of the
ring verify itself without exposing the secret.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import List, Tuple

from .algebra import (
    BinaryVector,
    Matrix,
    Vector,
    is_invertible,
    mat_mul,
    mat_vec_mul,
    matrix_rank,
    sample_check_vector,
    sample_matrix,
)
from .errors import GenerationFailure
from .transport import DEALER, SECURE, IndexPointer, Network, participant_name

#: whole-instance retries before giving up on an all-invertible selection
MAX_INSTANCE_RETRIES = 1000


@dataclass(frozen=True)
class DealerParams:
    """Generation parameters; validation errors name the violated constraint."""

    r: int
    k: int
    n: int
    entry_bound: int = 256
    seed: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n >= 2 required")
        if self.n > self.k:
            raise ValueError("n <= k required")
        if self.r <= self.n:
            raise ValueError("r > n required")
        if self.entry_bound < 2:
            raise ValueError("entry_bound >= 2 required")


@dataclass(frozen=True)
class Instance:
    """Dealer-side ground truth; sigma and secret are never published."""

    matrices: Tuple[Matrix, ...]
    sigma: Tuple[int, ...]
    secret: Matrix

    def shadow(self, position: int) -> Matrix:
        """The matrix held by the participant at ring position 1..n."""
        return self.matrices[self.sigma[position - 1]]

    @property
    def n(self) -> int:
        return len(self.sigma)


@dataclass(frozen=True)
class Share:
    """One participant's private material."""

    participant: int
    matrix_index: int
    ring: Tuple[int, ...]
    u: BinaryVector


@dataclass(frozen=True)
class Reveal:
    """A public protocol message kept on the bulletin."""

    position: int
    matrix: Matrix


@dataclass
class Bulletin:
    """All public data: the matrix set, parameters, check images, reveals."""

    r: int
    k: int
    n: int
    matrices: Tuple[Matrix, ...]
    u_prime: Tuple[Vector, ...]
    reveals: List[Reveal] = field(default_factory=list)

    def shadow_of(self, share: Share) -> Matrix:
        return self.matrices[share.matrix_index]


def ring_walk(start: int, n: int) -> List[int]:
    """Ring positions visited once, starting at `start`: successor of j is (j mod n)+1."""
    if not 1 <= start <= n:
        raise ValueError(f"start must be in [1, {n}]")
    return [(start - 1 + j) % n + 1 for j in range(n)]


def rotated_product(instance: Instance, start: int) -> Matrix:
    """Product of all shadows in ring order from `start`, later factors on the left.

    Starting at 1 this is the canonical secret.
    """
    acc = None
    for pos in ring_walk(start, instance.n):
        shadow = instance.shadow(pos)
        acc = shadow if acc is None else mat_mul(shadow, acc)
    return acc


def compute_check_pairs(instance: Instance, rng) -> Tuple[List[BinaryVector], List[Vector]]:
    """Private check vectors U_i and their published images.

    The image published for start position i is the chained product the
    verification walk starting at i actually computes, i.e. the rotated
    product applied to U_i; for i = 1 that product is the secret itself.
    """
    r = instance.secret.dim
    us: List[BinaryVector] = []
    u_primes: List[Vector] = []
    for i in range(1, instance.n + 1):
        u = sample_check_vector(r, rng)
        v = None
        for pos in ring_walk(i, instance.n):
            v = mat_vec_mul(instance.shadow(pos), u if v is None else v)
        us.append(u)
        u_primes.append(v)
    return us, u_primes


def generate_instance(params: DealerParams) -> Tuple[Instance, Bulletin, List[Share]]:
    """Generate an instance, its public bulletin and the private shares.

    Fully deterministic given params.seed.  Every shadow selected by sigma
    must be invertible (the recovery formula inverts partial products), so
    a selection that hits a singular matrix retries the whole instance.
    """
    rng = random.Random(params.seed)
    for _ in range(MAX_INSTANCE_RETRIES):
        matrices = tuple(
            sample_matrix(params.r, params.entry_bound, rng) for _ in range(params.k)
        )
        sigma = tuple(rng.sample(range(params.k), params.n))
        if all(is_invertible(matrices[idx]) for idx in sigma):
            break
    else:
        raise GenerationFailure(
            f"no all-invertible selection found in {MAX_INSTANCE_RETRIES} instance retries"
        )

    secret = None
    for idx in sigma:
        secret = matrices[idx] if secret is None else mat_mul(matrices[idx], secret)

    instance = Instance(matrices=matrices, sigma=sigma, secret=secret)
    us, u_primes = compute_check_pairs(instance, rng)

    ring = tuple(range(1, params.n + 1))
    shares = [
        Share(participant=j, matrix_index=sigma[j - 1], ring=ring, u=us[j - 1])
        for j in ring
    ]
    bulletin = Bulletin(
        r=params.r,
        k=params.k,
        n=params.n,
        matrices=matrices,
        u_prime=tuple(u_primes),
    )
    return instance, bulletin, shares


def deliver_shares(net: Network, shares: List[Share]) -> None:
    """Distribute shares over the secure channel, never the public one."""
    for share in shares:
        who = participant_name(share.participant)
        net.send(DEALER, who, SECURE, IndexPointer(share.matrix_index, share.ring))
        net.send(DEALER, who, SECURE, share.u)


def secrecy_rank_check(u: BinaryVector, u_prime: Vector, r: int) -> int:
    """Rank of the constraint system {X u = u'} over the r^2 unknown entries of X.

    Row a of the system constrains only the a-th row of X, so the
    coefficient matrix is r x r^2 and its rank never exceeds r: one pair
    of check vectors leaves the secret hopelessly underdetermined.
    """
    if u.dim != r or u_prime.dim != r:
        raise ValueError("dimension mismatch")
    rows = []
    for a in range(r):
        row = [0] * (r * r)
        for b in range(r):
            row[a * r + b] = u.bits[b]
        rows.append(row)
    return matrix_rank(rows)
