"""The circular-shift verification and blinded reconstruction rounds.

A round walks the participant ring exactly once from its start position.
Verification chains each shadow onto the starter's private check vector
and compares the result against the published image, detecting forged
shadows.  Reconstruction blinds the same chain with a random invertible
matrix so each intermediate reveal is publishable, then the starter
strips the blinding with a two-sided inverse and recovers the secret.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .algebra import (
    Matrix,
    _inverse_parts,
    freivalds_verify,
    mat_mul,
    mat_vec_mul,
    sample_invertible_matrix,
)
from .dealer import Bulletin, Reveal, Share, deliver_shares, ring_walk
from .errors import IntegrityFailure, SingularMatrix
from .transport import (
    BROADCAST,
    PUBLIC,
    SECURE,
    Network,
    Transcript,
    broadcast_matrices,
    participant_name,
)

VERIFICATION = "verification"
RECONSTRUCTION = "reconstruction"

IDLE = "idle"
VERIFYING = "verifying"
RECONSTRUCTING = "reconstructing"
DONE = "done"


@dataclass
class ParticipantState:
    """Simulation-confined state of one ring member."""

    share: Share
    phase: str = IDLE
    pending: object = None
    x_blind: Optional[Matrix] = None
    recovered: Optional[Matrix] = None
    verdict: Optional[bool] = None


@dataclass(frozen=True)
class RoundPlan:
    """One circular shift of the ring: the walk order for a single round."""

    kind: str
    start: int
    n: int

    def __post_init__(self):
        if self.kind not in (VERIFICATION, RECONSTRUCTION):
            raise ValueError(f"unknown round kind: {self.kind!r}")
        if not 1 <= self.start <= self.n:
            raise ValueError(f"start must be in [1, {self.n}]")

    @property
    def order(self) -> List[int]:
        return ring_walk(self.start, self.n)


@dataclass(frozen=True)
class CheaterSpec:
    """A participant who substitutes a forged matrix for their true shadow."""

    position: int
    forged: Matrix


def make_states(shares: List[Share]) -> Dict[int, ParticipantState]:
    return {share.participant: ParticipantState(share=share) for share in shares}


def _fresh_network(n: int) -> Network:
    return Network([participant_name(j) for j in range(1, n + 1)])


def _effective_shadow(bulletin: Bulletin, states, pos: int, cheater) -> Matrix:
    true_shadow = bulletin.shadow_of(states[pos].share)
    if cheater is not None and cheater.position == pos:
        if cheater.forged == true_shadow:
            raise ValueError("forged shadow must differ from the true shadow")
        return cheater.forged
    return true_shadow


def run_verification(
    plan: RoundPlan,
    states: Dict[int, ParticipantState],
    bulletin: Bulletin,
    cheater: Optional[CheaterSpec] = None,
    net: Optional[Network] = None,
) -> Tuple[bool, Transcript]:
    """Walk the ring once, chaining shadows onto the starter's check vector.

    The final participant compares the chained vector against the published
    image for this start position and broadcasts the boolean verdict.  A
    dimension mismatch anywhere aborts the round with a false verdict.
    """
    if plan.kind != VERIFICATION:
        raise ValueError("plan.kind must be verification")
    if net is None:
        net = _fresh_network(plan.n)
    walk = plan.order
    u = states[plan.start].share.u
    v = None
    for idx, pos in enumerate(walk):
        states[pos].phase = VERIFYING
        shadow = _effective_shadow(bulletin, states, pos, cheater)
        operand = u if v is None else v
        if shadow.dim != operand.dim:
            # malformed message: abort the round with a public false verdict
            verdict = False
            net.broadcast(participant_name(pos), verdict)
            _record_verdict(states, verdict)
            return verdict, net.transcript
        v = mat_vec_mul(shadow, operand)
        if idx + 1 < len(walk):
            nxt = walk[idx + 1]
            net.send(participant_name(pos), participant_name(nxt), PUBLIC, v)
            states[nxt].pending = v
    verdict = v == bulletin.u_prime[plan.start - 1]
    net.broadcast(participant_name(walk[-1]), verdict)
    _record_verdict(states, verdict)
    return verdict, net.transcript


def _record_verdict(states, verdict: bool) -> None:
    for state in states.values():
        state.verdict = verdict
        state.phase = IDLE


def run_reconstruction(
    plan: RoundPlan,
    states: Dict[int, ParticipantState],
    bulletin: Bulletin,
    rng,
    net: Optional[Network] = None,
    x_entry_bound: int = 256,
    x_override: Optional[Matrix] = None,
) -> Tuple[Matrix, Transcript]:
    """Walk the ring once with a blinded chain and recover the secret.

    The starter broadcasts shadow*X for a fresh random invertible X, every
    successor broadcasts shadow*received, the last participant hands the
    full chain value back to the starter, and the starter combines it with
    the reveal made at ring position n to strip both X and the wrapped
    partial product.
    """
    if plan.kind != RECONSTRUCTION:
        raise ValueError("plan.kind must be reconstruction")
    if net is None:
        net = _fresh_network(plan.n)
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    walk = plan.order
    start = plan.start
    starter = states[start]
    r = bulletin.r

    if x_override is not None:
        x = x_override
    else:
        x = sample_invertible_matrix(r, x_entry_bound, rng)
    starter.x_blind = x
    starter.phase = RECONSTRUCTING

    round_reveals: List[Reveal] = []
    v = None
    for pos in walk:
        states[pos].phase = RECONSTRUCTING
        shadow = bulletin.shadow_of(states[pos].share)
        v = mat_mul(shadow, x if v is None else v)
        net.broadcast(participant_name(pos), v)
        reveal = Reveal(position=pos, matrix=v)
        round_reveals.append(reveal)
        bulletin.reveals.append(reveal)

    # the last walker gives what they computed back to the starter
    net.send(participant_name(walk[-1]), participant_name(start), PUBLIC, v)
    starter.pending = v

    b = v
    c = round_reveals[walk.index(plan.n)].matrix
    recovered = recover_secret(b, c, x)
    starter.recovered = recovered
    # the starter's private record of the outcome; never visible publicly
    net.send(participant_name(start), participant_name(start), SECURE, recovered)
    for pos in walk:
        states[pos].phase = DONE
    return recovered, net.transcript


def recover_secret(b: Matrix, c: Matrix, x: Matrix) -> Matrix:
    """Strip the blinding: (c x^-1) (b c^-1), exact over the rationals.

    With b the full blinded chain and c the partial chain through ring
    position n, the rational intermediates cancel and the result is the
    canonical secret; any non-integer entry means the reveals were
    inconsistent.
    """
    if not (b.dim == c.dim == x.dim):
        raise ValueError(f"dimension mismatch: {b.dim}, {c.dim}, {x.dim}")
    x_num, x_den = _inverse_parts(x)
    if x_den == 0:
        raise SingularMatrix("blinding matrix is singular")
    c_num, c_den = _inverse_parts(c)
    if c_den == 0:
        raise SingularMatrix("partial-product reveal is singular")
    # (c x^-1)(b c^-1) == (c * Nx * b * Nc) / (dx * dc) with all-integer factors
    num = mat_mul(mat_mul(mat_mul(c, Matrix(x_num)), b), Matrix(c_num))
    den = x_den * c_den
    result = Matrix(
        [
            [Fraction(v, den) if isinstance(v, int) else v / den for v in row]
            for row in num.rows
        ]
    )
    if not result.is_integer():
        raise IntegrityFailure("recovered matrix has non-integer entries; reveals are inconsistent")
    return result


def freivalds_audit(transcript: Transcript, bulletin: Bulletin, t: int, seed) -> bool:
    """Audit a reconstruction transcript with probabilistic product checks.

    Every consecutive pair of public reveals must be explainable as one
    public-set matrix applied to the previous reveal; each candidate is
    screened with t Freivalds iterations instead of a full product.  The
    hand-back must equal the final reveal exactly.  Returns the
    conjunction of all checks; a false return signals inconsistent
    reveals.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    rng = random.Random(seed) if not isinstance(seed, random.Random) else seed
    reveals = broadcast_matrices(transcript.envelopes)
    for prev, nxt in zip(reveals, reveals[1:]):
        if not any(
            freivalds_verify(candidate, prev.payload, nxt.payload, t, rng)
            for candidate in bulletin.matrices
        ):
            return False
    handbacks = [
        e
        for e in transcript.envelopes
        if e.visibility == PUBLIC and e.recipient != BROADCAST and isinstance(e.payload, Matrix)
    ]
    if handbacks and reveals and handbacks[-1].payload != reveals[-1].payload:
        return False
    return True


@dataclass
class RunResult:
    """Outcome of one full simulated round (delivery, verification, reconstruction)."""

    verdict: bool
    recovered: Optional[Matrix]
    states: Dict[int, ParticipantState]
    transcript: Transcript
    bulletin: Optional[Bulletin] = field(repr=False, default=None)


def simulate_run(
    bulletin: Bulletin,
    shares: List[Share],
    start: int,
    rng,
    cheater: Optional[CheaterSpec] = None,
    include_delivery: bool = True,
    x_entry_bound: int = 256,
) -> RunResult:
    """Drive one complete round; reconstruction only happens on a true verdict."""
    net = _fresh_network(bulletin.n)
    if include_delivery:
        deliver_shares(net, shares)
    states = make_states(shares)
    verdict, _ = run_verification(
        RoundPlan(VERIFICATION, start, bulletin.n), states, bulletin, cheater, net
    )
    recovered = None
    if verdict:
        recovered, _ = run_reconstruction(
            RoundPlan(RECONSTRUCTION, start, bulletin.n),
            states,
            bulletin,
            rng,
            net,
            x_entry_bound=x_entry_bound,
        )
    net.close()
    return RunResult(verdict, recovered, states, net.transcript, bulletin)
