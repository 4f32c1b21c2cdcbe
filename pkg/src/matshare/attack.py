"""Oracles against the underlying hard problem and the protocol's leakage.

The exhaustive search solves the bounded matrix-representability search
problem at desk scale: find n matrices in the public set whose ordered
product equals a target.  The ratio analysis shows what a passive
observer of the public reconstruction reveals can extract: each
consecutive pair of reveals quotients to a raw shadow.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import List, Optional, Sequence, Tuple

from .algebra import Matrix, _inverse_parts, mat_mul
from .dealer import Bulletin
from .errors import GuardrailExceeded
from .transport import Envelope, broadcast_matrices, participant_position

ORDERED_DISTINCT = "ordered-distinct"
ORDERED_WITH_REPETITION = "ordered-rep"
MULTISET = "multiset"

#: sequences an un-forced exhaustive search will refuse to enumerate past
GUARDRAIL_LIMIT = 10**7


@dataclass(frozen=True)
class SearchProblem:
    matrices: Tuple[Matrix, ...]
    n: int
    target: Matrix

    def __post_init__(self):
        object.__setattr__(self, "matrices", tuple(self.matrices))
        if not 1 <= self.n <= len(self.matrices):
            raise ValueError("need 1 <= n <= k")
        dims = {m.dim for m in self.matrices} | {self.target.dim}
        if len(dims) != 1:
            raise ValueError("all matrices must share one dimension")


@dataclass(frozen=True)
class SearchResult:
    solutions: Tuple[Tuple[int, ...], ...]
    nodes_explored: int
    elapsed: float


@dataclass(frozen=True)
class RatioHit:
    """One shadow recovered (or gap reported) from a consecutive reveal pair."""

    position: int
    matrix: Optional[Matrix]
    matrix_index: Optional[int]


def count_search_space(k: int, n: int, mode: str) -> int:
    """Cardinality of the search space in the given enumeration mode."""
    if not 1 <= n <= k:
        raise ValueError("need 1 <= n <= k")
    if mode == MULTISET:
        return math.comb(k + n - 1, n)
    if mode == ORDERED_DISTINCT:
        return math.perm(k, n)
    if mode == ORDERED_WITH_REPETITION:
        return k**n
    raise ValueError(f"unknown mode: {mode!r}")


def _ordered_product(matrices: Sequence[Matrix], seq) -> Matrix:
    # sequences are read in ring order: later indices multiply on the left
    acc = None
    for idx in seq:
        acc = matrices[idx] if acc is None else mat_mul(matrices[idx], acc)
    return acc


def exhaustive_search(
    problem: SearchProblem,
    mode: str = ORDERED_DISTINCT,
    limit: Optional[int] = None,
    allow_large: bool = False,
) -> SearchResult:
    """Enumerate every ordered sequence in the mode; no pruning, no heuristics.

    Returns each sequence whose ordered product equals the target, up to
    `limit`.  Spaces beyond the desk-scale guardrail are refused unless
    explicitly overridden.
    """
    if mode not in (ORDERED_DISTINCT, ORDERED_WITH_REPETITION):
        raise ValueError(f"mode must be enumerable, got {mode!r}")
    k = len(problem.matrices)
    space = count_search_space(k, problem.n, mode)
    if space > GUARDRAIL_LIMIT and not allow_large:
        raise GuardrailExceeded(space, GUARDRAIL_LIMIT)

    if mode == ORDERED_DISTINCT:
        sequences = permutations(range(k), problem.n)
    else:
        sequences = product(range(k), repeat=problem.n)

    started = time.perf_counter()
    solutions: List[Tuple[int, ...]] = []
    nodes = 0
    for seq in sequences:
        nodes += 1
        if _ordered_product(problem.matrices, seq) == problem.target:
            solutions.append(tuple(seq))
            if limit is not None and len(solutions) >= limit:
                break
    elapsed = time.perf_counter() - started
    return SearchResult(tuple(solutions), nodes, elapsed)


def ratio_analysis(eavesdropper_view: Sequence[Envelope], bulletin: Bulletin) -> List[RatioHit]:
    """Recover shadows from consecutive public reconstruction reveals.

    For reveals V_j, V_{j+1} the quotient V_{j+1} V_j^-1 is exactly the
    shadow of whoever broadcast V_{j+1}; matching it against the public
    set identifies that participant's secret index.  A singular reveal
    yields a gap entry instead of a recovered matrix.
    """
    reveals = broadcast_matrices(eavesdropper_view)
    hits: List[RatioHit] = []
    for prev, nxt in zip(reveals, reveals[1:]):
        position = participant_position(nxt.sender)
        num, den = _inverse_parts(prev.payload)
        if den == 0:
            hits.append(RatioHit(position=position, matrix=None, matrix_index=None))
            continue
        scaled = mat_mul(nxt.payload, Matrix(num))
        shadow = Matrix(
            [
                [Fraction(v, den) if isinstance(v, int) else v / den for v in row]
                for row in scaled.rows
            ]
        )
        index = next(
            (m for m, candidate in enumerate(bulletin.matrices) if candidate == shadow),
            None,
        )
        hits.append(RatioHit(position=position, matrix=shadow, matrix_index=index))
    return hits
