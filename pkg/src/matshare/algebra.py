"""Exact square-matrix arithmetic over arbitrary-precision integers.

Entries are Python ints, widened to ``fractions.Fraction`` only where
inversion makes rationals unavoidable.  Everything here is deterministic
and pure: samplers take an explicit ``random.Random`` (or an int seed),
and all values are immutable once constructed, so concurrent use is safe.
"""

from __future__ import annotations

import math
import operator
import random
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import GenerationFailure, SingularMatrix

Scalar = Union[int, Fraction]

#: retry budget for rejection sampling of invertible matrices
MAX_SAMPLE_ATTEMPTS = 1000


def _canon(x) -> Scalar:
    """Reduce a scalar to canonical form: plain int whenever the denominator is 1."""
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    if isinstance(x, int):
        return x
    raise TypeError(f"matrix entries must be int or Fraction, got {type(x).__name__}")


def _as_rng(seed_or_rng) -> random.Random:
    if isinstance(seed_or_rng, random.Random):
        return seed_or_rng
    return random.Random(seed_or_rng)


class Matrix:
    """An immutable square matrix with exact (int / Fraction) entries."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[Scalar]]):
        rows = tuple(tuple(_canon(x) for x in row) for row in rows)
        if not rows:
            raise ValueError("matrix must have at least one row")
        if any(len(row) != len(rows) for row in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, r: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(r)] for i in range(r)])

    def is_integer(self) -> bool:
        """True iff every entry has denominator 1."""
        return all(isinstance(x, int) for row in self.rows for x in row)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return mat_mul(self, other)
        if isinstance(other, (Vector, BinaryVector)):
            return mat_vec_mul(self, other)
        return NotImplemented

    def __repr__(self):
        return f"Matrix({[list(row) for row in self.rows]})"


class Vector:
    """An immutable column vector with exact entries."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable[Scalar]):
        entries = tuple(_canon(x) for x in entries)
        if not entries:
            raise ValueError("vector must have at least one entry")
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Vector is immutable")

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, Vector) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"Vector({list(self.entries)})"


class BinaryVector:
    """An immutable 0/1 vector; the check vectors of the scheme."""

    __slots__ = ("bits",)

    def __init__(self, bits: Iterable[int]):
        bits = tuple(bits)
        if not bits:
            raise ValueError("binary vector must have at least one bit")
        if any(b not in (0, 1) for b in bits):
            raise ValueError("binary vector entries must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("BinaryVector is immutable")

    @property
    def dim(self) -> int:
        return len(self.bits)

    @property
    def weight(self) -> int:
        return sum(self.bits)

    def __eq__(self, other) -> bool:
        return isinstance(other, BinaryVector) and self.bits == other.bits

    def __hash__(self):
        return hash(self.bits)

    def __repr__(self):
        return f"BinaryVector({list(self.bits)})"


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Exact product a*b, classical O(r^3) schoolbook multiplication."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    cols = list(zip(*b.rows))
    return Matrix(
        tuple(sum(map(operator.mul, row, col)) for col in cols) for row in a.rows
    )


def _vec_entries(v) -> Sequence[Scalar]:
    if isinstance(v, Vector):
        return v.entries
    if isinstance(v, BinaryVector):
        return v.bits
    raise TypeError("expected Vector or BinaryVector")


def mat_vec_mul(a: Matrix, v) -> Vector:
    """Exact product a*v under the column-vector convention."""
    entries = _vec_entries(v)
    if a.dim != len(entries):
        raise ValueError(f"dimension mismatch: {a.dim} vs {len(entries)}")
    return Vector(sum(map(operator.mul, row, entries)) for row in a.rows)


def _scaled_int_rows(a: Matrix):
    """Return (rows, scale) with rows all-int and rows == scale * a."""
    if a.is_integer():
        return [list(row) for row in a.rows], 1
    scale = 1
    for row in a.rows:
        for x in row:
            if isinstance(x, Fraction):
                scale = math.lcm(scale, x.denominator)
    rows = [[int(x * scale) for x in row] for row in a.rows]
    return rows, scale


def _bareiss_det(rows) -> int:
    """Determinant of an integer matrix by fraction-free (Bareiss) elimination.

    Entries stay integer throughout; every interior division is exact.
    """
    n = len(rows)
    w = [list(row) for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if w[k][k] == 0:
            for r in range(k + 1, n):
                if w[r][k] != 0:
                    w[k], w[r] = w[r], w[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = w[k][k]
        for i in range(k + 1, n):
            row_i, row_k = w[i], w[k]
            f = row_i[k]
            w[i] = [(pivot * row_i[j] - f * row_k[j]) // prev for j in range(n)]
        prev = pivot
    return sign * w[n - 1][n - 1]


def determinant(a: Matrix) -> Scalar:
    """Exact determinant; integer matrices never leave integer arithmetic."""
    rows, scale = _scaled_int_rows(a)
    d = _bareiss_det(rows)
    if scale == 1:
        return d
    return _canon(Fraction(d, scale**a.dim))


def _inverse_parts(a: Matrix):
    """Return (num_rows, den) with a^-1 == num_rows / den, or (None, 0) if singular.

    Fraction-free Gauss-Jordan (Montante) on [A | I]: rows remain integer,
    every division is exact, and the run ends with the left block equal to
    den * I, making the right block den * A^-1.
    """
    n = a.dim
    rows, scale = _scaled_int_rows(a)
    w = [rows[i] + [scale if j == i else 0 for j in range(n)] for i in range(n)]
    prev = 1
    for k in range(n):
        if w[k][k] == 0:
            for r in range(k + 1, n):
                if w[r][k] != 0:
                    w[k], w[r] = w[r], w[k]
                    break
            else:
                return None, 0
        pivot = w[k][k]
        for i in range(n):
            if i == k:
                continue
            row_i, row_k = w[i], w[k]
            f = row_i[k]
            w[i] = [(pivot * row_i[j] - f * row_k[j]) // prev for j in range(2 * n)]
        prev = pivot
    den = w[n - 1][n - 1]
    return [row[n:] for row in w], den


def mat_inverse(a: Matrix) -> Matrix:
    """Exact rational inverse; raises SingularMatrix when det(a) == 0."""
    num, den = _inverse_parts(a)
    if den == 0:
        raise SingularMatrix(f"{a.dim}x{a.dim} matrix is singular")
    return Matrix([[Fraction(x, den) for x in row] for row in num])


def is_invertible(a: Matrix) -> bool:
    """True iff the exact determinant is nonzero."""
    rows, _ = _scaled_int_rows(a)
    return _bareiss_det(rows) != 0


def matrix_rank(rows: Sequence[Sequence[Scalar]]) -> int:
    """Rank of a rectangular system over the rationals, by Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    rank = 0
    for col in range(n_cols):
        pivot_row = None
        for i in range(rank, n_rows):
            if m[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        pivot = m[rank][col]
        for i in range(rank + 1, n_rows):
            if m[i][col] != 0:
                f = m[i][col] / pivot
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
        if rank == n_rows:
            break
    return rank


def freivalds_verify(a: Matrix, b: Matrix, c: Matrix, t: int, seed) -> bool:
    """Probabilistic check that a*b == c without forming the product.

    Runs t independent trials, each multiplying by a fresh random binary
    vector (O(r^2) per trial).  Exact products are always accepted; a wrong
    c is accepted with probability at most 2^-t.
    """
    if not (a.dim == b.dim == c.dim):
        raise ValueError(f"dimension mismatch: {a.dim}, {b.dim}, {c.dim}")
    if t < 1:
        raise ValueError("t must be >= 1")
    rng = _as_rng(seed)
    r = a.dim
    for _ in range(t):
        u = BinaryVector([rng.randrange(2) for _ in range(r)])
        if mat_vec_mul(a, mat_vec_mul(b, u)) != mat_vec_mul(c, u):
            return False
    return True


def sample_matrix(r: int, entry_bound: int, rng) -> Matrix:
    """Matrix with entries drawn independently and uniformly from {0..entry_bound-1}."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if entry_bound < 2:
        raise ValueError("entry_bound must be >= 2")
    rng = _as_rng(rng)
    return Matrix([[rng.randrange(entry_bound) for _ in range(r)] for _ in range(r)])


def sample_invertible_matrix(r: int, entry_bound: int, rng) -> Matrix:
    """Rejection-sample until invertible; singular draws are vanishingly rare.

    The retry loop is capped so a pathological configuration surfaces as a
    GenerationFailure instead of hanging.
    """
    rng = _as_rng(rng)
    for _ in range(MAX_SAMPLE_ATTEMPTS):
        m = sample_matrix(r, entry_bound, rng)
        if is_invertible(m):
            return m
    raise GenerationFailure(
        f"no invertible {r}x{r} matrix found in {MAX_SAMPLE_ATTEMPTS} attempts"
    )


def sample_check_vector(r: int, rng) -> BinaryVector:
    """Uniform binary vector of dimension r with Hamming weight >= 2.

    Weight-0 and weight-1 vectors are rejected: a weight-1 vector would
    publish a bare column of the secret matrix.
    """
    if r < 2:
        raise ValueError("r must be >= 2: no binary vector of weight >= 2 exists below that")
    rng = _as_rng(rng)
    while True:
        bits = [rng.randrange(2) for _ in range(r)]
        if sum(bits) >= 2:
            return BinaryVector(bits)
