"""Exact linear algebra over the rationals.

Rank, nullspace bases, and modular rank probes for dense matrices with
rational entries.  Small systems are eliminated fraction-free over the
integers after clearing denominators.  Large systems first compute a
candidate nullspace modulo a random 31-bit prime, lift the candidates by
rational reconstruction, and certify them by exact substitution; the
certified count together with the modular rank pins the exact rank.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

Rational = Fraction

#: Systems with more (nonzero) rows than this go through the modular path.
MODULAR_ROW_THRESHOLD = 1000

_BLOCK_ROWS = 2048
_PROBE_SEED = 0x51BB1E
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

CancelToken = Callable[[], bool]


class DimensionError(ValueError):
    """Matrix shape makes the requested operation meaningless."""


class PrimeDivisorError(ArithmeticError):
    """The chosen prime divides a denominator; retry with a new prime."""


class ComputationCancelled(RuntimeError):
    """A cooperative cancellation token fired during a long computation."""


def _check_cancel(cancel: CancelToken | None) -> None:
    if cancel is not None and cancel():
        raise ComputationCancelled("computation cancelled by caller")


class RationalMatrix:
    """Immutable dense matrix with exact rational entries, row-major.

    Entries may be ints or Fractions; arithmetic never leaves the
    rationals.  Instances are hashable and safe to share.
    """

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        if rows < 0 or cols < 0:
            raise DimensionError(f"negative dimensions: {rows}x{cols}")
        data = tuple(entries)
        if len(data) != rows * cols:
            raise DimensionError(
                f"expected {rows * cols} entries for {rows}x{cols}, got {len(data)}"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_entries", data)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        if not rows:
            return cls(0, 0, ())
        ncols = len(rows[0])
        flat = []
        for r in rows:
            if len(r) != ncols:
                raise DimensionError("ragged rows")
            flat.extend(r)
        return cls(len(rows), ncols, flat)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, (1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def entry(self, i: int, j: int):
        return self._entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self._entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self.cols,
            self.rows,
            (self.entry(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def matvec(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise DimensionError(f"vector length {len(v)} != cols {self.cols}")
        out = []
        for i in range(self.rows):
            base = i * self.cols
            out.append(sum(self._entries[base + j] * v[j] for j in range(self.cols)))
        return tuple(out)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.column(j) for j in range(other.cols)]
        flat = []
        for i in range(self.rows):
            r = self.row(i)
            for c in cols:
                flat.append(sum(a * b for a, b in zip(r, c) if a and b))
        return RationalMatrix(self.rows, other.cols, flat)

    def column(self, j: int) -> tuple:
        return tuple(self._entries[i * self.cols + j] for i in range(self.rows))

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._same_shape(other)
        return RationalMatrix(
            self.rows, self.cols, (a + b for a, b in zip(self._entries, other._entries))
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._same_shape(other)
        return RationalMatrix(
            self.rows, self.cols, (a - b for a, b in zip(self._entries, other._entries))
        )

    def scale(self, s) -> "RationalMatrix":
        return RationalMatrix(self.rows, self.cols, (s * a for a in self._entries))

    def _same_shape(self, other: "RationalMatrix") -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch: {self.shape} vs {other.shape}")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(not e for e in self._entries)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entry(i, j) == self.entry(j, i)
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for a, b in zip(self._entries, other._entries)
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._entries))

    def __repr__(self) -> str:
        if self.rows * self.cols <= 36:
            return f"RationalMatrix({self.to_rows()!r})"
        return f"RationalMatrix(<{self.rows}x{self.cols}>)"


# ---------------------------------------------------------------------------
# sparse integer form
# ---------------------------------------------------------------------------

SparseRow = list[tuple[int, int]]  # sorted (column, integer coefficient) pairs


def integer_rows(m: RationalMatrix) -> list[SparseRow]:
    """Clear denominators row by row and drop zero rows.

    Scaling rows by positive integers changes neither rank nor nullspace.
    """
    out: list[SparseRow] = []
    for i in range(m.rows):
        row = m.row(i)
        nz = [(j, v) for j, v in enumerate(row) if v]
        if not nz:
            continue
        scale = 1
        for _, v in nz:
            if isinstance(v, Fraction):
                scale = scale * v.denominator // math.gcd(scale, v.denominator)
        ints = [(j, int(v * scale)) for j, v in nz]
        g = 0
        for _, v in ints:
            g = math.gcd(g, v)
        if g > 1:
            ints = [(j, v // g) for j, v in ints]
        out.append(ints)
    return out


def _verify_in_nullspace(rows: Sequence[SparseRow], vector: Sequence) -> bool:
    """Exact substitution check: every row dotted with vector is zero."""
    for row in rows:
        if sum(c * vector[j] for j, c in row) != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# exact fraction-free elimination
# ---------------------------------------------------------------------------

def _bareiss_echelon(
    sparse_rows: Sequence[SparseRow],
    ncols: int,
    cancel: CancelToken | None = None,
) -> tuple[list[list[int]], list[int]]:
    """Fraction-free forward elimination on integer rows.

    Pivot choice: entry of smallest bit length in the pivot column, ties
    broken by lowest row index.  Returns the pivot rows (dense integer
    lists) and their pivot columns, in column order.
    """
    work: list[list[int]] = []
    for sr in sparse_rows:
        dense = [0] * ncols
        for j, c in sr:
            dense[j] = c
        work.append(dense)

    pivot_rows: list[list[int]] = []
    pivot_cols: list[int] = []
    prev = 1
    for col in range(ncols):
        if not work:
            break
        _check_cancel(cancel)
        best_idx = -1
        best_bits = None
        for idx, row in enumerate(work):
            v = row[col]
            if v:
                bits = abs(v).bit_length()
                if best_bits is None or bits < best_bits:
                    best_bits = bits
                    best_idx = idx
        if best_idx < 0:
            continue
        piv_row = work.pop(best_idx)
        piv = piv_row[col]
        reduced: list[list[int]] = []
        for row in work:
            f = row[col]
            if f:
                new = [(piv * row[c] - f * piv_row[c]) // prev for c in range(ncols)]
            else:
                new = [(piv * row[c]) // prev for c in range(ncols)]
            if any(new):
                reduced.append(new)
        work = reduced
        prev = piv
        pivot_rows.append(piv_row)
        pivot_cols.append(col)
    return pivot_rows, pivot_cols


def _nullspace_from_echelon(
    pivot_rows: list[list[int]], pivot_cols: list[int], ncols: int
) -> list[tuple[Fraction, ...]]:
    """Back-substitute the canonical (reduced-echelon) nullspace basis.

    Vector for free column f has a 1 at f and 0 at every other free
    column, making coordinates in the span directly readable.
    """
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free_cols:
        v: list[Fraction] = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for t in range(len(pivot_rows) - 1, -1, -1):
            row = pivot_rows[t]
            c = pivot_cols[t]
            s = sum(row[j] * v[j] for j in range(c + 1, ncols) if row[j] and v[j])
            if s:
                v[c] = Fraction(-s) / row[c]
        basis.append(tuple(v))
    return basis


# ---------------------------------------------------------------------------
# modular arithmetic kernel
# ---------------------------------------------------------------------------

def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _random_prime31(rng: random.Random) -> int:
    while True:
        c = rng.randrange(2**30 + 1, 2**31) | 1
        if is_probable_prime(c):
            return c


class _ModPEchelon:
    """Streaming reduced echelon form over GF(p), vectorized with int64.

    Invariant: pivot rows are mutually reduced (each is zero at every
    other pivot column), so clearing a row's pivot-column support takes
    one subtraction per supported column, in any order.  Products stay
    below 2^62 because p < 2^31.
    """

    def __init__(self, ncols: int, p: int, cancel: CancelToken | None = None):
        self.ncols = ncols
        self.p = p
        self.cancel = cancel
        self._piv = np.zeros((ncols, ncols), dtype=np.int64)
        self._pivcols: list[int] = []
        self._pivmap: dict[int, int] = {}
        self._is_piv = np.zeros(ncols, dtype=bool)

    @property
    def rank(self) -> int:
        return len(self._pivcols)

    def absorb(self, block: np.ndarray) -> None:
        p = self.p
        _check_cancel(self.cancel)
        # bulk pass: clear support on the pivots known so far
        npiv = len(self._pivcols)
        for t in range(npiv):
            c = self._pivcols[t]
            colvals = block[:, c]
            nz = np.nonzero(colvals)[0]
            if nz.size:
                block[nz] = (block[nz] - colvals[nz, None] * self._piv[t][None, :]) % p
        for r in range(block.shape[0]):
            row = block[r]
            while True:
                nzc = np.nonzero(row)[0]
                if nzc.size == 0:
                    break
                hits = nzc[self._is_piv[nzc]]
                if hits.size == 0:
                    c = int(nzc[0])
                    inv = pow(int(row[c]), p - 2, p)
                    row = (row * inv) % p
                    self._insert_pivot(c, row)
                    break
                c = int(hits[0])
                row = (row - row[c] * self._piv[self._pivmap[c]]) % p

    def _insert_pivot(self, col: int, row: np.ndarray) -> None:
        # row must already be clear of every other pivot column
        p = self.p
        n = len(self._pivcols)
        if n:
            colvals = self._piv[:n, col]
            nz = np.nonzero(colvals)[0]
            if nz.size:
                self._piv[nz] = (self._piv[nz] - colvals[nz, None] * row[None, :]) % p
        self._piv[n] = row
        self._pivmap[col] = n
        self._pivcols.append(col)
        self._is_piv[col] = True

    def reduced_rows(self) -> tuple[list[int], np.ndarray]:
        """Pivot columns (ascending) and matching reduced pivot rows."""
        order = np.argsort(self._pivcols, kind="stable")
        cols = [self._pivcols[i] for i in order]
        return cols, self._piv[order]


def _sparse_rows_mod_p(
    sparse_rows: Sequence[SparseRow], ncols: int, p: int
) -> Iterable[np.ndarray]:
    """Yield dense int64 blocks of the rows reduced mod p."""
    block = np.zeros((min(_BLOCK_ROWS, len(sparse_rows)), ncols), dtype=np.int64)
    fill = 0
    for sr in sparse_rows:
        if fill == block.shape[0]:
            yield block
            block = np.zeros(
                (min(_BLOCK_ROWS, len(sparse_rows)), ncols), dtype=np.int64
            )
            fill = 0
        block[fill].fill(0)
        for j, c in sr:
            block[fill, j] = c % p
        fill += 1
    if fill:
        yield block[:fill]


def _modp_rref(
    sparse_rows: Sequence[SparseRow],
    ncols: int,
    p: int,
    cancel: CancelToken | None = None,
) -> tuple[list[int], np.ndarray]:
    eng = _ModPEchelon(ncols, p, cancel)
    for block in _sparse_rows_mod_p(sparse_rows, ncols, p):
        eng.absorb(block)
    return eng.reduced_rows()


def rational_reconstruct(residue: int, p: int) -> Fraction | None:
    """Balanced lift or Wang reconstruction of a residue mod p.

    Returns None when no fraction with numerator and denominator below
    sqrt(p/2) matches; the caller must treat that as a failed lift.
    """
    r = residue % p
    if r == 0:
        return Fraction(0)
    bound = math.isqrt((p - 1) // 2)
    balanced = r if r <= p // 2 else r - p
    if abs(balanced) <= bound:
        return Fraction(balanced)
    r0, t0, r1, t1 = p, 0, r, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if r1 == 0 or abs(t1) > bound or t1 == 0:
        return None
    if t1 < 0:
        r1, t1 = -r1, -t1
    if math.gcd(abs(r1), t1) != 1 or math.gcd(t1, p) != 1:
        return None
    return Fraction(r1, t1)


class _LiftFailure(Exception):
    """Modular candidate could not be lifted or certified."""


def _modular_nullspace(
    sparse_rows: Sequence[SparseRow],
    ncols: int,
    p: int,
    cancel: CancelToken | None = None,
) -> tuple[list[tuple[Fraction, ...]], list[int], int]:
    """Candidate nullspace mod p, lifted and certified exactly.

    Returns (basis, free_cols, rank).  The certified vector count equals
    ncols - rank_p, and rank_p is a lower bound on the true rank, so
    both outputs are exact when certification succeeds.
    """
    pivcols, rref = _modp_rref(sparse_rows, ncols, p, cancel)
    rank_p = len(pivcols)
    pivot_set = set(pivcols)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis: list[tuple[Fraction, ...]] = []
    for f in free_cols:
        _check_cancel(cancel)
        v: list[Fraction] = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for t, c in enumerate(pivcols):
            residue = int(rref[t, f])
            if residue:
                lifted = rational_reconstruct((-residue) % p, p)
                if lifted is None:
                    raise _LiftFailure(f"entry ({c},{f}) did not reconstruct")
                v[c] = lifted
        if not _verify_in_nullspace(sparse_rows, v):
            raise _LiftFailure("lifted vector failed exact substitution")
        basis.append(tuple(v))
    # certified vectors bound the nullity below; the modular rank bounds
    # it above, so equality certifies both numbers exactly
    if len(basis) != ncols - rank_p:
        raise _LiftFailure("candidate count inconsistent with modular rank")
    return basis, free_cols, rank_p


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def nullspace_with_info(
    sparse_rows: Sequence[SparseRow],
    ncols: int,
    cancel: CancelToken | None = None,
    force_exact: bool = False,
) -> tuple[list[tuple[Fraction, ...]], list[int], int]:
    """Nullspace basis, free columns, and rank for pre-cleared integer rows.

    The workhorse behind ``nullspace_basis``/``rank``, also called
    directly by the derivation engine to avoid building dense matrices.
    The t-th basis vector has a 1 at the t-th free column, so span
    coordinates can be read off at the free columns.
    """
    if ncols < 1:
        raise DimensionError("matrix must have at least one column")
    if not force_exact and len(sparse_rows) > MODULAR_ROW_THRESHOLD:
        rng = random.Random(_PROBE_SEED)
        for _ in range(3):
            p = _random_prime31(rng)
            try:
                return _modular_nullspace(sparse_rows, ncols, p, cancel)
            except _LiftFailure:
                continue
        # fall through to the exact path
    pivot_rows, pivot_cols = _bareiss_echelon(sparse_rows, ncols, cancel)
    basis = _nullspace_from_echelon(pivot_rows, pivot_cols, ncols)
    for v in basis:
        if not _verify_in_nullspace(sparse_rows, v):
            raise RuntimeError("internal error: exact nullspace failed substitution")
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    return basis, free_cols, len(pivot_cols)


def nullspace_of_rows(
    sparse_rows: Sequence[SparseRow],
    ncols: int,
    cancel: CancelToken | None = None,
    force_exact: bool = False,
) -> tuple[list[tuple[Fraction, ...]], int]:
    basis, _, r = nullspace_with_info(sparse_rows, ncols, cancel, force_exact)
    return basis, r


def _require_nonempty(m: RationalMatrix) -> None:
    if m.rows < 1 or m.cols < 1:
        raise DimensionError(f"operation needs a nonempty matrix, got {m.shape}")


def rank(m: RationalMatrix, cancel: CancelToken | None = None) -> int:
    """Exact rank over the rationals."""
    _require_nonempty(m)
    _, r = nullspace_of_rows(integer_rows(m), m.cols, cancel)
    return r


def nullspace_basis(
    m: RationalMatrix, cancel: CancelToken | None = None
) -> list[tuple[Fraction, ...]]:
    """Canonical basis of the right nullspace, verified by substitution.

    Returns exactly cols - rank vectors; each vector has a 1 at its free
    column and 0 at every other free column.
    """
    _require_nonempty(m)
    basis, _ = nullspace_of_rows(integer_rows(m), m.cols, cancel)
    return basis


def rank_modular_probe(m: RationalMatrix, prime: int) -> int:
    """Rank of m reduced mod prime: a fast lower bound for the true rank.

    Never a final answer on its own; pair it with certified nullspace
    vectors to sandwich the exact rank.
    """
    _require_nonempty(m)
    if prime <= 2**30:
        raise ValueError(f"prime must exceed 2**30, got {prime}")
    if not is_probable_prime(prime):
        raise ValueError(f"{prime} is not prime")
    for i in range(m.rows):
        for v in m.row(i):
            if isinstance(v, Fraction) and v.denominator % prime == 0:
                raise PrimeDivisorError(
                    f"prime {prime} divides a denominator; retry with a new prime"
                )
    sparse: list[SparseRow] = []
    for i in range(m.rows):
        row = []
        for j, v in enumerate(m.row(i)):
            if v:
                if isinstance(v, Fraction):
                    r = v.numerator * pow(v.denominator, prime - 2, prime) % prime
                else:
                    r = v % prime
                if r:
                    row.append((j, r))
        if row:
            sparse.append(row)
    pivcols, _ = _modp_rref(sparse, m.cols, prime)
    return len(pivcols)


# ---------------------------------------------------------------------------
# symmetric definiteness certificates
# ---------------------------------------------------------------------------

def ldl_pivots(m: RationalMatrix) -> list[Fraction]:
    """Pivots of the symmetric LDL^T elimination (no permutations).

    The k-th pivot equals minor_k / minor_{k-1}, so the leading
    principal minor signs are exactly the cumulative pivot signs.  Stops
    at the first zero pivot, which already rules out definiteness.
    """
    if not m.is_symmetric():
        raise DimensionError("LDL requires a symmetric matrix")
    n = m.rows
    a = [[Fraction(m.entry(i, j)) for j in range(n)] for i in range(n)]
    pivots: list[Fraction] = []
    for k in range(n):
        piv = a[k][k]
        pivots.append(piv)
        if piv == 0:
            break
        for i in range(k + 1, n):
            f = a[i][k] / piv
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return pivots


def principal_minor_signs(m: RationalMatrix) -> list[int]:
    """Signs of the leading principal minors, computed exactly."""
    signs = []
    minor_sign = 1
    for piv in ldl_pivots(m):
        if minor_sign == 0 or piv == 0:
            minor_sign = 0
        else:
            minor_sign *= 1 if piv > 0 else -1
        signs.append(minor_sign)
    while len(signs) < m.rows:
        signs.append(0)
    return signs


def is_negative_definite(m: RationalMatrix) -> bool:
    """True iff the symmetric matrix is negative definite.

    Checked via principal minor signs alternating (-1)^k.  An empty
    (0-dimensional) form is vacuously negative definite, which is the
    right convention for Killing forms of trivial Lie algebras.
    """
    if m.rows == 0:
        return True
    signs = principal_minor_signs(m)
    return all(s == (-1) ** (k + 1) for k, s in enumerate(signs))


def is_positive_definite(m: RationalMatrix) -> bool:
    if m.rows == 0:
        return True
    return all(s == 1 for s in principal_minor_signs(m))
