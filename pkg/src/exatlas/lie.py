"""Derivation Lie algebras, Killing forms, and symmetric-pair splits.

A derivation of an algebra is a matrix D with D(xy) = D(x)y + xD(y);
the full space of derivations is the nullspace of a linear constraint
system assembled from the structure constants.  Everything returned
here is certified exactly: Leibniz on every ordered basis pair, bracket
closure, and the eigenspace bracket relations of an involution.

Hot paths run on scaled int64 numpy arrays.  Scales are tracked so the
integer identities are equivalent to the rational ones; bounds are
asserted so no product can overflow 64 bits.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import algebras as _alg
from . import jordan as _jordan
from .linalg import (
    CancelToken,
    DimensionError,
    RationalMatrix,
    integer_rows,
    nullspace_with_info,
    nullspace_of_rows,
)

_INT_BOUND = 1 << 20  # per-entry cap keeping every int64 contraction exact


class InvalidInvolutionError(ValueError):
    """The supplied map is not an involutive automorphism."""


@dataclass(frozen=True)
class Involution:
    """A certified order-2 automorphism of an algebra.

    Construct through ``Involution.certify`` so the invariants (squares
    to the identity, preserves the structure constants) actually hold.
    """

    algebra: "_alg.FiniteAlgebra"
    matrix: RationalMatrix

    @classmethod
    def certify(cls, algebra, matrix: RationalMatrix) -> "Involution":
        n = algebra.dim
        if matrix.shape != (n, n):
            raise InvalidInvolutionError(f"expected a {n}x{n} map, got {matrix.shape}")
        if matrix @ matrix != RationalMatrix.identity(n):
            raise InvalidInvolutionError("map does not square to the identity")
        if not is_algebra_automorphism(algebra, matrix):
            raise InvalidInvolutionError("map does not preserve the structure constants")
        return cls(algebra, matrix)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _scaled_int_array(values, shape) -> tuple[np.ndarray, int]:
    """Common-denominator integer form of a nested rational array."""
    flat = list(values)
    scale = 1
    for v in flat:
        if isinstance(v, Fraction):
            scale = _lcm(scale, v.denominator)
    arr = np.array([int(v * scale) for v in flat], dtype=np.int64).reshape(shape)
    if abs(int(arr.max(initial=0))) >= _INT_BOUND or abs(int(arr.min(initial=0))) >= _INT_BOUND:
        raise OverflowError("entries too large for the int64 fast path")
    return arr, scale


def _max_abs(arr: np.ndarray) -> int:
    return int(np.abs(arr).max(initial=0))


def _guard_contraction(sum_terms: int, *arrays: np.ndarray) -> None:
    """Every int64 contraction must provably fit; wraparound would be silent."""
    bound = sum_terms
    for a in arrays:
        bound *= max(_max_abs(a), 1)
    if bound >= 2**62:
        raise OverflowError("integer contraction could overflow int64")


def _structure_tensor(algebra: _alg.FiniteAlgebra) -> tuple[np.ndarray, int]:
    n = algebra.dim
    vals = []
    for i in range(n):
        for j in range(n):
            row = [0] * n
            for k, c in algebra.products[i][j]:
                row[k] = c
            vals.extend(row)
    return _scaled_int_array(vals, (n, n, n))


# ---------------------------------------------------------------------------
# Leibniz constraint system
# ---------------------------------------------------------------------------

def _leibniz_row_items(algebra: _alg.FiniteAlgebra, ordered: bool):
    """Yield one normalized integer equation per (pair, output coordinate).

    Unknowns are the n^2 entries of D (row-major; D acts on coordinate
    columns).  Identically-zero equations are yielded as empty lists so
    callers can keep or drop them.
    """
    n = algebra.dim
    right = [[[] for _ in range(n)] for _ in range(n)]  # right[j][k]: (a, c_ajk)
    left = [[[] for _ in range(n)] for _ in range(n)]  # left[i][k]: (b, c_ibk)
    for a in range(n):
        for b in range(n):
            for k, c in algebra.products[a][b]:
                right[b][k].append((a, c))
                left[a][k].append((b, c))

    if ordered:
        pairs = [(i, j) for i in range(n) for j in range(n)]
    else:
        pairs = [(i, j) for i in range(n) for j in range(i, n)]

    for i, j in pairs:
        prod = algebra.products[i][j]
        for k in range(n):
            acc: dict[int, object] = {}
            for m, c in prod:
                pos = k * n + m
                acc[pos] = acc.get(pos, 0) + c
            for a, c in right[j][k]:
                pos = a * n + i
                acc[pos] = acc.get(pos, 0) - c
            for b, c in left[i][k]:
                pos = b * n + j
                acc[pos] = acc.get(pos, 0) - c
            nz = [(pos, v) for pos, v in sorted(acc.items()) if v]
            if not nz:
                yield []
                continue
            den = 1
            for _, v in nz:
                if isinstance(v, Fraction):
                    den = _lcm(den, v.denominator)
            ints = [(pos, int(v * den)) for pos, v in nz]
            g = 0
            for _, v in ints:
                g = math.gcd(g, v)
            if g > 1:
                ints = [(pos, v // g) for pos, v in ints]
            yield ints


def leibniz_constraint_rows(
    algebra: _alg.FiniteAlgebra, ordered: bool = False
) -> tuple[list[list[tuple[int, int]]], int]:
    """Sparse integer rows of the derivation constraint system.

    One block of n equations per basis pair; unordered pairs (i <= j)
    suffice by bilinearity and halve the system, but the full ordered
    system can be requested as a cross-check.  Zero rows are dropped.
    """
    n = algebra.dim
    rows = [r for r in _leibniz_row_items(algebra, ordered) if r]
    return rows, n * n


def leibniz_constraint_matrix(algebra: _alg.FiniteAlgebra) -> RationalMatrix:
    """The full constraint system as a dense matrix, zero rows included.

    For an n-dimensional algebra this has n^2 (n+1) / 2 rows and n^2
    columns; its nullspace is the derivation algebra.
    """
    n = algebra.dim
    ncols = n * n
    dense = []
    for sr in _leibniz_row_items(algebra, ordered=False):
        row = [0] * ncols
        for pos, v in sr:
            row[pos] = v
        dense.append(row)
    return RationalMatrix.from_rows(dense)


# ---------------------------------------------------------------------------
# Lie algebra container
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LieAlgebraBasis:
    """Certified derivation Lie algebra in a canonical echelon basis.

    ``basis[t]`` is an ambient_dim x ambient_dim derivation matrix.  The
    flattened basis is in reduced-echelon form: vector t has a 1 at
    ``free_coords[t]`` and 0 at the other free coordinates, so the
    coordinates of any element of the span can be read off directly.
    Bracket structure constants satisfy
    [D_a, D_b] = sum_c f(a, b, c) D_c with f stored as
    ``_f_int / _f_scale``.
    """

    algebra: _alg.FiniteAlgebra
    ambient_dim: int
    basis: tuple[RationalMatrix, ...]
    free_coords: tuple[int, ...]
    _d_int: np.ndarray = field(repr=False)
    _d_scale: int = field(repr=False)
    _f_int: np.ndarray = field(repr=False)
    _f_scale: int = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def structure_constant(self, a: int, b: int, c: int) -> Fraction:
        return Fraction(int(self._f_int[a, b, c]), self._f_scale)

    def bracket_in_basis(self, a: int, b: int) -> tuple[Fraction, ...]:
        return tuple(
            Fraction(int(v), self._f_scale) for v in self._f_int[a, b]
        )

    def coords_of(self, m: RationalMatrix) -> tuple[Fraction, ...]:
        """Coordinates of a matrix in the basis; raises if outside the span."""
        if m.shape != (self.ambient_dim, self.ambient_dim):
            raise DimensionError("matrix has the wrong ambient dimension")
        flat = [m.entry(i, j) for i in range(m.rows) for j in range(m.cols)]
        coords = tuple(Fraction(flat[fc]) for fc in self.free_coords)
        recon = [0] * len(flat)
        for t, c in enumerate(coords):
            if not c:
                continue
            b = self.basis[t]
            for i in range(self.ambient_dim):
                for j in range(self.ambient_dim):
                    v = b.entry(i, j)
                    if v:
                        recon[i * self.ambient_dim + j] += c * v
        if any(u != v for u, v in zip(recon, flat)):
            raise ValueError("matrix lies outside the span of the basis")
        return coords

    def element_matrix(self, coords: Sequence) -> RationalMatrix:
        n = self.ambient_dim
        flat = [Fraction(0)] * (n * n)
        for t, c in enumerate(coords):
            if not c:
                continue
            b = self.basis[t]
            for i in range(n):
                for j in range(n):
                    v = b.entry(i, j)
                    if v:
                        flat[i * n + j] += c * v
        return RationalMatrix(n, n, flat)

    def ad_matrix(self, coords: Sequence) -> RationalMatrix:
        """Matrix of ad_x on the Lie algebra for x with the given coordinates."""
        d = self.dim
        rows = [[Fraction(0)] * d for _ in range(d)]
        for a, xa in enumerate(coords):
            if not xa:
                continue
            fa = self._f_int[a]
            for b in range(d):
                for c in range(d):
                    v = int(fa[b, c])
                    if v:
                        rows[c][b] += xa * Fraction(v, self._f_scale)
        return RationalMatrix.from_rows(rows)


def bracket(x: RationalMatrix, y: RationalMatrix) -> RationalMatrix:
    """Matrix commutator xy - yx."""
    if x.shape != y.shape or x.rows != x.cols:
        raise DimensionError(f"bracket needs equal square shapes, got {x.shape}, {y.shape}")
    return x @ y - y @ x


def _leibniz_defect_is_zero(c_int: np.ndarray, d_int: np.ndarray) -> bool:
    """Full ordered-pair Leibniz check for one scaled-integer derivation."""
    _guard_contraction(c_int.shape[0], c_int, d_int)
    t1 = np.einsum("ijm,km->ijk", c_int, d_int)
    t2 = np.einsum("ajk,ai->ijk", c_int, d_int)
    t3 = np.einsum("ibk,bj->ijk", c_int, d_int)
    return bool(np.array_equal(t1, t2 + t3))


def derivation_algebra(
    algebra: _alg.FiniteAlgebra, cancel: CancelToken | None = None
) -> LieAlgebraBasis:
    """All derivations of the algebra, as a certified Lie algebra basis.

    Solves the Leibniz constraint system exactly (modular probe plus
    exact certification on large systems), certifies every basis vector
    against the full ordered constraint set and against killing the
    unit, and certifies bracket closure while computing the structure
    constants.
    """
    n = algebra.dim
    rows, ncols = leibniz_constraint_rows(algebra)
    vectors, free_cols, _ = nullspace_with_info(rows, ncols, cancel)

    d = len(vectors)
    flat_vals = [v for vec in vectors for v in vec]
    if d:
        d_int, d_scale = _scaled_int_array(flat_vals, (d, n, n))
    else:
        d_int, d_scale = np.zeros((0, n, n), dtype=np.int64), 1

    c_int, _ = _structure_tensor(algebra)
    for t in range(d):
        if not _leibniz_defect_is_zero(c_int, d_int[t]):
            raise RuntimeError(
                "internal error: nullspace vector fails the ordered Leibniz check"
            )
    # derivations kill the unit element
    unit, _ = _scaled_int_array(list(algebra.unit_coords), (n,))
    if d and np.any(d_int @ unit):
        raise RuntimeError("internal error: derivation does not kill the unit")

    basis = tuple(
        RationalMatrix(n, n, vec)
        for vec in vectors
    )

    # brackets of all basis pairs, scaled by d_scale^2
    if d:
        _guard_contraction(n, d_int, d_int)
        prod = np.matmul(d_int[:, None, :, :], d_int[None, :, :, :])
        comm = prod - prod.transpose(1, 0, 2, 3)
        comm_flat = comm.reshape(d, d, n * n)
        f_int = comm_flat[:, :, list(free_cols)]
        # closure certificate: reconstruction from read-off coordinates
        d_flat = d_int.reshape(d, n * n)
        _guard_contraction(d, f_int, d_flat)
        lhs = np.einsum("abt,tx->abx", f_int, d_flat)
        if not np.array_equal(lhs, d_scale * comm_flat):
            raise RuntimeError("internal error: bracket closure certification failed")
        f_scale = d_scale * d_scale
        g = math.gcd(int(np.gcd.reduce(np.abs(f_int), axis=None)), f_scale)
        if g > 1:
            f_int = f_int // g
            f_scale //= g
    else:
        f_int, f_scale = np.zeros((0, 0, 0), dtype=np.int64), 1

    return LieAlgebraBasis(
        algebra=algebra,
        ambient_dim=n,
        basis=basis,
        free_coords=tuple(free_cols),
        _d_int=d_int,
        _d_scale=d_scale,
        _f_int=f_int,
        _f_scale=f_scale,
    )


# ---------------------------------------------------------------------------
# Killing form
# ---------------------------------------------------------------------------

def killing_form(l: LieAlgebraBasis) -> RationalMatrix:
    """B(a, b) = trace(ad_a ad_b) on the basis; symmetric by construction."""
    d = l.dim
    if d == 0:
        return RationalMatrix(0, 0, ())
    _guard_contraction(d * d, l._f_int, l._f_int)
    k_int = np.einsum("axy,byx->ab", l._f_int, l._f_int)
    s = l._f_scale * l._f_scale
    return RationalMatrix(
        d, d, (Fraction(int(v), s) for v in k_int.reshape(-1))
    )


# ---------------------------------------------------------------------------
# involutions
# ---------------------------------------------------------------------------

def is_algebra_automorphism(algebra: _alg.FiniteAlgebra, sigma: RationalMatrix) -> bool:
    """Checks sigma(e_i e_j) = sigma(e_i) sigma(e_j) on all basis pairs."""
    n = algebra.dim
    if sigma.shape != (n, n):
        return False
    cols = [list(sigma.column(j)) for j in range(n)]
    for i in range(n):
        for j in range(n):
            prod = [0] * n
            for k, c in algebra.products[i][j]:
                prod[k] = c
            lhs = sigma.matvec(prod)
            rhs = algebra.multiply_coords(cols[i], cols[j])
            if any(a != b for a, b in zip(lhs, rhs)):
                return False
    return True


def doubled_half_reflection(algebra: _alg.FiniteAlgebra) -> RationalMatrix:
    """The automorphism (p, q) -> (p, -q) of a doubled algebra.

    Fixes the subalgebra the algebra was doubled from; on the octonions
    this fixes the quaternion span e0..e3 and negates e4..e7.
    """
    n = algebra.dim
    if n < 2 or n % 2:
        raise ValueError("need an algebra of even dimension >= 2")
    h = n // 2
    return RationalMatrix(
        n,
        n,
        (
            (1 if i < h else -1) if i == j else 0
            for i in range(n)
            for j in range(n)
        ),
    )


def diagonal_sign_involution(
    j: _jordan.JordanAlgebra, signs: tuple[int, int, int] = (-1, 1, 1)
) -> RationalMatrix:
    """Conjugation of hermitian matrices by diag(signs) as a coordinate map.

    Diagonal coordinates are fixed; the off-diagonal block at (r, c)
    picks up the sign signs[r] * signs[c].
    """
    if any(s * s != 1 for s in signs):
        raise ValueError("signs must be +1 or -1")
    k = j.coefficient_algebra
    diag = [1, 1, 1]
    for pos, (r, c) in enumerate(_jordan.OFF_POSITIONS):
        diag.extend([signs[r] * signs[c]] * k.dim)
    n = j.dim
    return RationalMatrix(
        n, n, (diag[i] if i == jj else 0 for i in range(n) for jj in range(n))
    )


def induced_involution(
    algebra: _alg.FiniteAlgebra,
    sigma: RationalMatrix | Involution,
    l: LieAlgebraBasis,
) -> RationalMatrix:
    """The order-2 map D -> sigma D sigma^(-1) in the basis of l.

    sigma must square to the identity and preserve the structure
    constants; both properties are verified (a pre-certified Involution
    skips the recheck), as is the fact that each transported basis
    derivation lies back in the span.
    """
    n = algebra.dim
    if l.algebra is not algebra:
        raise ValueError("Lie algebra basis does not belong to this algebra")
    if isinstance(sigma, Involution):
        if sigma.algebra is not algebra:
            raise InvalidInvolutionError("involution certified for a different algebra")
        sigma = sigma.matrix
    else:
        sigma = Involution.certify(algebra, sigma).matrix

    d = l.dim
    if d == 0:
        return RationalMatrix(0, 0, ())
    s_int, s_scale = _scaled_int_array(
        [sigma.entry(i, jj) for i in range(n) for jj in range(n)], (n, n)
    )
    _guard_contraction(n * n, s_int, s_int, l._d_int)
    transported = np.matmul(np.matmul(s_int, l._d_int), s_int)  # scale s^2 * d_scale
    t_flat = transported.reshape(d, n * n)
    theta_int = t_flat[:, list(l.free_coords)].T  # theta[u, t], scaled
    # span certificate: reconstruct each transported derivation
    _guard_contraction(d, theta_int, l._d_int)
    lhs = theta_int.T @ l._d_int.reshape(d, n * n)
    if not np.array_equal(lhs, l._d_scale * t_flat):
        raise InvalidInvolutionError(
            "transported derivation leaves the span; sigma is not compatible"
        )
    denom = s_scale * s_scale * l._d_scale
    theta = RationalMatrix(
        d, d, (Fraction(int(v), denom) for v in theta_int.reshape(-1))
    )
    if theta @ theta != RationalMatrix.identity(d):
        raise InvalidInvolutionError("induced map is not an involution")
    return theta


# ---------------------------------------------------------------------------
# Cartan symmetric-pair split
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CartanPair:
    """Eigenspace split g = k + p under an involutive automorphism.

    k is the (+1)-eigenspace, p the (-1)-eigenspace, both as canonical
    coordinate bases with their read-off coordinates.  The three bracket
    inclusions [k,k] in k, [k,p] in p, [p,p] in k are certified exactly
    on construction; the span flags record whether the inclusions are
    onto.
    """

    lie: LieAlgebraBasis
    k_basis: tuple[tuple[Fraction, ...], ...]
    p_basis: tuple[tuple[Fraction, ...], ...]
    k_free: tuple[int, ...]
    p_free: tuple[int, ...]
    pp_spans_k: bool
    kp_spans_p: bool

    @property
    def k_dim(self) -> int:
        return len(self.k_basis)

    @property
    def p_dim(self) -> int:
        return len(self.p_basis)

    @property
    def dims(self) -> tuple[int, int]:
        return (self.k_dim, self.p_dim)


def _theta_is_lie_automorphism(l: LieAlgebraBasis, theta: RationalMatrix) -> bool:
    d = l.dim
    t_int, t_scale = _scaled_int_array(
        [theta.entry(i, j) for i in range(d) for j in range(d)], (d, d)
    )
    f = l._f_int
    _guard_contraction(d * d, t_int, t_int, f)
    lhs = np.einsum("ca,db,cde->abe", t_int, t_int, f, optimize=True)
    rhs = np.einsum("ec,abc->abe", t_int, f, optimize=True)
    return bool(np.array_equal(lhs, t_scale * rhs))


def _subspace_brackets(
    l: LieAlgebraBasis, left: np.ndarray, right: np.ndarray
) -> np.ndarray:
    """Scaled bracket coordinates of all pairs from two integer bases."""
    _guard_contraction(l.dim * l.dim, left, right, l._f_int)
    return np.einsum("ia,jb,abc->ijc", left, right, l._f_int, optimize=True)


def _contained_in(
    brackets: np.ndarray, basis_int: np.ndarray, basis_scale: int, free: Sequence[int]
) -> bool:
    """Every bracket (scaled coords) lies in the span of the given basis."""
    if brackets.size == 0:
        return True
    coeffs = brackets[:, :, list(free)]
    _guard_contraction(basis_int.shape[0], coeffs, basis_int)
    recon = np.einsum("ijt,tc->ijc", coeffs, basis_int, optimize=True)
    return bool(np.array_equal(recon, basis_scale * brackets))


def _int_rank(rows: np.ndarray) -> int:
    sparse = []
    for r in rows:
        nz = [(int(j), int(v)) for j, v in enumerate(r) if v]
        if nz:
            sparse.append(nz)
    if not sparse:
        return 0
    _, rank_ = nullspace_of_rows(sparse, rows.shape[1])
    return rank_


def cartan_split(l: LieAlgebraBasis, theta: RationalMatrix) -> CartanPair:
    """Split l into the +/-1 eigenspaces of theta and certify the relations.

    theta must be an involutive Lie-algebra automorphism (both verified).
    Raises InvalidInvolutionError otherwise.
    """
    d = l.dim
    if theta.shape != (d, d):
        raise InvalidInvolutionError(f"expected a {d}x{d} map on the Lie algebra")
    ident = RationalMatrix.identity(d)
    if theta @ theta != ident:
        raise InvalidInvolutionError("map does not square to the identity")
    if not _theta_is_lie_automorphism(l, theta):
        raise InvalidInvolutionError("map does not preserve the bracket")

    k_vecs, k_free, _ = nullspace_with_info(integer_rows(theta - ident), d)
    p_vecs, p_free, _ = nullspace_with_info(integer_rows(theta + ident), d)
    if len(k_vecs) + len(p_vecs) != d:
        raise InvalidInvolutionError("eigenspaces do not fill the algebra")

    def as_int(vectors):
        if not vectors:
            return np.zeros((0, d), dtype=np.int64), 1
        return _scaled_int_array([v for vec in vectors for v in vec], (len(vectors), d))

    k_int, k_scale = as_int(k_vecs)
    p_int, p_scale = as_int(p_vecs)

    kk = _subspace_brackets(l, k_int, k_int)
    kp = _subspace_brackets(l, k_int, p_int)
    pp = _subspace_brackets(l, p_int, p_int)

    if not _contained_in(kk, k_int, k_scale, k_free):
        raise RuntimeError("internal error: [k, k] escapes k")
    if not _contained_in(kp, p_int, p_scale, p_free):
        raise RuntimeError("internal error: [k, p] escapes p")
    if not _contained_in(pp, k_int, k_scale, k_free):
        raise RuntimeError("internal error: [p, p] escapes k")

    pp_rank = _int_rank(pp.reshape(-1, d)) if len(p_vecs) else 0
    kp_rank = _int_rank(kp.reshape(-1, d)) if len(k_vecs) and len(p_vecs) else 0

    return CartanPair(
        lie=l,
        k_basis=tuple(k_vecs),
        p_basis=tuple(p_vecs),
        k_free=tuple(k_free),
        p_free=tuple(p_free),
        pp_spans_k=pp_rank == len(k_vecs),
        kp_spans_p=kp_rank == len(p_vecs),
    )


# ---------------------------------------------------------------------------
# rank by generic centralizers
# ---------------------------------------------------------------------------

def generic_rank(
    l: LieAlgebraBasis,
    trials: int = 5,
    rng: random.Random | None = None,
) -> int:
    """Minimum over trials of dim ker(ad_x) for random rational x.

    For a compact form the centralizer of a generic element is a Cartan
    subalgebra, so the minimum is the rank; extra trials guard against
    non-generic samples and can only lower the result.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    d = l.dim
    if d == 0:
        return 0
    if rng is None:
        rng = random.Random(_alg.DEFAULT_SEED)
    best = d
    for _ in range(trials):
        x = np.array(
            [rng.randint(-_alg.RANDOM_COEFF_SPAN, _alg.RANDOM_COEFF_SPAN) for _ in range(d)],
            dtype=np.int64,
        )
        _guard_contraction(d, x, l._f_int)
        ad_x = np.einsum("a,abc->cb", x, l._f_int)
        best = min(best, d - _int_rank(ad_x))
    return best


def flat_rank(
    pair: CartanPair,
    trials: int = 5,
    rng: random.Random | None = None,
) -> int:
    """Dimension of a maximal commuting subspace of p, by random probes.

    For a generic x in p the set {y in p : [x, y] = 0} is a maximal
    flat, whose dimension is the rank of the symmetric space.
    """
    l = pair.lie
    np_dim = pair.p_dim
    if np_dim == 0:
        return 0
    if rng is None:
        rng = random.Random(_alg.DEFAULT_SEED)
    p_int, _ = _scaled_int_array(
        [v for vec in pair.p_basis for v in vec], (np_dim, l.dim)
    )
    best = np_dim
    for _ in range(trials):
        c = np.array([rng.randint(-9, 9) for _ in range(np_dim)], dtype=np.int64)
        _guard_contraction(np_dim, c, p_int)
        x = c @ p_int
        _guard_contraction(l.dim, x, l._f_int)
        ad_x = np.einsum("a,abc->cb", x, l._f_int)
        _guard_contraction(l.dim, ad_x, p_int)
        constraint = ad_x @ p_int.T  # kernel in p-coefficient space is the flat
        best = min(best, np_dim - _int_rank(constraint))
    return best


# ---------------------------------------------------------------------------
# named registry
# ---------------------------------------------------------------------------

DERIVATION_TARGETS = ("complex", "quaternions", "octonions", "j3r", "j3c", "j3h", "j3o")


def _target_algebra(name: str) -> _alg.FiniteAlgebra:
    builders = {
        "complex": _alg.complex_algebra,
        "quaternions": _alg.quaternions,
        "octonions": _alg.octonions,
        "j3r": lambda: _jordan.jordan_algebra(_alg.real_algebra()),
        "j3c": lambda: _jordan.jordan_algebra(_alg.complex_algebra()),
        "j3h": lambda: _jordan.jordan_algebra(_alg.quaternions()),
        "j3o": lambda: _jordan.jordan_algebra(_alg.octonions()),
    }
    if name not in builders:
        raise ValueError(f"unknown derivation target {name!r}")
    return builders[name]()


_NAMED_CACHE: dict[str, LieAlgebraBasis] = {}


def named_derivation_algebra(
    name: str, cancel: CancelToken | None = None
) -> LieAlgebraBasis:
    """Cached derivation algebra for a named target (see DERIVATION_TARGETS).

    The cache is process-wide; a cooperative cancel token only applies
    to a computation that actually runs.
    """
    if name not in _NAMED_CACHE:
        _NAMED_CACHE[name] = derivation_algebra(_target_algebra(name), cancel)
    return _NAMED_CACHE[name]


def derivation_cached(name: str) -> bool:
    return name in _NAMED_CACHE
