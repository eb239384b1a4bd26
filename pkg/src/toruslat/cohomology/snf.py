"""Exact integer linear algebra built on the Smith kernel.

Matrices are numpy arrays of dtype ``int64`` or, when entries outgrow 64
bits, ``object`` arrays of Python integers.  Nothing here ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

from .. import _kernels
from .._kernels import exact_matmul
from ..errors import InputError


def as_int_matrix(M, shape=None):
    """Coerce ``M`` to a 2-D exact integer array (``int64`` or ``object``)."""
    A = np.asarray(M)
    if A.ndim != 2 and A.size == 0:
        A = A.reshape(shape if shape is not None else (0, 0))
    if A.ndim != 2:
        raise InputError(f"expected a matrix, got an array of shape {A.shape}")
    if A.dtype == object:
        out = np.empty(A.shape, dtype=object)
        for idx, v in np.ndenumerate(A):
            if isinstance(v, (bool, np.bool_)) or not isinstance(v, (int, np.integer)):
                raise InputError(f"non-integer matrix entry {v!r}")
            out[idx] = int(v)
        return shrink(out)
    if A.dtype.kind in "iub":
        return A.astype(np.int64)
    if A.dtype.kind == "f" and np.all(np.isfinite(A)) and np.all(A == np.rint(A)) \
            and (A.size == 0 or np.abs(A).max() < 2**53):
        return np.rint(A).astype(np.int64)
    raise InputError(f"matrix entries must be integers (dtype {A.dtype})")


def shrink(A):
    """Return an ``int64`` copy when every entry fits, else ``A`` itself."""
    if A.dtype != object:
        return A
    if A.size == 0 or max(abs(int(v)) for v in A.flat) < 2**62:
        return A.astype(np.int64)
    return A


def identity(n):
    return np.eye(n, dtype=np.int64)


@dataclass(frozen=True)
class AbelianGroupInvariants:
    """A finitely generated abelian group ``Z^free_rank + sum Z/d_i``, ``d_1 | d_2 | ...``."""

    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        tors = tuple(int(d) for d in self.torsion)
        if self.free_rank < 0:
            raise InputError("free rank must be nonnegative")
        for d in tors:
            if d < 2:
                raise InputError(f"invariant factor {d} must be at least 2")
        for a, b in zip(tors, tors[1:]):
            if b % a:
                raise InputError(f"invariant factors {tors} violate divisibility")
        object.__setattr__(self, "torsion", tors)
        object.__setattr__(self, "free_rank", int(self.free_rank))

    @classmethod
    def from_diagonal(cls, entries, free_rank=0):
        """Normalise an arbitrary list of cyclic orders (0 means ``Z``) to invariant factors."""
        free = free_rank
        primes = {}
        for d in entries:
            d = abs(int(d))
            if d == 0:
                free += 1
                continue
            for p, e in _factor(d).items():
                primes.setdefault(p, []).append(p ** e)
        length = max((len(v) for v in primes.values()), default=0)
        factors = [1] * length
        for p, powers in primes.items():
            powers.sort()
            for k, q in enumerate(powers):
                factors[length - len(powers) + k] *= q
        return cls(free, tuple(f for f in factors if f > 1))

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    @property
    def is_finite(self):
        return self.free_rank == 0

    @property
    def order(self):
        """Cardinality, or ``None`` for an infinite group."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def to_dict(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_dict(cls, doc):
        return cls(int(doc["free_rank"]), tuple(int(d) for d in doc["torsion"]))

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


TRIVIAL = AbelianGroupInvariants()


def _factor(n):
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class SNFResult:
    """``U @ M @ V == S`` with ``S`` diagonal, nonnegative, and a divisibility chain."""

    S: np.ndarray
    U: np.ndarray
    V: np.ndarray

    @property
    def diagonal(self):
        k = min(self.S.shape)
        return [int(self.S[i, i]) for i in range(k)]

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d != 0)


def smith_normal_form(M) -> SNFResult:
    A = as_int_matrix(M)
    m, n = A.shape
    D, U, V = _kernels.smith_reduce(A, identity(m), identity(n))
    return SNFResult(shrink(D), shrink(U), shrink(V))


def diagonal_entries(M):
    """Nonzero Smith diagonal of ``M`` (no transforms are tracked)."""
    A = as_int_matrix(M)
    if A.size == 0:
        return []
    D, _, _ = _kernels.smith_reduce(A)
    out = []
    for i in range(min(D.shape)):
        d = int(D[i, i])
        if d == 0:
            break
        out.append(d)
    return out


def invariant_factors(M):
    """Invariant factors of ``M`` including ones: the nonzero Smith diagonal."""
    return diagonal_entries(M)


def rank(M):
    return len(diagonal_entries(M))


def cokernel(M, rows=None) -> AbelianGroupInvariants:
    """The abelian group ``Z^rows / image(M)``."""
    A = as_int_matrix(M, shape=(rows or 0, 0))
    m = A.shape[0]
    diag = diagonal_entries(A)
    return AbelianGroupInvariants(m - len(diag), tuple(d for d in diag if d > 1))


def torsion_of_cokernel(M, rows=None) -> AbelianGroupInvariants:
    return AbelianGroupInvariants(0, cokernel(M, rows).torsion)


def row_hnf(A):
    """Row Hermite normal form: nonzero rows only, positive pivots, reduced above.

    The row space is preserved; the result is canonical for it.
    """
    A = as_int_matrix(A)
    m, n = A.shape
    rows = [[int(v) for v in A[i]] for i in range(m)]
    out = []
    col = 0
    work = [r for r in rows if any(r)]
    while work and col < n:
        nz = [r for r in work if r[col] != 0]
        if not nz:
            col += 1
            continue
        rest = [r for r in work if r[col] == 0]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            nxt = [piv]
            for r in nz[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            nz = nxt
        piv = nz[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        for k, prev in enumerate(out):
            q = prev[col] // piv[col]
            if q:
                out[k] = [a - q * b for a, b in zip(prev, piv)]
        out.append(piv)
        work = rest
        col += 1
    res = np.empty((len(out), n), dtype=object)
    for i, r in enumerate(out):
        res[i, :] = r
    return shrink(res)


def column_hnf_basis(B):
    """Canonical basis (as columns) of the column span of ``B``."""
    B = as_int_matrix(B)
    return row_hnf(B.T).T if B.shape[1] else np.zeros((B.shape[0], 0), dtype=np.int64)


def lll_columns(B):
    """LLL-reduced basis (as columns) of the lattice spanned by the independent columns of ``B``.

    The reduced basis spans the same lattice and has short vectors, which
    keeps the entries of derived action matrices small.
    """
    B = as_int_matrix(B)
    n, k = B.shape
    if k <= 1 or n == 0:
        return B
    rows = [[int(x) for x in B[:, j]] for j in range(k)]
    R = DomainMatrix(rows, (k, n), ZZ).lll().to_list()
    out = np.empty((n, k), dtype=object)
    for j, r in enumerate(R):
        out[:, j] = [int(x) for x in r]
    return shrink(out)


def integer_kernel(M, canonical=True, reduced=False):
    """Columns spanning ``{x : M x = 0}`` over the integers (a saturated basis).

    ``canonical`` gives the column Hermite form; ``reduced`` an LLL-reduced
    basis instead (not canonical, but short).
    """
    A = as_int_matrix(M)
    m, n = A.shape
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if m == 0:
        return identity(n)
    D, _, V = _kernels.smith_reduce(A, np.zeros((m, 0), dtype=np.int64), identity(n))
    r = sum(1 for i in range(min(m, n)) if D[i, i] != 0)
    K = shrink(V[:, r:])
    if reduced and K.shape[1]:
        return lll_columns(K)
    if canonical and K.shape[1]:
        K = column_hnf_basis(K)
    return K


def solve_integer(A, b):
    """Solve ``A x = b`` over the integers.

    Returns ``(x, kernel)`` where ``x`` is a particular solution or ``None``
    and ``kernel`` has columns spanning the homogeneous solutions.
    """
    A = as_int_matrix(A)
    m, n = A.shape
    bvec = as_int_matrix(np.asarray(b).reshape(-1, 1), shape=(m, 1))
    if bvec.shape[0] != m:
        raise InputError(f"right-hand side has length {bvec.shape[0]}, expected {m}")
    if n == 0:
        ok = not np.any(bvec != 0)
        return (np.zeros(0, dtype=np.int64) if ok else None), np.zeros((0, 0), dtype=np.int64)
    D, Ub, V = _kernels.smith_reduce(A, bvec, identity(n))
    diag = [int(D[i, i]) for i in range(min(m, n))]
    r = sum(1 for d in diag if d != 0)
    y = [int(v) for v in Ub[:, 0]]
    kernel = shrink(V[:, r:])
    if any(y[i] != 0 for i in range(r, m)):
        return None, kernel
    z = []
    for i in range(r):
        if y[i] % diag[i]:
            return None, kernel
        z.append(y[i] // diag[i])
    if r:
        x = exact_matmul(V[:, :r], np.array(z, dtype=object).reshape(r, 1)).reshape(-1)
    else:
        x = np.zeros(n, dtype=np.int64)
    x = shrink(np.asarray(x).reshape(1, -1)).reshape(-1)
    return x, kernel


def left_inverse(B):
    """Integer ``C`` with ``C @ B = I`` for a saturated full-column-rank ``B``."""
    B = as_int_matrix(B)
    n, k = B.shape
    if k == 0:
        return np.zeros((0, n), dtype=np.int64)
    D, U, V = _kernels.smith_reduce(B, identity(n), identity(k))
    for i in range(k):
        if abs(int(D[i, i])) != 1:
            raise InputError("basis is not saturated; no integral left inverse")
    signs = np.diag([int(D[i, i]) for i in range(k)]).astype(np.int64)
    return shrink(np.asarray(exact_matmul(exact_matmul(V, signs), U[:k, :])))


def unimodular_inverse(U):
    """Exact inverse of a unimodular integer matrix."""
    U = as_int_matrix(U)
    n = U.shape[0]
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    D, X, Y = _kernels.smith_reduce(U, identity(n), identity(n))
    if any(abs(int(D[i, i])) != 1 for i in range(n)):
        raise InputError("matrix is not unimodular")
    signs = np.diag([int(D[i, i]) for i in range(n)]).astype(np.int64)
    # X U Y = D  =>  U^-1 = Y D^-1 X, and D^-1 = D for a sign matrix
    return shrink(np.asarray(exact_matmul(exact_matmul(Y, signs), X)))


def is_surjective(M, rows):
    """Whether ``M : Z^cols -> Z^rows`` is onto."""
    diag = diagonal_entries(as_int_matrix(M, shape=(rows, 0)))
    return len(diag) == rows and all(d == 1 for d in diag)


def is_saturated(B):
    """Whether the column span of ``B`` has torsion-free quotient and independent columns."""
    B = as_int_matrix(B)
    if B.shape[1] == 0:
        return True
    diag = diagonal_entries(B)
    return len(diag) == B.shape[1] and all(d == 1 for d in diag)
