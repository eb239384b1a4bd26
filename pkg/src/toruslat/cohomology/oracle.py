"""Independent route to the same invariants, sharing no code with the Smith path.

Linear algebra here is rational row reduction over ``Fraction`` plus an
Euclidean column echelon form.  A finite quotient ``S / C`` (``C`` of
full rank inside a saturated ``S``) is measured by its order and by the
sizes of ``A / p^j A`` for each prime ``p``; those counts pin down the
invariant factors without ever diagonalising anything.

Cohomology is taken from definitions: all elements of the subgroup enter
the norm and augmentation, and degrees 1 and 2 use inhomogeneous
(bar-resolution) cochains on the whole subgroup.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np
import sympy

from .snf import AbelianGroupInvariants


def _rows(M):
    M = np.asarray(M)
    if M.ndim != 2:
        M = M.reshape(0, 0)
    return [[int(v) for v in row] for row in M.tolist()], M.shape[0], M.shape[1]


def rref(rows, ncols):
    """Reduced row echelon form over the rationals; returns (rows, pivot columns).

    Elimination runs fraction-free on integer rows (each row divided by its
    content after every step); only the final rows become ``Fraction``.
    """
    A = [r[:] for r in rows if any(r)]
    pivots = []
    i = 0
    for c in range(ncols):
        p = next((k for k in range(i, len(A)) if A[k][c] != 0), None)
        if p is None:
            continue
        A[i], A[p] = A[p], A[i]
        piv = A[i]
        a = piv[c]
        for k in range(len(A)):
            if k != i and A[k][c] != 0:
                b = A[k][c]
                row = [a * x - b * y for x, y in zip(A[k], piv)]
                g = 0
                for x in row:
                    if x:
                        g = gcd(g, x)
                        if g == 1:
                            break
                A[k] = [x // g for x in row] if g > 1 else row
        pivots.append(c)
        i += 1
        if i == len(A):
            break
    out = []
    for r, c in zip(A[:i], pivots):
        inv = Fraction(1, r[c])
        out.append([x * inv for x in r])
    return out, pivots


def rational_nullspace(rows, ncols):
    """Integer vectors spanning ``{x in Q^ncols : rows x = 0}`` over Q."""
    R, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in zip(R, pivots):
            v[pc] = -r[f]
        den = 1
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
        out.append([int(x * den) for x in v])
    return out


def column_echelon(rows, ncols, track=False):
    """Lower column echelon form by unimodular column operations.

    Returns ``(E, T, pivot_rows)`` where ``E = A T`` (``T`` only when
    ``track``), as lists of rows.
    """
    m = len(rows)
    E = [r[:] for r in rows]
    T = [[int(i == j) for j in range(ncols)] for i in range(ncols)] if track else None
    col = 0
    pivot_rows = []

    def combine(j, k, x, y, u, w):
        # new col j = x c_j + y c_k ; new col k = u c_j + w c_k
        for M in (E, T) if track else (E,):
            for row in M:
                a, b = row[j], row[k]
                row[j] = x * a + y * b
                row[k] = u * a + w * b

    for i in range(m):
        if col >= ncols:
            break
        while True:
            live = [k for k in range(col, ncols) if E[i][k] != 0]
            if len(live) <= 1:
                break
            # Euclid along the row: the smallest entry reduces the others
            k0 = min(live, key=lambda k: abs(E[i][k]))
            a = E[i][k0]
            for k in live:
                if k != k0:
                    combine(k, k0, 1, -(E[i][k] // a), 0, 1)
        if live:
            if live[0] != col:
                combine(col, live[0], 0, 1, 1, 0)
            if E[i][col] < 0:
                for M in (E, T) if track else (E,):
                    for row in M:
                        row[col] = -row[col]
            pivot_rows.append(i)
            col += 1
    return E, T, pivot_rows


def integer_nullspace(rows, ncols):
    """Columns (returned as a list of vectors) of a basis of the integer kernel."""
    if ncols == 0:
        return []
    if not rows:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    # the integer kernel only depends on the rational row space
    R, _ = rref(rows, ncols)
    dense = []
    for row in R:
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        dense.append([int(x * den) for x in row])
    if not dense:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    E, T, piv = column_echelon(dense, ncols, track=True)
    r = len(piv)
    return [[T[i][j] for i in range(ncols)] for j in range(r, ncols)]


def index_of_full_rank(rows, ncols):
    """``[Z^k : span of columns]`` for a rank-``k`` integer matrix with ``k`` rows."""
    k = len(rows)
    if k == 0:
        return 1
    E, _, piv = column_echelon(rows, ncols)
    if len(piv) < k:
        return 0
    out = 1
    for c, i in enumerate(piv):
        out *= abs(E[i][c])
    return out


def _solve_in_basis(basis_cols, target_cols, dim):
    """Rational coordinates of targets in a full-column-rank basis (must be integral)."""
    k = len(basis_cols)
    aug = [[basis_cols[j][i] for j in range(k)] + [t[i] for t in target_cols]
           for i in range(dim)]
    R, piv = rref(aug, k + len(target_cols))
    if piv[:k] != list(range(k)):
        raise ArithmeticError("basis is rank deficient")
    coords = []
    for t in range(len(target_cols)):
        col = []
        for i in range(k):
            v = R[i][k + t]
            if v.denominator != 1:
                raise ArithmeticError("target is not in the lattice spanned by the basis")
            col.append(int(v))
        coords.append(col)
    return coords


def finite_quotient(super_basis, sub_gens, dim):
    """Invariants of ``span(super_basis) / span(sub_gens)`` assuming it is finite."""
    k = len(super_basis)
    if k == 0:
        return AbelianGroupInvariants()
    Y = _solve_in_basis(super_basis, sub_gens, dim) if sub_gens else []
    rows = [[Y[j][i] for j in range(len(Y))] for i in range(k)]
    order = index_of_full_rank(rows, len(Y))
    if order == 0:
        raise ArithmeticError("quotient is infinite")
    factors = []
    for p, e in sympy.factorint(order).items():
        counts = [0]
        j = 0
        prev = 1
        while counts[-1] < e:
            j += 1
            pj = p ** j
            ext = [row + [pj if i == c else 0 for c in range(k)] for i, row in enumerate(rows)]
            size = index_of_full_rank(ext, len(Y) + k)
            step = size // prev
            prev = size
            counts.append(counts[-1] + _ilog(step, p))
        # counts[j] - counts[j-1] = number of cyclic factors of order >= p^j
        ge = [counts[t] - counts[t - 1] for t in range(1, len(counts))]
        for t, n_ge in enumerate(ge):
            n_next = ge[t + 1] if t + 1 < len(ge) else 0
            factors.extend([p ** (t + 1)] * (n_ge - n_next))
    return AbelianGroupInvariants.from_diagonal(factors)


def _ilog(n, p):
    e = 0
    while n > 1:
        n //= p
        e += 1
    return e


def saturation(gens, dim):
    """Integer basis of ``(Q span of gens) intersect Z^dim``."""
    if not gens:
        return []
    left = rational_nullspace(gens, dim)
    return integer_nullspace(left, dim)


def cokernel_torsion(M):
    """Torsion subgroup of ``Z^rows / image(M)``."""
    rows, m, n = _rows(M)
    gens = [[rows[i][j] for i in range(m)] for j in range(n)]
    gens = [g for g in gens if any(g)]
    S = saturation(gens, m)
    return finite_quotient(S, gens, m)


def invariant_factors(M):
    """Nonzero Smith diagonal (including ones), computed without diagonalising."""
    rows, m, n = _rows(M)
    R, piv = rref(rows, n)
    tors = cokernel_torsion(M).torsion
    return [1] * (len(piv) - len(tors)) + list(tors)


# --------------------------------------------------------------------------
# cohomology from definitions


def _action(L, h):
    return [[int(v) for v in row] for row in L.action[h].tolist()]


def _matvec(A, x):
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def hat_h0(L, H):
    """``L^H / N_H L`` with both sides built from every element of ``H``."""
    r = L.rank
    conds = []
    for h in H.elements:
        A = _action(L, h)
        conds.extend([[A[i][j] - (i == j) for j in range(r)] for i in range(r)])
    fixed = integer_nullspace(conds, r)
    N = [[0] * r for _ in range(r)]
    for h in H.elements:
        A = _action(L, h)
        for i in range(r):
            for j in range(r):
                N[i][j] += A[i][j]
    norms = [[N[i][j] for i in range(r)] for j in range(r)]
    norms = [v for v in norms if any(v)]
    return finite_quotient(fixed, norms, r)


def hat_h_minus1(L, H):
    """``ker N_H / I_H L`` with ``I_H L`` spanned by ``(h - 1) e_j`` for all ``h``."""
    r = L.rank
    N = [[0] * r for _ in range(r)]
    for h in H.elements:
        A = _action(L, h)
        for i in range(r):
            for j in range(r):
                N[i][j] += A[i][j]
    kernel = integer_nullspace(N, r)
    gens = []
    for h in H.elements:
        A = _action(L, h)
        for j in range(r):
            v = [A[i][j] - (i == j) for i in range(r)]
            if any(v):
                gens.append(v)
    return finite_quotient(kernel, gens, r)


def h1_bar(L, H):
    """Crossed homomorphisms ``f(gh) = f(g) + g f(h)`` on all of ``H`` modulo principal ones."""
    r = L.rank
    els = list(H.elements)
    pos = {h: i for i, h in enumerate(els)}
    G = L.group
    n = len(els)
    dim = n * r
    rows = []
    for g in els:
        A = _action(L, g)
        for h in els:
            gh = pos[int(G.table[g, h])]
            for i in range(r):
                row = [0] * dim
                row[gh * r + i] += 1
                row[pos[g] * r + i] -= 1
                for j in range(r):
                    row[pos[h] * r + j] -= A[i][j]
                if any(row):
                    rows.append(row)
    cocycles = integer_nullspace(rows, dim)
    principal = []
    for j in range(r):
        v = []
        for h in els:
            A = _action(L, h)
            v.extend(A[i][j] - (i == j) for i in range(r))
        if any(v):
            principal.append(v)
    return finite_quotient(cocycles, principal, dim)


def h2_bar(L, H):
    """Inhomogeneous 2-cocycles modulo coboundaries (small ``H`` only)."""
    r = L.rank
    els = list(H.elements)
    pos = {h: i for i, h in enumerate(els)}
    G = L.group
    n = len(els)

    def idx(a, b):
        return (pos[a] * n + pos[b]) * r

    dim2 = n * n * r
    rows = []
    for a in els:
        A = _action(L, a)
        for b in els:
            ab = int(G.table[a, b])
            for c in els:
                bc = int(G.table[b, c])
                # (d f)(a,b,c) = a f(b,c) - f(ab,c) + f(a,bc) - f(a,b)
                for i in range(r):
                    row = [0] * dim2
                    for j in range(r):
                        row[idx(b, c) + j] += A[i][j]
                    row[idx(ab, c) + i] -= 1
                    row[idx(a, bc) + i] += 1
                    row[idx(a, b) + i] -= 1
                    if any(row):
                        rows.append(row)
    cocycles = integer_nullspace(rows, dim2)
    bounds = []
    for h in els:
        for j in range(r):
            # coboundary of the 1-cochain e_j supported at h
            v = [0] * dim2
            for a in els:
                A = _action(L, a)
                for b in els:
                    ab = int(G.table[a, b])
                    base = idx(a, b)
                    if b == h:
                        for i in range(r):
                            v[base + i] += A[i][j]
                    if ab == h:
                        v[base + j] -= 1
                    if a == h:
                        v[base + j] += 1
            if any(v):
                bounds.append(v)
    return finite_quotient(cocycles, bounds, dim2)


def tate_cohomology(L, H, degree):
    """Definitional Tate cohomology; degree 2 is limited to ``|H| <= 6``."""
    if L.rank == 0:
        return AbelianGroupInvariants()
    if degree == -1:
        return hat_h_minus1(L, H)
    if degree == 0:
        return hat_h0(L, H)
    if degree == 1:
        return h1_bar(L, H)
    if degree == 2:
        if H.order > 6:
            raise ValueError("bar-resolution degree 2 is limited to subgroups of order <= 6")
        return h2_bar(L, H)
    raise ValueError(f"unsupported degree {degree}")


# --------------------------------------------------------------------------
# kernels of lattice maps, rebuilt without the Smith path


def kernel_action(M, action):
    """Basis of ``ker M`` and the induced action table on it.

    ``action`` is the ``(n, r, r)`` table of the source lattice and ``M``
    an equivariant matrix out of it.  Returns ``(basis_columns, table)``
    with ``table[g]`` expressing ``action[g]`` on the kernel basis.
    """
    rows, m, r = _rows(M)
    if m == 0:
        basis = [[int(i == j) for i in range(r)] for j in range(r)]
    else:
        basis = integer_nullspace(rows, r)
    k = len(basis)
    table = np.zeros((len(action), k, k), dtype=np.int64)
    for g in range(len(action)):
        A = [[int(v) for v in row] for row in np.asarray(action[g]).tolist()]
        images = [_matvec(A, b) for b in basis]
        coords = _solve_in_basis(basis, images, r) if k else []
        for j, col in enumerate(coords):
            table[g, :, j] = col
    return basis, table


def local_homology(complex_, n):
    """``H^-1(G, Q_{n+1})`` with ``Q_{n+1}`` recomputed from the differential ``d_n``."""
    from ..group_core import whole_group
    from ..lattice import GLattice

    Ln, d = complex_.levels[n]
    _, table = kernel_action(d.matrix, Ln.action)
    Q = GLattice(Ln.group, table, name=f"Q_{n + 1} (oracle)")
    return hat_h_minus1(Q, whole_group(Ln.group))
