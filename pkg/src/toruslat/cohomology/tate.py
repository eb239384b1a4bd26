"""Tate cohomology of a subgroup acting on a lattice, degrees -1 to 2.

Each supported group is the torsion part of a single cokernel.  The reason
is the same in every degree: the relevant cocycle module is a kernel, hence
saturated, and it has the same rank as the coboundary module because the
cohomology of a finite group is torsion.  So cocycles are exactly the
saturation of coboundaries and the quotient is the torsion of the cokernel.

  degree -1   [rho(s) - 1 | ...]           (s over generators of H)
  degree  0   N_H = sum of rho(h)
  degree  1   the same blocks stacked vertically (values of crossed maps on generators)
  degree  2   Fox derivatives of the Cayley-graph relators of H
"""

from __future__ import annotations

import numpy as np

from ..errors import InputError
from ..group_core import Subgroup, all_subgroups, whole_group
from ..lattice import GLattice, hom_lattice, stacked_fixed_condition, _same_group
from .snf import AbelianGroupInvariants, identity, torsion_of_cokernel

SUPPORTED_DEGREES = (-1, 0, 1, 2)


def norm_matrix(L: GLattice, H: Subgroup):
    """``N_H = sum over h in H of rho(h)``."""
    if L.rank == 0:
        return np.zeros((0, 0), dtype=np.int64)
    return L.action[list(H.elements)].sum(axis=0)


def augmentation_matrix(L: GLattice, H: Subgroup):
    """Columns span ``I_H L``: the blocks ``rho(s) - 1`` side by side."""
    r = L.rank
    if not H.generators:
        return np.zeros((r, 0), dtype=np.int64)
    return np.hstack([L.action[s] - identity(r) for s in H.generators])


def fox_matrix(L: GLattice, H: Subgroup):
    """Coboundary from 1-cochains to 2-cochains of the Cayley-graph presentation.

    Rows come in blocks, one per non-tree edge ``(h, s)`` of a breadth-first
    spanning tree; columns in blocks, one per generator ``t``.
    """
    G = L.group
    r = L.rank
    gens = list(H.generators)
    k = len(gens)
    if k == 0 or r == 0:
        return np.zeros((0, k * r), dtype=np.int64)
    # derivative blocks of the tree word for each element of H
    deriv = {0: np.zeros((r, k * r), dtype=np.int64)}
    tree = set()
    frontier = [0]
    while frontier:
        nxt = []
        for h in frontier:
            for pos, s in enumerate(gens):
                u = int(G.table[h, s])
                if u in deriv:
                    continue
                D = deriv[h].copy()
                D[:, pos * r:(pos + 1) * r] += L.action[h]
                deriv[u] = D
                tree.add((h, pos))
                nxt.append(u)
        frontier = nxt
    blocks = []
    for h in sorted(deriv):
        for pos, s in enumerate(gens):
            if (h, pos) in tree:
                continue
            u = int(G.table[h, s])
            R = deriv[h].copy()
            R[:, pos * r:(pos + 1) * r] += L.action[h]
            R -= deriv[u]
            blocks.append(R)
    return np.vstack(blocks)


def cohomology_matrix(L: GLattice, H: Subgroup, degree: int):
    """The matrix whose cokernel torsion is the requested cohomology group."""
    if degree == -1:
        return augmentation_matrix(L, H)
    if degree == 0:
        return norm_matrix(L, H)
    if degree == 1:
        return stacked_fixed_condition(L, list(H.generators))
    if degree == 2:
        return fox_matrix(L, H)
    raise InputError(f"unsupported degree {degree}; supported: {SUPPORTED_DEGREES}")


def _check_subgroup(L, H):
    if H is None:
        return whole_group(L.group)
    if not isinstance(H, Subgroup) or H.parent != L.group:
        raise InputError("subgroup does not belong to the lattice's group")
    return H


def tate_cohomology(L: GLattice, H: Subgroup | None = None, degree: int = 0):
    """``H^degree(H, L)`` (Tate groups in degrees -1 and 0), always finite."""
    if degree not in SUPPORTED_DEGREES:
        raise InputError(f"unsupported degree {degree}; supported: {SUPPORTED_DEGREES}")
    H = _check_subgroup(L, H)
    M = cohomology_matrix(L, H, degree)
    rows = M.shape[0]
    return torsion_of_cokernel(M, rows)


def cohomology_table(L: GLattice, degree: int, subgroups=None):
    """Map subgroup id -> group for every subgroup.

    Conjugate subgroups have isomorphic cohomology, so only class
    representatives are computed and the value is copied across the class.
    """
    subs = all_subgroups(L.group) if subgroups is None else subgroups
    by_class = {}
    out = {}
    for H in subs:
        if H.class_id not in by_class:
            rep = H if H.is_representative else all_subgroups(L.group)[H.class_id]
            by_class[H.class_id] = tate_cohomology(L, rep, degree)
        out[H.id] = by_class[H.class_id]
    return out


def is_flasque(L: GLattice):
    """``H^-1(H, L) = 0`` for every subgroup."""
    return all(v.is_trivial for v in cohomology_table(L, -1).values())


def is_coflasque(L: GLattice):
    """``H^1(H, L) = 0`` for every subgroup."""
    return all(v.is_trivial for v in cohomology_table(L, 1).values())


def ext1(A: GLattice, B: GLattice) -> AbelianGroupInvariants:
    """``Ext^1_G(A, B) = H^1(G, Hom(A, B))``."""
    _same_group(A, B)
    return tate_cohomology(hom_lattice(A, B), whole_group(A.group), 1)
