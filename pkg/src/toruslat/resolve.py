"""Permutation covers, classification, splitting and lifting of lattice maps.

A cover of ``L`` is a surjection from a permutation lattice, described by
summands ``(H, v)`` with ``v`` fixed by ``H``: the summand ``Z[G/H]`` sends
the coset ``xH`` to ``rho(x) v``.  Its kernel is coflasque exactly when the
map is onto on ``H``-fixed points for every subgroup ``H`` (long exact
sequence), and that is the condition the constructions maintain.

Two strategies build covers:

* ``canonical`` takes every class representative ``H`` with every basis
  vector of ``L^H``.  Deterministic and simple, but the rank grows quickly.
* ``greedy`` walks the representatives from large to small, adds only the
  summands needed to make fixed points onto, then drops redundant ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._kernels import exact_matmul
from .cohomology.snf import (AbelianGroupInvariants, diagonal_entries, identity,
                             integer_kernel, left_inverse, lll_columns, shrink,
                             solve_integer)
from .cohomology.tate import cohomology_table, ext1, tate_cohomology
from .errors import CapacityError, InputError, ToruslatError, UndecidedError
from .group_core import Subgroup, all_subgroups, representatives
from .lattice import (GLattice, LatticeMap, coset_action, direct_sum, dual,
                      fixed_sublattice, permutation_sum, quotient, sublattice)

STRATEGIES = ("canonical", "greedy")
MAX_DEPTH = 4
# largest integer system handed to the general (non-permutation) solvers
MAX_SYSTEM_UNKNOWNS = 4096


@dataclass(frozen=True, eq=False)
class Resolution:
    """A short exact sequence ``0 -> kernel -> cover -> base -> 0``.

    ``kind == "coflasque"``: ``cover`` is a permutation lattice and
    ``kernel`` is coflasque.  ``kind == "flasque"``: ``kernel`` is a
    permutation lattice and ``cover`` is flasque.
    """

    base: GLattice
    cover: GLattice
    kernel: GLattice
    surjection: LatticeMap
    inclusion: LatticeMap
    kind: str = "coflasque"
    summands: tuple = ()

    def check_exact(self):
        """Exactness: composite zero, surjection onto, inclusion saturated, ranks add."""
        comp = exact_matmul(self.surjection.matrix, self.inclusion.matrix)
        if np.any(comp != 0):
            return False
        if self.cover.rank != self.kernel.rank + self.base.rank:
            return False
        if not self.surjection.is_surjective():
            return False
        inc = self.inclusion.matrix
        if inc.shape[1]:
            diag = diagonal_entries(inc)
            if len(diag) != inc.shape[1] or any(d != 1 for d in diag):
                return False
        return True


# ---------------------------------------------------------------------------
# covers


class _CoverData:
    """Caches coset actions, orbits and fixed bases for one lattice."""

    def __init__(self, L: GLattice):
        self.L = L
        self.G = L.group
        self._cosets = {}
        self._fixed = {}
        self._images = {}

    def cosets(self, K):
        if K.elements not in self._cosets:
            self._cosets[K.elements] = coset_action(self.G, K)
        return self._cosets[K.elements]

    def fixed(self, H):
        if H.elements not in self._fixed:
            self._fixed[H.elements] = fixed_sublattice(self.L, H)
        return self._fixed[H.elements]

    def reduced_fixed(self, H):
        key = ("lll", H.elements)
        if key not in self._fixed:
            self._fixed[key] = lll_columns(self.fixed(H))
        return self._fixed[key]

    def summand_columns(self, K, v):
        """Images ``rho(x_c) v`` of the coset basis of ``Z[G/K]``."""
        perm, cs = self.cosets(K)
        reps = [c[0] for c in cs]
        v = np.asarray(v, dtype=np.int64).reshape(-1)
        return np.stack([self.L.action[x] @ v for x in reps], axis=1) \
            if self.L.rank else np.zeros((0, len(reps)), dtype=np.int64)

    def _orbit_images(self, K, v, H):
        key = (K.elements, H.elements, np.asarray(v).tobytes())
        if key not in self._images:
            perm, cs = self.cosets(K)
            images = self.summand_columns(K, v)
            seen = np.zeros(len(cs), dtype=bool)
            out = []
            for c in range(len(cs)):
                if seen[c]:
                    continue
                orbit = np.unique(perm[list(H.elements), c])
                seen[orbit] = True
                out.append(images[:, orbit].sum(axis=1))
            cols = np.stack(out, axis=1)
            self._images[key] = (cols, exact_matmul(self.fixed_coords(H), cols))
        return self._images[key]

    def fixed_images(self, summands, H, coords=False):
        """Images of the ``H``-orbit sums of every summand's coset basis.

        With ``coords`` the images are given in coordinates of ``L^H``.
        """
        blocks = [self._orbit_images(K, v, H)[int(coords)] for K, v in summands]
        if not blocks:
            rows = self.fixed(H).shape[1] if coords else self.L.rank
            return np.zeros((rows, 0), dtype=np.int64)
        return np.hstack(blocks)

    def fixed_coords(self, H):
        """Left inverse of the fixed basis: ambient vectors in ``L^H`` to coordinates."""
        key = ("coords", H.elements)
        if key not in self._fixed:
            B = self.fixed(H)
            self._fixed[key] = left_inverse(B) if B.shape[1] else B.T
        return self._fixed[key]

    def onto_fixed(self, summands, H):
        """Whether ``P^H -> L^H`` is surjective."""
        k = self.fixed(H).shape[1]
        if k == 0:
            return True
        # the image lies in L^H, so test surjectivity in its coordinates
        coords = self.fixed_images(summands, H, coords=True)
        if coords.shape[1] < k:
            return False
        diag = diagonal_entries(coords)
        return len(diag) == k and all(d == 1 for d in diag)


def _ordered_representatives(G, order):
    reps = list(representatives(G))
    if order is None:
        return reps
    order = list(order)
    ids = sorted(H.id for H in order)
    if ids != sorted(H.id for H in reps):
        raise InputError("order must be a permutation of the class representatives")
    return order


def canonical_summands(L: GLattice, order=None):
    """Every class representative ``H`` paired with every basis vector of ``L^H``."""
    data = _CoverData(L)
    out = []
    for H in _ordered_representatives(L.group, order):
        B = data.fixed(H)
        for j in range(B.shape[1]):
            out.append((H, np.asarray(B[:, j], dtype=np.int64)))
    return out


def greedy_summands(L: GLattice, order=None, prune=True):
    """A small list of summands whose cover is onto on all fixed points."""
    data = _CoverData(L)
    reps = _ordered_representatives(L.group, order)
    if order is None:
        reps = sorted(reps, key=lambda H: (-H.order, H.id))
    summands = []
    for H in reps:
        if data.onto_fixed(summands, H):
            continue
        # short fixed vectors keep the cover map and its kernel small
        for j in range(data.reduced_fixed(H).shape[1]):
            summands.append((H, np.asarray(data.reduced_fixed(H)[:, j], dtype=np.int64)))
            if data.onto_fixed(summands, H):
                break
    if prune:
        summands = _prune(data, summands, reps)
    return summands


def _prune(data, summands, reps):
    """Drop summands while fixed points stay onto.

    Removal is tried on blocks of halving size, newest first; the last pass
    uses single summands, so no remaining summand is redundant on its own.
    """
    # the subgroup that blocked the last removal usually blocks the next one
    checks = list(reps)

    def still_onto(trial):
        for pos, H in enumerate(checks):
            if not data.onto_fixed(trial, H):
                checks.insert(0, checks.pop(pos))
                return False
        return True

    size = max(1, len(summands) // 2)
    while True:
        end = len(summands)
        while end > 0:
            start = max(0, end - size)
            trial = summands[:start] + summands[end:]
            if still_onto(trial):
                summands = trial
            end = start
        if size == 1:
            return summands
        size //= 2


def cover_from_summands(L: GLattice, summands, check=True):
    """The resolution ``0 -> Q -> P -> L -> 0`` defined by ``(H, v)`` summands."""
    G = L.group
    data = _CoverData(L)
    for K, v in summands:
        if not isinstance(K, Subgroup) or K.parent != G:
            raise InputError("summand subgroup belongs to a different group")
        v = np.asarray(v).reshape(-1)
        for s in K.generators:
            if not np.array_equal(L.action[s] @ v, v):
                raise InputError("summand vector is not fixed by its subgroup")
    P = permutation_sum(G, [K for K, _ in summands])
    if summands:
        f = np.hstack([data.summand_columns(K, v) for K, v in summands])
    else:
        f = np.zeros((L.rank, 0), dtype=np.int64)
    surj = LatticeMap(P, L, f)
    if L.rank == 0:
        Kb = identity(P.rank)
    else:
        Kb = integer_kernel(f, canonical=False, reduced=True) if P.rank \
            else np.zeros((0, 0), dtype=np.int64)
    Q, _ = sublattice(P, Kb)
    Q.name = "Q"
    incl = LatticeMap(Q, P, Kb)
    res = Resolution(L, P, Q, surj, incl, "coflasque", tuple(summands))
    if check:
        if not res.check_exact():
            raise InputError("summands do not define a surjection onto the lattice")
        for H in representatives(G):
            if not data.onto_fixed(list(summands), H):
                raise InputError(f"cover is not onto on fixed points of subgroup {H.id}")
    return res


def coflasque_cover(L: GLattice, strategy="canonical", order=None):
    """Coflasque resolution ``0 -> Q -> P -> L -> 0`` with ``P`` a permutation lattice."""
    if strategy == "canonical":
        summands = canonical_summands(L, order)
    elif strategy == "greedy":
        summands = greedy_summands(L, order)
    else:
        raise InputError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    return cover_from_summands(L, summands)


def fixed_points_onto(res: Resolution, H: Subgroup):
    """Whether ``cover^H -> base^H`` is surjective (computed from the maps directly)."""
    P, L = res.cover, res.base
    BL = fixed_sublattice(L, H)
    k = BL.shape[1]
    if k == 0:
        return True
    BP = fixed_sublattice(P, H)
    if BP.shape[1] == 0:
        return False
    img = exact_matmul(res.surjection.matrix, BP)
    coords = exact_matmul(left_inverse(BL), img)
    diag = diagonal_entries(coords)
    return len(diag) == k and all(d == 1 for d in diag)


def flasque_cover(L: GLattice, strategy="canonical"):
    """Resolution ``0 -> P -> F -> L -> 0`` with ``P`` permutation and ``F`` flasque.

    Built as a pushout.  Take a coflasque cover ``0 -> K -> P0 -> L -> 0``
    and a flasque coresolution ``0 -> K -> P1 -> F1 -> 0`` (dual of a
    coflasque cover of ``dual(K)``).  Then ``F = (P0 + P1) / K`` with ``K``
    embedded antidiagonally; ``P1`` injects into ``F`` with quotient ``L``,
    and ``0 -> P0 -> F -> F1 -> 0`` shows ``F`` is flasque.
    """
    first = coflasque_cover(L, strategy)
    K = first.kernel
    second = coflasque_cover(dual(K), strategy)
    # dualising 0 -> K'' -> P'' -> K* -> 0 gives K -> dual(P'') via the transpose
    P1 = dual(second.cover)
    into_p1 = np.asarray(second.surjection.matrix).T
    P0 = first.cover
    S = direct_sum(P0, P1)
    anti = np.vstack([np.asarray(first.inclusion.matrix), -into_p1]) \
        if K.rank else np.zeros((S.rank, 0), dtype=np.int64)
    F, proj, sect = quotient(S, anti)
    F.name = "F"
    lift_p1 = np.vstack([np.zeros((P0.rank, P1.rank), dtype=np.int64),
                         identity(P1.rank)])
    incl = LatticeMap(P1, F, exact_matmul(proj, lift_p1))
    to_base = np.hstack([np.asarray(first.surjection.matrix),
                         np.zeros((L.rank, P1.rank), dtype=np.int64)])
    surj = LatticeMap(F, L, exact_matmul(to_base, sect))
    P1.permutation_summands = second.cover.permutation_summands
    return Resolution(L, F, P1, surj, incl, "flasque")


# ---------------------------------------------------------------------------
# splitting


@dataclass(frozen=True, eq=False)
class SplitResult:
    section: LatticeMap | None
    method: str
    reason: str = ""

    @property
    def found(self):
        return self.section is not None


def _equivariance_rows(src: GLattice, tgt: GLattice):
    """Rows expressing ``rho_tgt(g) X = X rho_src(g)`` on row-major ``vec(X)``."""
    a, b = tgt.rank, src.rank
    blocks = []
    for g in src.group.generator_indices:
        blocks.append(np.kron(tgt.action[g], identity(b))
                      - np.kron(identity(a), src.action[g].T))
    if not blocks:
        return np.zeros((0, a * b), dtype=np.int64)
    return np.vstack(blocks)


def _solve_equivariant(src, tgt, cond, rhs):
    """Find an equivariant ``X : src -> tgt`` with ``cond @ vec(X) = rhs``."""
    n = src.rank * tgt.rank
    if n > MAX_SYSTEM_UNKNOWNS:
        raise CapacityError(f"equivariant system with {n} unknowns exceeds the bound")
    eq = _equivariance_rows(src, tgt)
    A = np.vstack([eq, cond]) if eq.shape[0] else cond
    b = np.concatenate([np.zeros(eq.shape[0], dtype=np.int64), np.asarray(rhs).reshape(-1)])
    x, _ = solve_integer(A, b)
    if x is None:
        return None
    return np.asarray(x).reshape(tgt.rank, src.rank)


def _coset_layout(P: GLattice):
    """(subgroup, coset representatives, first column) per permutation summand."""
    out = []
    col = 0
    for H in P.permutation_summands:
        _, cs = coset_action(P.group, H)
        reps = [c[0] for c in cs]
        out.append((H, reps, col))
        col += len(reps)
    return out


def _split_frobenius(f: LatticeMap):
    P, L = f.source, f.target
    r = L.rank
    G = L.group
    Ld = dual(L)
    fm = np.asarray(f.matrix)
    columns = []
    layout = []
    for H, reps, col in _coset_layout(P):
        B = fixed_sublattice(Ld, H)
        for t in range(B.shape[1]):
            phi = np.asarray(B[:, t], dtype=np.int64)
            M = np.zeros((r, r), dtype=object)
            for k, x in enumerate(reps):
                row = phi @ L.action[G.inverse[x]]
                M += np.outer(fm[:, col + k].astype(object), row.astype(object))
            columns.append(M.reshape(-1))
        layout.append((H, reps, col, B))
    if not columns:
        A = np.zeros((r * r, 0), dtype=np.int64)
    else:
        A = shrink(np.stack(columns, axis=1))
    y, _ = solve_integer(A, identity(r).reshape(-1))
    if y is None:
        return None
    S = np.zeros((P.rank, r), dtype=object)
    pos = 0
    for H, reps, col, B in layout:
        d = B.shape[1]
        phi = exact_matmul(B, np.asarray(y[pos:pos + d]).reshape(d, 1)).reshape(-1)
        pos += d
        for k, x in enumerate(reps):
            S[col + k, :] = exact_matmul(phi.reshape(1, -1), L.action[G.inverse[x]]).reshape(-1)
    return shrink(S)


def attempt_split(f: LatticeMap) -> SplitResult:
    """Look for an equivariant ``s`` with ``f o s = id``.

    The search is complete: the integer system is solved exactly, so a
    negative answer means no equivariant integral section exists.
    """
    if not f.is_surjective():
        raise InputError("attempt_split needs a surjective map")
    P, L = f.source, f.target
    if L.rank == 0:
        return SplitResult(LatticeMap(L, P, np.zeros((P.rank, 0), dtype=np.int64)), "trivial")
    if P.permutation_summands is not None:
        S = _split_frobenius(f)
        method = "frobenius"
    else:
        cond = np.kron(np.asarray(f.matrix), identity(L.rank))
        S = _solve_equivariant(L, P, cond, identity(L.rank).reshape(-1))
        method = "general"
    if S is None:
        return SplitResult(None, method, "no equivariant integral section exists")
    s = LatticeMap(L, P, S)
    if not np.array_equal(exact_matmul(f.matrix, s.matrix), identity(L.rank)):
        raise ToruslatError("internal error: computed section does not split the map")
    return SplitResult(s, method)


def stabilized_split(f: LatticeMap, candidates) -> tuple:
    """Split ``f`` after adding permutation summands to its source.

    ``candidates`` is a list of subgroups; prefixes of it are tried in
    order, each candidate ``H`` contributing ``Z[G/H]`` mapped onto a basis
    of ``L^H``.  Returns ``(extended_map, section, used_count)``.  Raises
    ``UndecidedError`` when the list is exhausted: the search is only a
    semi-decision, so exhaustion proves nothing.
    """
    L = f.target
    data = _CoverData(L)
    extra = []
    for used in range(len(candidates) + 1):
        if used:
            H = candidates[used - 1]
            B = data.fixed(H)
            extra.extend((H, np.asarray(B[:, j], dtype=np.int64)) for j in range(B.shape[1]))
        if extra:
            P2 = permutation_sum(L.group, [H for H, _ in extra])
            g = np.hstack([data.summand_columns(H, v) for H, v in extra])
            src = direct_sum(f.source, P2)
            F = LatticeMap(src, L, np.hstack([np.asarray(f.matrix), g]))
        else:
            F = f
        if not F.is_surjective():
            continue
        res = attempt_split(F)
        if res.found:
            return F, res.section, used
    raise UndecidedError(f"no splitting found after {len(candidates)} candidate summands")


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True, eq=False)
class Classification:
    is_permutation_witnessed: bool
    flasque: bool
    coflasque: bool
    invertible: bool
    certificates: dict = field(default_factory=dict)
    witness: object = None

    def to_dict(self):
        return {
            "is_permutation_witnessed": self.is_permutation_witnessed,
            "flasque": self.flasque,
            "coflasque": self.coflasque,
            "invertible": self.invertible,
            "certificates": {
                str(k): {deg: inv.to_dict() for deg, inv in v.items()}
                for k, v in sorted(self.certificates.items())
            },
        }


def classify(L: GLattice, strategy="greedy") -> Classification:
    """Permutation / flasque / coflasque / invertible status with cohomology certificates.

    ``L`` is invertible iff a coflasque cover of it splits: an invertible
    ``L`` has ``Ext^1(L, Q) = 0`` for coflasque ``Q``, and a splitting
    exhibits ``L`` as a summand of a permutation lattice.  Any coflasque
    cover works, so the smaller greedy one is the default.
    """
    all_subgroups(L.group)
    hm1 = cohomology_table(L, -1)
    h1 = cohomology_table(L, 1)
    certs = {k: {"H^-1": hm1[k], "H^1": h1[k]} for k in sorted(hm1)}
    flasque = all(v.is_trivial for v in hm1.values())
    coflasque = all(v.is_trivial for v in h1.values())
    perm = L.permutation_summands is not None or L.is_permutation_action()
    witness = None
    if perm:
        invertible = True
    elif not (flasque and coflasque):
        invertible = False
    else:
        res = coflasque_cover(L, strategy)
        split = attempt_split(res.surjection)
        invertible = split.found
        witness = split.section
    return Classification(perm, flasque, coflasque, invertible, certs, witness)


# ---------------------------------------------------------------------------
# lifting


@dataclass(frozen=True, eq=False)
class LiftResult:
    lift: LatticeMap | None
    obstruction_group: AbelianGroupInvariants | None
    method: str

    @property
    def found(self):
        return self.lift is not None


def lifting_obstruction_group(cover: GLattice, kernel: GLattice):
    """``Ext^1(cover, kernel)``; for a permutation cover, the sum of ``H^1(H, kernel)``."""
    if cover.permutation_summands is not None:
        parts = [tate_cohomology(kernel, H, 1) for H in cover.permutation_summands]
        return AbelianGroupInvariants.from_diagonal([d for p in parts for d in p.torsion])
    return ext1(cover, kernel)


def lift_morphism(f: LatticeMap, target_res: Resolution, source_cover: Resolution) -> LiftResult:
    """Find ``F : source_cover.cover -> target_res.cover`` with ``pi_B F = f pi_A``."""
    if f.source != source_cover.base or f.target != target_res.base:
        raise InputError("resolutions do not match the map's source and target")
    PA, PB = source_cover.cover, target_res.cover
    piA = np.asarray(source_cover.surjection.matrix)
    piB = np.asarray(target_res.surjection.matrix)
    goal = exact_matmul(f.matrix, piA)
    if PA.permutation_summands is not None:
        M = np.zeros((PB.rank, PA.rank), dtype=object)
        ok = True
        for H, reps, col in _coset_layout(PA):
            B = fixed_sublattice(PB, H)
            target = goal[:, col]
            if B.shape[1] == 0:
                z = np.zeros(0, dtype=np.int64) if not np.any(target != 0) else None
            else:
                z, _ = solve_integer(exact_matmul(piB, B), target)
            if z is None:
                ok = False
                break
            w = exact_matmul(B, np.asarray(z).reshape(-1, 1)).reshape(-1) \
                if B.shape[1] else np.zeros(PB.rank, dtype=np.int64)
            for k, x in enumerate(reps):
                M[:, col + k] = exact_matmul(PB.action[x], w.reshape(-1, 1)).reshape(-1)
        method = "frobenius"
        M = shrink(M) if ok else None
    else:
        cond = np.kron(piB, identity(PA.rank))
        M = _solve_equivariant(PA, PB, cond, np.asarray(goal).reshape(-1))
        method = "general"
    if M is None:
        obstruction = lifting_obstruction_group(PA, target_res.kernel)
        return LiftResult(None, obstruction, method)
    lift = LatticeMap(PA, PB, M)
    if not np.array_equal(exact_matmul(piB, lift.matrix), goal):
        raise ToruslatError("internal error: lift does not commute")
    return LiftResult(lift, None, method)


# ---------------------------------------------------------------------------
# iterated resolutions


@dataclass(frozen=True, eq=False)
class ToricComplex:
    """``L_depth -> ... -> L_0 -> L`` with ``Q_0 = L`` and ``Q_{i+1} = ker(L_i -> Q_i)``.

    ``levels[i] = (L_i, d_i)`` where ``d_0 : L_0 -> L`` and
    ``d_i : L_i -> L_{i-1}`` for ``i >= 1``.  ``kernels[i]`` is ``Q_i`` for
    ``i = 0 .. depth + 1``.
    """

    base_lattice: GLattice
    levels: tuple
    kernels: tuple
    resolutions: tuple
    depth: int
    strategy: str = "canonical"
    _classes: dict = field(default_factory=dict, repr=False)

    def classification(self, i):
        """Classification of ``Q_i`` (computed on first use)."""
        if i not in self._classes:
            self._classes[i] = classify(self.kernels[i])
        return self._classes[i]

    def ranks(self):
        return [Li.rank for Li, _ in self.levels]

    def verify(self):
        """Check ``d_i d_{i+1} = 0``, exactness at every level, and coflasque kernels."""
        problems = []
        maps = [d for _, d in self.levels]
        for i in range(len(maps) - 1):
            comp = exact_matmul(maps[i].matrix, maps[i + 1].matrix)
            if np.any(comp != 0):
                problems.append(f"d_{i} d_{i + 1} != 0")
        if maps and not maps[0].is_surjective():
            problems.append("d_0 is not onto")
        for i in range(1, len(maps)):
            K = maps[i - 1].kernel_basis()
            img = maps[i].matrix
            if K.shape[1] == 0:
                if np.any(img != 0):
                    problems.append(f"image of d_{i} not in kernel")
                continue
            diag = diagonal_entries(img) if img.size else []
            if len(diag) != K.shape[1] or any(d != 1 for d in diag):
                problems.append(f"not exact at L_{i - 1}")
        for i, Q in enumerate(self.kernels[1:], start=1):
            if any(not v.is_trivial for v in cohomology_table(Q, 1).values()):
                problems.append(f"Q_{i} is not coflasque")
        return problems


def iterate_resolution(L: GLattice, depth: int, strategy="canonical", order=None,
                       max_depth=MAX_DEPTH, check=True) -> ToricComplex:
    """Iterated coflasque covers ``L_i -> Q_i`` to the given depth."""
    if depth < 0:
        raise InputError("depth must be nonnegative")
    if depth > max_depth:
        raise CapacityError(f"depth {depth} exceeds the maximum {max_depth}")
    kernels = [L]
    resolutions = []
    levels = []
    for i in range(depth + 1):
        if strategy == "canonical":
            summands = canonical_summands(kernels[i], order)
        elif strategy == "greedy":
            summands = greedy_summands(kernels[i], order)
        else:
            raise InputError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
        res = cover_from_summands(kernels[i], summands)
        res.cover.name = f"L_{i}"
        res.kernel.name = f"Q_{i + 1}"
        resolutions.append(res)
        kernels.append(res.kernel)
        if i == 0:
            d = res.surjection
        else:
            prev = resolutions[i - 1]
            d = LatticeMap(res.cover, prev.cover,
                           exact_matmul(prev.inclusion.matrix, res.surjection.matrix))
        levels.append((res.cover, d))
    cx = ToricComplex(L, tuple(levels), tuple(kernels), tuple(resolutions), depth, strategy)
    if check:
        problems = cx.verify()
        if problems:
            raise ToruslatError("resolution failed its invariants: " + "; ".join(problems))
    return cx
