"""G-lattices: free Z-modules of finite rank with an integral group action.

Matrices act on column vectors and ``action[g] @ action[h] == action[g*h]``.
A lattice stores the full action table as an ``(order, rank, rank)`` int64
array; entries are bounded so that every product fits in 64 bits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._kernels import exact_matmul
from .cohomology.snf import (as_int_matrix, column_hnf_basis, diagonal_entries,
                             identity, integer_kernel, left_inverse, shrink,
                             unimodular_inverse)
from .errors import CapacityError, InputError
from .group_core import FiniteGroup, Subgroup, subgroup_from_elements

MAX_RANK = 512
MAX_ENTRY = 2**20
MAX_ACTION_BYTES = 2**28


def _check_capacity(order, rank):
    if rank > MAX_RANK:
        raise CapacityError(f"lattice rank {rank} exceeds the bound {MAX_RANK}")
    if order * rank * rank * 8 > MAX_ACTION_BYTES:
        raise CapacityError(f"action table for rank {rank} over order {order} is too large")


class GLattice:
    """A lattice with an action of ``group``; construct via the module functions."""

    def __init__(self, group: FiniteGroup, action, name=None, permutation_summands=None,
                 check=True):
        action = np.asarray(action)
        n = group.order
        if action.ndim != 3 or action.shape[0] != n or action.shape[1] != action.shape[2]:
            raise InputError(f"action table has shape {action.shape}, expected ({n}, r, r)")
        rank = action.shape[1]
        _check_capacity(n, rank)
        if action.size and np.abs(action).max() > MAX_ENTRY:
            raise CapacityError("action matrix entries exceed the supported bound")
        action = np.ascontiguousarray(action, dtype=np.int64)
        action.setflags(write=False)
        self.group = group
        self.rank = rank
        self.action = action
        self.name = name
        # subgroups H for which this lattice was built as the sum of Z[G/H]
        self.permutation_summands = permutation_summands
        if check:
            self._validate()

    def _validate(self):
        r = self.rank
        if not np.array_equal(self.action[0], identity(r)):
            raise InputError("identity element must act trivially")
        if r and not _kernels.is_homomorphism(self.group.table, self.action):
            raise InputError("action is not a homomorphism: a group relation fails")
        for g in self.group.generator_indices:
            if not _unimodular(self.action[g]):
                raise InputError("action matrix is not unimodular")

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"GLattice({label.strip() or 'unnamed'}, rank {self.rank}, over {self.group!r})"

    def __eq__(self, other):
        if not isinstance(other, GLattice):
            return NotImplemented
        return self.group == other.group and np.array_equal(self.action, other.action)

    def __hash__(self):
        return hash((self.group, self.rank, self.action.tobytes()))

    def matrix(self, g):
        return self.action[g]

    def generator_matrices(self):
        return [self.action[g] for g in self.group.generator_indices]

    def is_permutation_action(self):
        """All matrices are 0/1 with a single 1 in each row and column."""
        A = self.action
        if self.rank == 0:
            return True
        return bool(((A == 0) | (A == 1)).all() and (A.sum(axis=1) == 1).all()
                    and (A.sum(axis=2) == 1).all())

    @property
    def is_constructed_permutation(self):
        return self.permutation_summands is not None


def _unimodular(M):
    r = M.shape[0]
    if r == 0:
        return True
    diag = diagonal_entries(M)
    return len(diag) == r and all(d == 1 for d in diag)


def make_lattice(group, rank, generator_matrices, name=None):
    """Lattice from one matrix per group generator, extended along canonical words."""
    rank = int(rank)
    if rank < 0:
        raise InputError("rank must be nonnegative")
    mats = [np.asarray(M) for M in generator_matrices]
    if len(mats) != len(group.generators):
        raise InputError(f"expected {len(group.generators)} generator matrices, got {len(mats)}")
    gens = []
    for M in mats:
        if M.size == 0 and rank == 0:
            M = np.zeros((0, 0), dtype=np.int64)
        M = as_int_matrix(M)
        if M.shape != (rank, rank):
            raise InputError(f"generator matrix has shape {M.shape}, expected ({rank}, {rank})")
        if M.dtype == object or (M.size and np.abs(M).max() > MAX_ENTRY):
            raise CapacityError("generator matrix entries exceed the supported bound")
        if not _unimodular(M):
            raise InputError("generator matrix is not unimodular")
        gens.append(M)
    n = group.order
    _check_capacity(n, rank)
    action = np.zeros((n, rank, rank), dtype=np.int64)
    action[0] = identity(rank)
    for j in range(1, n):
        prev = action[group.word_parent[j]]
        action[j] = exact_matmul(prev, gens[group.word_gen[j]])
        if action[j].size and np.abs(action[j]).max() > MAX_ENTRY:
            raise InputError("generator matrices do not define a finite group action")
    return GLattice(group, action, name=name)


def trivial_lattice(group, rank=1):
    action = np.broadcast_to(identity(rank), (group.order, rank, rank)).copy()
    summands = (subgroup_from_elements(group, range(group.order)),) * rank
    return GLattice(group, action, name="Z" if rank == 1 else f"Z^{rank}",
                    permutation_summands=summands, check=False)


def sign_lattice(group, generator_signs, name=None):
    """Rank-one lattice on which each generator acts by the given sign."""
    mats = [[[int(s)]] for s in generator_signs]
    for s in generator_signs:
        if s not in (1, -1):
            raise InputError("signs must be +1 or -1")
    return make_lattice(group, 1, mats, name=name or "Z-")


def cosets(group: FiniteGroup, H: Subgroup):
    """Left cosets ``gH`` as sorted index tuples, ordered by smallest element."""
    seen = np.zeros(group.order, dtype=bool)
    out = []
    elems = np.asarray(H.elements, dtype=np.int64)
    for g in range(group.order):
        if not seen[g]:
            c = np.sort(group.table[g, elems])
            seen[c] = True
            out.append(tuple(int(x) for x in c))
    return out


def coset_action(group, H):
    """``perm[g, c]`` = index of the coset ``g * c``."""
    cs = cosets(group, H)
    where = np.empty(group.order, dtype=np.int64)
    for k, c in enumerate(cs):
        where[list(c)] = k
    reps = np.asarray([c[0] for c in cs], dtype=np.int64)
    return where[group.table[:, reps]], cs


def permutation_lattice(group, H, name=None):
    """``Z[G/H]`` on the canonical coset basis."""
    if not isinstance(H, Subgroup):
        H = subgroup_from_elements(group, H)
    if H.parent != group:
        raise InputError("subgroup belongs to a different group")
    perm, cs = coset_action(group, H)
    k = len(cs)
    _check_capacity(group.order, k)
    action = np.zeros((group.order, k, k), dtype=np.int64)
    cols = np.arange(k)
    for g in range(group.order):
        action[g, perm[g], cols] = 1
    label = name or ("Z[G]" if H.order == 1 else "Z" if H.order == group.order
                     else f"Z[G/H{H.id}]")
    return GLattice(group, action, name=label, permutation_summands=(H,), check=False)


def permutation_sum(group, subgroups, name=None):
    """Direct sum of ``Z[G/H]`` over a list of subgroups (possibly with repeats)."""
    parts = [permutation_lattice(group, H) for H in subgroups]
    if not parts:
        return GLattice(group, np.zeros((group.order, 0, 0), dtype=np.int64),
                        name=name or "0", permutation_summands=(), check=False)
    out = direct_sum(*parts)
    out.name = name or out.name
    return out


def regular_lattice(group):
    return permutation_lattice(group, subgroup_from_elements(group, [0]), name="Z[G]")


def zero_lattice(group):
    return GLattice(group, np.zeros((group.order, 0, 0), dtype=np.int64), name="0",
                    permutation_summands=(), check=False)


def norm_one_lattice(group):
    """Augmentation ideal ``I_G`` on the basis ``e_g - e_1`` (``g != 1``)."""
    n = group.order
    r = n - 1
    action = np.zeros((n, r, r), dtype=np.int64)
    for g in range(n):
        for h in range(1, n):
            gh = int(group.table[g, h])
            # g . (e_h - e_1) = (e_gh - e_1) - (e_g - e_1)
            if gh != 0:
                action[g, gh - 1, h - 1] += 1
            if g != 0:
                action[g, g - 1, h - 1] -= 1
    return GLattice(group, action, name="I_G", check=False)


def dual(L: GLattice):
    """Contragredient lattice: ``g`` acts by the transpose of ``L``'s ``g^-1``."""
    A = L.action[L.group.inverse].transpose(0, 2, 1)
    name = f"dual({L.name})" if L.name else None
    return GLattice(L.group, A, name=name,
                    permutation_summands=L.permutation_summands, check=False)


def _same_group(*lattices):
    G = lattices[0].group
    for L in lattices[1:]:
        if L.group != G:
            raise InputError("lattices are defined over different groups")
    return G


def direct_sum(*lattices):
    if not lattices:
        raise InputError("direct_sum needs at least one lattice")
    G = _same_group(*lattices)
    r = sum(L.rank for L in lattices)
    _check_capacity(G.order, r)
    action = np.zeros((G.order, r, r), dtype=np.int64)
    off = 0
    for L in lattices:
        action[:, off:off + L.rank, off:off + L.rank] = L.action
        off += L.rank
    summands = None
    if all(L.permutation_summands is not None for L in lattices):
        summands = tuple(H for L in lattices for H in L.permutation_summands)
    name = " + ".join(L.name or "?" for L in lattices)
    return GLattice(G, action, name=name, permutation_summands=summands, check=False)


def tensor(L: GLattice, M: GLattice):
    """``L (x) M`` on the row-major basis ``e_i (x) f_j -> i * rank(M) + j``."""
    G = _same_group(L, M)
    r = L.rank * M.rank
    _check_capacity(G.order, r)
    action = np.zeros((G.order, r, r), dtype=np.int64)
    for g in range(G.order):
        action[g] = np.kron(L.action[g], M.action[g])
    if r and np.abs(action).max() > MAX_ENTRY:
        raise CapacityError("tensor product entries exceed the supported bound")
    name = f"({L.name or '?'}) (x) ({M.name or '?'})"
    return GLattice(G, action, name=name, check=False)


def hom_lattice(L: GLattice, M: GLattice):
    """``Hom(L, M) = dual(L) (x) M``.

    The coordinate vector ``v`` corresponds to the matrix ``X`` (rank M x
    rank L) with ``X[j, i] = v[i * rank(M) + j]``.
    """
    out = tensor(dual(L), M)
    out.name = f"Hom({L.name or '?'}, {M.name or '?'})"
    return out


def hom_vector_to_matrix(v, L: GLattice, M: GLattice):
    v = np.asarray(v).reshape(L.rank, M.rank)
    return v.T.copy()


def hom_matrix_to_vector(X, L: GLattice, M: GLattice):
    X = np.asarray(X)
    return X.T.reshape(-1).copy()


def stacked_fixed_condition(L: GLattice, generators):
    """Vertical stack of ``action(s) - I`` over ``generators``."""
    r = L.rank
    if not generators:
        return np.zeros((0, r), dtype=np.int64)
    return np.vstack([L.action[s] - identity(r) for s in generators])


def fixed_sublattice(L: GLattice, H: Subgroup):
    """Canonical (column Hermite) basis of ``L^H`` as a ``rank x k`` matrix."""
    if H.parent != L.group:
        raise InputError("subgroup belongs to a different group")
    if L.rank == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if not H.generators:
        return identity(L.rank)
    return integer_kernel(stacked_fixed_condition(L, list(H.generators)))


def sublattice(L: GLattice, basis, name=None):
    """The G-stable saturated sublattice spanned by the columns of ``basis``.

    Returns ``(S, inclusion_matrix)``; raises if the span is not G-stable.
    """
    B = as_int_matrix(basis, shape=(L.rank, 0))
    k = B.shape[1]
    C = left_inverse(B)
    n = L.group.order
    _check_capacity(n, k)
    action = np.zeros((n, k, k), dtype=np.int64)
    for g in range(n):
        image = exact_matmul(L.action[g], B)
        coords = exact_matmul(C, image)
        if not np.array_equal(exact_matmul(B, coords), image):
            raise InputError("span is not stable under the group action")
        if coords.dtype == object or (coords.size and np.abs(coords).max() > MAX_ENTRY):
            raise CapacityError("sublattice action entries exceed the supported bound")
        action[g] = coords
    return GLattice(L.group, action, name=name, check=False), B


def quotient(L: GLattice, basis, name=None):
    """``L / span(basis)`` for a G-stable saturated span.

    Returns ``(Q, projection, section)``: ``projection`` is ``rank Q x rank L``
    and ``section`` (``rank L x rank Q``) satisfies ``projection @ section = I``.
    """
    B = as_int_matrix(basis, shape=(L.rank, 0))
    r, k = B.shape
    D, U, V = _kernels.smith_reduce(B, identity(r), identity(k))
    for i in range(k):
        if abs(int(D[i, i])) != 1:
            raise InputError("span is not saturated")
    U = np.asarray(U)
    proj = U[k:, :]
    # columns of U^-1 beyond k give a section of the projection
    Uinv = unimodular_inverse(U)
    sect = Uinv[:, k:]
    n = L.group.order
    q = r - k
    _check_capacity(n, q)
    action = np.zeros((n, q, q), dtype=np.int64)
    for g in range(n):
        M = exact_matmul(exact_matmul(proj, L.action[g]), sect)
        if M.dtype == object or (M.size and np.abs(M).max() > MAX_ENTRY):
            raise CapacityError("quotient action entries exceed the supported bound")
        action[g] = M
    Q = GLattice(L.group, action, name=name, check=False)
    return Q, shrink(np.asarray(proj)), shrink(np.asarray(sect))


@dataclass(frozen=True, eq=False)
class LatticeMap:
    """An equivariant homomorphism ``source -> target``."""

    source: GLattice
    target: GLattice
    matrix: np.ndarray

    def __post_init__(self):
        M = as_int_matrix(self.matrix, shape=(self.target.rank, self.source.rank))
        if M.shape != (self.target.rank, self.source.rank):
            raise InputError(f"map matrix has shape {M.shape}, expected "
                             f"({self.target.rank}, {self.source.rank})")
        _same_group(self.source, self.target)
        for g in self.source.group.generator_indices:
            left = exact_matmul(M, self.source.action[g])
            right = exact_matmul(self.target.action[g], M)
            if not np.array_equal(left, right):
                raise InputError("map is not equivariant")
        object.__setattr__(self, "matrix", M)

    def compose(self, other: "LatticeMap") -> "LatticeMap":
        """``self o other``."""
        return LatticeMap(other.source, self.target, exact_matmul(self.matrix, other.matrix))

    def is_zero(self):
        return not np.any(self.matrix != 0)

    def is_surjective(self):
        diag = diagonal_entries(self.matrix) if self.matrix.size else []
        return len(diag) == self.target.rank and all(d == 1 for d in diag)

    def kernel_basis(self):
        if self.source.rank == 0:
            return np.zeros((0, 0), dtype=np.int64)
        if self.target.rank == 0:
            return identity(self.source.rank)
        return integer_kernel(self.matrix)


def identity_map(L: GLattice):
    return LatticeMap(L, L, identity(L.rank))


def zero_map(A: GLattice, B: GLattice):
    return LatticeMap(A, B, np.zeros((B.rank, A.rank), dtype=np.int64))


def equivariant_maps(A: GLattice, B: GLattice):
    """A basis of ``Hom_G(A, B)`` as a list of ``rank B x rank A`` matrices.

    Equivariant maps are the ``G``-fixed points of the Hom-lattice.
    """
    _same_group(A, B)
    if A.rank == 0 or B.rank == 0:
        return []
    hom = hom_lattice(A, B)
    G = A.group
    H = subgroup_from_elements(G, range(G.order))
    basis = fixed_sublattice(hom, H)
    return [hom_vector_to_matrix(basis[:, j], A, B) for j in range(basis.shape[1])]


def saturated_span(B):
    """Canonical basis of the saturation of the column span of ``B``."""
    B = as_int_matrix(B)
    if B.shape[1] == 0 or B.shape[0] == 0:
        return np.zeros((B.shape[0], 0), dtype=np.int64)
    # saturation = kernel of the left kernel
    left = integer_kernel(B.T)
    if left.shape[1] == 0:
        return identity(B.shape[0])
    return integer_kernel(left.T)


__all__ = [
    "GLattice", "LatticeMap", "make_lattice", "trivial_lattice", "sign_lattice",
    "permutation_lattice", "permutation_sum", "regular_lattice", "zero_lattice",
    "norm_one_lattice", "dual", "direct_sum", "tensor", "hom_lattice",
    "hom_vector_to_matrix", "hom_matrix_to_vector", "fixed_sublattice", "sublattice",
    "quotient", "identity_map", "zero_map", "cosets", "coset_action", "saturated_span",
    "column_hnf_basis", "equivariant_maps",
]
