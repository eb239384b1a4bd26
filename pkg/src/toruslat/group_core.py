"""Finite permutation groups: enumeration, subgroups, Sylow structure.

Elements are permutations of ``{0, ..., degree-1}`` stored as tuples of
images.  Products compose right to left: ``(g * h)(x) = g(h(x))``.
Enumeration is breadth first over generator words, each new element being
``g * s`` for ``g`` on the previous level; within a level elements are
sorted by their image tuple.  Index 0 is always the identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from . import _kernels
from .errors import CapacityError, InputError

MAX_GROUP_ORDER = 4096
DEFAULT_SUBGROUP_BOUND = 48


def _compose(g, h):
    return tuple(g[x] for x in h)


class FiniteGroup:
    """A finite group given by permutation generators, fully enumerated."""

    def __init__(self, degree, generators, elements, table, word_parent, word_gen,
                 name=None):
        self.degree = degree
        self.generators = generators
        self.elements = elements
        self.table = table
        self.table.setflags(write=False)
        self.word_parent = word_parent
        self.word_gen = word_gen
        self.name = name
        self._index = {p: i for i, p in enumerate(elements)}
        self.generator_indices = tuple(self._index[g] for g in generators)
        inv = np.argmax(table == 0, axis=1).astype(np.int64)
        inv.setflags(write=False)
        self.inverse = inv
        self._cache = {}

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        label = self.name or f"degree {self.degree}"
        return f"FiniteGroup({label}, order {self.order})"

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.degree == other.degree and self.generators == other.generators

    def __hash__(self):
        return hash((self.degree, self.generators))

    def index(self, perm):
        """Element index of a permutation (``KeyError`` if absent)."""
        return self._index[tuple(perm)]

    def mul(self, i, j):
        return int(self.table[i, j])

    def conj(self, g, x):
        """Index of ``g x g^-1``."""
        return int(self.table[self.table[g, x], self.inverse[g]])

    def element_orders(self):
        if "orders" not in self._cache:
            out = _kernels.element_orders(self.table)
            out.setflags(write=False)
            self._cache["orders"] = out
        return self._cache["orders"]

    def is_abelian(self):
        return bool((self.table == self.table.T).all())

    def closure(self, gens):
        """Boolean membership mask of the subgroup generated by ``gens``."""
        return _kernels.closure(self.table, np.asarray(list(gens), dtype=np.int64))

    def word(self, i):
        """Generator positions spelling element ``i`` (left to right)."""
        out = []
        while i != 0:
            out.append(int(self.word_gen[i]))
            i = int(self.word_parent[i])
        return out[::-1]


def enumerate_group(generators, degree, name=None, max_order=MAX_GROUP_ORDER):
    """Enumerate the group generated by permutation ``generators`` of ``degree`` points."""
    if degree < 1:
        raise InputError("degree must be a positive integer")
    gens = []
    for g in generators:
        g = tuple(int(x) for x in g)
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise InputError(f"generator {list(g)} is not a permutation of 0..{degree - 1}")
        gens.append(g)
    gens = tuple(gens)
    identity = tuple(range(degree))

    elements = [identity]
    index = {identity: 0}
    parent = [0]
    gen_of = [-1]
    level = [0]
    while level:
        found = {}
        for i in level:
            g = elements[i]
            for s_pos, s in enumerate(gens):
                h = _compose(g, s)
                if h not in index and h not in found:
                    found[h] = (i, s_pos)
        level = []
        for h in sorted(found):
            index[h] = len(elements)
            level.append(len(elements))
            elements.append(h)
            parent.append(found[h][0])
            gen_of.append(found[h][1])
        if len(elements) > max_order:
            raise CapacityError(f"group order exceeds the bound {max_order}")

    n = len(elements)
    k = max(len(gens), 1)
    right = np.zeros((n, k), dtype=np.int64)
    for i, g in enumerate(elements):
        for s_pos, s in enumerate(gens):
            right[i, s_pos] = index[_compose(g, s)]
    parent_arr = np.asarray(parent, dtype=np.int64)
    gen_arr = np.asarray(gen_of, dtype=np.int64)
    gen_arr[0] = 0
    table = _kernels.mult_table(right, parent_arr, gen_arr)
    return FiniteGroup(degree, gens, tuple(elements), table, parent_arr, gen_arr,
                       name=name)


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup stored as the sorted element indices of its parent group."""

    parent: FiniteGroup = field(repr=False)
    elements: tuple
    id: int
    is_representative: bool
    generators: tuple
    class_id: int = 0

    @property
    def order(self):
        return len(self.elements)

    @property
    def index(self):
        return self.parent.order // len(self.elements)

    def __contains__(self, g):
        return g in self._members

    @property
    def _members(self):
        cached = self.__dict__.get("_member_set")
        if cached is None:
            cached = frozenset(self.elements)
            object.__setattr__(self, "_member_set", cached)
        return cached

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent == other.parent and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)


def _small_generating_set(group, elements):
    orders = group.element_orders()
    ranked = sorted(elements, key=lambda e: (-int(orders[e]), e))
    gens = []
    current = np.zeros(group.order, dtype=bool)
    current[0] = True
    for e in ranked:
        if not current[e]:
            gens.append(int(e))
            current = group.closure(gens)
    return tuple(gens)


def subgroup_from_elements(group, elements):
    """Wrap an element set as a ``Subgroup`` (validated, id taken from the inventory when possible)."""
    elems = tuple(sorted(int(e) for e in elements))
    mask = np.zeros(group.order, dtype=bool)
    mask[list(elems)] = True
    if not mask[0] or not group.closure(elems)[mask].all() or group.closure(elems).sum() != len(elems):
        raise InputError("element set is not a subgroup")
    if group.order <= DEFAULT_SUBGROUP_BOUND:
        for H in all_subgroups(group):
            if H.elements == elems:
                return H
    return Subgroup(group, elems, -1, False, _small_generating_set(group, elems))


def whole_group(group):
    return subgroup_from_elements(group, range(group.order))


def trivial_subgroup(group):
    return subgroup_from_elements(group, [0])


def all_subgroups(group, max_order=DEFAULT_SUBGROUP_BOUND):
    """Every subgroup, sorted by (order, element list); ids are list positions."""
    if group.order > max_order:
        raise CapacityError(
            f"subgroup enumeration limited to order {max_order}, got {group.order}")
    key = ("subgroups",)
    if key in group._cache:
        return group._cache[key]

    n = group.order
    masks = {}
    gens_of = {}

    def add(mask, gens):
        b = np.packbits(mask).tobytes()
        if b not in masks:
            masks[b] = mask
            gens_of[b] = gens
            return b
        return None

    add(group.closure([]), ())
    cyclic_gens = []
    for g in range(1, n):
        if add(group.closure([g]), (g,)) is not None:
            cyclic_gens.append(g)
    queue = list(masks)
    while queue:
        b = queue.pop()
        mask = masks[b]
        for g in cyclic_gens:
            if mask[g]:
                continue
            gens = gens_of[b] + (g,)
            nb = add(group.closure(gens), gens)
            if nb is not None:
                queue.append(nb)

    element_lists = sorted((tuple(np.nonzero(m)[0].tolist()) for m in masks.values()),
                           key=lambda e: (len(e), e))
    position = {e: i for i, e in enumerate(element_lists)}
    class_of = [-1] * len(element_lists)
    for i, elems in enumerate(element_lists):
        if class_of[i] >= 0:
            continue
        for g in range(n):
            conj = tuple(sorted(group.conj(g, x) for x in elems))
            class_of[position[conj]] = i
    subs = tuple(
        Subgroup(group, elems, i, class_of[i] == i, _small_generating_set(group, elems),
                 class_of[i])
        for i, elems in enumerate(element_lists))
    group._cache[key] = subs
    return subs


def representatives(group, max_order=DEFAULT_SUBGROUP_BOUND):
    """Conjugacy-class representatives in id order."""
    return tuple(H for H in all_subgroups(group, max_order) if H.is_representative)


def _prime_factors(n):
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def sylow_cyclic_from_orders(order, element_orders):
    """Sylow subgroups are cyclic iff each full prime-power part is an element order."""
    present = set(int(o) for o in element_orders)
    return all(p ** a in present for p, a in _prime_factors(order).items())


def is_sylow_cyclic(group):
    """True iff every Sylow subgroup of ``group`` is cyclic."""
    return sylow_cyclic_from_orders(group.order, group.element_orders())


def is_cyclic(group):
    return group.order in set(int(o) for o in group.element_orders())


def lcm(a, b):
    return a * b // gcd(a, b)
