"""Named small groups as permutation groups.

Covers every group of order at most 16 and every group of order at most 24
whose Sylow subgroups are cyclic.  Most are built from a few families:
cyclic, dihedral, symmetric, alternating, direct products, and metacyclic
groups realised in their regular representation.
"""

from __future__ import annotations

from itertools import product

from .errors import InputError
from .group_core import enumerate_group


def _cycle(n):
    return tuple(list(range(1, n)) + [0])


def cyclic(n, name=None):
    if n < 1:
        raise InputError("cyclic group order must be positive")
    gens = [] if n == 1 else [_cycle(n)]
    return enumerate_group(gens, n, name=name or f"C{n}")


def dihedral(n, name=None):
    """Symmetries of the regular ``n``-gon (order ``2n``)."""
    if n < 3:
        raise InputError("dihedral group needs n >= 3; use cyclic/products for n < 3")
    flip = tuple((-i) % n for i in range(n))
    return enumerate_group([_cycle(n), flip], n, name=name or f"D{n}")


def symmetric(n, name=None):
    if n < 2:
        return enumerate_group([], 1, name=name or "S1")
    swap = tuple([1, 0] + list(range(2, n)))
    return enumerate_group([_cycle(n), swap], n, name=name or f"S{n}")


def alternating(n, name=None):
    if n < 3:
        return enumerate_group([], 1, name=name or f"A{n}")
    gens = []
    for k in range(2, n):
        g = list(range(n))
        g[0], g[1], g[k] = 1, k, 0
        gens.append(tuple(g))
    return enumerate_group(gens, n, name=name or f"A{n}")


def direct_product(*groups, name=None):
    """Product acting on the disjoint union of the factors' points."""
    offset = 0
    gens = []
    total = sum(G.degree for G in groups)
    for G in groups:
        for g in G.generators:
            perm = list(range(total))
            for x, y in enumerate(g):
                perm[offset + x] = offset + y
            gens.append(tuple(perm))
        offset += G.degree
    label = name or "x".join(G.name or "?" for G in groups)
    return enumerate_group(gens, max(total, 1), name=label)


def _regular(elements, mul, gens, name):
    """Left-regular permutation representation of an abstract group."""
    index = {e: i for i, e in enumerate(elements)}
    perms = [tuple(index[mul(g, e)] for e in elements) for g in gens]
    return enumerate_group(perms, len(elements), name=name)


def metacyclic(m, n, a, t=0, name=None):
    """``<x, y | x^m = 1, y^n = x^t, y x y^-1 = x^a>`` of order ``m n``.

    Requires ``a^n = 1 (mod m)`` and ``a t = t (mod m)``.
    """
    if pow(a, n, m) != 1 % m or (a * t - t) % m:
        raise InputError(f"metacyclic parameters ({m}, {n}, {a}, {t}) are inconsistent")
    elements = [(i, j) for j in range(n) for i in range(m)]

    def mul(u, v):
        # (x^i y^j)(x^k y^l) = x^(i + a^j k) y^(j + l), with y^n = x^t
        i, j = u
        k, l = v
        xi = (i + pow(a, j, m) * k) % m
        yj = j + l
        if yj >= n:
            yj -= n
            xi = (xi + t) % m
        return (xi, yj)

    return _regular(elements, mul, [(1 % m, 0), (0, 1 % n)], name)


def _affine_semidirect(mods, matrices, name):
    """``(Z/mods) semidirect Z/k`` where the cyclic factor acts by ``matrices[0]``.

    ``matrices`` holds one integer matrix of finite order ``k`` acting on the
    abelian normal subgroup; the complement is generated by it.
    """
    A = matrices[0]
    d = len(mods)
    k = 1
    P = [row[:] for row in A]

    def apply(M, v):
        return tuple(sum(M[r][c] * v[c] for c in range(d)) % mods[r] for r in range(d))

    def mat_pow(e):
        out = [[int(r == c) for c in range(d)] for r in range(d)]
        for _ in range(e):
            out = [[sum(out[r][s] * A[s][c] for s in range(d)) for c in range(d)]
                   for r in range(d)]
        return out

    basis = [tuple(int(r == c) for r in range(d)) for c in range(d)]
    while any(apply(P, b) != tuple(x % mods[r] for r, x in enumerate(b)) for b in basis):
        P = [[sum(P[r][s] * A[s][c] for s in range(d)) for c in range(d)] for r in range(d)]
        k += 1
    powers = [mat_pow(e) for e in range(k)]
    vectors = list(product(*[range(q) for q in mods]))
    elements = [(v, e) for e in range(k) for v in vectors]

    def mul(u, w):
        v1, e1 = u
        v2, e2 = w
        moved = apply(powers[e1], v2)
        return (tuple((x + y) % q for x, y, q in zip(v1, moved, mods)), (e1 + e2) % k)

    zero = tuple(0 for _ in mods)
    gens = [(b, 0) for b in basis] + [(zero, 1 % k)]
    return _regular(elements, mul, gens, name)


def _build(name):
    c = cyclic
    table = {
        "S3": lambda: symmetric(3, name="S3"),
        "D4": lambda: dihedral(4, name="D4"),
        "D5": lambda: dihedral(5, name="D5"),
        "D6": lambda: dihedral(6, name="D6"),
        "D7": lambda: dihedral(7, name="D7"),
        "D8": lambda: dihedral(8, name="D8"),
        "D9": lambda: dihedral(9, name="D9"),
        "D11": lambda: dihedral(11, name="D11"),
        "A4": lambda: alternating(4, name="A4"),
        "S4": lambda: symmetric(4, name="S4"),
        "Q8": lambda: metacyclic(4, 2, -1 % 4, 2, name="Q8"),
        "Q16": lambda: metacyclic(8, 2, -1 % 8, 4, name="Q16"),
        "SD16": lambda: metacyclic(8, 2, 3, name="SD16"),
        "M16": lambda: metacyclic(8, 2, 5, name="M16"),
        "C4:C4": lambda: metacyclic(4, 4, 3, name="C4:C4"),
        "Dic3": lambda: metacyclic(6, 2, 5, 3, name="Dic3"),
        "Dic5": lambda: metacyclic(10, 2, 9, 5, name="Dic5"),
        "F20": lambda: metacyclic(5, 4, 2, name="F20"),
        "C7:C3": lambda: metacyclic(7, 3, 2, name="C7:C3"),
        "C3:C8": lambda: metacyclic(3, 8, 2, name="C3:C8"),
        "C2xC2": lambda: direct_product(c(2), c(2), name="C2xC2"),
        "C2xC4": lambda: direct_product(c(2), c(4), name="C2xC4"),
        "C2xC2xC2": lambda: direct_product(c(2), c(2), c(2), name="C2xC2xC2"),
        "C3xC3": lambda: direct_product(c(3), c(3), name="C3xC3"),
        "C2xC6": lambda: direct_product(c(2), c(6), name="C2xC6"),
        "C4xC4": lambda: direct_product(c(4), c(4), name="C4xC4"),
        "C2xC8": lambda: direct_product(c(2), c(8), name="C2xC8"),
        "C2xC2xC4": lambda: direct_product(c(2), c(2), c(4), name="C2xC2xC4"),
        "C2xC2xC2xC2": lambda: direct_product(c(2), c(2), c(2), c(2), name="C2xC2xC2xC2"),
        "C2xD4": lambda: direct_product(c(2), dihedral(4), name="C2xD4"),
        "C2xQ8": lambda: direct_product(c(2), metacyclic(4, 2, 3, 2), name="C2xQ8"),
        "C2xS3": lambda: direct_product(c(2), symmetric(3), name="C2xS3"),
        "C3xS3": lambda: direct_product(c(3), symmetric(3), name="C3xS3"),
        "C5xS3": lambda: direct_product(c(5), symmetric(3), name="C5xS3"),
        "C3xD5": lambda: direct_product(c(3), dihedral(5), name="C3xD5"),
        "C4xS3": lambda: direct_product(c(4), symmetric(3), name="C4xS3"),
        "C2xDic3": lambda: direct_product(c(2), metacyclic(6, 2, 5, 3), name="C2xDic3"),
        "C2xA4": lambda: direct_product(c(2), alternating(4), name="C2xA4"),
        "C3xD4": lambda: direct_product(c(3), dihedral(4), name="C3xD4"),
        "C3xQ8": lambda: direct_product(c(3), metacyclic(4, 2, 3, 2), name="C3xQ8"),
        "C2xC2xS3": lambda: direct_product(c(2), c(2), symmetric(3), name="C2xC2xS3"),
        "C2xC2xC6": lambda: direct_product(c(2), c(2), c(6), name="C2xC2xC6"),
        "C2xC12": lambda: direct_product(c(2), c(12), name="C2xC12"),
        # (Z/4 x Z/2) extended by an involution: the Pauli group and SmallGroup(16,3)
        "Pauli": lambda: _affine_semidirect((4, 2), [[[1, 2], [0, 1]]], "Pauli"),
        "C2^2:C4": lambda: _affine_semidirect((4, 2), [[[1, 0], [1, 1]]], "C2^2:C4"),
    }
    if name in table:
        return table[name]()
    if name.startswith("C") and name[1:].isdigit():
        return cyclic(int(name[1:]))
    raise InputError(f"unknown group name {name!r}")


def group_by_name(name):
    """Look up a catalog group by name, e.g. ``"C6"``, ``"D4"``, ``"Q8"``, ``"C2xC2"``."""
    return _build(name)


# Every group of order <= 16, one name per isomorphism class.
SMALL_GROUPS = {
    1: ["C1"], 2: ["C2"], 3: ["C3"], 4: ["C4", "C2xC2"], 5: ["C5"],
    6: ["C6", "S3"], 7: ["C7"], 8: ["C8", "C2xC4", "C2xC2xC2", "D4", "Q8"],
    9: ["C9", "C3xC3"], 10: ["C10", "D5"], 11: ["C11"],
    12: ["C12", "C2xC6", "D6", "A4", "Dic3"], 13: ["C13"], 14: ["C14", "D7"],
    15: ["C15"],
    16: ["C16", "C4xC4", "C2xC8", "C2xC2xC4", "C2xC2xC2xC2", "D8", "SD16", "Q16",
         "M16", "C4:C4", "C2xD4", "C2xQ8", "Pauli", "C2^2:C4"],
}

# Sylow-cyclic groups of order 17..24 (those of order <= 16 are in SMALL_GROUPS).
SYLOW_CYCLIC_EXTRA = {
    17: ["C17"], 18: ["C18", "D9"], 19: ["C19"], 20: ["C20", "Dic5", "F20"],
    21: ["C21", "C7:C3"], 22: ["C22", "D11"], 23: ["C23"],
    24: ["C24", "C3:C8"],
}


def small_group_names(max_order=16):
    out = []
    for order in sorted(SMALL_GROUPS):
        if order <= max_order:
            out.extend(SMALL_GROUPS[order])
    return out


def sylow_cyclic_names(max_order=24):
    """Names of catalog groups with all Sylow subgroups cyclic, up to ``max_order``."""
    from .group_core import is_sylow_cyclic

    out = []
    for name in small_group_names(min(max_order, 16)):
        if is_sylow_cyclic(group_by_name(name)):
            out.append(name)
    for order in sorted(SYLOW_CYCLIC_EXTRA):
        if order <= max_order:
            out.extend(SYLOW_CYCLIC_EXTRA[order])
    return out
