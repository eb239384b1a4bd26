"""Homology of the iterated-resolution complex of a torus over field models.

The complex ``L_n -> ... -> L_0 -> L`` comes from ``resolve``.  Its homology
in degree ``n`` is the group of R-equivalence classes of the torus with
cocharacter lattice ``Q_n`` (``Q_0 = L``); negative degrees vanish.  Field
models decide how those groups are evaluated:

* ``quasi_finite``: every finite Galois group is cyclic, so all groups vanish.
* ``sylow_cyclic_split``: split by a Galois group with cyclic Sylow
  subgroups, so all groups vanish.
* ``local_nonarchimedean``: a local field with Galois group ``G``.  The
  R-equivalence group of the torus with lattice ``Q_n`` is ``H^1`` of the
  coflasque kernel ``Q_{n+1}``, which local duality turns into
  ``H^-1(G, Q_{n+1})``.  This evaluation rule is a modelling choice and is
  isolated in :func:`local_value`.
* ``abstract``: no evaluation; the answer names the torus and its class.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cohomology.snf import TRIVIAL, AbelianGroupInvariants
from .cohomology.tate import tate_cohomology
from .errors import InputError
from .group_core import FiniteGroup, is_cyclic, is_sylow_cyclic, whole_group
from .lattice import GLattice
from .resolve import MAX_DEPTH, ToricComplex, classify, iterate_resolution

FIELD_KINDS = ("quasi_finite", "sylow_cyclic_split", "local_nonarchimedean", "abstract")

# short names accepted on the command line
FIELD_ALIASES = {
    "quasi_finite": "quasi_finite",
    "sylow_cyclic": "sylow_cyclic_split",
    "sylow_cyclic_split": "sylow_cyclic_split",
    "local": "local_nonarchimedean",
    "local_nonarchimedean": "local_nonarchimedean",
    "abstract": "abstract",
}

SYLOW_CYCLIC = "SylowCyclic"
INVERTIBLE_BASE = "InvertibleBase"


@dataclass(frozen=True)
class FieldModel:
    kind: str
    splitting_group: FiniteGroup | None = None

    def __post_init__(self):
        kind = FIELD_ALIASES.get(self.kind)
        if kind is None:
            raise InputError(f"unknown field model {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        if kind == "local_nonarchimedean" and self.splitting_group is None:
            raise InputError("a local field model needs its splitting group")
        if kind in ("quasi_finite", "sylow_cyclic_split") and self.splitting_group is not None:
            raise InputError(f"field model {kind} carries no splitting group")


@dataclass(frozen=True)
class SymbolicHomology:
    """Unevaluated answer of the abstract model."""

    n: int
    description: str
    lattice: GLattice
    classification: object

    def to_dict(self):
        return {
            "n": self.n,
            "symbolic": self.description,
            "lattice_rank": self.lattice.rank,
            "classification": self.classification.to_dict(),
        }


def build_complex(L: GLattice, depth: int, strategy="canonical", order=None) -> ToricComplex:
    """Iterated coflasque resolution of ``L`` to ``depth`` with all invariants checked."""
    return iterate_resolution(L, depth, strategy=strategy, order=order, max_depth=MAX_DEPTH)


def vanishing_certificate(L: GLattice):
    """``"SylowCyclic"``, ``"InvertibleBase"`` or ``None``.

    Either certificate forces every homology group to vanish in every model.
    """
    if is_sylow_cyclic(L.group):
        return SYLOW_CYCLIC
    if classify(L).invertible:
        return INVERTIBLE_BASE
    return None


def local_value(cx: ToricComplex, G: FiniteGroup, n: int) -> AbelianGroupInvariants:
    """Evaluation rule of the local model: ``H^-1(G, Q_{n+1})``."""
    return tate_cohomology(cx.kernels[n + 1], whole_group(G), -1)


def _check_model(cx: ToricComplex, model: FieldModel):
    G = cx.base_lattice.group
    if model.kind == "quasi_finite" and not is_cyclic(G):
        raise InputError("over a quasi-finite field the splitting group must be cyclic")
    if model.kind == "sylow_cyclic_split" and not is_sylow_cyclic(G):
        raise InputError("the splitting group does not have cyclic Sylow subgroups")
    if model.kind == "local_nonarchimedean" and model.splitting_group != G:
        raise InputError("the local model's splitting group differs from the lattice's group")


def homology(cx: ToricComplex, model: FieldModel, n: int):
    """Degree-``n`` homology in the given field model.

    Returns ``AbelianGroupInvariants``, or ``SymbolicHomology`` for the
    abstract model when no vanishing certificate applies.
    """
    if n < 0:
        return TRIVIAL
    if n > cx.depth - 1:
        raise InputError(f"degree {n} needs depth at least {n + 1}; complex has depth {cx.depth}")
    _check_model(cx, model)
    if model.kind in ("quasi_finite", "sylow_cyclic_split"):
        return TRIVIAL
    if model.kind == "local_nonarchimedean":
        return local_value(cx, model.splitting_group, n)
    if vanishing_certificate(cx.base_lattice) is not None:
        return TRIVIAL
    Q = cx.kernels[n]
    name = "T" if n == 0 else f"S_{n}"
    desc = f"{name}(K)/R where {name} is the torus with cocharacter lattice Q_{n}"
    return SymbolicHomology(n, desc, Q, cx.classification(n))


__all__ = [
    "FIELD_KINDS", "FieldModel", "SymbolicHomology", "ToricComplex", "build_complex",
    "homology", "local_value", "vanishing_certificate", "SYLOW_CYCLIC", "INVERTIBLE_BASE",
]
