"""Exact integer linear algebra and Tate cohomology of lattices."""

from .snf import (AbelianGroupInvariants, SNFResult, TRIVIAL, cokernel, integer_kernel,
                  invariant_factors, smith_normal_form, solve_integer)

_TATE = ("tate_cohomology", "ext1", "is_flasque", "is_coflasque", "cohomology_table")


def __getattr__(name):
    # tate depends on the lattice module, which itself needs snf; import lazily
    if name in _TATE:
        from . import tate
        return getattr(tate, name)
    raise AttributeError(name)


__all__ = [
    "AbelianGroupInvariants", "SNFResult", "TRIVIAL", "cokernel", "integer_kernel",
    "invariant_factors", "smith_normal_form", "solve_integer", *_TATE,
]
