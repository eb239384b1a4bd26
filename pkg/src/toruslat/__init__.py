"""Algebraic tori as Galois lattices: exact cohomology, resolutions and R-equivalence.

A torus is represented by its cocharacter lattice, a free Z-module with an
integral action of the finite splitting group.  The package computes Tate
cohomology of such lattices, classifies them (permutation, flasque,
coflasque, invertible), builds iterated coflasque resolutions, and evaluates
the homology of the resulting complex over a few field models.
"""

__version__ = "0.1.0"

from .errors import CapacityError, InputError, ToruslatError, UndecidedError
from .group_core import (FiniteGroup, Subgroup, all_subgroups, enumerate_group,
                         is_sylow_cyclic, representatives, trivial_subgroup, whole_group)
from .group_catalog import group_by_name
from .lattice import (GLattice, LatticeMap, direct_sum, dual, equivariant_maps,
                      fixed_sublattice, hom_lattice, make_lattice, norm_one_lattice,
                      permutation_lattice, regular_lattice, sign_lattice, tensor,
                      trivial_lattice)
from .cohomology import (AbelianGroupInvariants, SNFResult, smith_normal_form,
                         solve_integer)
from .cohomology.tate import ext1, is_coflasque, is_flasque, tate_cohomology
from .resolve import (Classification, Resolution, attempt_split, classify,
                      coflasque_cover, flasque_cover, iterate_resolution, lift_morphism,
                      stabilized_split)
from .motivic import (FieldModel, SymbolicHomology, ToricComplex, build_complex, homology,
                      vanishing_certificate)

__all__ = [
    "AbelianGroupInvariants", "CapacityError", "Classification", "FieldModel",
    "FiniteGroup", "GLattice", "InputError", "LatticeMap", "Resolution", "SNFResult",
    "Subgroup", "SymbolicHomology", "ToricComplex", "ToruslatError", "UndecidedError",
    "all_subgroups", "attempt_split", "build_complex", "classify", "coflasque_cover",
    "direct_sum", "dual", "enumerate_group", "equivariant_maps", "ext1",
    "fixed_sublattice", "flasque_cover", "group_by_name", "hom_lattice", "homology",
    "is_coflasque", "is_flasque", "is_sylow_cyclic", "iterate_resolution",
    "lift_morphism", "make_lattice", "norm_one_lattice", "permutation_lattice",
    "regular_lattice", "representatives", "sign_lattice", "smith_normal_form",
    "solve_integer", "stabilized_split", "tate_cohomology", "tensor", "trivial_lattice",
    "trivial_subgroup", "vanishing_certificate", "whole_group",
]
