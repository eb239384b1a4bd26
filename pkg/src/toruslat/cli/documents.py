"""JSON documents for groups, lattices, maps, resolutions and results.

Output is canonical: sorted keys, compact separators, UTF-8, one trailing
newline.  Integers beyond 53 bits are written as decimal strings so other
languages can read them without loss; readers accept either form.
"""

from __future__ import annotations

import json

import numpy as np

from ..cohomology.snf import AbelianGroupInvariants
from ..errors import InputError
from ..group_core import FiniteGroup, all_subgroups, enumerate_group
from ..lattice import GLattice, LatticeMap, make_lattice
from ..resolve import Resolution

SAFE_INT = 2**53


def _plain(obj):
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        v = int(obj)
        return str(v) if abs(v) > SAFE_INT else v
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, AbelianGroupInvariants):
        return _plain(obj.to_dict())
    return obj


def dumps(obj) -> str:
    return json.dumps(_plain(obj), sort_keys=True, separators=(",", ":"),
                      ensure_ascii=False) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e}") from None


def as_int(x):
    if isinstance(x, bool):
        raise InputError("expected an integer, got a boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x)
        except ValueError:
            pass
    raise InputError(f"expected an integer, got {x!r}")


def int_matrix(rows, shape=None):
    """Nested lists (ints or decimal strings) to an integer array."""
    if not isinstance(rows, list):
        raise InputError("matrix must be a list of rows")
    data = [[as_int(v) for v in row] if isinstance(row, list) else None for row in rows]
    if any(r is None for r in data):
        raise InputError("matrix rows must be lists")
    if len({len(r) for r in data}) > 1:
        raise InputError("matrix rows have different lengths")
    cols = len(data[0]) if data else (shape[1] if shape else 0)
    big = any(abs(v) >= 2**62 for r in data for v in r)
    M = np.array(data, dtype=object if big else np.int64).reshape(len(data), cols)
    if shape is not None and M.shape != shape:
        if M.size == 0 and 0 in shape:
            return np.zeros(shape, dtype=np.int64)
        raise InputError(f"matrix has shape {M.shape}, expected {shape}")
    return M


def _require(doc, *keys):
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise InputError(f"document is missing {', '.join(missing)}")


# --------------------------------------------------------------------------
# groups and lattices


def group_to_doc(G: FiniteGroup):
    doc = {"degree": G.degree, "generators": [list(g) for g in G.generators]}
    if G.name:
        doc["name"] = G.name
    return doc


def group_from_doc(doc) -> FiniteGroup:
    _require(doc, "degree", "generators")
    degree = as_int(doc["degree"])
    gens = doc["generators"]
    if not isinstance(gens, list) or not all(isinstance(g, list) for g in gens):
        raise InputError("generators must be a list of permutation arrays")
    return enumerate_group([[as_int(x) for x in g] for g in gens], degree, name=doc.get("name"))


def lattice_to_doc(L: GLattice):
    doc = {"rank": L.rank,
           "generator_matrices": [L.action[g].tolist() for g in L.group.generator_indices]}
    if L.name:
        doc["name"] = L.name
    if L.permutation_summands is not None:
        doc["permutation_summands"] = [H.id for H in L.permutation_summands]
    return doc


def lattice_from_doc(doc, G: FiniteGroup) -> GLattice:
    _require(doc, "rank", "generator_matrices")
    r = as_int(doc["rank"])
    if r < 0:
        raise InputError("rank must be nonnegative")
    mats = doc["generator_matrices"]
    if not isinstance(mats, list):
        raise InputError("generator_matrices must be a list")
    L = make_lattice(G, r, [int_matrix(M, (r, r)) for M in mats], name=doc.get("name"))
    if "permutation_summands" in doc:
        L.permutation_summands = [subgroup_by_id(G, as_int(i)) for i in doc["permutation_summands"]]
    return L


def subgroup_by_id(G: FiniteGroup, i: int):
    subs = all_subgroups(G)
    if not 0 <= i < len(subs):
        raise InputError(f"subgroup id {i} out of range 0..{len(subs) - 1}")
    return subs[i]


def map_to_doc(f: LatticeMap):
    return {"matrix": f.matrix.tolist(), "source_rank": f.source.rank, "target_rank": f.target.rank}


def map_from_doc(doc, source: GLattice, target: GLattice) -> LatticeMap:
    M = doc["matrix"] if isinstance(doc, dict) else doc
    return LatticeMap(source, target, int_matrix(M, (target.rank, source.rank)))


# --------------------------------------------------------------------------
# resolutions


def resolution_to_doc(res: Resolution):
    return {
        "kind": res.kind,
        "base": lattice_to_doc(res.base),
        "cover": lattice_to_doc(res.cover),
        "kernel": lattice_to_doc(res.kernel),
        "surjection": res.surjection.matrix.tolist(),
        "inclusion": res.inclusion.matrix.tolist(),
        "summands": [{"subgroup": H.id, "vector": np.asarray(v).tolist()}
                     for H, v in res.summands],
    }


def resolution_from_doc(doc, G: FiniteGroup) -> Resolution:
    _require(doc, "kind", "base", "cover", "kernel", "surjection", "inclusion")
    base = lattice_from_doc(doc["base"], G)
    cover = lattice_from_doc(doc["cover"], G)
    kernel = lattice_from_doc(doc["kernel"], G)
    surj = map_from_doc(doc["surjection"], cover, base)
    incl = map_from_doc(doc["inclusion"], kernel, cover)
    summands = tuple((subgroup_by_id(G, as_int(s["subgroup"])),
                      np.array([as_int(x) for x in s["vector"]], dtype=np.int64))
                     for s in doc.get("summands", []))
    res = Resolution(base, cover, kernel, surj, incl, doc["kind"], summands)
    if not res.check_exact():
        raise InputError("resolution document is not an exact sequence")
    return res


def resolutions_equal(a: Resolution, b: Resolution):
    return (a.kind == b.kind and a.base == b.base and a.cover == b.cover
            and a.kernel == b.kernel
            and np.array_equal(a.surjection.matrix, b.surjection.matrix)
            and np.array_equal(a.inclusion.matrix, b.inclusion.matrix))


def invariants_to_doc(A: AbelianGroupInvariants):
    return A.to_dict()


def invariants_from_doc(doc) -> AbelianGroupInvariants:
    _require(doc, "free_rank", "torsion")
    return AbelianGroupInvariants(as_int(doc["free_rank"]),
                                  tuple(as_int(t) for t in doc["torsion"]))
