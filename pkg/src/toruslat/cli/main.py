"""Command-line interface.

Every invocation is turned into a ``JobSpec`` whose canonical JSON form
fully determines the output; that form is also the cache key.  Results go to
standard output as one canonical JSON document, diagnostics to standard
error.  Exit codes: 0 success, 1 internal error, 2 invalid input,
3 capacity bound exceeded, 4 undecided (search exhausted).
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

from ..cohomology.tate import SUPPORTED_DEGREES, ext1, tate_cohomology
from ..errors import InputError, ToruslatError
from ..group_catalog import group_by_name
from ..group_core import all_subgroups, representatives
from ..lattice import (LatticeMap, dual, equivariant_maps, hom_lattice, identity_map,
                       norm_one_lattice, permutation_lattice, regular_lattice,
                       sign_lattice, trivial_lattice, zero_lattice, zero_map)
from ..motivic import (FIELD_ALIASES, FieldModel, SymbolicHomology, build_complex, homology,
                       vanishing_certificate)
from ..resolve import (STRATEGIES, attempt_split, classify, coflasque_cover, lift_morphism,
                       stabilized_split)
from . import documents as docs
from .cache import Cache, default_dir, job_key

COMMANDS = ("classify", "cohomology", "resolve", "complex", "homology", "hom", "lift", "split")

log = logging.getLogger("toruslat")


@dataclass(frozen=True)
class JobSpec:
    """A fully resolved job: inputs are documents, never names or paths."""

    command: str
    group: dict
    lattices: tuple = ()
    params: dict = field(default_factory=dict)

    def to_doc(self):
        return {"command": self.command, "group": self.group,
                "lattices": list(self.lattices), "params": self.params}

    def canonical(self):
        return docs.dumps(self.to_doc())


# --------------------------------------------------------------------------
# input resolution


def _read_json(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    return docs.loads(text)


def load_group(source):
    """A group from a document path or a catalog name."""
    if Path(source).is_file():
        return docs.group_from_doc(_read_json(source))
    try:
        return group_by_name(source)
    except InputError:
        raise InputError(f"{source!r} is neither a group file nor a catalog name") from None


def load_lattice(source, G):
    """Lattice by catalog name, ``dual:<source>``, ``perm:<id>``, ``sign:<s,..>`` or ``file:<path>``."""
    if source.startswith("file:"):
        return docs.lattice_from_doc(_read_json(source[5:]), G)
    if source.startswith("dual:"):
        return dual(load_lattice(source[5:], G))
    if source.startswith("perm:"):
        return permutation_lattice(G, docs.subgroup_by_id(G, docs.as_int(source[5:])))
    if source.startswith("sign:"):
        signs = [docs.as_int(s) for s in source[5:].split(",") if s]
        return sign_lattice(G, signs)
    simple = {
        "trivial": lambda: trivial_lattice(G),
        "regular": lambda: regular_lattice(G),
        "norm1": lambda: norm_one_lattice(G),
        "zero": lambda: zero_lattice(G),
    }
    if source not in simple:
        raise InputError(f"unknown lattice {source!r}")
    return simple[source]()


def _int_list(text):
    return [docs.as_int(t) for t in text.split(",") if t.strip()]


def build_job(args) -> JobSpec:
    G = load_group(args.group)
    lattices = []
    for src in (args.lattice, args.lattice2):
        if src is not None:
            lattices.append(docs.lattice_to_doc(load_lattice(src, G)))
    params = {"strategy": args.strategy}
    for name in ("degree", "depth"):
        value = getattr(args, name)
        if value is not None:
            params[name] = value
    if args.subgroup is not None:
        params["subgroup"] = "all" if args.subgroup == "all" else docs.as_int(args.subgroup)
    if args.field is not None:
        if args.field not in FIELD_ALIASES:
            raise InputError(f"unknown field model {args.field!r}")
        params["field"] = FIELD_ALIASES[args.field]
    if args.rep_order is not None:
        params["rep_order"] = _int_list(args.rep_order)
    if args.stabilize is not None:
        params["stabilize"] = _int_list(args.stabilize)
    if args.map is not None:
        if args.map.startswith("file:"):
            m = _read_json(args.map[5:])
            params["map"] = m["matrix"] if isinstance(m, dict) else m
        else:
            params["map"] = args.map
    return JobSpec(args.command, docs.group_to_doc(G), tuple(lattices), params)


# --------------------------------------------------------------------------
# commands


def _lattices(job, G, count):
    if len(job.lattices) < count:
        raise InputError(f"command {job.command} needs {count} lattice(s)")
    return [docs.lattice_from_doc(d, G) for d in job.lattices[:count]]


def _rep_order(job, G):
    ids = job.params.get("rep_order")
    if ids is None:
        return None
    subs = all_subgroups(G)
    if sorted(ids) != sorted(H.id for H in representatives(G)):
        raise InputError("rep_order must list every class representative id exactly once")
    return [subs[i] for i in ids]


def _summary(L):
    return {"name": L.name, "rank": L.rank}


def _map(job, A, B):
    given = job.params.get("map")
    if given is None:
        raise InputError(f"command {job.command} needs --map")
    if given == "zero":
        return zero_map(A, B)
    if given == "identity":
        if A != B:
            raise InputError("identity map needs equal lattices")
        return identity_map(A)
    return docs.map_from_doc(given, A, B)


def cmd_classify(job, G):
    (L,) = _lattices(job, G, 1)
    c = classify(L, job.params["strategy"])
    return {"lattice": _summary(L), "classification": c.to_dict()}


def cmd_cohomology(job, G):
    (L,) = _lattices(job, G, 1)
    degree = job.params.get("degree")
    if degree not in SUPPORTED_DEGREES:
        raise InputError(f"--degree must be one of {SUPPORTED_DEGREES}")
    which = job.params.get("subgroup", "all")
    subs = all_subgroups(G) if which == "all" else [docs.subgroup_by_id(G, which)]
    results = [{"degree": degree, "subgroup": H.id,
                "group_invariants": tate_cohomology(L, H, degree).to_dict()} for H in subs]
    return {"lattice": _summary(L), "results": results}


def _complex(job, G, L):
    depth = job.params.get("depth", 1)
    return build_complex(L, depth, job.params["strategy"], _rep_order(job, G))


def cmd_resolve(job, G):
    (L,) = _lattices(job, G, 1)
    cx = _complex(job, G, L)
    return {"lattice": _summary(L), "depth": cx.depth,
            "ranks": cx.ranks(), "kernel_ranks": [Q.rank for Q in cx.kernels],
            "resolutions": [docs.resolution_to_doc(r) for r in cx.resolutions]}


def cmd_complex(job, G):
    (L,) = _lattices(job, G, 1)
    cx = _complex(job, G, L)
    levels = [{"i": i, "rank": Li.rank, "differential": d.matrix.tolist()}
              for i, (Li, d) in enumerate(cx.levels)]
    kernels = [{"i": i, "rank": Q.rank, "classification": cx.classification(i).to_dict()}
               for i, Q in enumerate(cx.kernels)]
    return {"lattice": _summary(L), "depth": cx.depth, "levels": levels,
            "kernels": kernels, "verified": not cx.verify()}


def cmd_homology(job, G):
    (L,) = _lattices(job, G, 1)
    kind = job.params.get("field")
    if kind is None:
        raise InputError("homology needs --field")
    model = FieldModel(kind, G if kind == "local_nonarchimedean" else None)
    cx = _complex(job, G, L)
    out = []
    for n in range(cx.depth):
        h = homology(cx, model, n)
        if isinstance(h, SymbolicHomology):
            out.append(h.to_dict())
        else:
            out.append({"n": n, **h.to_dict()})
    return {"lattice": _summary(L), "field": model.kind, "depth": cx.depth, "H": out,
            "certificate": vanishing_certificate(L)}


def cmd_hom(job, G):
    A, B = _lattices(job, G, 2)
    basis = equivariant_maps(A, B)
    return {"source": _summary(A), "target": _summary(B),
            "hom_lattice": docs.lattice_to_doc(hom_lattice(A, B)),
            "equivariant_basis": [M.tolist() for M in basis],
            "ext1": ext1(A, B).to_dict()}


def cmd_lift(job, G):
    A, B = _lattices(job, G, 2)
    f = _map(job, A, B)
    strategy = job.params["strategy"]
    src = coflasque_cover(A, strategy)
    tgt = coflasque_cover(B, strategy)
    res = lift_morphism(f, tgt, src)
    return {"found": res.found, "method": res.method,
            "lift": res.lift.matrix.tolist() if res.found else None,
            "obstruction_group": None if res.found else res.obstruction_group.to_dict(),
            "source_cover": docs.resolution_to_doc(src),
            "target_resolution": docs.resolution_to_doc(tgt)}


def cmd_split(job, G):
    if len(job.lattices) >= 2:
        A, B = _lattices(job, G, 2)
        f = _map(job, A, B)
    else:
        (L,) = _lattices(job, G, 1)
        f = coflasque_cover(L, job.params["strategy"]).surjection
    out = {"source_rank": f.source.rank, "target_rank": f.target.rank,
           "map": f.matrix.tolist()}
    if "stabilize" in job.params:
        cands = [docs.subgroup_by_id(G, i) for i in job.params["stabilize"]]
        F, s, used = stabilized_split(f, cands)
        out.update(found=True, method="stabilized", candidates_used=used,
                   extended_map=F.matrix.tolist(), section=s.matrix.tolist())
        return out
    res = attempt_split(f)
    out.update(found=res.found, method=res.method,
               section=res.section.matrix.tolist() if res.found else None,
               reason=res.reason or None)
    return out


HANDLERS = {
    "classify": cmd_classify, "cohomology": cmd_cohomology, "resolve": cmd_resolve,
    "complex": cmd_complex, "homology": cmd_homology, "hom": cmd_hom,
    "lift": cmd_lift, "split": cmd_split,
}


def execute(job: JobSpec) -> str:
    """Run a job and return its canonical output text."""
    G = docs.group_from_doc(job.group)
    body = HANDLERS[job.command](job, G)
    return docs.dumps({"command": job.command, **body})


def _validate_cached(job):
    def check(text):
        doc = docs.loads(text)
        if doc.get("command") != job.command:
            return False
        if job.command == "resolve":
            G = docs.group_from_doc(job.group)
            ranks = [docs.resolution_from_doc(r, G).cover.rank for r in doc["resolutions"]]
            return ranks == doc["ranks"]
        return True
    return check


def run(job: JobSpec, cache: Cache | None = None) -> str:
    key = job_key(job.canonical())
    if cache is not None:
        hit = cache.get(key, _validate_cached(job))
        if hit is not None:
            log.info("cache hit %s", key[:12])
            return hit
    text = execute(job)
    if cache is not None:
        try:
            cache.put(key, text)
        except OSError as e:
            log.warning("could not write cache entry: %s", e)
    return text


# --------------------------------------------------------------------------
# argument parsing


def make_parser():
    p = argparse.ArgumentParser(prog="toruslat", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--group", required=True, help="group document path or catalog name")
    p.add_argument("--lattice", help="name, dual:<src>, perm:<id>, sign:<s,..> or file:<path>")
    p.add_argument("--lattice2", help="second lattice (hom, lift, split)")
    p.add_argument("--degree", type=int)
    p.add_argument("--depth", type=int)
    p.add_argument("--subgroup", help="subgroup id or 'all'")
    p.add_argument("--field", help="quasi_finite, sylow_cyclic, local or abstract")
    p.add_argument("--strategy", choices=STRATEGIES, default="greedy")
    p.add_argument("--rep-order", help="comma-separated class representative ids")
    p.add_argument("--map", help="zero, identity, file:<path> (lift, split)")
    p.add_argument("--stabilize", help="comma-separated subgroup ids to add (split)")
    p.add_argument("--cache-dir", help="cache directory (default: $TORUSLAT_CACHE_DIR)")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None):
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="toruslat: %(levelname)s: %(message)s", stream=sys.stderr)
    cache = None
    if not args.no_cache:
        directory = args.cache_dir or default_dir()
        if directory:
            cache = Cache(directory)
    try:
        job = build_job(args)
        text = run(job, cache)
    except ToruslatError as e:
        print(f"toruslat: {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code
    except RecursionError as e:  # pragma: no cover
        print(f"toruslat: internal error: {e}", file=sys.stderr)
        return 1
    sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
