"""Command-line front end.

Instances come in as JSON documents (``--spec FILE``, ``-`` for stdin):

    {
      "matroid": {"type": "uniform", "r": 3, "n": 3}
                 | {"type": "boolean", "n": 4}
                 | {"type": "graphic", "edges": [[0,1],[1,2],[0,2]]}
                 | {"type": "partition", "n": 4}
                 | {"type": "flats", "n": 4, "flats": [[], [0], ...]}
                 | {"type": "rank-table", "n": 3, "ranks": [0,1,...]},
      "building_set": "min" | "max" | [[0],[1],[0,1]]
                 | {"type": "augmented"} | {"type": "chordal", "index": 3},
      "order": [2,0,1],          # optional permutation of the ground set
      "cut": [[0,1],[0,1,2]]     # only read by `check --what modular-cut`
    }

Output is canonical JSON on stdout: sorted keys, no floats, ground elements
as 0-based indices, flats as sorted index arrays.  Exit codes: 0 ok,
2 invalid input, 3 check or cross-method agreement failure.

The environment variable CHOWPOLY_THREADS caps the worker count used by the
``--corpus`` runs (default 1; the per-instance work is pure and independent).
"""

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .building import (
    BuiltMatroid,
    flag_nonface_witness,
    g_min,
    is_complete,
    tl_chain,
    validate_building_set,
)
from .chow import (
    chow_by_deletion,
    chow_by_filtration,
    chow_polynomial,
    gamma_by_descents_factored,
    toric_hilbert_oracle,
)
from .errors import (
    ChowpolyError,
    JoinClosureViolation,
    MissingIrreducible,
    MixedFactorStep,
    NoBinaryFiltration,
    NotAFlat,
    NotMeetClosed,
    NotUpwardClosed,
    TooLarge,
)
from .families import (
    augmented_built_matroid,
    built_from_matroid,
    chordal_building_sets,
    m0n_gamma,
    make_boolean,
    make_graphic,
    make_partition,
    make_uniform,
)
from .lattice import (
    Matroid,
    bits,
    lattice_of_flats,
    popcount,
    validate_modular_cut,
    validate_rank_axioms,
)
from .nested import balanced_check, complex_stats, gamma_complex, gamma_fvector
from .polynomials import (
    gamma_expansion,
    is_gamma_positive,
    kruskal_katona_check,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_FAIL = 3


# ---------------------------------------------------------------------------
# serialization


def mask_to_indices(mask):
    return list(bits(mask))


def masks_to_arrays(masks):
    return sorted((mask_to_indices(m) for m in masks), key=lambda a: (len(a), a))


def emit(obj):
    sys.stdout.write(json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n")


def fail_invalid(msg):
    sys.stderr.write(f"error: {msg}\n")
    return EXIT_INVALID


# ---------------------------------------------------------------------------
# instance parsing


def _mask_of(indices, n):
    m = 0
    for i in indices:
        if not (isinstance(i, int) and 0 <= i < n):
            raise ValueError(f"element index {i!r} out of range 0..{n - 1}")
        m |= 1 << i
    return m


def _matroid_from_flats(n, flat_lists):
    flats = sorted(
        {_mask_of(ix, n) for ix in flat_lists}, key=lambda m: (popcount(m), m)
    )
    fset = set(flats)
    if 0 not in fset:
        raise ValueError("the empty flat is missing")
    if (1 << n) - 1 not in fset:
        raise ValueError("the full ground set must be a flat")
    height = {}
    for f in flats:
        below = [g for g in flats if g != f and g & ~f == 0]
        height[f] = 1 + max((height[g] for g in below), default=-1)

    def rank(s):
        best = None
        for f in flats:
            if s & ~f == 0 and (best is None or popcount(f) < popcount(best)):
                best = f
        if best is None:
            raise ValueError(f"no flat contains subset {s:b}")
        return height[best]

    return Matroid(n, rank)


def parse_matroid(d):
    kind = d["type"]
    if kind == "uniform":
        return make_uniform(int(d["r"]), int(d["n"]))
    if kind == "boolean":
        return make_boolean(int(d["n"]))
    if kind == "graphic":
        return make_graphic([tuple(e) for e in d["edges"]])
    if kind == "partition":
        return make_partition(int(d["n"]))
    if kind == "flats":
        m = _matroid_from_flats(int(d["n"]), d["flats"])
        validate_rank_axioms(m)
        return m
    if kind == "rank-table":
        n = int(d["n"])
        if not (1 <= n <= 12):
            raise ValueError("rank-table supports 1 <= n <= 12")
        ranks = [int(r) for r in d["ranks"]]
        if len(ranks) != 1 << n:
            raise ValueError(f"rank table must have 2^{n} entries")
        m = Matroid(n, lambda s: ranks[s])
        validate_rank_axioms(m)
        return m
    raise ValueError(f"unknown matroid type {kind!r}")


def parse_instance(doc, validate=True):
    """Build a BuiltMatroid from a spec document.

    With validate=False, explicit building sets are not checked (the check
    subcommand validates them itself to report a witness)."""
    if not isinstance(doc, dict) or "matroid" not in doc:
        raise ValueError("spec must be an object with a 'matroid' key")
    m = parse_matroid(doc["matroid"])
    bdesc = doc.get("building_set", "min")
    order = tuple(doc["order"]) if "order" in doc else None

    if isinstance(bdesc, dict) and bdesc.get("type") == "augmented":
        return augmented_built_matroid(m, order)
    if isinstance(bdesc, dict) and bdesc.get("type") == "chordal":
        if doc["matroid"]["type"] != "boolean":
            raise ValueError("chordal building sets are indexed on boolean matroids")
        n = int(doc["matroid"]["n"])
        sets = chordal_building_sets(n)
        k = int(bdesc["index"])
        if not (0 <= k < len(sets)):
            raise ValueError(f"chordal index {k} out of range 0..{len(sets) - 1}")
        return BuiltMatroid(lattice_of_flats(m), sets[k], order)
    if bdesc in ("min", "max"):
        return built_from_matroid(m, bdesc, order)
    if isinstance(bdesc, list):
        lat = lattice_of_flats(m)
        bset = frozenset(_mask_of(ix, lat.n) for ix in bdesc)
        if not validate:
            return lat, bset, order
        return BuiltMatroid(lat, bset, order)
    raise ValueError(f"unknown building-set descriptor {bdesc!r}")


def load_spec(path):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# chow


def _run_methods(bm, methods):
    per = {}
    for name in methods:
        if name == "fy":
            per[name] = chow_polynomial(bm)
        elif name == "deletion":
            per[name] = chow_by_deletion(bm)
        elif name == "filtration":
            try:
                per[name] = chow_by_filtration(bm)
            except (NoBinaryFiltration, MixedFactorStep):
                per[name] = None
        elif name == "oracle":
            try:
                per[name] = toric_hilbert_oracle(bm)
            except TooLarge:
                per[name] = None
    return per


def cmd_chow(args):
    if args.corpus:
        return _corpus_chow()
    try:
        bm = parse_instance(load_spec(args.spec))
    except (ChowpolyError, ValueError, KeyError, TypeError, json.JSONDecodeError) as e:
        return fail_invalid(f"{type(e).__name__}: {e}")
    methods = (
        ["fy", "deletion", "filtration", "oracle"]
        if args.method == "all"
        else [args.method]
    )
    per = _run_methods(bm, methods)
    if args.method != "all" and per.get(args.method) is None:
        return fail_invalid(f"method {args.method!r} is not applicable to this instance")
    got = [v for v in per.values() if v is not None]
    agree = all(v == got[0] for v in got)
    emit({"chow": got[0] if agree else None, "methods_agree": agree, "per_method": per})
    return EXIT_OK if agree else EXIT_FAIL


def _corpus_rows(fn):
    from .corpus import corpus

    insts = corpus()
    workers = max(1, int(os.environ.get("CHOWPOLY_THREADS", "1")))
    if workers == 1:
        return [fn(inst) for inst in insts]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, insts))


def _corpus_chow():
    def one(inst):
        per = _run_methods(inst.built, ["fy", "deletion", "filtration", "oracle"])
        got = [v for v in per.values() if v is not None]
        ok = all(v == got[0] for v in got)
        return {
            "name": inst.name,
            "agree": ok,
            "methods": {k: (v is not None) for k, v in per.items()},
        }

    rows = _corpus_rows(one)
    all_ok = all(r["agree"] for r in rows)
    emit({"all_ok": all_ok, "rows": rows})
    return EXIT_OK if all_ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# gamma


def _dense_counts(counts):
    if not counts:
        return [0]
    return [counts.get(i, 0) for i in range(max(counts) + 1)]


def _complex_payload(bm):
    if not bm.irreducible:
        f, reps = gamma_fvector(bm)
        return {
            "factored": True,
            "f_vector": f,
            "complete": all(r.complete for r in reps),
            "downward_closed": all(r.downward_closed for r in reps),
        }
    rep = gamma_complex(bm)
    f, _, _, _ = complex_stats(rep.complex)
    return {
        "factored": False,
        "vertices": masks_to_arrays(rep.complex.vertices),
        "faces": [
            masks_to_arrays(face)
            for face in sorted(rep.complex.faces, key=lambda s: (len(s), sorted(s)))
        ],
        "f_vector": list(f),
        "complete": rep.complete,
        "downward_closed": rep.downward_closed,
        "balanced": balanced_check(bm, rep.complex),
        "descent_counts": _dense_counts(rep.descent_counts),
    }


def cmd_gamma(args):
    if args.corpus:
        return _corpus_gamma()
    try:
        bm = parse_instance(load_spec(args.spec))
    except (ChowpolyError, ValueError, KeyError, TypeError, json.JSONDecodeError) as e:
        return fail_invalid(f"{type(e).__name__}: {e}")
    h = chow_polynomial(bm)
    gam = list(gamma_expansion(h))
    complete = is_complete(bm)
    out = {
        "chow": h,
        "gamma": gam,
        "gamma_positive": is_gamma_positive(h),
        "complete": complete,
    }
    code = EXIT_OK
    if args.with_descents:
        desc = gamma_by_descents_factored(bm)
        out["descent_formula"] = list(desc)
        out["match"] = desc == gam
        if complete and not out["match"]:
            code = EXIT_FAIL
    if args.with_complex:
        out["complex"] = _complex_payload(bm)
    emit(out)
    return code


def _corpus_gamma():
    def one(inst):
        bm = inst.built
        h = chow_polynomial(bm)
        gam = list(gamma_expansion(h))
        complete = is_complete(bm)
        row = {
            "name": inst.name,
            "complete": complete,
            "gamma_positive": is_gamma_positive(h),
        }
        ok = True
        if complete:
            ok = ok and row["gamma_positive"]
        if complete:
            match = gamma_by_descents_factored(bm) == gam
            row["descent_match"] = match
            ok = ok and match
            f, reps = gamma_fvector(bm)
            cok = all(r.downward_closed for r in reps) and f == gam
            row["complex_ok"] = cok
            ok = ok and cok
        else:
            row["descent_match"] = None
            row["complex_ok"] = None
        if inst.bset_kind == "max":
            rep = gamma_complex(bm)
            row["balanced"] = balanced_check(bm, rep.complex)
            ok = ok and row["balanced"]
        else:
            row["balanced"] = None
        row["ok"] = ok
        return row

    rows = _corpus_rows(one)
    all_ok = all(r["ok"] for r in rows)
    emit({"all_ok": all_ok, "rows": rows})
    return EXIT_OK if all_ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# check


def cmd_check(args):
    try:
        doc = load_spec(args.spec)
    except (ValueError, OSError) as e:
        return fail_invalid(f"{type(e).__name__}: {e}")
    what = args.what

    if what == "building-set":
        try:
            parsed = parse_instance(doc, validate=False)
        except (ChowpolyError, ValueError, KeyError, TypeError) as e:
            return fail_invalid(f"{type(e).__name__}: {e}")
        if isinstance(parsed, BuiltMatroid):
            lat, bset = parsed.lat, parsed.bset
        else:
            lat, bset, _ = parsed
        try:
            validate_building_set(lat, bset)
        except MissingIrreducible as e:
            emit(
                {
                    "check": what,
                    "ok": False,
                    "error": "MissingIrreducible",
                    "witness": mask_to_indices(e.args[0]),
                }
            )
            return EXIT_FAIL
        except JoinClosureViolation as e:
            emit(
                {
                    "check": what,
                    "ok": False,
                    "error": "JoinClosureViolation",
                    "witness": masks_to_arrays(e.args[0]),
                }
            )
            return EXIT_FAIL
        except NotAFlat as e:
            emit({"check": what, "ok": False, "error": "NotAFlat", "witness": str(e)})
            return EXIT_FAIL
        emit({"check": what, "ok": True, "witness": None})
        return EXIT_OK

    try:
        bm = parse_instance(doc)
    except (ChowpolyError, ValueError, KeyError, TypeError) as e:
        return fail_invalid(f"{type(e).__name__}: {e}")

    if what == "complete":
        for gmask in sorted(bm.bset):
            for x in tl_chain(bm, 0, gmask)[1:]:
                if x not in bm.bset:
                    emit(
                        {
                            "check": what,
                            "ok": False,
                            "witness": {
                                "element": mask_to_indices(gmask),
                                "missing": mask_to_indices(x),
                            },
                        }
                    )
                    return EXIT_FAIL
        assert is_complete(bm)
        emit({"check": what, "ok": True, "witness": None})
        return EXIT_OK

    if what == "flag":
        w = flag_nonface_witness(bm)
        if w is None:
            emit({"check": what, "ok": True, "witness": None})
            return EXIT_OK
        emit({"check": what, "ok": False, "witness": masks_to_arrays(w)})
        return EXIT_FAIL

    if what == "modular-cut":
        if "cut" not in doc:
            return fail_invalid("modular-cut check needs a 'cut' key in the spec")
        try:
            cut = frozenset(_mask_of(ix, bm.lat.n) for ix in doc["cut"])
        except ValueError as e:
            return fail_invalid(str(e))
        try:
            mc = validate_modular_cut(bm.lat, cut)
        except NotUpwardClosed as e:
            emit(
                {
                    "check": what,
                    "ok": False,
                    "error": "NotUpwardClosed",
                    "witness": masks_to_arrays(e.args[0]),
                }
            )
            return EXIT_FAIL
        except NotMeetClosed as e:
            emit(
                {
                    "check": what,
                    "ok": False,
                    "error": "NotMeetClosed",
                    "witness": masks_to_arrays(e.args[0]),
                }
            )
            return EXIT_FAIL
        except NotAFlat as e:
            emit({"check": what, "ok": False, "error": "NotAFlat", "witness": str(e)})
            return EXIT_FAIL
        emit(
            {
                "check": what,
                "ok": True,
                "witness": None,
                "proper": mc.proper,
                "nonempty": mc.nonempty,
                "atom_free": mc.atom_free,
            }
        )
        return EXIT_OK

    return fail_invalid(f"unknown check {what!r}")


# ---------------------------------------------------------------------------
# m0n


def cmd_m0n(args):
    n_top = args.n
    if not (2 <= n_top <= 8):
        return fail_invalid("--n must be between 2 and 8")
    rows = []
    agree = True
    for n in range(2, n_top + 1):
        bm = built_from_matroid(make_partition(n), "min")
        h = chow_polynomial(bm)
        if chow_by_deletion(bm) != h:
            agree = False
        gam = list(gamma_expansion(h))
        trees = m0n_gamma(n)
        if trees != gam:
            agree = False
        kk = kruskal_katona_check(gam)
        rows.append(
            {
                "n": n,
                "poincare": h,
                "gamma": gam,
                "descent_counts": trees,
                "kruskal_katona": kk,
            }
        )
        if not kk:
            agree = False
    emit({"agree": agree, "rows": rows})
    return EXIT_OK if agree else EXIT_FAIL


# ---------------------------------------------------------------------------
# entry point


def main(argv=None):
    ap = argparse.ArgumentParser(
        prog="chowpoly",
        description="Exact Chow polynomials, gamma vectors and descent "
        "combinatorics for matroids with building sets.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chow", help="Chow polynomial by one or all methods")
    p.add_argument("--spec", default="-", help="instance JSON file, - for stdin")
    p.add_argument(
        "--method",
        default="all",
        choices=["fy", "deletion", "filtration", "oracle", "all"],
    )
    p.add_argument("--corpus", action="store_true", help="run the built-in corpus")
    p.set_defaults(fn=cmd_chow)

    p = sub.add_parser("gamma", help="gamma vector and related certificates")
    p.add_argument("--spec", default="-", help="instance JSON file, - for stdin")
    p.add_argument("--with-descents", action="store_true")
    p.add_argument("--with-complex", action="store_true")
    p.add_argument("--corpus", action="store_true", help="run the built-in corpus")
    p.set_defaults(fn=cmd_gamma)

    p = sub.add_parser("check", help="validate structures with witnesses")
    p.add_argument("--spec", default="-", help="instance JSON file, - for stdin")
    p.add_argument(
        "--what",
        required=True,
        choices=["building-set", "complete", "flag", "modular-cut"],
    )
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("m0n", help="moduli-space Poincare/gamma table")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=cmd_m0n)

    args = ap.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
