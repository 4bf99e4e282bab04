"""Command line front end.

Subcommands: group (structure profile), kappa (spanning-tree count of the
commuting graph), partition (abelian partition search and checking), verify
(the formula-versus-engines ledger).  Groups come either from --family plus
parameter flags or from a JSON spec file.  Results go to stdout as JSON with
sorted keys; diagnostics go to stderr.  Exit codes: 0 success, 1 unexpected
formula mismatch, 2 bad input, 3 group construction failure, 4 engine not
applicable to this group or size.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .carriers import Mat, Perm
from .commgraph import clique_model, commuting_graph
from .errors import (
    CenterTooSmall,
    CommTreesError,
    ExactCapExceeded,
    IndexTooSmall,
    NonIntegerResult,
    NotACGroup,
)
from .families import family_names, make_family
from .fields import build_field
from .formulas import ledger_json, unexpected_mismatches, verify_ledger
from .groups import generate_group, is_ac_group, profile
from .partitions import (
    PartitionCertificate,
    coset_partition,
    find_partition,
    lower_bound_blocks,
    verify_partition,
)
from .spectra import kappa_from_spectrum, spectrum
from .treecount import (
    MATRIX_TREE_CAP,
    KappaResult,
    kappa_ac,
    kappa_auto,
    kappa_matrix_tree,
    kappa_modular,
)


class SpecFileError(ValueError):
    """Raised when a group spec file is malformed (an input problem)."""


_PARAM_FLAGS = ("k", "p", "q", "d", "n", "a", "b", "u")


def _add_group_source(sub: argparse.ArgumentParser):
    sub.add_argument(
        "spec",
        nargs="?",
        help="path to a JSON group spec ({family,params} or {generators,...})",
    )
    sub.add_argument(
        "--family",
        help="named family; one of: " + ", ".join(family_names()),
    )
    for flag in _PARAM_FLAGS:
        sub.add_argument(f"--{flag}", type=int, help=f"family parameter {flag}")


def _parse_perm_generator(entry, d: int) -> Perm:
    if not isinstance(entry, list) or not entry:
        raise SpecFileError("permutation must be an image list or cycle list")
    if all(isinstance(x, int) for x in entry):
        if len(entry) != d:
            raise SpecFileError(f"image list has length {len(entry)}, points is {d}")
        return Perm(entry)
    if all(isinstance(c, list) for c in entry):
        return Perm.from_cycles(entry, d)
    raise SpecFileError("permutation must be all ints (image) or all lists (cycles)")


def _parse_mat_generator(entry, field) -> Mat:
    if not isinstance(entry, list) or not entry:
        raise SpecFileError("matrix must be a list of rows")
    dim = len(entry)
    flat = []
    for row in entry:
        if not isinstance(row, list) or len(row) != dim:
            raise SpecFileError(f"matrix rows must all have length {dim}")
        for x in row:
            if not isinstance(x, int):
                raise SpecFileError("matrix entries must be integers")
            flat.append(x)
    return Mat(field, dim, flat)


def _group_from_spec_data(data):
    if not isinstance(data, dict):
        raise SpecFileError("spec must be a JSON object")
    if "family" in data:
        params = data.get("params", {})
        if not isinstance(params, dict):
            raise SpecFileError("params must be an object")
        return make_family(data["family"], **params)
    if "generators" not in data:
        raise SpecFileError("spec needs either a family or generators")
    gens_raw = data["generators"]
    if not isinstance(gens_raw, list) or not gens_raw:
        raise SpecFileError("generators must be a nonempty list")
    has_points = "points" in data
    has_field = "field" in data
    if has_points == has_field:
        raise SpecFileError("generator specs need exactly one of points or field")
    gens = []
    if has_points:
        d = data["points"]
        if not isinstance(d, int) or d < 1:
            raise SpecFileError("points must be a positive integer")
        for i, entry in enumerate(gens_raw):
            try:
                gens.append(_parse_perm_generator(entry, d))
            except (SpecFileError, ValueError) as exc:
                raise SpecFileError(f"generators[{i}]: {exc}") from exc
    else:
        fdict = data["field"]
        if not isinstance(fdict, dict) or "p" not in fdict:
            raise SpecFileError("field must be an object with p (and optional n)")
        field = build_field(int(fdict["p"]), int(fdict.get("n", 1)))
        for i, entry in enumerate(gens_raw):
            try:
                gens.append(_parse_mat_generator(entry, field))
            except (SpecFileError, ValueError) as exc:
                raise SpecFileError(f"generators[{i}]: {exc}") from exc
    kwargs = {}
    if "order_cap" in data:
        cap = data["order_cap"]
        if not isinstance(cap, int) or cap < 1:
            raise SpecFileError("order_cap must be a positive integer")
        kwargs["order_cap"] = cap
    if "name" in data:
        kwargs["name"] = str(data["name"])
    return generate_group(gens, **kwargs)


def _load_group(args):
    from_file = args.spec is not None
    from_flags = args.family is not None
    if from_file == from_flags:
        raise SpecFileError("give exactly one of: a spec file, or --family")
    if from_file:
        try:
            with open(args.spec, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise SpecFileError(f"cannot read spec file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise SpecFileError(f"spec file is not valid JSON: {exc}") from exc
        return _group_from_spec_data(data)
    params = {
        flag: getattr(args, flag)
        for flag in _PARAM_FLAGS
        if getattr(args, flag) is not None
    }
    return make_family(args.family, **params)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _maybe_dump_graph(args, graph) -> None:
    if getattr(args, "dump_graph", None):
        with open(args.dump_graph, "w", encoding="utf-8") as fh:
            fh.write(graph.edge_list_text())
        print(
            f"wrote {graph.edge_count()} edges on {graph.n} vertices to {args.dump_graph}",
            file=sys.stderr,
        )


def _cmd_group(args) -> int:
    G = _load_group(args)
    graph = commuting_graph(G)
    _maybe_dump_graph(args, graph)
    out = {"name": G.name, "abelian": G.is_abelian()}
    out.update(profile(G).to_json())
    out["commuting_graph"] = {"vertices": graph.n, "edges": graph.edge_count()}
    _emit(out)
    return 0


def _cmd_kappa(args) -> int:
    G = _load_group(args)
    graph = commuting_graph(G)
    _maybe_dump_graph(args, graph)
    method = args.method
    if method == "auto":
        res = kappa_auto(G)
    elif method == "matrix":
        res = kappa_matrix_tree(graph)
    elif method == "modular":
        res = kappa_modular(graph)
    elif method == "ac":
        res = kappa_ac(G)
    else:  # spectrum
        expr = clique_model(G)
        value = kappa_from_spectrum(spectrum(expr))
        res = KappaResult(value, "spectrum", None)
    if args.cross_check:
        already = {res.method}
        already.update(
            note.split("=", 1)[1]
            for note in res.notes
            if note.startswith("cross-check=")
        )
        checks, skipped = _run_cross_checks(G, graph, already)
        agreed = all(value == res.value for _, value in checks)
        notes = res.notes + tuple(f"cross-check={name}" for name, _ in checks)
        notes += tuple(f"skipped={name}" for name in skipped)
        res = KappaResult(
            res.value,
            res.method,
            res.factors,
            engines_agreed=agreed and res.engines_agreed,
            notes=notes,
        )
        if not agreed:
            for name, value in checks:
                if value != res.value:
                    print(
                        f"cross-check failed: {res.method} gave {res.value}, "
                        f"{name} gave {value}",
                        file=sys.stderr,
                    )
            _emit({"group": G.name, **res.to_json()})
            return 1
    _emit({"group": G.name, **res.to_json()})
    return 0


def _run_cross_checks(G, graph, already: set):
    """Run every applicable counting engine not in the already-run set.

    Returns (checks, skipped) where checks is a list of (engine, value) pairs
    and skipped names engines whose size caps ruled them out.
    """
    checks = []
    skipped = []
    if "matrix_tree" not in already:
        if graph.n <= MATRIX_TREE_CAP:
            checks.append(("matrix_tree", kappa_matrix_tree(graph).value))
        else:
            skipped.append("matrix_tree")
    if "modular_crt" not in already:
        try:
            checks.append(("modular_crt", kappa_modular(graph).value))
        except ExactCapExceeded:
            skipped.append("modular_crt")
    if is_ac_group(G):
        if "ac_structure" not in already:
            checks.append(("ac_structure", kappa_ac(G).value))
        if "spectrum" not in already:
            value = kappa_from_spectrum(spectrum(clique_model(G)))
            checks.append(("spectrum", value))
    return checks, skipped


def _cmd_partition(args) -> int:
    G = _load_group(args)
    chosen = [
        name
        for name, flag in (
            ("--find", args.find),
            ("--verify", args.verify),
            ("--bound", args.bound),
            ("--cosets", args.cosets),
        )
        if flag
    ]
    if len(chosen) != 1:
        raise SpecFileError(
            "give exactly one of --find, --verify, --bound, --cosets"
        )
    if args.bound:
        _emit({"group": G.name, "lower_bound_blocks": lower_bound_blocks(G)})
        return 0
    if args.cosets:
        cert = coset_partition(G)
        _emit({"group": G.name, "result": "found", "certificate": cert.to_json()})
        return 0
    if args.verify:
        try:
            with open(args.verify, "r", encoding="utf-8") as fh:
                data = json.load(fh)
            cert = PartitionCertificate.from_json(data)
            ok, report = verify_partition(G, cert)
        except OSError as exc:
            raise SpecFileError(f"cannot read certificate: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise SpecFileError(f"certificate is not valid JSON: {exc}") from exc
        except ValueError as exc:
            raise SpecFileError(f"certificate malformed: {exc}") from exc
        if ok:
            _emit({"group": G.name, "result": "valid"})
        else:
            _emit({"group": G.name, "result": "invalid", "report": report})
        return 0
    cert = find_partition(G, mode=args.find, n_max=args.n_max)
    if cert is None:
        _emit({"group": G.name, "result": "not_found"})
    else:
        _emit({"group": G.name, "result": "found", "certificate": cert.to_json()})
    return 0


def _cmd_verify(args) -> int:
    start = time.perf_counter()
    entries = verify_ledger(scope=args.scope)
    elapsed = time.perf_counter() - start
    bad = unexpected_mismatches(entries)
    print(
        f"ledger scope={args.scope}: {len(entries)} entries in {elapsed:.1f}s, "
        f"{len(bad)} unexpected mismatches",
        file=sys.stderr,
    )
    _emit(ledger_json(entries, with_ms=False))
    return 1 if bad else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="commtrees",
        description="Commuting graphs of finite groups and their spanning-tree counts.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    g = subs.add_parser("group", help="build a group and print its structure profile")
    _add_group_source(g)
    g.add_argument("--dump-graph", metavar="FILE", help="write the commuting graph edge list")
    g.set_defaults(func=_cmd_group)

    k = subs.add_parser("kappa", help="spanning-tree count of the commuting graph")
    _add_group_source(k)
    k.add_argument(
        "--method",
        choices=("auto", "matrix", "modular", "ac", "spectrum"),
        default="auto",
        help="counting engine (default auto)",
    )
    k.add_argument(
        "--cross-check",
        action="store_true",
        help="also run the integer matrix-tree engine and compare",
    )
    k.add_argument("--dump-graph", metavar="FILE", help="write the commuting graph edge list")
    k.set_defaults(func=_cmd_kappa)

    p = subs.add_parser("partition", help="abelian partitions: search, verify, bound")
    _add_group_source(p)
    p.add_argument(
        "--find",
        choices=("exact", "heuristic"),
        help="search for a partition with minimum (exact) or small (heuristic) block count",
    )
    p.add_argument("--verify", metavar="CERT", help="check a certificate JSON file")
    p.add_argument("--bound", action="store_true", help="print the class-count block bound")
    p.add_argument(
        "--cosets", action="store_true", help="build the central coset partition"
    )
    p.add_argument("--n-max", type=int, help="reject partitions with more blocks than this")
    p.set_defaults(func=_cmd_partition)

    v = subs.add_parser("verify", help="run the formula ledger against the engines")
    v.add_argument(
        "--scope",
        choices=("default", "full"),
        default="default",
        help="default finishes in seconds; full adds the large groups",
    )
    v.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return int(code) if isinstance(code, int) else 2
    try:
        return args.func(args)
    except SpecFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ExactCapExceeded, NotACGroup, CenterTooSmall, IndexTooSmall) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except NonIntegerResult as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (CommTreesError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
