"""Batch command line front end.

Subcommands compose the library into reports: analyze (full pipeline),
complex (combinatorial invariants only), nef (find, construct, classify),
posetmap (build, verify), realize, and oracle (fast paths against brute
force). Reports are canonical JSON on stdout; --format text flattens the
same report into key: value lines.

Exit codes, uniform across subcommands: 0 success or witness found, 1
proven negative or failed hypothesis, 2 invalid input, 3 resource limit
exceeded.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from wciq.arith import DEFAULT_DP_CAP, UNKNOWN, is_representable
from wciq.complexes import base_complex, singular_complex, sr_presentation
from wciq.errors import InputError, PreconditionFailure, ResourceLimitError
from wciq.maps import (
    build_admissible_family,
    family_csp_summary,
    validate_weighted_map,
    verify_poset_map,
    vertex_fibers,
)
from wciq.nef import (
    DEFAULT_NODE_BUDGET,
    classify_partition,
    construct_strong_nef_partition,
    fano_index,
    find_nef_partition,
)
from wciq.oracles import (
    brute_force_representable,
    naive_partition_exists,
    naive_strictly_regular,
)
from wciq.regularity import is_strictly_regular, pair_is_trivial, pair_trivial_all_indices
from wciq.realize import realize_map_instance, realize_weights, verify_realization
from wciq.serialize import (
    canonical_json,
    complex_from_json,
    complex_to_json,
    decode_int,
    encode_int,
    family_from_json,
    family_to_json,
    load_json,
    pair_from_json,
    pair_to_json,
    partition_from_json,
    partition_to_json,
    realization_to_json,
    sr_to_json,
    weighted_complex_to_json,
)

_ORACLE_MAX_HEAVY = 12
_ORACLE_MAX_DEGREE = 200

_MODES = ("any", "nice", "strong")


def _read_json_file(path: str | None, what: str):
    if path is None:
        raise InputError(f"--{what} is required for this subcommand")
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return load_json(text, what)


def _load_pair(args):
    return pair_from_json(_read_json_file(args.input, "input"))


class _Phases:
    """Wall-clock milliseconds per named phase, for the report's timings
    subobject (excluded from golden comparisons)."""

    def __init__(self):
        self.table: dict[str, float] = {}
        self._t0 = time.perf_counter()

    def mark(self, name: str):
        now = time.perf_counter()
        self.table[name] = round((now - self._t0) * 1000, 3)
        self._t0 = now


def _regularity_json(rep) -> dict:
    return {
        "well_formed": rep.well_formed,
        "linear_cone": rep.linear_cone,
        "strictly_regular": rep.strictly_regular,
        "violating_subset":
            None if rep.violating_subset is None else sorted(rep.violating_subset),
        "pair_trivial": rep.pair_trivial,
        "nondivisible_facets": [list(f) for f in rep.nondivisible_facets],
        "strongly_nondivisible_facets":
            [list(f) for f in rep.strongly_nondivisible_facets],
    }


def _classification_json(cls) -> dict:
    return {"valid": cls.valid, "nice": cls.nice, "strong": cls.strong}


def _poset_map_json(rep) -> dict:
    return {
        "family_violations": list(rep.family_violations),
        "property1": rep.property1,
        "property1_witness":
            None if rep.property1_witness is None else list(rep.property1_witness),
        "property2": rep.property2,
        "property2_records": [
            {"face": list(face), "degree_index": j, "representable": ok}
            for face, j, ok in rep.property2_records
        ],
        "property3": rep.property3,
        "property3_witness":
            None if rep.property3_witness is None else list(rep.property3_witness),
        "order_preserving": rep.order_preserving,
        "order_witness":
            None if rep.order_witness is None
            else [list(rep.order_witness[0]), list(rep.order_witness[1])],
        "scope": rep.scope,
        "all_ok": rep.all_ok,
    }


def _flatten(prefix: str, value, out: list[str]):
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else str(k), value[k], out)
    elif isinstance(value, list):
        out.append(f"{prefix}: {value}")
    else:
        out.append(f"{prefix}: {value}")


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(canonical_json(report))
    else:
        lines: list[str] = []
        _flatten("", report, lines)
        sys.stdout.write("\n".join(lines) + "\n")


def _complex_section(wt, dg, dp_cap: int) -> dict:
    sing = singular_complex(wt)
    section = {
        "singular_complex": weighted_complex_to_json(sing),
        "singular_sr": sr_to_json(sr_presentation(sing)),
        "base_complexes": {
            str(j): {
                "degree": encode_int(dg.degree(j)),
                "facets": [list(f) for f in
                           base_complex(wt, dg.degree(j), dp_cap=dp_cap)
                           .complex.sorted_facets()],
            }
            for j in range(1, len(dg) + 1)
        },
    }
    return section


def cmd_analyze(args) -> int:
    wt, dg = _load_pair(args)
    phases = _Phases()
    report: dict = {"input": pair_to_json(wt, dg)}
    if args.seed is not None:
        report["seed"] = args.seed
    report["fano_index"] = fano_index(wt, dg)
    report["regularity"] = _regularity_json(pair_is_trivial(wt, dg, dp_cap=args.dp_cap))
    report["pair_trivial_literal"] = pair_trivial_all_indices(wt)
    phases.mark("regularity")

    report.update(_complex_section(wt, dg, args.dp_cap))
    phases.mark("complexes")

    family = None
    try:
        family = build_admissible_family(wt, dg, dp_cap=args.dp_cap)
    except PreconditionFailure as exc:
        report["family"] = {"built": False, "failed_hypothesis": exc.hypothesis}
    else:
        if family is None:
            report["family"] = {
                "built": False,
                "csp": family_csp_summary(wt, dg, dp_cap=args.dp_cap),
            }
        else:
            report["family"] = {"built": True, "family": family_to_json(family)}
    if family is not None:
        report["poset_map"] = _poset_map_json(
            verify_poset_map(wt, dg, family, dp_cap=args.dp_cap))
    else:
        report["poset_map"] = None
    phases.mark("family")

    try:
        partition, _, deltas = construct_strong_nef_partition(
            wt, dg, dp_cap=args.dp_cap)
    except PreconditionFailure as exc:
        construction = {
            "ok": False,
            "failed_hypothesis": exc.hypothesis,
            "witness": None if exc.witness is None else sorted(exc.witness),
        }
        constructed = False
    else:
        construction = {
            "ok": True,
            "partition": partition_to_json(partition),
            "deltas": list(deltas),
            "classification": _classification_json(
                classify_partition(wt, dg, partition)),
        }
        constructed = True
    report["construction"] = construction
    phases.mark("construction")

    found = find_nef_partition(wt, dg, args.mode, node_budget=args.node_budget)
    report["search"] = {
        "mode": args.mode,
        "found": found is not None,
        "partition": None if found is None else partition_to_json(found),
    }
    phases.mark("search")

    report["timings"] = phases.table
    _emit(report, args.format)
    return 0 if constructed or found is not None else 1


def cmd_complex(args) -> int:
    wt, dg = _load_pair(args)
    report = {"input": pair_to_json(wt, dg)}
    report.update(_complex_section(wt, dg, args.dp_cap))
    _emit(report, args.format)
    return 0


def cmd_nef(args) -> int:
    wt, dg = _load_pair(args)
    if args.action == "find":
        found = find_nef_partition(wt, dg, args.mode, node_budget=args.node_budget)
        report = {
            "input": pair_to_json(wt, dg),
            "mode": args.mode,
            "found": found is not None,
            "partition": None if found is None else partition_to_json(found),
        }
        _emit(report, args.format)
        return 0 if found is not None else 1
    if args.action == "construct":
        try:
            partition, family, deltas = construct_strong_nef_partition(
                wt, dg, dp_cap=args.dp_cap)
        except PreconditionFailure as exc:
            report = {
                "input": pair_to_json(wt, dg),
                "ok": False,
                "failed_hypothesis": exc.hypothesis,
                "witness": None if exc.witness is None else sorted(exc.witness),
            }
            _emit(report, args.format)
            return 1
        report = {
            "input": pair_to_json(wt, dg),
            "ok": True,
            "partition": partition_to_json(partition),
            "deltas": list(deltas),
            "family": family_to_json(family),
            "classification": _classification_json(
                classify_partition(wt, dg, partition)),
        }
        _emit(report, args.format)
        return 0
    partition = partition_from_json(_read_json_file(args.partition, "partition"))
    cls = classify_partition(wt, dg, partition)
    report = {
        "input": pair_to_json(wt, dg),
        "partition": partition_to_json(partition),
        "classification": _classification_json(cls),
    }
    _emit(report, args.format)
    return 0


def cmd_posetmap(args) -> int:
    wt, dg = _load_pair(args)
    if args.action == "build":
        try:
            family = build_admissible_family(wt, dg, dp_cap=args.dp_cap)
        except PreconditionFailure as exc:
            report = {
                "input": pair_to_json(wt, dg),
                "built": False,
                "failed_hypothesis": exc.hypothesis,
                "witness": None if exc.witness is None else sorted(exc.witness),
            }
            _emit(report, args.format)
            return 1
        if family is None:
            report = {
                "input": pair_to_json(wt, dg),
                "built": False,
                "csp": family_csp_summary(wt, dg, dp_cap=args.dp_cap),
            }
            _emit(report, args.format)
            return 1
        report = {
            "input": pair_to_json(wt, dg),
            "built": True,
            "family": family_to_json(family),
            "fibers": {str(j): list(f)
                       for j, f in vertex_fibers(family).items()},
        }
        _emit(report, args.format)
        return 0
    family = family_from_json(_read_json_file(args.family, "family"), wt)
    rep = verify_poset_map(wt, dg, family, dp_cap=args.dp_cap)
    report = {
        "input": pair_to_json(wt, dg),
        "poset_map": _poset_map_json(rep),
    }
    _emit(report, args.format)
    return 0 if rep.all_ok else 1


def cmd_realize(args) -> int:
    cx = complex_from_json(_read_json_file(args.complex, "complex"))
    if args.map is None:
        res = realize_weights(cx)
        report = realization_to_json(res)
        report["round_trip"] = verify_realization(cx, res.weights)
        _emit(report, args.format)
        return 0
    map_data = _read_json_file(args.map, "map")
    if not isinstance(map_data, dict) or "target" not in map_data \
            or "assignment" not in map_data:
        raise InputError('map file must hold "target" and "assignment"')
    target = complex_from_json(map_data["target"])
    try:
        assignment = {int(k): decode_int(v, "image vertex")
                      for k, v in map_data["assignment"].items()}
    except (ValueError, AttributeError) as exc:
        raise InputError(f"bad assignment table: {exc}") from exc
    inst = realize_map_instance(cx, target, assignment, args.pad, args.ones)
    validation = validate_weighted_map(inst.planted)
    report = {
        "weights": [str(a) for a in inst.weights],
        "degrees": [str(d) for d in inst.degrees],
        "planted_assignment": {
            str(v): t for v, t in sorted(inst.planted.vertex_assignment.items())},
        "validation": {
            "simplicial": validation.simplicial,
            "weighted": validation.weighted,
            "contracts_face":
                None if validation.contracts_face is None
                else list(validation.contracts_face),
        },
    }
    _emit(report, args.format)
    return 0


def cmd_oracle(args) -> int:
    wt, dg = _load_pair(args)
    heavy = wt.heavy()
    if len(heavy) > _ORACLE_MAX_HEAVY:
        raise ResourceLimitError(
            f"{len(heavy)} heavy indices exceed the oracle limit {_ORACLE_MAX_HEAVY}")
    if any(d > _ORACLE_MAX_DEGREE for d in dg):
        raise ResourceLimitError(
            f"some degree exceeds the oracle limit {_ORACLE_MAX_DEGREE}")

    divergences: list[str] = []
    rep_table = {}
    heavy_values = set(wt.heavy_values())
    for j in range(1, len(dg) + 1):
        d = dg.degree(j)
        fast = is_representable(d, heavy_values, dp_cap=args.dp_cap)
        if fast is UNKNOWN:
            raise ResourceLimitError(
                f"representability of degree {j} exceeds the dp cap {args.dp_cap}")
        slow = brute_force_representable(d, heavy_values)
        rep_table[str(j)] = {"fast": fast, "brute": slow}
        if fast != slow:
            divergences.append(f"representability of degree {j}")

    fast_reg, fast_wit = is_strictly_regular(wt, dg, dp_cap=args.dp_cap)
    slow_reg, slow_wit = naive_strictly_regular(wt, dg)
    if fast_reg != slow_reg or fast_wit != slow_wit:
        divergences.append("strict regularity")

    partition_table = {}
    for mode in _MODES:
        fast_found = find_nef_partition(
            wt, dg, mode, node_budget=args.node_budget) is not None
        slow_found = naive_partition_exists(wt, dg, mode)
        partition_table[mode] = {"fast": fast_found, "brute": slow_found}
        if fast_found != slow_found:
            divergences.append(f"partition existence in mode {mode}")

    report = {
        "input": pair_to_json(wt, dg),
        "representability": rep_table,
        "strict_regularity": {
            "fast": fast_reg,
            "brute": slow_reg,
            "fast_witness": None if fast_wit is None else sorted(fast_wit),
            "brute_witness": None if slow_wit is None else sorted(slow_wit),
        },
        "partitions": partition_table,
        "divergences": divergences,
    }
    _emit(report, args.format)
    return 0 if not divergences else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wciq",
        description="Combinatorial analysis of weighted complete intersection data")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--input", help="pair file: {\"weights\": [...], \"degrees\": [...]}")
        sp.add_argument("--dp-cap", type=int, default=DEFAULT_DP_CAP,
                        help="largest degree the membership tables will handle")
        sp.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET,
                        help="search node budget for partition search")
        sp.add_argument("--seed", type=int, help="echoed into the report")
        sp.add_argument("--format", choices=("json", "text"), default="json")

    sp = sub.add_parser("analyze", help="full pipeline report on a pair")
    common(sp)
    sp.add_argument("--mode", choices=_MODES, default="strong")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("complex", help="singular and base complexes of a pair")
    common(sp)
    sp.set_defaults(func=cmd_complex)

    sp = sub.add_parser("nef", help="nef partition search and classification")
    sp.add_argument("action", choices=("find", "construct", "classify"))
    common(sp)
    sp.add_argument("--mode", choices=_MODES, default="strong")
    sp.add_argument("--partition", help="partition file for classify")
    sp.set_defaults(func=cmd_nef)

    sp = sub.add_parser("posetmap", help="admissible injection families")
    sp.add_argument("action", choices=("build", "verify"))
    common(sp)
    sp.add_argument("--family", help="family file for verify")
    sp.set_defaults(func=cmd_posetmap)

    sp = sub.add_parser("realize", help="realize a complex as weight data")
    sp.add_argument("--complex", required=True, help="complex file (JSON)")
    sp.add_argument("--map", help="map file: {\"target\": ..., \"assignment\": ...}")
    sp.add_argument("--pad", type=int, default=1)
    sp.add_argument("--ones", type=int, default=1)
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.set_defaults(func=cmd_realize)

    sp = sub.add_parser("oracle", help="cross-check fast paths against brute force")
    common(sp)
    sp.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PreconditionFailure as exc:
        print(f"hypothesis failed: {exc}", file=sys.stderr)
        return 1
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
