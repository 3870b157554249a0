"""Command-line interface.

One dispatcher with per-module subcommands; all machine output is JSON with
sorted keys, so identical arguments and seed produce identical bytes.  Exit
codes: 0 success, 1 domain error, 2 usage error, 3 resource cap exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .cohomology import cohomology as _cohomology
from .cohomology import comparison_check as _comparison_check
from . import extensions as ext_mod
from . import metrics as metrics_mod
from . import ring as ring_mod
from . import torus as torus_mod
from .errors import DomainError, ResourceCapError
from .groups import Group
from .quandle import (
    FiniteQuandle,
    components,
    coset_decomposition,
    inner_group,
    verify_quandle,
)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path} is not valid JSON: {exc}") from exc


def _emit(payload, args) -> None:
    if getattr(args, "format", "json") == "table":
        text = _as_table(payload)
    else:
        text = json.dumps(payload, sort_keys=True, indent=2, default=str) + "\n"
    out = getattr(args, "output", None)
    if out and out != "-":
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _as_table(payload, indent: str = "") -> str:
    lines = []
    if isinstance(payload, dict):
        for k in sorted(payload):
            v = payload[k]
            if isinstance(v, (dict, list)):
                lines.append(f"{indent}{k}:")
                lines.append(_as_table(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {v}")
    elif isinstance(payload, list):
        for v in payload:
            if isinstance(v, (dict, list)):
                lines.append(_as_table(v, indent + "  "))
            else:
                lines.append(f"{indent}- {v}")
    else:
        lines.append(f"{indent}{payload}")
    return "\n".join(line for line in lines if line) + ("\n" if not indent else "")


def _bfs_config(args) -> metrics_mod.BfsConfig:
    return metrics_mod.BfsConfig(
        coord_cap=args.coord_cap,
        twist_cap=args.twist_cap,
        depth_cap=args.depth_cap,
        node_cap=args.node_cap if args.node_cap else 0,
    )


def _add_cap_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--coord-cap", type=int, default=200, dest="coord_cap")
    p.add_argument("--twist-cap", type=int, default=30, dest="twist_cap")
    p.add_argument("--depth-cap", type=int, default=8, dest="depth_cap")
    p.add_argument("--node-cap", type=int, default=0, dest="node_cap",
                   help="0 uses the global default (see QK_MAX_NODES)")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--output", default="-", help="output path, '-' for stdout")


# -- quandle ----------------------------------------------------------------


def _cmd_quandle(args) -> None:
    q_data = _load_json(args.file)
    if args.action == "verify":
        report = verify_quandle(q_data["table"] if "table" in q_data else q_data)
        payload = {"valid": report.valid}
        if report.first_violation:
            axiom, witness = report.first_violation
            payload["first_violation"] = {"axiom": axiom, "witness": list(witness)}
        _emit(payload, args)
        return
    if args.action == "conj":
        from .quandle import conj_quandle

        group = Group.from_json(q_data)
        subset = None
        if args.element is not None:
            subset = group.conjugacy_class(args.element)
        q = conj_quandle(group, subset)
        _emit(q.to_json(), args)
        return
    q = FiniteQuandle.from_json(q_data)
    if args.action == "inner":
        group = inner_group(q)
        _emit({"order": group.order, "degree": group.degree}, args)
    elif args.action == "components":
        _emit({"components": [list(c) for c in components(q)]}, args)
    elif args.action == "decompose":
        spec, iso = coset_decomposition(q)
        _emit(
            {
                "group_order": spec.group.order,
                "parts": [
                    {"z": z, "subgroup_size": len(h)} for z, h in spec.parts
                ],
                "iso": list(iso),
            },
            args,
        )
    else:  # pragma: no cover - argparse restricts choices
        raise DomainError(f"unknown quandle action {args.action}")


# -- torus ------------------------------------------------------------------


def _cmd_torus(args) -> None:
    if args.action == "normalize":
        c = torus_mod.parse_curve(args.lhs)
        _emit({"result": str(c)}, args)
    elif args.action == "intersect":
        a = torus_mod.parse_curve(args.lhs)
        b = torus_mod.parse_curve(args.rhs)
        _emit({"result": torus_mod.intersection(a, b)}, args)
    elif args.action == "twist":
        gamma = torus_mod.parse_curve(args.gamma)
        v = torus_mod.parse_curve(args.lhs)
        _emit({"result": str(torus_mod.dehn_twist(gamma, args.power, v))}, args)
    elif args.action == "op":
        if args.quandle == "w1":
            x = torus_mod.parse_multicurve(args.lhs)
            y = torus_mod.parse_multicurve(args.rhs)
            _emit({"result": str(torus_mod.op_w1(x, y))}, args)
        else:
            beta = torus_mod.parse_curve(args.lhs)
            alpha = torus_mod.parse_curve(args.rhs)
            op = torus_mod.op_d1 if args.quandle == "d1" else torus_mod.op_c1
            _emit({"result": str(op(beta, alpha))}, args)
    elif args.action == "phi":
        c = torus_mod.parse_curve(args.lhs)
        _emit({"result": str(torus_mod.phi(c))}, args)
    elif args.action == "phi-inverse":
        w = torus_mod.parse_multicurve(args.lhs)
        _emit({"result": str(torus_mod.phi_inverse(w))}, args)
    elif args.action == "braid-check":
        a = torus_mod.parse_curve(args.lhs)
        b = torus_mod.parse_curve(args.rhs)
        _emit({"result": torus_mod.braid_check(a, b)}, args)
    elif args.action == "distinct-four":
        a = torus_mod.parse_curve(args.lhs)
        b = torus_mod.parse_curve(args.rhs)
        _emit({"result": torus_mod.distinct_four(a, b)}, args)
    else:  # pragma: no cover
        raise DomainError(f"unknown torus action {args.action}")


# -- metric -----------------------------------------------------------------


def _cmd_metric(args) -> None:
    cfg = _bfs_config(args)
    if args.action in ("quandle", "farey"):
        if not args.src or not args.dst:
            raise DomainError("metric distances need --from and --to curves")
        src = torus_mod.parse_curve(args.src)
        dst = torus_mod.parse_curve(args.dst)
        fn = (
            metrics_mod.quandle_distance
            if args.action == "quandle"
            else metrics_mod.farey_distance
        )
        result = fn(src, dst, cfg)
    else:
        if not args.matrix:
            raise DomainError("twistlen needs --matrix a,b,c,d")
        entries = [int(x) for x in args.matrix.split(",")]
        if len(entries) != 4:
            raise DomainError("--matrix expects a,b,c,d")
        f = torus_mod.MappingClassT(*entries)
        result = metrics_mod.min_twist_word_length(f, args.target_length, cfg)
    payload = result.to_json()
    payload["caps"] = cfg.to_json()
    _emit(payload, args)


# -- cohomology ---------------------------------------------------------------


def _cmd_cohomology(args) -> None:
    q = FiniteQuandle.from_json(_load_json(args.quandle))
    if args.action == "compute":
        res = _cohomology(q, args.degree, args.kind)
        payload = {
            "degree": res.degree,
            "kind": res.kind,
            "dim_cocycles": res.dim_cocycles,
            "dim_coboundaries": res.dim_coboundaries,
            "betti": res.betti,
        }
        if args.basis:
            payload["cocycle_basis"] = [c.to_json() for c in res.cocycle_basis]
        _emit(payload, args)
    elif args.action == "comparison":
        _emit(_comparison_check(q, args.degree), args)
    elif args.action == "check-cochain":
        from .cohomology import Cochain, is_coboundary, is_cocycle

        if not args.cochain:
            raise DomainError("check-cochain needs --cochain FILE")
        f = Cochain.from_json(q, _load_json(args.cochain))
        preimage = is_coboundary(f)
        payload = {
            "degree": f.degree,
            "is_cocycle": is_cocycle(f),
            "is_coboundary": preimage is not None,
        }
        if preimage is not None:
            payload["preimage"] = preimage.to_json()
        _emit(payload, args)
    else:  # pragma: no cover
        raise DomainError(f"unknown cohomology action {args.action}")


# -- extension ----------------------------------------------------------------


def _cmd_extension(args) -> None:
    data = _load_json(args.cocycle)
    cocycle = ext_mod.QuandleCocycle2.from_json(data)
    if args.action == "build":
        ext = ext_mod.build_extension(cocycle.quandle, cocycle.group, cocycle)
        _emit(
            {
                "size": ext.size,
                "table": [list(r) for r in ext.quandle.table],
                "covering": ext.is_covering(),
            },
            args,
        )
    elif args.action == "verify-gmt":
        report = ext_mod.verify_gmt(
            cocycle.quandle,
            cocycle.group,
            cocycle,
            n_max=args.nmax,
            trials=args.trials,
            seed=args.seed,
        )
        _emit(report, args)
    else:  # pragma: no cover
        raise DomainError(f"unknown extension action {args.action}")


# -- ring ---------------------------------------------------------------------


def _cmd_ring(args) -> None:
    if args.action == "idempotents":
        if not args.quandle:
            raise DomainError("ring idempotents needs --quandle FILE")
        q = FiniteQuandle.from_json(_load_json(args.quandle))
        cfg = ring_mod.IdemScanConfig(
            max_length=args.max_length, coeff_bound=args.coeff_bound
        )
        found = ring_mod.enumerate_idempotents(q, cfg)
        _emit(
            {
                "count": len(found),
                "idempotents": [str(u) for u in found],
            },
            args,
        )
    elif args.action == "scan-torus":
        cfg = ring_mod.IdemScanConfig(
            max_length=args.max_length,
            coeff_bound=args.coeff_bound,
            coord_cap=args.cap,
            include_zero_curve=not args.no_zero,
        )
        res = ring_mod.torus_idempotent_scan(cfg)
        _emit(
            {
                "pool_size": res["pool_size"],
                "count": len(res["found"]),
                "all_convex_disjoint": res["all_convex_disjoint"],
                "found": [
                    {
                        "element": str(e["element"]),
                        "coeff_sum": e["coeff_sum"],
                        "pairwise_disjoint": e["pairwise_disjoint"],
                        "includes_zero": e["includes_zero"],
                        "has_negative_coeff": e["has_negative_coeff"],
                        "convex_disjoint": e["convex_disjoint"],
                    }
                    for e in res["found"]
                ],
            },
            args,
        )
    elif args.action == "audit":
        _emit(
            ring_mod.distinct_curves_audit(
                samples=args.samples, coord_cap=args.cap, seed=args.seed
            ),
            args,
        )
    elif args.action == "check":
        carrier = ring_mod.TorusCarrier()
        u = ring_mod.parse_ring_literal(args.element, carrier)
        _emit(
            {
                "element": str(u),
                "idempotent": ring_mod.is_idempotent(u),
                "augmentation": ring_mod.augmentation(u),
                "length": ring_mod.length(u),
                "square": str(u * u),
            },
            args,
        )
    else:  # pragma: no cover
        raise DomainError(f"unknown ring action {args.action}")


# -- suite --------------------------------------------------------------------


def _cmd_suite(args) -> Optional[int]:
    from . import acceptance

    results = acceptance.run_suite(seed=args.seed, out=sys.stdout.write)
    payload = {
        "seed": args.seed,
        "criteria": [
            {"id": r.id, "name": r.name, "ok": r.ok, "seconds": round(r.seconds, 2)}
            for r in results
        ],
        "all_ok": all(r.ok for r in results),
    }
    _emit(payload, args)
    return EXIT_OK if payload["all_ok"] else EXIT_DOMAIN


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dehnq",
        description="Exact quandle calculus: finite tables, torus curves, "
        "cohomology, extensions, quandle rings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("quandle", help="finite quandle operations")
    p.add_argument("action", choices=("verify", "inner", "components", "decompose", "conj"))
    p.add_argument("--file", required=True, help="quandle JSON file (or group file for conj)")
    p.add_argument("--element", type=int, help="conj: restrict to this element's class")
    _add_common(p)

    p = sub.add_parser("torus", help="torus curve operations")
    p.add_argument(
        "action",
        choices=(
            "normalize", "intersect", "twist", "op", "phi", "phi-inverse",
            "braid-check", "distinct-four",
        ),
    )
    p.add_argument("--lhs", required=True, help="curve or multicurve literal")
    p.add_argument("--rhs", help="second curve literal")
    p.add_argument("--gamma", help="twisting curve literal")
    p.add_argument("--power", type=int, default=1)
    p.add_argument("--quandle", choices=("d1", "c1", "w1"), default="d1")
    _add_common(p)

    p = sub.add_parser("metric", help="distances and twist word lengths")
    p.add_argument("action", choices=("quandle", "farey", "twistlen"))
    p.add_argument("--from", dest="src", help="source curve")
    p.add_argument("--to", dest="dst", help="target curve")
    p.add_argument("--matrix", help="a,b,c,d for twistlen")
    p.add_argument("--target-length", type=int, default=4, dest="target_length")
    _add_cap_flags(p)
    _add_common(p)

    p = sub.add_parser("cohomology", help="cochain complexes and ranks")
    p.add_argument(
        "action",
        choices=("compute", "comparison", "check-cochain"),
        nargs="?",
        default="compute",
    )
    p.add_argument("--quandle", required=True, help="quandle JSON file")
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--kind", choices=("rack", "sub", "quotient"), default="rack")
    p.add_argument("--basis", action="store_true")
    p.add_argument("--cochain", help="cochain JSON file (check-cochain)")
    _add_common(p)

    p = sub.add_parser("extension", help="abelian extensions and averaging checks")
    p.add_argument("action", choices=("build", "verify-gmt"))
    p.add_argument("--cocycle", required=True, help="cocycle JSON file")
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    _add_common(p)

    p = sub.add_parser("ring", help="integral quandle ring computations")
    p.add_argument("action", choices=("idempotents", "scan-torus", "audit", "check"))
    p.add_argument("--quandle", help="quandle JSON file (idempotents)")
    p.add_argument("-L", "--max-length", type=int, default=3, dest="max_length")
    p.add_argument("-B", "--coeff-bound", type=int, default=3, dest="coeff_bound")
    p.add_argument("--cap", type=int, default=10, help="torus coordinate cap")
    p.add_argument("--no-zero", action="store_true", help="exclude the null class")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--element", help="ring element literal (check)")
    _add_common(p)

    p = sub.add_parser("suite", help="run the full acceptance battery")
    p.add_argument("--seed", type=int, default=42)
    _add_common(p)

    return parser


_DISPATCH = {
    "quandle": _cmd_quandle,
    "torus": _cmd_torus,
    "metric": _cmd_metric,
    "cohomology": _cmd_cohomology,
    "extension": _cmd_extension,
    "ring": _cmd_ring,
    "suite": _cmd_suite,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        code = _DISPATCH[args.command](args)
        if code:
            return code
    except ResourceCapError as exc:
        sys.stdout.write(
            json.dumps({"error": {"code": "resource", "message": str(exc)}}) + "\n"
        )
        return EXIT_RESOURCE
    except DomainError as exc:
        sys.stdout.write(
            json.dumps({"error": {"code": "domain", "message": str(exc)}}) + "\n"
        )
        return EXIT_DOMAIN
    except (KeyError, TypeError, ValueError) as exc:
        sys.stdout.write(
            json.dumps({"error": {"code": "domain", "message": f"malformed input: {exc}"}})
            + "\n"
        )
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
