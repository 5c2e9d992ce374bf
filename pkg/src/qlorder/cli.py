"""Command-line front end.

Subcommands: ``audit`` an order file, ``represent`` a constraint problem
(optionally ``--partial``), ``classical`` for the finite-set baseline,
``piron`` path construction, ``ks`` ray colorings, ``gallery`` for the bundled
demonstration suite, and ``distance`` between subspace files.

Exit codes: 0 success / feasible / pass; 2 certified negative (infeasible, no
coloring, violations found); 3 indeterminate; 1 usage or validation error.
Reports are byte-deterministic for a fixed configuration: they embed the tool
version, the config hash, the seed and sample counts, and no timestamps.
Numbers are rendered with 12 significant digits.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile

import numpy as np

from . import __version__, axioms, gallery, orders, representation, sphere, subspaces

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NEGATIVE = 2
EXIT_INDETERMINATE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class CliError(Exception):
    pass


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise CliError(f"{path}: no such file")
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}:{exc.lineno}: {exc.msg}")


def _sig12(value):
    """Round every float to 12 significant digits, recursively."""
    if isinstance(value, float):
        return float(f"{value:.12g}")
    if isinstance(value, dict):
        return {k: _sig12(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_sig12(v) for v in value]
    return value


def _config_hash(config: dict) -> str:
    blob = json.dumps(config, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _flatten(prefix: str, value, rows: list) -> None:
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else str(k), value[k], rows)
    elif isinstance(value, (list, tuple)):
        rows.append((prefix, json.dumps(value)))
    else:
        rows.append((prefix, value))


def _emit(report: dict, out: str | None, fmt: str) -> None:
    report = _sig12(report)
    if fmt == "json":
        text = json.dumps(report, sort_keys=True, indent=1) + "\n"
    else:
        rows: list = []
        _flatten("", report, rows)
        text = "".join(f"{key},{val}\n" for key, val in rows)
    if out is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".qlorder-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _report(config: dict, result: dict) -> dict:
    return {
        "version": __version__,
        "config": config,
        "config_hash": _config_hash(config),
        "result": result,
    }


def _cmd_audit(args) -> int:
    order = orders.order_from_json(_load_json(args.order))
    dim = args.dim if args.dim is not None else order.dim
    rep = axioms.audit(order, dim, args.seed, args.samples)
    config = {
        "command": "audit",
        "order": args.order,
        "dim": dim,
        "seed": args.seed,
        "samples": args.samples,
    }
    _emit(_report(config, rep.to_json()), args.out, args.format)
    return EXIT_OK if rep.total_violations() == 0 else EXIT_NEGATIVE


def _cmd_represent(args) -> int:
    prob = representation.RepresentationProblem.from_json(_load_json(args.problem))
    solver = (
        representation.partial_representation
        if args.partial
        else representation.synthesize
    )
    config = {
        "command": "represent",
        "problem": args.problem,
        "partial": bool(args.partial),
        "tol": args.tol,
        "seed": args.seed,
        "samples": args.samples,
    }
    try:
        res = solver(prob, args.tol)
    except representation.IndeterminateError as exc:
        _emit(
            _report(config, {"status": "indeterminate", "detail": str(exc)}),
            args.out,
            args.format,
        )
        return EXIT_INDETERMINATE
    result = res.to_json()
    if res.status == "infeasible":
        result["certificate_verified"] = representation.verify_certificate(
            res.certificate, prob
        )
    _emit(_report(config, result), args.out, args.format)
    return EXIT_OK if res.feasible else EXIT_NEGATIVE


def _cmd_classical(args) -> int:
    data = _load_json(args.problem)
    omega = int(data["omega"])
    equivalences = [tuple(map(frozenset, pair)) for pair in data.get("equiv", [])]
    stricts = [tuple(map(frozenset, pair)) for pair in data.get("strict", [])]
    config = {
        "command": "classical",
        "problem": args.problem,
        "tol": args.tol,
        "seed": args.seed,
        "samples": args.samples,
    }
    try:
        res = representation.classical_represent(
            omega, equivalences, stricts, args.tol
        )
    except representation.IndeterminateError as exc:
        _emit(
            _report(config, {"status": "indeterminate", "detail": str(exc)}),
            args.out,
            args.format,
        )
        return EXIT_INDETERMINATE
    result = res.to_json()
    if res.status == "infeasible":
        result["certificate_verified"] = representation.verify_classical_certificate(
            res.certificate, omega, equivalences, stricts
        )
    _emit(_report(config, result), args.out, args.format)
    return EXIT_OK if res.feasible else EXIT_NEGATIVE


def _cmd_piron(args) -> int:
    data = _load_json(args.input)
    frame = sphere.SphereFrame(np.asarray(data["pole"], dtype=float))
    q = np.asarray(data["from"], dtype=float)
    r = np.asarray(data["to"], dtype=float)
    config = {
        "command": "piron",
        "input": args.input,
        "tol": args.tol,
        "seed": args.seed,
        "samples": args.samples,
    }
    try:
        path = sphere.piron_path(frame, q, r, args.tol)
    except RuntimeError as exc:  # construction defect, not a usage error
        _emit(
            _report(config, {"status": "indeterminate", "detail": str(exc)}),
            args.out,
            args.format,
        )
        return EXIT_INDETERMINATE
    verified = sphere.verify_piron_path(path, q, r, args.tol)
    result = {"path": path.to_json(), "hops": path.hops, "verified": verified}
    _emit(_report(config, result), args.out, args.format)
    return EXIT_OK if verified else EXIT_NEGATIVE


def _cmd_ks(args) -> int:
    if args.peres33:
        rays = gallery.load_peres33()
        source = "peres33"
    elif args.rays:
        rays = [np.asarray(r, dtype=float) for r in _load_json(args.rays)]
        source = args.rays
    else:
        raise CliError("ks needs --rays FILE or --peres33")
    inst = gallery.ks_build(rays, args.tol)
    res = gallery.ks_color(inst)
    config = {
        "command": "ks",
        "rays": source,
        "tol": args.tol,
        "seed": args.seed,
        "samples": args.samples,
    }
    result = {
        "rays": len(inst.rays),
        "orthogonal_pairs": len(inst.pairs),
        "orthogonal_triples": len(inst.triples),
        "coloring": res.to_json()["coloring"],
        "nodes_explored": res.nodes,
    }
    _emit(_report(config, result), args.out, args.format)
    return EXIT_OK if res.exists else EXIT_NEGATIVE


def _cmd_gallery(args) -> int:
    report = gallery.run_gallery_suite(args.seed, args.samples, args.tol)
    config = {
        "command": "gallery",
        "seed": args.seed,
        "samples": args.samples,
        "tol": args.tol,
    }
    _emit(_report(config, report), args.out, args.format)
    return EXIT_OK if report["all_expected_ok"] else EXIT_NEGATIVE


def _cmd_distance(args) -> int:
    a = subspaces.Subspace.from_json(_load_json(args.first))
    b = subspaces.Subspace.from_json(_load_json(args.second))
    config = {
        "command": "distance",
        "first": args.first,
        "second": args.second,
        "seed": args.seed,
        "samples": args.samples,
    }
    result = {"hausdorff": subspaces.hausdorff(a, b)}
    _emit(_report(config, result), args.out, args.format)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="qlorder", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=200)
        p.add_argument("--tol", type=float, default=1e-6)
        p.add_argument("--out", default=None, help="report path (default: stdout)")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("audit", help="run the axiom audit over an order file")
    p.add_argument("--order", required=True, help="order JSON file")
    p.add_argument("--dim", type=int, default=None)
    common(p)
    p.set_defaults(func=_cmd_audit)

    p = sub.add_parser("represent", help="synthesize a representing operator")
    p.add_argument("--problem", required=True, help="constraint problem JSON file")
    p.add_argument("--partial", action="store_true", help="non-strict margins")
    common(p)
    p.set_defaults(func=_cmd_represent)

    p = sub.add_parser("classical", help="finite-set baseline synthesis")
    p.add_argument("--problem", required=True, help="classical problem JSON file")
    common(p)
    p.set_defaults(func=_cmd_classical)

    p = sub.add_parser("piron", help="construct and verify a hop path")
    p.add_argument("--input", required=True, help="JSON with pole/from/to vectors")
    common(p)
    p.set_defaults(func=_cmd_piron)

    p = sub.add_parser("ks", help="orthogonality coloring search")
    p.add_argument("--rays", default=None, help="JSON list of 3-vectors")
    p.add_argument("--peres33", action="store_true", help="use the bundled 33-ray set")
    common(p)
    p.set_defaults(func=_cmd_ks)

    p = sub.add_parser("gallery", help="emit and audit the bundled orders")
    common(p)
    p.set_defaults(func=_cmd_gallery)

    p = sub.add_parser("distance", help="Hausdorff distance between subspace files")
    p.add_argument("first")
    p.add_argument("second")
    common(p)
    p.set_defaults(func=_cmd_distance)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (CliError, ValueError, KeyError, TypeError) as exc:
        sys.stderr.write(f"qlorder: error: {exc}\n")
        return EXIT_USAGE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
