"""Command-line front end.

Subcommands:

* ``verify``     run the symbolic identity catalog plus its numeric
                 shadows on the truncated Fock space; exit 0 iff all pass.
* ``spectrum``   diagonalize the noncommutative oscillator and emit the
                 labeled spectrum (CSV/JSON/text).
* ``expr``       evaluate a DSL expression: commutator, normal-order or
                 vacuum expectation, optionally with a numeric shadow.
* ``constraint`` report the proportionality between the deformation
                 parameters for a registered system.

Identical invocations produce byte-identical output (fixed ordering and
formatting); files are written to a temporary name and renamed only on
success.  The ``NCWEYL_FORMAT`` environment variable overrides the
default output format.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from . import __version__
from .algebra import AlgebraError, normal_order, vacuum_expectation
from .coeff import CoeffError
from .constraint import eta_from_theta, fix_gamma_oscillator
from .fock import (
    FockConfig,
    SolverFailure,
    buffered_mask,
    oscillator_spectrum,
    realize,
    shadow_residual,
    spectrum_rows,
    symbol_values,
)
from .parser import ParseError, parse, render
from .relations import run_catalog

__all__ = ["main", "console_main"]

SHADOW_TOLERANCE = 1e-10
MATCH_TOLERANCE = 1e-6
FORMATS = ("text", "json", "csv")


def _default_format() -> str:
    env = os.environ.get("NCWEYL_FORMAT", "").strip().lower()
    return env if env in FORMATS else "text"


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _write_output(text: str, path: str | None, stdout) -> list:
    if path is None:
        stdout.write(text)
        if not text.endswith("\n"):
            stdout.write("\n")
        return []
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ncweyl-")
    try:
        with os.fdopen(fd, "w", encoding="ascii") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return [path]


def _add_param_flags(p: argparse.ArgumentParser):
    p.add_argument("--theta", type=float, default=0.1)
    p.add_argument("--eta", type=float, default=None,
                   help="defaults to the oscillator constraint mu^2*omega^2*theta")
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--nmax", type=int, default=20,
                   help="per-mode truncation level")
    p.add_argument("--buffer", type=int, default=2,
                   help="top levels excluded from residual checks")


def _add_output_flags(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=FORMATS, default=None)
    p.add_argument("--output", default=None, help="write the report to this path")


def _config_from(args) -> FockConfig:
    return FockConfig(
        n=args.nmax,
        buffer=args.buffer,
        hbar=args.hbar,
        theta=args.theta,
        eta=args.eta,
        mu=args.mu,
        omega=args.omega,
    )


def _params_record(cfg: FockConfig) -> dict:
    return {
        "hbar": cfg.hbar,
        "theta": cfg.theta,
        "eta": cfg.eta_value,
        "mu": cfg.mu,
        "omega": cfg.omega,
        "nmax": cfg.n,
        "buffer": cfg.buffer,
    }


def _report_json(command: str, params: dict, checks: list, artifacts: list, extra=None) -> str:
    doc = {
        "version": __version__,
        "command": command,
        "params": params,
        "checks": checks,
        "artifacts": artifacts,
    }
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def cmd_verify(args, stdout, stderr) -> int:
    try:
        cfg = _config_from(args)
    except ValueError as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    records = run_catalog(args.filter)
    if args.filter and not records:
        stderr.write(f"warning: no checks match filter {args.filter!r}\n")
    from .relations import get_check, catalog

    shadows = {}
    for check in catalog():
        if args.filter and not check.id.startswith(args.filter):
            continue
        try:
            shadows[check.id] = shadow_residual(check.shadow, cfg)
        except (CoeffError, SolverFailure) as exc:
            shadows[check.id] = float("inf")
            stderr.write(f"warning: shadow of {check.id} failed: {exc}\n")

    failures = 0
    check_docs = []
    lines = []
    for rec in records:
        shadow = shadows.get(rec.id)
        shadow_ok = shadow is None or shadow < SHADOW_TOLERANCE
        ok = rec.ok and shadow_ok
        failures += 0 if ok else 1
        status = "PASS" if ok else "FAIL"
        shadow_text = "" if shadow is None else f"  shadow={shadow:.3e}"
        line = f"{status}  {rec.id:28s} {rec.description}{shadow_text}"
        if rec.residual and not rec.ok:
            line += f"\n      residual: {rec.residual}"
        lines.append(line)
        doc = {"id": rec.id, "status": "pass" if ok else "fail", "anchor": rec.anchor}
        if rec.residual:
            doc["residual"] = rec.residual
        if shadow is not None:
            doc["shadow"] = shadow
        if rec.notes:
            doc["notes"] = rec.notes
        check_docs.append(doc)

    summary = f"{len(records) - failures}/{len(records)} checks passed"
    fmt = args.format or _default_format()
    if fmt == "json":
        text = _report_json("verify", _params_record(cfg), check_docs, [])
    elif fmt == "csv":
        rows = ["id,status,shadow"]
        for doc in check_docs:
            shadow = doc.get("shadow")
            rows.append(
                f"{doc['id']},{doc['status']},{'' if shadow is None else _fmt(shadow)}"
            )
        text = "\n".join(rows) + "\n"
    else:
        text = "\n".join(lines + [summary]) + "\n"
    artifacts = _write_output(text, args.output, stdout)
    if args.output:
        stdout.write(summary + "\n")
    return 0 if failures == 0 else 1


def cmd_spectrum(args, stdout, stderr) -> int:
    try:
        cfg = _config_from(args)
    except ValueError as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    try:
        result = oscillator_spectrum(cfg, MATCH_TOLERANCE)
    except SolverFailure as exc:
        stderr.write(f"error: {exc}\n")
        return 1
    ok = all(r.matched for r in result.rows)
    if result.off_constraint:
        stderr.write(
            "warning: eta is off the oscillator constraint; "
            "the closed-form labels are approximate\n"
        )

    fmt = args.format or _default_format()
    if fmt == "json":
        rows = [
            {
                "n1": r.n1,
                "n2": r.n2,
                "lambda": r.eigenvalue,
                "formula": r.formula,
                "residual": r.residual,
            }
            for r in result.rows
        ]
        text = _report_json(
            "spectrum",
            _params_record(cfg),
            [],
            [],
            extra={
                "rows": rows,
                "omega_tilde": list(result.omega_tilde),
                "ground_state": result.ground_state(),
                "route_difference": result.route_difference,
            },
        )
    elif fmt == "text":
        lines = [
            f"omega_tilde_1 = {_fmt(result.omega_tilde[0])}",
            f"omega_tilde_2 = {_fmt(result.omega_tilde[1])}",
            f"ground state  = {_fmt(result.ground_state())}",
            "n1 n2 lambda formula residual",
        ]
        for r in result.rows:
            lines.append(
                f"{r.n1} {r.n2} {_fmt(r.eigenvalue)} {_fmt(r.formula)} {_fmt(r.residual)}"
            )
        text = "\n".join(lines) + "\n"
    else:
        text = "\n".join(spectrum_rows(result)) + "\n"
    _write_output(text, args.output, stdout)
    return 0 if ok else 1


def cmd_expr(args, stdout, stderr) -> int:
    try:
        cfg = _config_from(args)
    except ValueError as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    kind = args.kind
    want_args = 2 if kind == "commutator" else 1
    if len(args.exprs) != want_args:
        stderr.write(f"error: {kind} takes {want_args} expression argument(s)\n")
        return 2
    try:
        if kind == "commutator":
            lhs = parse(args.exprs[0], args.algebra)
            rhs = parse(args.exprs[1], args.algebra)
            from .algebra import commutator as expr_commutator

            result = expr_commutator(lhs, rhs)
            stdout.write(render(result) + "\n")
            if args.numeric:
                a = realize(lhs, cfg)
                b = realize(rhs, cfg)
                m = a.matrix @ b.matrix - b.matrix @ a.matrix
                shadow = _buffered_diff(m, realize(result, cfg).matrix, cfg)
                stdout.write(f"numeric shadow residual: {shadow:.3e}\n")
        elif kind == "normal-order":
            raw = parse(args.exprs[0], args.algebra, normalize=False)
            result = normal_order(raw)
            stdout.write(render(result) + "\n")
            if args.numeric:
                shadow = _buffered_diff(
                    realize(raw, cfg).matrix, realize(result, cfg).matrix, cfg
                )
                stdout.write(f"numeric shadow residual: {shadow:.3e}\n")
        else:  # vev
            operator = parse(args.exprs[0], args.algebra)
            value = vacuum_expectation(operator)
            stdout.write(str(value) + "\n")
            if args.numeric:
                m = realize(operator, cfg).matrix
                shadow = abs(m[0, 0] - value.evaluate(symbol_values(cfg)))
                stdout.write(f"numeric shadow residual: {shadow:.3e}\n")
    except (ParseError, AlgebraError) as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    except CoeffError as exc:
        stderr.write(f"error: {exc}\n")
        return 1
    return 0


def _buffered_diff(a, b, cfg) -> float:
    import numpy as np

    mask = buffered_mask(cfg)
    block = (a - b)[mask][:, mask]
    return float(abs(block).max()) if block.size else 0.0


def cmd_constraint(args, stdout, stderr) -> int:
    if args.system != "oscillator":
        stderr.write(f"error: unknown system {args.system!r} (registered: oscillator)\n")
        return 2
    if args.theta < 0:
        stderr.write("error: theta must be non-negative\n")
        return 2
    res = fix_gamma_oscillator()
    values = {"mu": args.mu, "omega": args.omega, "hbar": args.hbar}
    eta = eta_from_theta(res.K, args.theta, values)
    fmt = args.format or _default_format()
    record = {
        "system": res.system,
        "c2_prime": str(res.c2_prime),
        "K": str(res.K),
        "gamma": str(res.gamma_value),
        "K_value": res.K.evaluate(values).real,
        "theta": args.theta,
        "eta": eta,
    }
    if fmt == "json":
        text = json.dumps(
            {"version": __version__, "command": "constraint", **record},
            indent=2,
            sort_keys=True,
        ) + "\n"
    elif fmt == "csv":
        text = (
            "system,c2_prime,K,gamma,K_value,theta,eta\n"
            f"{record['system']},{record['c2_prime']},{record['K']},"
            f"{record['gamma']},{_fmt(record['K_value'])},"
            f"{_fmt(record['theta'])},{_fmt(record['eta'])}\n"
        )
    else:
        text = (
            f"system   : {record['system']}\n"
            f"c2_prime : {record['c2_prime']}\n"
            f"K        : {record['K']} = {_fmt(record['K_value'])}\n"
            f"gamma    : {record['gamma']}\n"
            f"eta      : {_fmt(record['eta'])}  (theta = {_fmt(record['theta'])})\n"
        )
    _write_output(text, args.output, stdout)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ncweyl",
        description="Verify and explore the deformed Heisenberg-Weyl algebra "
        "of the noncommutative plane.",
    )
    p.add_argument("--version", action="version", version=f"ncweyl {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the identity catalog with numeric shadows")
    v.add_argument("--filter", default=None, help="only run check ids with this prefix")
    _add_param_flags(v)
    _add_output_flags(v)

    s = sub.add_parser("spectrum", help="noncommutative oscillator spectrum")
    _add_param_flags(s)
    _add_output_flags(s)

    e = sub.add_parser("expr", help="evaluate a DSL expression")
    e.add_argument("kind", choices=("commutator", "normal-order", "vev"))
    e.add_argument("exprs", nargs="+", metavar="EXPR")
    e.add_argument("--algebra", default="deformed")
    e.add_argument("--numeric", action="store_true",
                   help="also check against the truncated matrix realization")
    _add_param_flags(e)
    _add_output_flags(e)

    c = sub.add_parser("constraint", help="constraint between the deformation parameters")
    c.add_argument("system")
    c.add_argument("--theta", type=float, default=0.1)
    c.add_argument("--hbar", type=float, default=1.0)
    c.add_argument("--mu", type=float, default=1.0)
    c.add_argument("--omega", type=float, default=1.0)
    _add_output_flags(c)
    return p


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "verify": cmd_verify,
        "spectrum": cmd_spectrum,
        "expr": cmd_expr,
        "constraint": cmd_constraint,
    }
    return handlers[args.command](args, stdout, stderr)


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
