"""Command-line driver: ``lgbundle <command> --s S --a A1,A2 ...``.

Exit status 0 means success (or every check verified), 1 a verification
mismatch, 2 a usage or numerical error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import persist
from .bundle import (
    BundleSpec,
    ToricDivisor,
    collection_labels,
    exceptional_collection,
    generators,
    parse_divisor,
    polytope_vertices,
    validate_spec,
)
from .errors import InvalidBundle, LGBundleError, NumericalError, SizeMismatch
from .labeling import (
    curve_csv,
    labeled_set,
    limit_grid_exact,
    sample_curve,
    theta_array,
    theta_plus,
    verify_grid_convergence,
)
from .lg_system import DEFAULT_TOL, CoeffVector
from .monodromy import (
    act_grid,
    act_permutation,
    hom_mon_table,
    verify_composition,
    verify_theorem_B,
    verify_thm42_numeric,
)
from .quiver import build_quiver, emit_dot, emit_json
from .report import Report
from .sections import hom_table
from .solver import solve_crit
from .tracker import LinearPath, SegmentPath, monodromy_permutation, track_segment

EXIT_OK, EXIT_MISMATCH, EXIT_ERROR = 0, 1, 2
FORMATS = ("json", "csv", "dot", "text")
VERIFY_NAMES = ("theorem-a", "theorem-b", "thm-4-2", "composition", "all")


@dataclass(frozen=True)
class RunConfig:
    spec: BundleSpec
    T: float = 12.0
    tol: float = DEFAULT_TOL
    threads: int | None = None
    output: str | None = None
    format: str | None = None


class UsageError(Exception):
    pass


def _parse_a(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"--a expects comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--s", type=int, required=True, help="base dimension")
    common.add_argument("--a", type=_parse_a, required=True, help="twists, e.g. 1,2")
    common.add_argument("--T", type=float, default=12.0, help="asymptotic parameter (u = -T)")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="residual tolerance")
    common.add_argument("--threads", type=int, default=None,
                        help="accepted for compatibility; work runs serially")
    common.add_argument("--output", "-o", default=None, help="write here instead of stdout")
    common.add_argument("--format", choices=FORMATS, default=None)

    p = argparse.ArgumentParser(prog="lgbundle", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("describe", parents=[common], help="bundle data, grid and collection")
    sp = sub.add_parser("solve", parents=[common], help="all critical points of f_u")
    sp.add_argument("--u", type=float, default=0.0)
    sp.add_argument("--start", default=None,
                    help="saved critical set to continue from instead of solving")
    sub.add_parser("label", parents=[common], help="labeled critical set at u = -T")
    sp = sub.add_parser("limits", parents=[common], help="Theta values at u = -T or +T")
    sp.add_argument("--direction", choices=("plus", "minus"), default="minus")
    sp = sub.add_parser("monodromy", parents=[common], help="monodromy of a divisor loop")
    sp.add_argument("--divisor", required=True, help="generator tokens, e.g. v0,v0,e1")
    sub.add_parser("hom", parents=[common], help="Hom and Hom_mon tables")
    sub.add_parser("quiver", parents=[common], help="the quiver Q_s(a)")
    sp = sub.add_parser("curve", parents=[common], help="sample W/Z and 1/prod(w) along t")
    sp.add_argument("--t-list", type=float, nargs="+", required=True)
    sp = sub.add_parser("verify", parents=[common], help="run a verifier")
    sp.add_argument("which", choices=VERIFY_NAMES)
    return p


def _theta_rows(spec, labels, thetas):
    return [{"label": list(lab), "theta": [float(x) for x in th]}
            for lab, th in zip(labels, thetas)]


def _fmt_complex(x: complex) -> str:
    return f"{x.real:+.12g}{x.imag:+.12g}j"


def _critset_text(cs) -> str:
    lines = [f"{len(cs)} critical points, max residual {cs.max_residual:.3g}"]
    for p in cs.points:
        lab = "" if p.label is None else f"E_{p.label[0]}{p.label[1]}  "
        coords = ", ".join(_fmt_complex(x) for x in p.coords)
        lines.append(f"  {lab}({coords})")
    return "\n".join(lines) + "\n"


def _report_text(reports: list[Report]) -> str:
    lines = [r.summary() for r in reports]
    for r in reports:
        for m in r.mismatches[:10]:
            lines.append(f"  {r.name}: {m}")
    return "\n".join(lines) + "\n"


def _matrix_text(labels, M) -> str:
    head = "      " + " ".join(f"E_{k}{l:<2}" for k, l in labels)
    rows = [f"E_{k}{l:<3}" + " ".join(f"{int(x):>5}" for x in M[i])
            for i, (k, l) in enumerate(labels)]
    return "\n".join([head] + rows) + "\n"


def cmd_describe(cfg: RunConfig, args) -> tuple[str, int]:
    spec = cfg.spec
    grid = limit_grid_exact(spec)
    data = {
        "spec": persist.spec_to_dict(spec),
        "dim": spec.dim,
        "vertices": {v.name: list(v.coords) for v in polytope_vertices(spec)},
        "generators": generators(spec),
        "collection": [{"k": k, "l": l, "h": e.h, "x": e.x}
                       for (k, l), e in zip(collection_labels(spec), exceptional_collection(spec))],
        "grid": [{"label": list(lab), "theta": [str(Fraction(t)) for t in pt]}
                 for pt, lab in grid],
    }
    if cfg.format == "text":
        lines = [f"{spec}: dim {spec.dim}, N = {spec.N}"]
        lines += [f"  {name}: {tuple(c)}" for name, c in data["vertices"].items()]
        lines += [f"  E_{g['label'][0]}{g['label'][1]} -> ({g['theta'][0]}, {g['theta'][1]})"
                  for g in data["grid"]]
        return "\n".join(lines) + "\n", EXIT_OK
    return persist.dumps(data), EXIT_OK


def cmd_solve(cfg: RunConfig, args) -> tuple[str, int]:
    spec = cfg.spec
    target = CoeffVector.unit(spec, args.u)
    if args.start:
        start = persist.load_critset(args.start)
        if start.spec != spec:
            raise UsageError(f"--start holds {start.spec}, not {spec}")
        c0 = start.coeffs
        on_family = (np.allclose(c0.c_z, 1) and np.allclose(c0.c_w, 1)
                     and np.isclose(c0.c_e0, 1) and c0.c_v0.real > 0
                     and abs(c0.c_v0.imag) <= 1e-14 * c0.c_v0.real)
        path = (SegmentPath(spec, float(np.log(c0.c_v0.real)), args.u) if on_family
                else LinearPath(spec, c0, target))
        cs = track_segment(spec, path, start, tol=cfg.tol)
    else:
        cs = solve_crit(spec, target, tol=cfg.tol)
    if cfg.format == "text":
        return _critset_text(cs), EXIT_OK
    return persist.dumps(persist.critset_to_dict(cs)), EXIT_OK


def cmd_label(cfg: RunConfig, args) -> tuple[str, int]:
    cs = labeled_set(cfg.spec, cfg.T)
    if cfg.format == "text":
        return _critset_text(cs), EXIT_OK
    return persist.dumps(persist.critset_to_dict(cs)), EXIT_OK


def cmd_limits(cfg: RunConfig, args) -> tuple[str, int]:
    spec = cfg.spec
    if args.direction == "minus":
        cs = labeled_set(spec, cfg.T)
        rows = _theta_rows(spec, cs.labels, theta_array(spec, cs.array()))
        order = {lab: i for i, lab in enumerate(collection_labels(spec))}
        rows.sort(key=lambda r: order[tuple(r["label"])])
    else:
        rows = [{"label": list(lab), "theta": list(pt.coords)}
                for lab, pt in theta_plus(spec, cfg.T)]
    data = {"spec": persist.spec_to_dict(spec), "T": cfg.T, "direction": args.direction,
            "points": rows}
    if cfg.format == "text":
        lines = [f"E_{r['label'][0]}{r['label'][1]}  {r['theta'][0]:.6f}  {r['theta'][1]:.6f}"
                 for r in rows]
        return "\n".join(lines) + "\n", EXIT_OK
    return persist.dumps(data), EXIT_OK


def cmd_monodromy(cfg: RunConfig, args) -> tuple[str, int]:
    spec = cfg.spec
    D = parse_divisor(spec, args.divisor)
    numeric = monodromy_permutation(spec, D, cfg.T)
    expected = act_permutation(spec, D)
    carried = act_permutation(spec, D, act_grid)
    agree = numeric == expected
    labels = collection_labels(spec)
    data = {
        "spec": persist.spec_to_dict(spec),
        "divisor": D.tokens(),
        "T": cfg.T,
        "numeric": [{"src": list(p), "dst": list(numeric(p))} for p in labels],
        "combinatorial": [{"src": list(p), "dst": list(expected(p))} for p in labels],
        "agree": agree,
        "agree_grid_carry": numeric == carried,
    }
    code = EXIT_OK if agree else EXIT_MISMATCH
    if cfg.format == "text":
        lines = [f"E_{p[0]}{p[1]} -> E_{numeric(p)[0]}{numeric(p)[1]}"
                 + ("" if numeric(p) == expected(p) else f"  (expected {expected(p)})")
                 for p in labels]
        return "\n".join(lines) + "\n", code
    return persist.dumps(data), code


def cmd_hom(cfg: RunConfig, args) -> tuple[str, int]:
    spec = cfg.spec
    table = hom_table(spec)
    mon = hom_mon_table(spec)
    equal = bool(np.array_equal(table.dims, mon))
    if cfg.format == "text":
        return _matrix_text(table.labels, table.dims), EXIT_OK if equal else EXIT_MISMATCH
    data = table.to_dict()
    data["hom_mon"] = mon.tolist()
    data["equal"] = equal
    return persist.dumps(data), EXIT_OK if equal else EXIT_MISMATCH


def cmd_quiver(cfg: RunConfig, args) -> tuple[str, int]:
    q = build_quiver(cfg.spec)
    if cfg.format in (None, "dot"):
        return emit_dot(q), EXIT_OK
    if cfg.format == "json":
        return emit_json(q), EXIT_OK
    if cfg.format == "text":
        fam = q.arrows_by_family()
        return (f"{q.name}: {len(q.vertices)} vertices, {len(q.arrows)} arrows "
                f"{fam}, {len(q.relations)} relations\n"), EXIT_OK
    raise UsageError("quiver supports --format dot, json or text")


def cmd_curve(cfg: RunConfig, args) -> tuple[str, int]:
    rows = sample_curve(cfg.spec, args.t_list)
    if cfg.format in (None, "csv"):
        return curve_csv(rows), EXIT_OK
    data = [{"t": t, "index": i, "WZ": [wz.real, wz.imag], "invW": [iw.real, iw.imag]}
            for t, i, wz, iw in rows]
    return persist.dumps(data), EXIT_OK


def cmd_verify(cfg: RunConfig, args) -> tuple[str, int]:
    spec = cfg.spec
    which = args.which
    reports: list[Report] = []
    if which in ("theorem-a", "all"):
        reports.append(verify_grid_convergence(spec, (2.0, 6.0, cfg.T), tol=1e-3))
    if which in ("theorem-b", "all"):
        reports.append(verify_theorem_B(spec))
    if which in ("thm-4-2", "all"):
        extra = [ToricDivisor.generator(spec, "v0") + ToricDivisor.generator(spec, "e0")]
        reports.append(verify_thm42_numeric(spec, cfg.T, divisors=extra))
    if which in ("composition", "all"):
        reports.append(verify_composition(spec))
    code = EXIT_OK if all(r.ok for r in reports) else EXIT_MISMATCH
    if cfg.format == "text":
        return _report_text(reports), code
    data = reports[0].to_dict() if len(reports) == 1 else {
        "reports": [r.to_dict() for r in reports],
        "pairs_checked": sum(r.pairs_checked for r in reports),
        "mismatches": [m for r in reports for m in r.mismatches],
    }
    return persist.dumps(data), code


COMMANDS = {
    "describe": cmd_describe,
    "solve": cmd_solve,
    "label": cmd_label,
    "limits": cmd_limits,
    "monodromy": cmd_monodromy,
    "hom": cmd_hom,
    "quiver": cmd_quiver,
    "curve": cmd_curve,
    "verify": cmd_verify,
}


def run(command: str, cfg: RunConfig, args) -> tuple[str, int]:
    return COMMANDS[command](cfg, args)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        spec = validate_spec(args.s, args.a)
        if args.threads is not None and args.threads < 1:
            raise UsageError("--threads must be positive")
        cfg = RunConfig(spec, args.T, args.tol, args.threads, args.output, args.format)
        text, code = run(args.command, cfg, args)
    except (UsageError, InvalidBundle, SizeMismatch, ValueError) as exc:
        print(f"lgbundle: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except NumericalError as exc:
        print(f"lgbundle: numerical failure ({type(exc).__name__}): {exc}", file=sys.stderr)
        for attr in ("tau", "indices"):
            if getattr(exc, attr, None) is not None:
                print(f"  {attr} = {getattr(exc, attr)}", file=sys.stderr)
        return EXIT_ERROR
    except LGBundleError as exc:
        print(f"lgbundle: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
