"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 1 internal invariant violation.
JSON output is byte-stable; timing goes to stderr, never into the payload.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .errors import DomainError, InvariantError, PoleError, SizeGuardError
from .levi import LeviDatum
from .linalg import AffineSubspace

SIZE_LIMIT = 6


class UsageError(Exception):
    pass


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def parse_number(text: str):
    text = text.strip()
    if "j" in text:
        try:
            return complex(text)
        except ValueError:
            raise UsageError(f"not a number: {text!r}") from None
    if "." in text or "e" in text.lower():
        try:
            return float(text)
        except ValueError:
            raise UsageError(f"not a number: {text!r}") from None
    return parse_fraction(text)


def parse_vector(text: str) -> tuple:
    return tuple(parse_number(t) for t in text.split(",") if t.strip())


def parse_levi(text: str, n: int | None) -> LeviDatum:
    try:
        M = LeviDatum.parse(text)
    except ValueError as exc:
        raise UsageError(f"bad composition {text!r}: {exc}") from None
    if n is not None and M.m != 2 * n:
        if ";" not in text and M.gl_rank < 2 * n:
            M = LeviDatum(M.blocks, 2 * n - M.gl_rank)
        else:
            raise UsageError(f"composition {text!r} has rank {M.m}, expected {2 * n}")
    return M


def jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return float(f"{value:.15g}")
    if isinstance(value, complex):
        return {"re": float(f"{value.real:.15g}"), "im": float(f"{value.imag:.15g}")}
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def _rank_guard(n: int) -> None:
    from .errors import check_size

    if n < 1:
        raise UsageError("--n must be positive")
    check_size(2 * n, SIZE_LIMIT, "2n")


# -- subcommands -----------------------------------------------------------


def cmd_orbits(args) -> dict:
    from .orbits import enumerate_cuspidal_orbits, enumerate_orbit_keys

    _rank_guard(args.n)
    M = parse_levi(args.levi, args.n)
    if args.all:
        keys = enumerate_orbit_keys(M)
        return {"levi": str(M), "count": len(keys), "orbits": [k.as_dict() for k in keys]}
    orbits = enumerate_cuspidal_orbits(M)
    return {"levi": str(M), "count": len(orbits), "orbits": [o.as_dict() for o in orbits]}


def cmd_rho(args) -> dict:
    from .exponents import rho_x_formula, rho_x_oracle, singular_subspace
    from .orbits import enumerate_cuspidal_orbits

    _rank_guard(args.n)
    M = parse_levi(args.levi, args.n)
    out = []
    for o in enumerate_cuspidal_orbits(M):
        f = rho_x_formula(o)
        entry = {**o.as_dict(), "rho_x": list(f.coords)}
        sub = singular_subspace(o)
        entry["singular_subspace"] = {"base": list(sub.base), "directions": [list(d) for d in sub.directions]}
        if args.oracle:
            r = rho_x_oracle(M, o.rep)
            if r.coords != f.coords:
                raise InvariantError(f"formula {f.coords} != oracle {r.coords} for {o.as_dict()}")
            entry["oracle_agrees"] = True
        out.append(entry)
    return {"levi": str(M), "orbits": out}


def cmd_graph(args) -> dict:
    from .graph import all_vertices, components, iter_edges, to_edge_list, to_json

    _rank_guard(args.n)
    verts = all_vertices(2 * args.n, cuspidal_only=not args.all)
    if args.export == "edges":
        return {"_raw": to_edge_list(verts)}
    if args.export == "json":
        return {"_raw": to_json(verts) + "\n"}
    edges = list(iter_edges(verts))
    comps = components(verts)
    return {
        "rank": 2 * args.n,
        "cuspidal_only": not args.all,
        "vertices": len(verts),
        "edges": len(edges),
        "descending_edges": sum(e.descending for e in edges),
        "components": len(comps),
        "component_sizes": sorted((len(c) for c in comps), reverse=True),
    }


def _field(args):
    from .periods import COMPLEX, REAL, LocalField

    if args.field == "real":
        return REAL
    if args.field == "complex":
        return COMPLEX
    if args.q is None:
        raise UsageError("--q is required for a non-archimedean field")
    try:
        return LocalField.nonarch(args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_period(args) -> dict:
    from . import periods

    F = _field(args)
    cont = args.continue_analytically
    if args.kind in ("j1", "L"):
        if args.s is None:
            raise UsageError("--s is required")
        s = parse_number(args.s)
        value = periods.J1(s, F, cont) if args.kind == "j1" else periods.local_L_triv(s, F)
        return {"kind": args.kind, "field": str(F), "s": s, "value": value}
    if args.lam is None:
        raise UsageError("--lambda is required")
    lam = parse_vector(args.lam)
    value = periods.cw(lam, F, cont) if args.kind == "cw" else periods.Jn(lam, F, cont)
    return {"kind": args.kind, "field": str(F), "lambda": list(lam), "value": value}


def _parse_labels(text: str, blocks) -> tuple:
    """Comma list of name[:flags]; flags t (trivial), h (GL half distinguished), d (self-dual)."""
    from .spectrum import CuspLabel

    tokens = [t.strip() for t in text.split(",") if t.strip()]
    if len(tokens) != len(blocks):
        raise UsageError(f"expected {len(blocks)} labels, got {len(tokens)}")
    out = []
    for tok, b in zip(tokens, blocks):
        name, _, flags = tok.partition(":")
        if name == "1" and not flags:
            flags = "t"
        bad = set(flags) - set("thd")
        if bad:
            raise UsageError(f"unknown label flags {''.join(sorted(bad))!r}")
        try:
            out.append(
                CuspLabel(name, b, is_trivial_char="t" in flags, is_glhalf_distinguished="h" in flags, is_selfdual="d" in flags)
            )
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return tuple(out)


def _parse_subspace(args, k: int) -> AffineSubspace:
    if args.equations:
        rows, rhs = [], []
        for eq in args.equations.split(";"):
            lhs, _, r = eq.partition("=")
            row = [parse_fraction(t) for t in lhs.split(",")]
            if len(row) != k or not r:
                raise UsageError(f"bad equation {eq!r}")
            rows.append(row)
            rhs.append(parse_fraction(r))
        sub = AffineSubspace.from_equations(rows, rhs, k)
        if sub is None:
            raise UsageError("the equations are inconsistent")
        return sub
    if args.point is None:
        raise UsageError("give --point or --equations")
    base = tuple(parse_fraction(t) for t in args.point.split(","))
    dirs = tuple(tuple(parse_fraction(t) for t in d.split(",")) for d in (args.direction or []))
    if len(base) != k or any(len(d) != k for d in dirs):
        raise UsageError(f"subspace vectors must have {k} coordinates")
    return AffineSubspace(base, dirs)


def cmd_classify(args) -> dict:
    from .spectrum import SpectralClass, gl_classify_class, sp_classify_class

    M = parse_levi(args.levi, None)
    labels = _parse_labels(args.labels, M.blocks)
    sub = _parse_subspace(args, M.k)
    c = SpectralClass(M, labels, sub)
    result = gl_classify_class(c) if args.group == "gl" else sp_classify_class(c)
    return {"group": args.group, "levi": str(M), "labels": [l.id for l in labels], "result": result}


def cmd_converge(args) -> dict:
    from .spectrum import gl_convergence_check, sp_convergence_check

    lam = parse_vector(args.lam)
    if len(lam) != 2 * args.n:
        raise UsageError(f"--lambda needs {2 * args.n} entries")
    M = parse_levi(args.levi, args.n if args.group == "sp" else None)
    try:
        result = gl_convergence_check(lam, M) if args.group == "gl" else sp_convergence_check(lam, M)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return {"group": args.group, "levi": str(M), "lambda": list(lam), "result": result}


def cmd_count(args) -> dict:
    from .levi import standard_levis
    from .orbits import enumerate_cuspidal_orbits, t_orbit_count

    if args.k is not None:
        try:
            return {"n": args.n, "k": args.k, "t_orbits": t_orbit_count(args.n, args.k)}
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    _rank_guard(args.n)
    table = {}
    for M in standard_levis(2 * args.n):
        c = len(enumerate_cuspidal_orbits(M))
        if c:
            table[str(M)] = c
    return {"n": args.n, "t_orbits": [t_orbit_count(args.n, k) for k in range(args.n + 1)], "cuspidal": table}


def cmd_selftest(args) -> dict:
    from .acceptance import run_all

    results = run_all(slow=args.slow)
    for r in results:
        print(r.line(), file=sys.stderr)
    payload = {
        "criteria": [{"number": r.number, "title": r.title, "passed": r.passed, "detail": r.detail} for r in results],
        "passed": all(r.passed for r in results),
    }
    if not payload["passed"]:
        payload["_exit"] = 1
    return payload


# -- output ----------------------------------------------------------------


def render_text(payload, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(payload, dict):
        width = max((len(str(k)) for k in payload), default=0)
        for k, v in payload.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{str(k).ljust(width)}  {_flat(v)}")
    elif isinstance(payload, list):
        for item in payload:
            if isinstance(item, dict):
                lines.append(f"{pad}-")
                lines.append(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_flat(item)}")
    else:
        lines.append(f"{pad}{_flat(payload)}")
    return "\n".join(lines)


def _flat(v) -> str:
    if isinstance(v, list):
        return "(" + ", ".join(_flat(x) for x in v) + ")"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_flat(x)}" for k, x in v.items()) + "}"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="perlab", description="Orbits, exponents and period factors for (Sp_4n, Sp_2n x Sp_2n).")
    p.add_argument("--version", action="version", version=f"perlab {__version__}")
    p.add_argument("--format", choices=("json", "text"), default="json")
    # also accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("orbits", parents=[common], help="cuspidal orbits of a standard Levi")
    s.add_argument("--n", type=int, required=True, help="G = Sp_2n has rank 2n")
    s.add_argument("--levi", required=True, help="composition like 1,1,2 or 2,2;0")
    s.add_argument("--all", action="store_true", help="list every orbit of N_G(M) in X")

    s = sub.add_parser("rho", parents=[common], help="exponents rho_x of the cuspidal orbits")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--levi", required=True)
    s.add_argument("--oracle", action="store_true", help="cross-check against the weight-sum computation")

    s = sub.add_parser("graph", parents=[common], help="graph of (M, x) pairs")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--all", action="store_true", help="include non-cuspidal vertices")
    s.add_argument("--export", choices=("summary", "edges", "json"), default="summary")

    s = sub.add_parser("period", parents=[common], help="local period factors")
    s.add_argument("kind", choices=("j1", "cw", "jn", "L"))
    s.add_argument("--q", type=int)
    s.add_argument("--field", choices=("nonarch", "real", "complex"), default="nonarch")
    s.add_argument("--s")
    s.add_argument("--lambda", dest="lam")
    s.add_argument("--continue", dest="continue_analytically", action="store_true")

    s = sub.add_parser("classify", parents=[common], help="decide whether a spectral class is distinguished")
    s.add_argument("group", choices=("gl", "sp"))
    s.add_argument("--levi", required=True)
    s.add_argument("--labels", required=True, help="name[:flags] per block, flags from t,h,d; '1' is the trivial character")
    s.add_argument("--point", help="base point of the subspace")
    s.add_argument("--direction", action="append", help="direction vector (repeatable)")
    s.add_argument("--equations", help="'a,b=c;...' rows defining the subspace")

    s = sub.add_parser("converge", parents=[common], help="integrability criterion for a cuspidal exponent")
    s.add_argument("group", choices=("gl", "sp"))
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--levi", required=True)
    s.add_argument("--lambda", dest="lam", required=True)

    s = sub.add_parser("count", parents=[common], help="orbit counts")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int)

    s = sub.add_parser("selftest", parents=[common], help="run the acceptance checks")
    s.add_argument("--slow", action="store_true", help="include the 2n = 6 variants")
    return p


COMMANDS = {
    "orbits": cmd_orbits,
    "rho": cmd_rho,
    "graph": cmd_graph,
    "period": cmd_period,
    "classify": cmd_classify,
    "converge": cmd_converge,
    "count": cmd_count,
    "selftest": cmd_selftest,
}


VALUE_FLAGS = ("--lambda", "--s", "--point", "--direction", "--equations")


def _glue_negative_values(argv: list) -> list:
    """Turn '--lambda -1/2,...' into '--lambda=-1/2,...' so argparse accepts it."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1][1:2].isdigit():
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    t0 = time.perf_counter()
    try:
        payload = COMMANDS[args.command](args)
    except (UsageError, SizeGuardError, DomainError, PoleError, ValueError) as exc:
        print(f"perlab: error: {exc}", file=err)
        return 2
    except InvariantError as exc:
        print(f"perlab: invariant violated: {exc}", file=err)
        return 1
    code = payload.pop("_exit", 0)
    if "_raw" in payload:
        out.write(payload["_raw"])
    else:
        report = {"command": args.command, "version": __version__, "result": jsonable(payload)}
        params = {k: v for k, v in vars(args).items() if k not in ("command", "format")}
        report["input"] = jsonable(params)
        if args.format == "json":
            out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
        else:
            out.write(render_text(report["result"]) + "\n")
    print(f"perlab: {args.command} took {time.perf_counter() - t0:.3f}s", file=err)
    return code


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
