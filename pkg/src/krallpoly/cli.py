"""Command-line front end: ``krallpoly table | verify | poly``.

Every number is printed as an exact rational ``p/q`` (``p`` for integers).
Symbolic values are encoded as numerator and denominator coefficient
lists in increasing degree, or as ``[i, j, c]`` term lists for functions of
(t1, t2).
"""
from __future__ import annotations

import csv
import io
import json
import os
import sys
import tempfile
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import click

from .algebra import Q, RatFun, UniPoly, specialize
from .algebra.bipoly import BiPoly
from .closed_forms import DegenerateParameters, recurrence_from_closed_form, tau_data
from .differentiation import NoDifferentiationFormula
from .hankel import SingularMomentMatrix, oracle
from .measures import Family, Kind
from .ode import display_coefficients, route_polynomial
from . import suites as S

SYM = "sym"
FAMILIES = [k.value for k in Kind]
N_CAP_DEFAULT = 12


# -- encoding ---------------------------------------------------------------------------

def _coeff_list(p) -> List[str]:
    if isinstance(p, BiPoly):
        return [[i, j, str(c)] for (i, j), c in sorted(p.terms.items())]
    return [str(Fraction(c)) for c in p.coeffs] or ["0"]


def encode(value):
    """JSON-ready form of a scalar, rational function or polynomial in x."""
    if value is None:
        return None
    if isinstance(value, RatFun):
        if value.is_constant():
            return str(value.constant_value())
        return {"vars": list(value.vars), "num": _coeff_list(value.num), "den": _coeff_list(value.den)}
    if isinstance(value, UniPoly):
        return [encode(c) for c in value.coeffs] or ["0"]
    return str(Fraction(value))


def _cell(value) -> str:
    """Flat CSV form of an encoded value."""
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return json.dumps(value, separators=(",", ":"))


# -- parameters -------------------------------------------------------------------------

def _rational(ctx, param, value):
    if value is None:
        return None
    try:
        return Q(value)
    except (TypeError, ValueError) as exc:
        raise click.BadParameter(str(exc)) from exc


def _rational_list(ctx, param, value):
    if value is None:
        return None
    try:
        return tuple(Q(v) for v in value.split(",") if v.strip())
    except (TypeError, ValueError) as exc:
        raise click.BadParameter(str(exc)) from exc


def _t_value(ctx, param, value):
    if value is None or value.strip() == SYM:
        return value
    v = _rational(ctx, param, value)
    if v <= 0:
        raise click.BadParameter("deformation variables must be positive")
    return v


def _n_cap() -> int:
    return int(os.environ.get("KRALLPOLY_N_CAP", N_CAP_DEFAULT))


def _check_n(ctx, param, value):
    if value is None:
        return value
    if value < 0:
        raise click.BadParameter("n must be non-negative")
    if value > _n_cap():
        raise click.BadParameter(f"n = {value} exceeds the cap {_n_cap()} (set KRALLPOLY_N_CAP to raise it)")
    return value


def _family(name: str, alpha, beta) -> Family:
    try:
        return Family.from_name(name, Fraction(0) if alpha is None else alpha, beta)
    except ValueError as exc:
        raise click.BadParameter(str(exc)) from exc


def _point(family: Family, t, t1, t2) -> Optional[Dict[str, Fraction]]:
    """The fixed part of the deformation; ``sym`` or a missing value leaves a variable free."""
    if family.kind is Kind.KOORNWINDER:
        if t is not None and (t1 is not None or t2 is not None):
            raise click.BadParameter("give either --t or --t1/--t2 for the Koornwinder family")
        if t is not None:
            t1 = t2 = t
        vals = {"t1": t1 if t1 is not None else 1, "t2": t2 if t2 is not None else 1}
    else:
        if t1 is not None or t2 is not None:
            raise click.BadParameter(f"{family.kind.value} has a single variable; use --t")
        vals = {"t": t if t is not None else 1}
    return {k: v for k, v in vals.items() if v != SYM} or None


def _point_label(at) -> Dict[str, str]:
    return {k: str(v) for k, v in sorted((at or {}).items())}


# -- output ----------------------------------------------------------------------------

def _write(text: str, out: Optional[str]) -> None:
    """Write to stdout, or atomically to ``out``."""
    if not out:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".krallpoly-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _json(config: dict, results: list, summary: dict) -> str:
    return json.dumps({"config": config, "results": results, "summary": summary}, indent=2) + "\n"


def _csv(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- commands ----------------------------------------------------------------------------

common_family = click.option("--family", type=click.Choice(FAMILIES), default="krall-laguerre", show_default=True)
common_alpha = click.option("--alpha", callback=_rational, default="0", show_default=True, help="p/q")
common_beta = click.option("--beta", callback=_rational, default=None, help="p/q (Jacobi-type families)")
common_t = click.option("--t", "t", callback=_t_value, default=None, help="p/q or 'sym'")
common_t1 = click.option("--t1", callback=_t_value, default=None, help="p/q or 'sym' (Koornwinder)")
common_t2 = click.option("--t2", callback=_t_value, default=None, help="p/q or 'sym' (Koornwinder)")
common_format = click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
common_out = click.option("--out", type=click.Path(dir_okay=False), default=None, help="output file (default stdout)")


@click.group()
def main():
    """Exact computations for Krall-type orthogonal polynomials."""


def _table_row(family: Family, n: int, at) -> Dict[str, object]:
    row: Dict[str, object] = {"n": n}
    try:
        td = tau_data(family, n)
        row["y"] = specialize(td.y, at)
        if family.kind is Kind.KOORNWINDER:
            row["z"] = specialize(td.z, at)
    except DegenerateParameters:
        row["y"] = None
        if family.kind is Kind.KOORNWINDER:
            row["z"] = None
    o = oracle(family, at)
    try:
        a, b = recurrence_from_closed_form(family, n)
        row["a"], row["b"] = specialize(a, at), specialize(b, at)
    except DegenerateParameters:
        row["a"], row["b"] = o.a(n), o.b(n)
    row["h"] = o.h(n)
    return row


@main.command()
@common_family
@common_alpha
@common_beta
@common_t
@common_t1
@common_t2
@click.option("--n", "n", type=int, default=5, show_default=True, callback=_check_n, help="largest index")
@click.option("--t-grid", callback=_rational_list, default=None,
              help="comma-separated rationals; one row per (n, t) for plotting y_n(t)")
@common_format
@common_out
def table(family, alpha, beta, t, t1, t2, n, t_grid, fmt, out):
    """Rows (n, y_n, [z_n,] a_n, b_n, h_n) at the given parameters."""
    fam = _family(family, alpha, beta)
    if t_grid:
        if fam.kind is Kind.KOORNWINDER:
            points = [{"t1": v, "t2": v} for v in t_grid]
        else:
            points = [{"t": v} for v in t_grid]
    else:
        points = [_point(fam, t, t1, t2)]
    cols = ["n", "y"] + (["z"] if fam.kind is Kind.KOORNWINDER else []) + ["a", "b", "h"]
    records = []
    try:
        for at in points:
            for k in range(n + 1):
                row = _table_row(fam, k, at)
                rec = {"n": k, **_point_label(at)}
                rec.update({c: encode(row[c]) for c in cols[1:]})
                records.append(rec)
    except (SingularMomentMatrix, ZeroDivisionError) as exc:
        raise click.ClickException(f"cannot evaluate at these parameters: {exc}") from exc
    config = {"command": "table", "family": fam.kind.value, "alpha": str(fam.alpha),
              "beta": None if fam.beta is None or fam.kind is Kind.GEGENBAUER else str(fam.beta),
              "n": n, "points": [_point_label(p) for p in points]}
    if fmt == "json":
        _write(_json(config, records, {"rows": len(records)}), out)
    else:
        var_cols = sorted({k for r in records for k in r if k.startswith("t")})
        header = ["n"] + var_cols + cols[1:]
        _write(_csv(header, [[_cell(r.get(h)) if h != "n" else str(r["n"]) for h in header]
                             for r in records]), out)


def _parse_perturb(ctx, param, values):
    out = []
    for v in values:
        try:
            k, delta = v.split(":")
            out.append((int(k), Q(delta)))
        except ValueError as exc:
            raise click.BadParameter(f"expected k:delta, got {v!r}") from exc
    return tuple(out)


@main.command()
@click.option("--suite", default="all", show_default=True,
              help=f"comma-separated subset of: {', '.join(S.SUITES)}")
@click.option("--family", default="all", show_default=True,
              help=f"comma-separated subset of: {', '.join(FAMILIES)}")
@click.option("--alpha", callback=_rational_list, default=None, help="p/q[,p/q...] (default grid)")
@click.option("--beta", callback=_rational_list, default=None, help="p/q[,p/q...] (default: the alpha grid)")
@common_t
@common_t1
@common_t2
@click.option("--n", "n", type=int, default=None, callback=_check_n, help="largest index (default 5)")
@common_format
@common_out
@click.option("--jobs", type=int, default=1, show_default=True, help="worker processes")
@click.option("--perturb", multiple=True, callback=_parse_perturb,
              help="k:delta adds delta to moment k (negative control)")
@click.option("--timings", is_flag=True, help="include per-check wall time (output is then not reproducible)")
def verify(suite, family, alpha, beta, t, t1, t2, n, fmt, out, jobs, perturb, timings):
    """Run verification suites over a parameter grid; exit code 1 on any failure."""
    suites = list(S.SUITES) if suite == "all" else [s.strip() for s in suite.split(",") if s.strip()]
    unknown = [s for s in suites if s not in S.SUITES]
    if unknown:
        raise click.BadParameter(f"unknown suite(s): {', '.join(unknown)}", param_hint="--suite")
    names = FAMILIES if family == "all" else [f.strip() for f in family.split(",") if f.strip()]
    bad = [f for f in names if f not in FAMILIES]
    if bad:
        raise click.BadParameter(f"unknown family: {', '.join(bad)}", param_hint="--family")
    if SYM in (t, t1, t2):
        raise click.BadParameter("verification needs rational points; 'sym' is for table and poly")
    points = None
    if t is not None or t1 is not None or t2 is not None:
        point = {k: v for k, v in (("t", t), ("t1", t1), ("t2", t2)) if v is not None}
        if "t" in point and len(point) > 1:
            raise click.BadParameter("give either --t or --t1/--t2")
        if "t" not in point:
            point.setdefault("t1", point.get("t2"))
            point.setdefault("t2", point["t1"])
        points = [point]
    try:
        results = S.verify(suites, names, alphas=alpha, betas=beta, max_n=n, perturb=perturb,
                           jobs=jobs, points=points)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc
    summary = S.summarize(results)
    caps = S.grid_caps()
    config = {"command": "verify", "suites": suites, "families": list(names),
              "alphas": [str(a) for a in (alpha or caps["alphas"])],
              "betas": [str(b) for b in (beta or alpha or caps["betas"])],
              "points": [_point_label(p) for p in points] if points else None,
              "ts": None if points else [str(v) for v in caps["ts"]],
              "max_n": caps["max_n"] if n is None else n,
              "perturb": [f"{k}:{d}" for k, d in perturb]}
    if fmt == "json":
        _write(_json(config, [r.as_dict(timings) for r in results], summary), out)
    else:
        header = ["check_id", "family", "n", "params", "status", "value"] + (["time"] if timings else [])
        rows = [[r.check_id, r.family, str(r.n), ";".join(f"{k}={v}" for k, v in r.params.items()),
                 r.status, r.value] + ([f"{r.time:.6f}"] if timings else []) for r in results]
        _write(_csv(header, rows), out)
    line = " ".join(f"{k}={summary[k]}" for k in ("pass", "fail", "skip", "recorded", "total"))
    click.echo(f"summary: {line}", err=True)
    sys.exit(1 if summary["fail"] else 0)


@main.command()
@common_family
@common_alpha
@common_beta
@common_t
@common_t1
@common_t2
@click.option("--n", "n", type=int, default=2, show_default=True, callback=_check_n)
@click.option("--route", type=click.Choice(["hankel", "recurrence", "diff"]), default="hankel", show_default=True)
@common_format
@common_out
def poly(family, alpha, beta, t, t1, t2, n, route, fmt, out):
    """Coefficients of p_n (constant term first) and of its second-order equation."""
    fam = _family(family, alpha, beta)
    at = _point(fam, t, t1, t2)
    try:
        p = route_polynomial(fam, n, at, route)
    except NoDifferentiationFormula as exc:
        raise click.ClickException(str(exc)) from exc
    except DegenerateParameters as exc:
        raise click.ClickException(f"route {route!r} is singular here: {exc}") from exc
    try:
        c2, c1, c0 = display_coefficients(fam, n, at)
        ode = {"c2": encode(c2), "c1": encode(c1), "c0": encode(c0)}
    except DegenerateParameters:
        ode = None
    config = {"command": "poly", "family": fam.kind.value, "alpha": str(fam.alpha),
              "beta": None if fam.beta is None or fam.kind is Kind.GEGENBAUER else str(fam.beta),
              "n": n, "route": route, "point": _point_label(at)}
    record = {"n": n, "coefficients": encode(p), "ode": ode}
    if fmt == "json":
        _write(_json(config, [record], {"degree": p.degree}), out)
        return
    cols = [record["coefficients"]] + ([ode["c2"], ode["c1"], ode["c0"]] if ode else [])
    width = max(len(c) for c in cols)
    header = ["power", "p"] + (["c2", "c1", "c0"] if ode else [])
    rows = [[str(k)] + [_cell(c[k]) if k < len(c) else "0" for c in cols] for k in range(width)]
    _write(_csv(header, rows), out)


if __name__ == "__main__":  # pragma: no cover
    main()
