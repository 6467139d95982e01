"""Command line entry point: ``tlj verify`` and ``tlj emit``.

Exit codes: 0 when every requested check passes, 1 when any check fails,
2 on usage errors (unknown names, out-of-range bounds, unwritable output).
"""

from __future__ import annotations

import json
import os
import sys
from contextlib import contextmanager
from typing import Iterator, TextIO

import click

from tlj import diagrams as dg
from tlj.category import fusion_table
from tlj.coherence import CATALOG, MUTATIONS, Bounds, check_full_faithful, check_identity, check_k0_ring
from tlj.dilute import bratteli
from tlj.scalars import Cyclotomic, Level, approx_complex
from tlj.tl_linear import TLMorphism, jones_wenzl

# largest k accepted; the cyclotomic order 4(k+2) grows quickly beyond this
MAX_K = 16
DEFAULT_MAX_BOUND = 12
EXTRA_CHECKS = ("full-faithful", "k0-ring")


def _max_bound() -> int:
    raw = os.environ.get("TLJ_MAX_BOUND")
    if raw is None:
        return DEFAULT_MAX_BOUND
    try:
        return int(raw)
    except ValueError:
        raise click.UsageError(f"TLJ_MAX_BOUND must be an integer, got {raw!r}")


def _level(k: int | None, delta2: bool) -> Level:
    if delta2 and k is not None:
        raise click.UsageError("--k and --delta2 are mutually exclusive")
    if delta2:
        return Level.delta_two()
    if k is None:
        raise click.UsageError("choose a level with --k <int> or --delta2")
    if not 1 <= k <= MAX_K:
        raise click.UsageError(f"--k must lie in 1..{MAX_K}, got {k}")
    return Level(k)


def _bound(name: str, value: int | None) -> int | None:
    if value is None:
        return None
    cap = _max_bound()
    if value < 0 or value > cap:
        raise click.UsageError(f"{name} must lie in 0..{cap}, got {value}")
    return value


def _format(fmt: str, allowed: tuple[str, ...], command: str) -> str:
    if fmt not in allowed:
        raise click.UsageError(f"--format {fmt} is not available for {command}; use one of {', '.join(allowed)}")
    return fmt


@contextmanager
def _sink(path: str | None) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
        return
    try:
        handle = open(path, "w", encoding="utf-8", newline="\n")
    except OSError as exc:
        raise click.UsageError(f"cannot write {path}: {exc.strerror}")
    with handle:
        yield handle


def _scalar(c: Cyclotomic, with_float: bool) -> dict | str:
    if not with_float:
        return c.to_string()
    re, im = approx_complex(c, 15)
    return {"exact": c.to_string(), "approx": f"{re:.12g}" if abs(im) < 1e-12 else f"{re:.12g}{im:+.12g}i"}


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False)


level_options = [
    click.option("--k", "k", type=int, default=None, help="Level k >= 1 (delta = 2 cos(pi/(k+2)))."),
    click.option("--delta2", is_flag=True, help="Use the generic point delta = 2."),
]


def with_level(f):
    for opt in reversed(level_options):
        f = opt(f)
    return f


@click.group()
def main() -> None:
    """Exact Temperley-Lieb-Jones computations and coherence checks."""


@main.command()
@click.argument("name")
@with_level
@click.option("--max-len", type=int, default=6, show_default=True, help="Longest pattern enumerated.")
@click.option("--max-filled", type=int, default=3, show_default=True, help="Most filled nodes per side.")
@click.option("--n", "n", type=int, default=None, help="Strand bound for full-faithful / k0-ring.")
@click.option("--format", "fmt", default="json", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--jobs", type=click.IntRange(1, 64), default=1, show_default=True)
@click.option("--mode", type=click.Choice(["exhaustive", "sampled"]), default="exhaustive", show_default=True)
@click.option("--samples", type=click.IntRange(1), default=200, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--mutation", type=click.Choice(sorted(MUTATIONS)), default=None, help="Negative control: perturb one crossing convention.")
@click.option("--float", "with_float", is_flag=True, help="Accepted for symmetry with emit; reports carry no scalars.")
def verify(name, k, delta2, max_len, max_filled, n, fmt, out, jobs, mode, samples, seed, mutation, with_float):
    """Check NAME (a catalog identity, full-faithful, k0-ring, or all)."""
    level = _level(k, delta2)
    fmt = _format(fmt, ("json", "text"), "verify")
    max_len = _bound("--max-len", max_len)
    max_filled = _bound("--max-filled", max_filled)
    n = _bound("--n", n)
    if name == "all":
        names = list(CATALOG)
    elif name in CATALOG or name in EXTRA_CHECKS:
        names = [name]
    else:
        known = ", ".join(list(CATALOG) + list(EXTRA_CHECKS) + ["all"])
        raise click.UsageError(f"unknown identity {name!r}; known: {known}")
    try:
        bounds = Bounds(max_len, max_filled)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    failed = False
    with _sink(out) as sink:
        for item in names:
            for report in _run(item, level, bounds, n, mode, samples, seed, mutation, jobs):
                failed |= not report.passed
                if fmt == "json":
                    sink.write(_dump(report.to_json()) + "\n")
                else:
                    sink.write(_text_report(report) + "\n")
                sink.flush()
    sys.exit(1 if failed else 0)


def _run(name, level, bounds, n, mode, samples, seed, mutation, jobs):
    if name == "k0-ring":
        yield check_k0_ring(level, n if n is not None else (4 if level.is_delta_two else None))
    elif name == "full-faithful":
        top = min(4 if n is None else n, level.max_simple)
        projections = [(f"f{j}", jones_wenzl(j, level)) for j in range(top + 1)]
        projections += [(f"id{j}", TLMorphism.identity(level, j)) for j in range(2, top + 1)]
        for pname, p in projections:
            for qname, q in projections:
                yield check_full_faithful(p, q, level, names=(pname, qname))
    else:
        yield check_identity(
            name, level, bounds, mode=mode, samples=samples, seed=seed, mutation=mutation, jobs=jobs
        )


def _text_report(report) -> str:
    line = f"{report.identity:<14} {report.level:<7} {report.status.upper():<5} tuples={report.tuples_checked} time={report.wall_time_ms}ms"
    if report.identity == "full-faithful":
        d = report.details
        line += f" P={d.get('P', d['source'])} Q={d.get('Q', d['target'])} dim_B={d['dim_B']} dim_TLJ={d['dim_TLJ']}"
    if report.counterexample:
        line += f"\n  counterexample: {_dump(report.counterexample)}"
    return line


@main.command()
@click.argument("what", type=click.Choice(["fusion", "bratteli", "jw", "diagrams"]))
@with_level
@click.option("--n", "n", type=int, default=None, help="Strand count (jw, diagrams) or tensor power bound (fusion).")
@click.option("--m", "m", type=int, default=None, help="Left strand count for diagrams (defaults to --n).")
@click.option("--depth", type=int, default=4, show_default=True, help="Tower depth for bratteli.")
@click.option("--tower", type=click.Choice(["unital", "padding"]), default="unital", show_default=True)
@click.option("--format", "fmt", default="json", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--float", "with_float", is_flag=True, help="Add 12-digit float approximations to exact scalars.")
@click.option("--jobs", type=click.IntRange(1, 64), default=1, hidden=True)
def emit(what, k, delta2, n, m, depth, tower, fmt, out, with_float, jobs):
    """Write fusion tables, Bratteli data, Jones-Wenzl coefficients or diagram lists."""
    n = _bound("--n", n)
    m = _bound("--m", m)
    depth = _bound("--depth", depth)
    if what == "diagrams":
        fmt = _format(fmt, ("json", "text"), what)
        if n is None:
            raise click.UsageError("emit diagrams needs --n")
        left = n if m is None else m
        found = [d.encode() for d in dg.enumerate_diagrams(left, n)]
        text = _dump({"left": left, "right": n, "count": len(found), "diagrams": found}) if fmt == "json" else "\n".join(found)
        _write(out, text)
        return
    level = _level(k, delta2)
    if what == "fusion":
        fmt = _format(fmt, ("json", "text"), what)
        bound = n if n is not None else (4 if level.is_delta_two else None)
        table = fusion_table(level, bound)
        _write(out, _dump(table.to_json()) if fmt == "json" else table.to_text())
    elif what == "bratteli":
        fmt = _format(fmt, ("json", "text", "dot"), what)
        data = bratteli(level, depth, tower)
        body = {"json": lambda: _dump(data.to_json()), "text": data.to_text, "dot": data.to_dot}[fmt]()
        _write(out, body)
    else:
        fmt = _format(fmt, ("json", "text"), what)
        if n is None:
            raise click.UsageError("emit jw needs --n")
        if n > level.max_simple + 1:
            raise click.UsageError(f"f^({n}) does not exist at {level.name}; use n <= {level.max_simple + 1}")
        f = jones_wenzl(n, level)
        items = sorted((d.encode(), c) for d, c in f.terms.items())
        if fmt == "json":
            coeffs = {text: _scalar(c, with_float) for text, c in items}
            _write(out, _dump({"level": level.name, "n": n, "terms": len(items), "coefficients": coeffs}))
        else:
            rows = []
            for text, c in items:
                s = _scalar(c, with_float)
                rows.append(f"{text}  {s['exact']}  ~ {s['approx']}" if with_float else f"{text}  {s}")
            _write(out, "\n".join(rows))


def _write(path: str | None, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    with _sink(path) as sink:
        sink.write(text)


if __name__ == "__main__":  # pragma: no cover
    main()
