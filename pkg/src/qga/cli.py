"""Command-line front end: construct, classify, transform and sample objects.

Documents are canonical JSON (sorted keys); in rational mode non-integer
coefficients are serialized as "p/q" strings, in float mode as floats.
Data goes to stdout, error objects to stderr; exit 1 for domain errors,
exit 2 for usage errors.
"""

from __future__ import annotations

import json
import math
import os
import sys
from fractions import Fraction

import click

from . import __version__
from .clifford import Multivector
from .errors import QgaError
from .model import ConicClass, QgaContext, QuadricMatrix, VectorClass
from .oracle import blade_to_system, sample_zero_set
from .scalars import is_exact
from .transforms import (
    InversionResult,
    apply_versor_to_point,
    invert_point,
    rotor_from_angles,
    sandwich,
    translator_from_lines,
)

_MODE_CHOICES = click.Choice(["float", "rational"])
_VARIANT_CHOICES = click.Choice(["conjugate", "inverse"])


# -- serialization ----------------------------------------------------------

def _coeff_to_json(c):
    if is_exact(c):
        f = Fraction(c)
        return int(f) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
    return float(c)


def _coeff_from_json(v, mode):
    if isinstance(v, str):
        f = Fraction(v)
        return f if mode == "rational" else float(f)
    if mode == "rational":
        return Fraction(v) if float(v).is_integer() or isinstance(v, int) else Fraction(str(v))
    return float(v)


def _mask_generators(mask):
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


def multivector_to_doc(mv: Multivector, kind: str, n: int) -> dict:
    terms = [
        {"coeff": _coeff_to_json(c), "generators": _mask_generators(m)}
        for m, c in sorted(mv.terms.items())
    ]
    return {"kind": kind, "n": n, "data": {"terms": terms}}


def doc_to_multivector(doc: dict, ctx: QgaContext, mode: str) -> Multivector:
    terms = {}
    for t in doc["data"]["terms"]:
        mask = 0
        for g in t["generators"]:
            mask |= 1 << (int(g) - 1)
        terms[mask] = _coeff_from_json(t["coeff"], mode)
    return Multivector(ctx.metric, terms)


def _emit(obj):
    click.echo(json.dumps(obj, sort_keys=True, separators=(", ", ": ")))


def _coords_to_json(coords):
    return [_coeff_to_json(c) for c in coords]


def _parse_point(text: str, n: int, mode: str):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != n:
        raise click.UsageError(f"expected {n} comma-separated coordinates, got {text!r}")
    if mode == "rational":
        return tuple(Fraction(p) for p in parts)
    return tuple(float(Fraction(p)) for p in parts)


def _load_doc(path: str) -> dict:
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _inversion_to_json(res: InversionResult) -> dict:
    if res.kind == "infinity":
        return {"point": "infinity"}
    return {"point": [float(c) for c in res.point]}


# -- command group ----------------------------------------------------------

class _Dispatch(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.ClickException:
            raise
        except BrokenPipeError:
            ctx.exit(0)
        except (QgaError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
            err = {"error": type(exc).__name__, "message": str(exc)}
            click.echo(json.dumps(err, sort_keys=True), err=True)
            ctx.exit(1)


def _common(f):
    f = click.option("--n", "n", type=int, default=2, show_default=True,
                     help="Base space dimension.")(f)
    f = click.option("--mode", type=_MODE_CHOICES, default=None,
                     help="Coefficient mode (default: QGA_MODE or float).")(f)
    f = click.option("--eps", type=float, default=1e-12, show_default=True,
                     help="Zero-pruning epsilon for float coefficients.")(f)
    return f


def _make_ctx(n, mode, eps):
    mode = mode or os.environ.get("QGA_MODE") or "float"
    if mode not in ("float", "rational"):
        raise click.UsageError(f"invalid QGA_MODE {mode!r}")
    return QgaContext(n, eps_zero=eps), mode


@click.group(cls=_Dispatch)
@click.version_option(__version__, prog_name="qga")
def main():
    """Quadric geometric algebra toolkit."""


@main.command()
@_common
@click.option("--point", "-p", "point", required=True, help="Comma-separated coordinates.")
def embed(n, mode, eps, point):
    """Embed a base point as a null grade-1 element."""
    ctx, mode = _make_ctx(n, mode, eps)
    p = _parse_point(point, n, mode)
    doc = multivector_to_doc(ctx.embed(p), "point", n)
    doc["data"]["coords"] = _coords_to_json(p)
    _emit(doc)


@main.command()
@_common
@click.argument("infile", default="-")
def classify(n, mode, eps, infile):
    """Classify a grade-1 element (point taxonomy, plus conic type for n=2)."""
    ctx, mode = _make_ctx(n, mode, eps)
    v = doc_to_multivector(_load_doc(infile), ctx, mode)
    cls = ctx.classify_vector(v)
    out = {"class": cls.value}
    if cls in (VectorClass.NORMALIZED_POINT, VectorClass.SCALED_POINT):
        out["coords"] = _coords_to_json(ctx.unembed(v))
    if n == 2 and cls is VectorClass.QUADRIC_VECTOR:
        out["conic"] = ctx.classify_conic(v).value
    _emit(out)


@main.command("quadric-from-points")
@_common
@click.option("--point", "-p", "points", multiple=True, required=True,
              help="Base point, repeat 2n times.")
def quadric_from_points(n, mode, eps, points):
    """Quadric vector through 2n base points."""
    ctx, mode = _make_ctx(n, mode, eps)
    pts = [_parse_point(p, n, mode) for p in points]
    v = ctx.quadric_through_points(pts)
    doc = multivector_to_doc(v, "quadric", n)
    doc["data"]["matrix"] = [
        [_coeff_to_json(c) for c in row] for row in ctx.vector_to_quadric(v).entries]
    _emit(doc)


@main.command()
@_common
@click.option("--point", "-p", "points", multiple=True, required=True,
              help="Base point, repeat n times.")
def hyperplane(n, mode, eps, points):
    """Hyperplane (line/plane) vector through n base points."""
    ctx, mode = _make_ctx(n, mode, eps)
    pts = [_parse_point(p, n, mode) for p in points]
    kind = "line" if n == 2 else "plane"
    _emit(multivector_to_doc(ctx.hyperplane_through_points(pts), kind, n))


@main.command()
@_common
@click.option("--to", "target", type=click.Choice(["vector", "matrix"]), required=True)
@click.argument("infile", default="-")
def chi(n, mode, eps, target, infile):
    """Convert between quadric coefficient matrices and grade-1 vectors."""
    ctx, mode = _make_ctx(n, mode, eps)
    doc = _load_doc(infile)
    if target == "vector":
        rows = tuple(tuple(_coeff_from_json(c, mode) for c in row) for row in doc["matrix"])
        _emit(multivector_to_doc(ctx.quadric_to_vector(QuadricMatrix(rows)), "quadric", n))
    else:
        M = ctx.vector_to_quadric(doc_to_multivector(doc, ctx, mode))
        _emit({"matrix": [[_coeff_to_json(c) for c in row] for row in M.entries], "n": n})


@main.command()
@_common
@click.option("--direction", type=click.Choice(["to_ipns", "to_opns"]), required=True)
@click.argument("infile", default="-")
def dualize(n, mode, eps, direction, infile):
    """Multiply a blade by the duality blade I (or I*)."""
    ctx, mode = _make_ctx(n, mode, eps)
    doc = _load_doc(infile)
    out = ctx.dualize(doc_to_multivector(doc, ctx, mode), direction)
    _emit(multivector_to_doc(out, "blade", n))


@main.command()
@_common
@click.option("--quadric", "quadric_file", required=True, help="Quadric document (JSON).")
@click.option("--point", "-p", "point", required=True)
@click.option("--variant", type=_VARIANT_CHOICES, default="conjugate", show_default=True)
def invert(n, mode, eps, quadric_file, point, variant):
    """Invert a base point in a quadric."""
    ctx, mode = _make_ctx(n, mode, eps)
    q = doc_to_multivector(_load_doc(quadric_file), ctx, mode)
    p = _parse_point(point, n, mode)
    _emit(_inversion_to_json(invert_point(ctx, q, p, variant)))


@main.command()
@_common
@click.option("--rotor", "rotors", multiple=True,
              help="phi,psi pair; rotates by 2(phi-psi) about the origin.")
@click.option("--translator", "translators", multiple=True,
              help="phi,t1,t2 triple; translates by 2(t2-t1) along angle phi's normal.")
@click.option("--point", "-p", "point", default=None)
@click.option("--variant", type=_VARIANT_CHOICES, default="inverse", show_default=True)
def motor(n, mode, eps, rotors, translators, point, variant):
    """Compose rotors/translators (n=2) and optionally apply to a point."""
    ctx, _ = _make_ctx(n, mode, eps)
    if n != 2:
        raise click.UsageError("motor composition is defined for --n 2")
    if not rotors and not translators:
        raise click.UsageError("provide at least one --rotor or --translator")
    g = ctx.metric.scalar(1.0)
    for spec in rotors:
        phi, psi = (float(Fraction(s)) for s in spec.split(","))
        g = rotor_from_angles(ctx, phi, psi) * g
    for spec in translators:
        phi, t1, t2 = (float(Fraction(s)) for s in spec.split(","))
        g = translator_from_lines(ctx, phi, t1, t2) * g
    doc = multivector_to_doc(g, "versor", n)
    if point is not None:
        p = _parse_point(point, n, "float")
        doc["point"] = [float(c) for c in apply_versor_to_point(ctx, g, p, variant)]
    _emit(doc)


@main.command()
@_common
@click.option("--kind", type=click.Choice(["ipns", "opns"]), default="ipns",
              show_default=True)
@click.argument("infile", default="-")
def gipns(n, mode, eps, kind, infile):
    """Emit the implicit polynomial system of a blade."""
    ctx, mode = _make_ctx(n, mode, eps)
    blade = doc_to_multivector(_load_doc(infile), ctx, mode)
    system = blade_to_system(blade, kind, ctx)
    _emit({
        "components": [
            {
                "label": label,
                "terms": [
                    {"coeff": _coeff_to_json(c), "exponents": list(e)}
                    for e, c in sorted(poly.terms.items())
                ],
            }
            for label, poly in system.components
        ],
        "n": n,
    })


@main.command()
@_common
@click.option("--quadric", "quadric_file", required=True)
@click.option("--box", default="-2,2", show_default=True, help="lo,hi sample box.")
@click.option("--step", type=float, default=0.1, show_default=True)
@click.option("--fmt", type=click.Choice(["csv", "json"]), default="csv",
              show_default=True)
def sample(n, mode, eps, quadric_file, box, step, fmt):
    """Sample approximate zero-set points of a quadric on a grid."""
    ctx, mode = _make_ctx(n, mode, eps)
    q = doc_to_multivector(_load_doc(quadric_file), ctx, "float")
    lo, hi = (float(Fraction(s)) for s in box.split(","))
    pts = sample_zero_set(blade_to_system(q, "ipns", ctx), (lo, hi), step)
    if fmt == "json":
        _emit({"points": [[float(c) for c in p] for p in pts]})
        return
    click.echo(",".join("xyz"[: n]) if n <= 3 else
               ",".join(f"x{i}" for i in range(1, n + 1)))
    for p in pts:
        click.echo(",".join(repr(float(c)) for c in p))


@main.command()
@_common
def cayley(n, mode, eps):
    """Dump the generator product table e_i e_j."""
    ctx, mode = _make_ctx(n, mode, eps)
    m = ctx.metric
    table = {}
    for i in range(1, m.dim + 1):
        for j in range(1, m.dim + 1):
            prod = m.e(i) * m.e(j)
            table[f"e{i}*e{j}"] = [
                {"coeff": _coeff_to_json(c), "generators": _mask_generators(msk)}
                for msk, c in sorted(prod.terms.items())
            ]
    _emit({"n": n, "table": table})


if __name__ == "__main__":
    main()
