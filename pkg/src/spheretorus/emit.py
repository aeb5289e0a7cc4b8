"""Deterministic file emitters: representation JSON, sweep CSV, circle SVG.

All numbers are serialized with 17 significant digits, so emit -> load ->
emit is byte-identical and loaded matrices reproduce residuals exactly.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Dict, Iterable, List, NamedTuple, Optional, Union

import numpy as np

from .classify import SweepRow
from .errors import InvalidSpec
from .reps import (
    Family,
    ReprMatrices,
    ReprSpec,
    ResidualReport,
    fuzzy_sphere_residuals,
    nc_torus_residuals,
    verify_relations,
)

TWO_PI = 2.0 * math.pi


# JSON rendering ------------------------------------------------------------


def _num_str(x: Union[int, float]) -> str:
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    xf = float(x)
    if not math.isfinite(xf):
        raise ValueError(f"cannot serialize non-finite number {xf!r}")
    if xf == 0.0:
        return "0"  # never emit "-0": it would reload as integer zero
    return "%.17g" % xf


def _is_number(v) -> bool:
    return isinstance(v, (int, float, np.integer, np.floating)) and not isinstance(v, bool)


def _inline_list(lst: list) -> bool:
    if all(_is_number(v) for v in lst):
        return True
    return bool(lst) and all(
        isinstance(v, list) and len(v) == 2 and all(_is_number(e) for e in v)
        for v in lst
    )


def _render(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, str):
        return json.dumps(obj)
    if _is_number(obj):
        return _num_str(obj)
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if _inline_list(obj):
            return "[" + ", ".join(_render(v) for v in obj) + "]"
        inner = ",\n".join(pad + "  " + _render(v, indent + 1) for v in obj)
        return "[\n" + inner + "\n" + pad + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        inner = ",\n".join(
            pad + "  " + json.dumps(str(k)) + ": " + _render(v, indent + 1)
            for k, v in obj.items()
        )
        return "{\n" + inner + "\n" + pad + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def render_json(obj) -> str:
    """Pretty, deterministic JSON text (17 significant digits, final newline)."""
    return _render(obj) + "\n"


def render_json_compact(obj) -> str:
    """Single-line JSON with no whitespace, same number formatting."""
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, str):
        return json.dumps(obj)
    if _is_number(obj):
        return _num_str(obj)
    if isinstance(obj, list):
        return "[" + ",".join(render_json_compact(v) for v in obj) + "]"
    if isinstance(obj, dict):
        return "{" + ",".join(
            json.dumps(str(k)) + ":" + render_json_compact(v)
            for k, v in obj.items()
        ) + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _write_text(text: str, path: Optional[str]) -> None:
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# representation JSON -------------------------------------------------------


def _matrix_pairs(mat: np.ndarray) -> List[List[List[float]]]:
    arr = np.asarray(mat, dtype=complex)
    return [[[float(v.real), float(v.imag)] for v in row] for row in arr]


def _pairs_matrix(rows) -> np.ndarray:
    return np.array(
        [[complex(pair[0], pair[1]) for pair in row] for row in rows],
        dtype=complex,
    )


class NcTorusPair(NamedTuple):
    """Clock/shift reference pair, as stored in its JSON document."""

    n: int
    k: int
    beta: float
    nu: complex
    u: np.ndarray
    v: np.ndarray


def rep_document(m: ReprMatrices, report: Optional[ResidualReport] = None) -> dict:
    """The JSON document (as a dict) for a representation."""
    spec = m.spec
    if report is None:
        if spec.family == Family.FUZZY_SPHERE:
            residuals: Dict[str, float] = fuzzy_sphere_residuals(m)
        else:
            residuals = verify_relations(m).residuals
    else:
        residuals = report.residuals
    return {
        "family": spec.family.value,
        "R": float(spec.R),
        "n": int(spec.n),
        "alpha": float(spec.alpha),
        "beta_prime": float(spec.beta_prime),
        "beta": float(spec.beta),
        "k": None if spec.k is None else int(spec.k),
        "nu": [float(spec.nu.real), float(spec.nu.imag)],
        "eps": float(spec.eps),
        "matrices": {
            "u": _matrix_pairs(m.u),
            "ap": _matrix_pairs(m.ap),
            "am": _matrix_pairs(m.am),
        },
        "residuals": {key: float(residuals[key]) for key in sorted(residuals)},
    }


def nc_torus_document(
    u: np.ndarray, v: np.ndarray, n: int, k: int, beta: float, nu: complex
) -> dict:
    residuals = nc_torus_residuals(u, v, n, k)
    return {
        "family": Family.NC_TORUS.value,
        "n": int(n),
        "k": int(k),
        "beta": float(beta),
        "nu": [float(complex(nu).real), float(complex(nu).imag)],
        "matrices": {"u": _matrix_pairs(u), "v": _matrix_pairs(v)},
        "residuals": {key: float(residuals[key]) for key in sorted(residuals)},
    }


def emit_rep_json(
    m: ReprMatrices,
    path: Optional[str] = None,
    report: Optional[ResidualReport] = None,
) -> str:
    """Serialize a representation; write to path when given, return the text."""
    text = render_json(rep_document(m, report))
    _write_text(text, path)
    return text


def emit_nc_torus_json(
    u: np.ndarray,
    v: np.ndarray,
    n: int,
    k: int,
    beta: float = 0.0,
    nu: complex = 1.0 + 0.0j,
    path: Optional[str] = None,
) -> str:
    text = render_json(nc_torus_document(u, v, n, k, beta, nu))
    _write_text(text, path)
    return text


def load_rep_json(text: str) -> Union[ReprMatrices, NcTorusPair]:
    """Read back a representation document emitted by this module."""
    doc = json.loads(text)
    family = doc["family"]
    if family == Family.NC_TORUS.value:
        return NcTorusPair(
            n=int(doc["n"]),
            k=int(doc["k"]),
            beta=float(doc["beta"]),
            nu=complex(doc["nu"][0], doc["nu"][1]),
            u=_pairs_matrix(doc["matrices"]["u"]),
            v=_pairs_matrix(doc["matrices"]["v"]),
        )
    try:
        fam = Family(family)
    except ValueError:
        raise InvalidSpec(f"unknown representation family {family!r}")
    spec = ReprSpec(
        family=fam,
        R=float(doc["R"]),
        n=int(doc["n"]),
        alpha=float(doc["alpha"]),
        beta_prime=float(doc["beta_prime"]),
        k=None if doc.get("k") is None else int(doc["k"]),
        nu=complex(doc["nu"][0], doc["nu"][1]),
        M=(int(doc["n"]) - 1) // 2 if fam == Family.T2WINDOW else None,
        # keep the stored deformation value authoritative so that
        # emit -> load -> emit is byte-identical
        eps_value=float(doc["eps"]),
    )
    return ReprMatrices(
        spec,
        u=_pairs_matrix(doc["matrices"]["u"]),
        ap=_pairs_matrix(doc["matrices"]["ap"]),
        am=_pairs_matrix(doc["matrices"]["am"]),
    )


# sweep CSV -----------------------------------------------------------------

SWEEP_HEADER = (
    "R", "n", "family", "k", "alpha", "beta_lo", "beta_hi", "exists",
    "reject_reason",
)


def _csv_num(x: Optional[float]) -> str:
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if float(x) == 0.0:
        return "0"
    return "%.12g" % float(x)


def emit_sweep_csv(rows: Iterable[SweepRow], path: Optional[str] = None) -> str:
    """CSV table of sweep rows; empty optional fields stay blank."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for row in rows:
        writer.writerow([
            _csv_num(row.R),
            str(row.n),
            row.family,
            "" if row.k is None else str(row.k),
            _csv_num(row.alpha),
            _csv_num(row.beta_lo),
            _csv_num(row.beta_hi),
            "true" if row.exists else "false",
            row.reject_reason,
        ])
    text = buf.getvalue()
    _write_text(text, path)
    return text


# circle-diagram SVG --------------------------------------------------------

_CENTER = 220.0
_RADIUS = 200.0


def _pt(theta: float) -> str:
    x = _CENTER + _RADIUS * math.cos(theta)
    y = _CENTER - _RADIUS * math.sin(theta)
    return f"{x:.3f},{y:.3f}"


def emit_diagram_svg(spec: ReprSpec, path: Optional[str] = None) -> str:
    """Circle diagram: unit circle, forbidden wedge, vertex polygon, dots.

    Vertices sit at angles beta' + m*alpha; the forbidden sector is the
    wedge about angle pi with half-width delta/2, cos(delta/2) =
    R*cos(alpha/2), drawn whenever R <= sec(alpha/2).  Sphere chains are
    joined by an open polyline, torus cycles by a closed polygon.
    """
    R, n, alpha, bp = spec.R, spec.n, spec.alpha, spec.beta_prime
    closed = spec.family in (Family.T2, Family.T2WINDOW, Family.NC_TORUS)
    if spec.family == Family.T2WINDOW:
        half = (n - 1) // 2
        ms = range(-half, half + 1)
    else:
        ms = range(n)

    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="440" height="440" '
        'viewBox="0 0 440 440">',
        f'<circle cx="{_CENTER:.3f}" cy="{_CENTER:.3f}" r="{_RADIUS:.3f}" '
        'fill="none" stroke="#444444" stroke-width="1.5"/>',
    ]

    c = R * math.cos(0.5 * alpha)
    if c <= 1.0:
        delta = 2.0 * math.acos(max(c, -1.0))
        if delta >= TWO_PI - 1e-12:
            parts.append(
                f'<circle cx="{_CENTER:.3f}" cy="{_CENTER:.3f}" '
                f'r="{_RADIUS:.3f}" fill="#f3d6d6" stroke="none"/>'
            )
        else:
            start = _pt(math.pi - 0.5 * delta)
            end = _pt(math.pi + 0.5 * delta)
            large = 1 if delta > math.pi else 0
            parts.append(
                f'<path d="M {_CENTER:.3f},{_CENTER:.3f} L {start} '
                f'A {_RADIUS:.3f},{_RADIUS:.3f} 0 {large} 0 {end} Z" '
                'fill="#f3d6d6" stroke="none"/>'
            )

    points = [_pt(bp + m * alpha) for m in ms]
    tag = "polygon" if closed else "polyline"
    parts.append(
        f'<{tag} points="{" ".join(points)}" fill="none" stroke="#1f77b4" '
        'stroke-width="2"/>'
    )
    for point in points:
        x, y = point.split(",")
        parts.append(f'<circle cx="{x}" cy="{y}" r="4.000" fill="#d62728"/>')
    parts.append("</svg>")
    text = "\n".join(parts) + "\n"
    _write_text(text, path)
    return text
