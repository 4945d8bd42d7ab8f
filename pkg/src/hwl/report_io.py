"""Serialization: bit-exact signal CSV, JSON analysis reports, SVG figures.

CSV and the JSON report schema are the package's stable external contracts:

* signal CSV: header line ``x,value``, one row per sample, 17-significant-
  digit decimal floats (lossless for binary64), uniform abscissa spacing
  validated to 1e-9 relative on read;
* report JSON: one object per report with a ``kind`` discriminator
  (``moment_report``, ``decay_fit``, ``bound_certificate``,
  ``sobolev_estimate``), every report field, ``tool_version`` and
  ``input_digest``; serialized with sorted keys so identical inputs give
  identical bytes.

Figures are emitted as standalone SVG with hand-built paths and axes; no
plotting dependency.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import TOOL_VERSION
from .analysis import BoundCertificate, DecayFit, MomentReport, SobolevEstimate
from .errors import InvalidParameterError, ParseError, SchemaError
from .numerics import Grid, SampledSignal

__all__ = [
    "write_signal_csv",
    "read_signal_csv",
    "write_report_json",
    "read_report_json",
    "PanelSpec",
    "FigureSpec",
    "render_figure",
]

CSV_HEADER = "x,value"

_REPORT_KINDS = {
    "moment_report": MomentReport,
    "decay_fit": DecayFit,
    "bound_certificate": BoundCertificate,
    "sobolev_estimate": SobolevEstimate,
}
_KIND_BY_TYPE = {cls: kind for kind, cls in _REPORT_KINDS.items()}


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def write_signal_csv(f: SampledSignal, path) -> None:
    """Write ``x,value`` rows at full binary64 round-trip precision."""
    x = f.x()
    lines = [CSV_HEADER]
    lines.extend(f"{_fmt(xi)},{_fmt(vi)}" for xi, vi in zip(x, f.values))
    Path(path).write_text("\n".join(lines) + "\n")


def read_signal_csv(path) -> SampledSignal:
    """Parse a signal CSV; malformed content raises ParseError with the row."""
    text = Path(path).read_text()
    lines = [ln for ln in text.splitlines() if ln.strip() != ""]
    if not lines:
        raise ParseError("empty file")
    if lines[0].strip() != CSV_HEADER:
        raise ParseError(f"expected header {CSV_HEADER!r}, got {lines[0]!r}", row=1)
    if len(lines) < 3:
        raise ParseError("need at least 2 samples")
    xs, vs = [], []
    for row, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != 2:
            raise ParseError(f"expected 2 fields, got {len(parts)}", row=row)
        try:
            x, v = float(parts[0]), float(parts[1])
        except ValueError:
            raise ParseError(f"unparseable number in {line!r}", row=row) from None
        if not (np.isfinite(x) and np.isfinite(v)):
            raise ParseError("non-finite value", row=row)
        xs.append(x)
        vs.append(v)
    x_arr = np.asarray(xs)
    step = (x_arr[-1] - x_arr[0]) / (len(x_arr) - 1)
    if step <= 0:
        raise ParseError("abscissas are not increasing")
    deviation = np.abs(np.diff(x_arr) - step)
    worst = int(np.argmax(deviation))
    if deviation[worst] > 1e-9 * abs(step):
        raise ParseError(
            f"non-uniform grid: spacing deviates by {deviation[worst]:.3e} from {step}",
            row=worst + 3,  # header + 1-based + diff offset
        )
    return SampledSignal(Grid(float(x_arr[0]), float(step), len(x_arr)), np.asarray(vs))


def _jsonable(value):
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    raise TypeError(f"cannot serialize {type(value)!r}")


def write_report_json(report, path, input_digest: str = "", extra: dict | None = None) -> None:
    """Serialize an analysis report deterministically.

    ``extra`` entries (e.g. a CLI pass flag and the run parameters) are
    merged at the top level; they may not collide with schema fields.
    """
    kind = _KIND_BY_TYPE.get(type(report))
    if kind is None:
        raise SchemaError(f"unknown report type {type(report)!r}")
    payload = {
        "kind": kind,
        "tool_version": TOOL_VERSION,
        "input_digest": input_digest,
    }
    payload.update({k: _jsonable(v) for k, v in dataclasses.asdict(report).items()})
    for key, value in (extra or {}).items():
        if key in payload:
            raise InvalidParameterError(f"extra field {key!r} collides with the schema")
        payload[key] = _jsonable(value)
    Path(path).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _retuple(value):
    if isinstance(value, list):
        return tuple(_retuple(v) for v in value)
    return value


def read_report_json(path):
    """Load a report written by :func:`write_report_json`.

    Returns the reconstructed report dataclass; unknown ``kind`` or missing
    fields raise :class:`SchemaError`.
    """
    try:
        payload = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from None
    if not isinstance(payload, dict) or "kind" not in payload:
        raise SchemaError("report object must carry a 'kind' discriminator")
    cls = _REPORT_KINDS.get(payload["kind"])
    if cls is None:
        raise SchemaError(f"unknown report kind {payload['kind']!r}")
    names = {f.name for f in dataclasses.fields(cls)}
    kwargs = {k: _retuple(v) for k, v in payload.items() if k in names}
    missing = names - kwargs.keys()
    if missing:
        raise SchemaError(f"report is missing fields: {sorted(missing)}")
    return cls(**kwargs)


# --------------------------------------------------------------------------
# figures
# --------------------------------------------------------------------------

_ROLE_STYLE = {
    "original": ("#1f6fb4", 1.4),
    "transformed": ("#d03028", 1.1),
    "kernel": ("#333333", 1.4),
}


@dataclass(frozen=True)
class PanelSpec:
    """One panel: a list of (signal, role) curves sharing axes."""

    curves: tuple
    title: str = ""
    y_range: tuple[float, float] | None = None

    def __post_init__(self):
        for _, role in self.curves:
            if role not in _ROLE_STYLE:
                raise InvalidParameterError(f"unknown style role {role!r}")


@dataclass(frozen=True)
class FigureSpec:
    """A figure: 1 (scaling-function breakup), 2 (kernel), 3 (wavelet pairs)."""

    figure_id: int
    panels: tuple[PanelSpec, ...]

    def __post_init__(self):
        if self.figure_id not in (1, 2, 3):
            raise InvalidParameterError(f"figure_id must be 1, 2 or 3, got {self.figure_id}")
        if len(self.panels) == 0:
            raise InvalidParameterError("figure needs at least one panel")


_PANEL_W, _PANEL_H = 340, 260
_MARGIN = 46
_MAX_POINTS = 2048


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = np.linspace(lo, hi, n)
    return [float(t) for t in raw]


def _polyline(x, y, x0, x1, y0, y1, ox, oy) -> str:
    stride = max(1, len(x) // _MAX_POINTS)
    xs = x[::stride]
    ys = np.clip(y[::stride], y0, y1)
    px = ox + (xs - x0) / (x1 - x0) * _PANEL_W
    py = oy + _PANEL_H - (ys - y0) / (y1 - y0) * _PANEL_H
    return " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(px, py))


def render_figure(spec: FigureSpec, path) -> None:
    """Emit a standalone SVG: one row of panels, labeled axes, one polyline
    per curve, values clipped to the panel's y-range."""
    n = len(spec.panels)
    width = _MARGIN + n * (_PANEL_W + _MARGIN)
    height = _PANEL_H + 2 * _MARGIN + 14
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="Helvetica, Arial, sans-serif" '
        f'font-size="11">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for ip, panel in enumerate(spec.panels):
        ox = _MARGIN + ip * (_PANEL_W + _MARGIN)
        oy = _MARGIN
        xs = [sig.x() for sig, _ in panel.curves]
        x0 = min(float(x[0]) for x in xs)
        x1 = max(float(x[-1]) for x in xs)
        if panel.y_range is not None:
            y0, y1 = panel.y_range
        else:
            vals = np.concatenate([sig.values for sig, _ in panel.curves])
            y0, y1 = float(vals.min()), float(vals.max())
            pad = 0.05 * max(y1 - y0, 1e-12)
            y0, y1 = y0 - pad, y1 + pad
        parts.append(
            f'<rect x="{ox}" y="{oy}" width="{_PANEL_W}" height="{_PANEL_H}" '
            f'fill="none" stroke="#999" stroke-width="0.8"/>'
        )
        if y0 < 0 < y1:
            zy = oy + _PANEL_H - (0 - y0) / (y1 - y0) * _PANEL_H
            parts.append(
                f'<line x1="{ox}" y1="{zy:.2f}" x2="{ox + _PANEL_W}" y2="{zy:.2f}" '
                f'stroke="#ccc" stroke-width="0.7"/>'
            )
        for t in _ticks(x0, x1):
            px = ox + (t - x0) / (x1 - x0) * _PANEL_W
            parts.append(
                f'<line x1="{px:.2f}" y1="{oy + _PANEL_H}" x2="{px:.2f}" '
                f'y2="{oy + _PANEL_H + 4}" stroke="#333" stroke-width="0.8"/>'
            )
            parts.append(
                f'<text x="{px:.2f}" y="{oy + _PANEL_H + 16}" '
                f'text-anchor="middle">{t:g}</text>'
            )
        for t in _ticks(y0, y1):
            py = oy + _PANEL_H - (t - y0) / (y1 - y0) * _PANEL_H
            parts.append(
                f'<line x1="{ox - 4}" y1="{py:.2f}" x2="{ox}" y2="{py:.2f}" '
                f'stroke="#333" stroke-width="0.8"/>'
            )
            parts.append(
                f'<text x="{ox - 7}" y="{py + 3:.2f}" text-anchor="end">{t:.3g}</text>'
            )
        clip_id = f"panel{ip}"
        parts.append(
            f'<clipPath id="{clip_id}"><rect x="{ox}" y="{oy}" '
            f'width="{_PANEL_W}" height="{_PANEL_H}"/></clipPath>'
        )
        for sig, role in panel.curves:
            color, sw = _ROLE_STYLE[role]
            pts = _polyline(sig.x(), sig.values, x0, x1, y0, y1, ox, oy)
            parts.append(
                f'<polyline points="{pts}" fill="none" stroke="{color}" '
                f'stroke-width="{sw}" clip-path="url(#{clip_id})"/>'
            )
        if panel.title:
            parts.append(
                f'<text x="{ox + _PANEL_W / 2}" y="{oy - 10}" text-anchor="middle" '
                f'font-size="13">{panel.title}</text>'
            )
        parts.append(
            f'<text x="{ox + _PANEL_W / 2}" y="{oy + _PANEL_H + 32}" '
            f'text-anchor="middle">x</text>'
        )
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n")
