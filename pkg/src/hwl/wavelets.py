"""Generators for the toolkit's test functions.

Haar family and boxes are exact step functions (:class:`PiecewiseConstant`);
B-spline scaling functions and compactly supported semi-orthogonal spline
wavelets are evaluated through the Cox-de Boor recursion; modulated windows
cover the bandlimited (sinc^2) and effectively-bandlimited (Gaussian) cases.

Conventions:

* every generator output is centered so its support midpoint is 0
  (windows are centered by construction);
* spline wavelets are scaled to unit L2 norm, computed in closed form from
  the autocorrelation identity for cardinal B-splines, so the scaling is
  grid-independent and bit-reproducible;
* step functions use half-open intervals [a, b) throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameterError
from .numerics import Grid, SampledSignal

__all__ = [
    "DEGREE_CAP",
    "PiecewiseConstant",
    "WaveletSpec",
    "make_haar_wavelet",
    "make_haar_scaling",
    "make_box",
    "make_bspline_scaling",
    "make_spline_wavelet",
    "make_modulated_window",
    "cardinal_bspline",
    "spline_wavelet_coefficients",
    "evaluate",
    "sample",
]

DEGREE_CAP = 20


@dataclass(frozen=True)
class PiecewiseConstant:
    """Step function: ``levels[i]`` on ``[breakpoints[i], breakpoints[i+1])``, 0 outside."""

    breakpoints: tuple[float, ...]
    levels: tuple[float, ...]

    def __post_init__(self):
        bp = tuple(float(b) for b in self.breakpoints)
        lv = tuple(float(v) for v in self.levels)
        if len(bp) != len(lv) + 1:
            raise InvalidParameterError(
                f"need len(breakpoints) == len(levels)+1, got {len(bp)} and {len(lv)}"
            )
        if not all(a < b for a, b in zip(bp, bp[1:])):
            raise InvalidParameterError("breakpoints must be strictly increasing")
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "levels", lv)

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        out = np.zeros_like(x)
        for a, b, v in zip(self.breakpoints, self.breakpoints[1:], self.levels):
            out = np.where((x >= a) & (x < b), v, out)
        return out


@dataclass(frozen=True)
class WaveletSpec:
    """Description of an analytic generator; evaluate with :func:`evaluate`.

    ``kind`` is one of ``haar_scaling``, ``haar_wavelet``, ``box``,
    ``bspline_scaling``, ``spline_wavelet``, ``modulated_window``; the other
    fields are populated as the kind requires.  ``support`` is None for the
    (unbounded) modulated windows.
    """

    kind: str
    support: tuple[float, float] | None
    degree: int | None = None
    window_kind: str | None = None
    omega0: float | None = None
    phase: float | None = None
    sigma: float | None = None
    coefficients: tuple[float, ...] | None = field(default=None, repr=False)
    amplitude: float = 1.0


def cardinal_bspline(order: int, t) -> np.ndarray:
    """Cardinal B-spline of the given order on [0, order], half-open base box.

    Evaluated by the Cox-de Boor recursion over the integer knot lattice;
    vectorized in ``t`` and O(order^2) in work.
    """
    if order < 1:
        raise InvalidParameterError(f"order must be >= 1, got {order}")
    t = np.asarray(t, dtype=np.float64)
    cols = [((t - j >= 0.0) & (t - j < 1.0)).astype(np.float64) for j in range(order)]
    for m in range(2, order + 1):
        u = t
        nxt = []
        for j in range(order - m + 1):
            uj = u - j
            nxt.append((uj * cols[j] + (m - uj) * cols[j + 1]) / (m - 1))
        cols = nxt
    return cols[0]


def _check_degree(degree: int) -> int:
    degree = int(degree)
    if degree < 0 or degree > DEGREE_CAP:
        raise InvalidParameterError(f"degree must be in [0, {DEGREE_CAP}], got {degree}")
    return degree


def make_haar_wavelet() -> PiecewiseConstant:
    """The antisymmetric step wavelet: +1 on [-1, 0), -1 on [0, 1)."""
    return PiecewiseConstant(breakpoints=(-1.0, 0.0, 1.0), levels=(1.0, -1.0))


def make_haar_scaling() -> PiecewiseConstant:
    """Unit box on [0, 1), the standard Haar multiresolution generator."""
    return PiecewiseConstant(breakpoints=(0.0, 1.0), levels=(1.0,))


def make_box(a: float, b: float) -> PiecewiseConstant:
    """Unit-height box on [a, b)."""
    return PiecewiseConstant(breakpoints=(float(a), float(b)), levels=(1.0,))


def make_bspline_scaling(degree: int) -> WaveletSpec:
    """Centered B-spline scaling function of the given degree.

    The (degree+1)-fold self-convolution of the unit box, shifted so the
    support midpoint is 0: support [-(degree+1)/2, (degree+1)/2].
    """
    degree = _check_degree(degree)
    half = (degree + 1) / 2.0
    return WaveletSpec(kind="bspline_scaling", degree=degree, support=(-half, half))


def spline_wavelet_coefficients(degree: int) -> np.ndarray:
    """Synthesis coefficients q_k of the compactly supported semi-orthogonal
    spline wavelet: psi(x) = sum_k q_k * N_m(2x - k), m = degree + 1,
    k = 0 .. 3m-2, with

        q_k = ((-1)^k / 2^(m-1)) * sum_l C(m, l) * N_{2m}(k - l + 1).
    """
    degree = _check_degree(degree)
    m = degree + 1
    args = np.arange(-m, 3 * m) + 1.0  # all k - l + 1 values needed
    n2m = cardinal_bspline(2 * m, args)
    table = {int(a): v for a, v in zip(args, n2m)}
    q = np.empty(3 * m - 1)
    for k in range(3 * m - 1):
        s = sum(math.comb(m, l) * table[k - l + 1] for l in range(m + 1))
        q[k] = ((-1) ** k / 2.0 ** (m - 1)) * s
    return q


def _spline_wavelet_l2(q: np.ndarray, m: int) -> float:
    # ||psi||^2 = (1/2) sum_{k,k'} q_k q_k' N_{2m}(m + k - k'); the 1/2 is the
    # Jacobian of u = 2x - k.
    rs = np.arange(-(m - 1), m)
    auto = {int(r): cardinal_bspline(2 * m, np.array([m + r], dtype=float))[0] for r in rs}
    total = 0.0
    for k1 in range(len(q)):
        for k2 in range(len(q)):
            r = k1 - k2
            if -(m - 1) <= r <= m - 1:
                total += q[k1] * q[k2] * auto[r]
    return 0.5 * total


def make_spline_wavelet(degree: int) -> WaveletSpec:
    """Compactly supported semi-orthogonal spline wavelet of the given degree.

    Order m = degree + 1; built from half-scale B-splines with the synthesis
    coefficients of :func:`spline_wavelet_coefficients`, centered so the
    support [-(2m-1)/2, (2m-1)/2] has midpoint 0, and scaled to unit L2 norm.
    The construction carries m vanishing moments; degree 0 reproduces the
    Haar wavelet up to shift and normalization.
    """
    degree = _check_degree(degree)
    m = degree + 1
    q = spline_wavelet_coefficients(degree)
    amplitude = 1.0 / math.sqrt(_spline_wavelet_l2(q, m))
    half = (2 * m - 1) / 2.0
    return WaveletSpec(
        kind="spline_wavelet",
        degree=degree,
        support=(-half, half),
        coefficients=tuple(q),
        amplitude=amplitude,
    )


def make_modulated_window(window_kind: str, omega0: float, phase: float = 0.0,
                          sigma: float = 1.0) -> WaveletSpec:
    """Modulated localization window x -> w(x) * cos(omega0*x + phase).

    ``sinc2`` is w(x) = (sin x / x)^2 with w(0) = 1, bandlimited to (-2, 2);
    ``gauss`` is w(x) = exp(-x^2 / (2 sigma^2)).
    """
    if window_kind not in ("sinc2", "gauss"):
        raise InvalidParameterError(f"unknown window kind {window_kind!r}")
    omega0 = float(omega0)
    if not (omega0 >= 0.0 and np.isfinite(omega0)):
        raise InvalidParameterError(f"omega0 must be finite and >= 0, got {omega0}")
    if window_kind == "gauss" and not sigma > 0:
        raise InvalidParameterError(f"sigma must be positive, got {sigma}")
    return WaveletSpec(
        kind="modulated_window",
        support=None,
        window_kind=window_kind,
        omega0=omega0,
        phase=float(phase),
        sigma=float(sigma),
    )


def evaluate(spec: WaveletSpec | PiecewiseConstant, x) -> np.ndarray:
    """Pointwise evaluation of a generator at arbitrary abscissas."""
    x = np.asarray(x, dtype=np.float64)
    if isinstance(spec, PiecewiseConstant):
        return spec(x)
    if spec.kind == "bspline_scaling":
        return cardinal_bspline(spec.degree + 1, x + (spec.degree + 1) / 2.0)
    if spec.kind == "spline_wavelet":
        m = spec.degree + 1
        xs = 2.0 * (x + (2 * m - 1) / 2.0)
        out = np.zeros_like(x)
        for k, qk in enumerate(spec.coefficients):
            out += qk * cardinal_bspline(m, xs - k)
        return spec.amplitude * out
    if spec.kind == "modulated_window":
        if spec.window_kind == "sinc2":
            w = np.ones_like(x)
            nz = x != 0.0
            w[nz] = (np.sin(x[nz]) / x[nz]) ** 2
        else:
            w = np.exp(-(x * x) / (2.0 * spec.sigma ** 2))
        return w * np.cos(spec.omega0 * x + spec.phase)
    raise InvalidParameterError(f"cannot evaluate spec of kind {spec.kind!r}")


def sample(spec: WaveletSpec | PiecewiseConstant, grid: Grid) -> SampledSignal:
    """Sample a generator on a grid; points outside the support are exactly 0."""
    return SampledSignal(grid, evaluate(spec, grid.abscissas()))
