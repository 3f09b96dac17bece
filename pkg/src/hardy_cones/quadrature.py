"""Composite Gauss-Legendre quadrature with panel bisection.

Integrands are evaluated on a reference variable ``t`` and any change of
variables (power grading toward a singular endpoint, exponential maps for
log-scale profiles) is done by the caller through :class:`IntervalMap`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exceptions import QuadratureError

__all__ = ["QuadResult", "IntervalMap", "gauss_rule", "composite_nodes", "integrate", "tensor_nodes"]

DEFAULT_ORDER = 8
DEFAULT_RTOL = 1e-11
DEFAULT_MAX_LEVEL = 14


@lru_cache(maxsize=32)
def gauss_rule(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def composite_nodes(breaks, order=DEFAULT_ORDER):
    """Nodes and weights of the composite rule over consecutive ``breaks``."""
    breaks = np.asarray(breaks, dtype=float)
    x, w = gauss_rule(order)
    a, b = breaks[:-1, None], breaks[1:, None]
    half = 0.5 * (b - a)
    nodes = (a + b) * 0.5 + half * x[None, :]
    weights = half * w[None, :]
    return nodes.ravel(), weights.ravel()


def _bisect(breaks):
    mids = 0.5 * (breaks[:-1] + breaks[1:])
    out = np.empty(2 * len(breaks) - 1)
    out[0::2] = breaks
    out[1::2] = mids
    return out


@dataclass
class QuadResult:
    value: np.ndarray | float
    error: float  # max over components of |I_k - I_{k-1}| / max(|I_k|, atol)
    nodes: int
    level: int


def integrate(f, breaks, *, order=DEFAULT_ORDER, rtol=DEFAULT_RTOL, atol=1e-300,
              max_level=DEFAULT_MAX_LEVEL, raise_on_fail=True) -> QuadResult:
    """Integrate ``f`` over ``[breaks[0], breaks[-1]]`` to relative ``rtol``.

    ``f`` maps a 1-d array of nodes to values of shape ``(n,)`` or ``(m, n)``
    (``m`` integrals at once).  Every panel is bisected per level until two
    consecutive levels agree; the reported error is that last relative change.
    """
    breaks = np.asarray(breaks, dtype=float)
    prev = None
    for level in range(max_level + 1):
        x, w = composite_nodes(breaks, order)
        val = np.asarray(f(x), dtype=float) @ w
        if prev is not None:
            scale = np.maximum(np.abs(val), atol)
            err = float(np.max(np.abs(val - prev) / scale))
            if err <= rtol:
                return QuadResult(val if val.ndim else float(val), err, x.size, level)
        prev = val
        if level < max_level:
            breaks = _bisect(breaks)
    result = QuadResult(val if val.ndim else float(val), err if max_level > 0 else np.inf, x.size, max_level)
    if raise_on_fail:
        raise QuadratureError(f"quadrature not converged after {max_level} levels (rel. change {result.error:.3g})",
                              partial=result)
    return result


def tensor_nodes(box, panels, order):
    """2-d tensor composite rule on ``box = (x_lo, x_hi, y_lo, y_hi)``."""
    x_lo, x_hi, y_lo, y_hi = box
    xs, wx = composite_nodes(np.linspace(x_lo, x_hi, panels + 1), order)
    ys, wy = composite_nodes(np.linspace(y_lo, y_hi, panels + 1), order)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    W = np.outer(wx, wy)
    return X, Y, W


class IntervalMap:
    """Monotone map ``t in [0, 1] -> r in [lo, hi]`` with its derivative.

    ``kind`` is ``"affine"``, ``"power"`` (``r = lo + (hi-lo) t**k``, for
    power singularities at ``lo``) or ``"exp"`` (``r = lo (hi/lo)**t``, for
    profiles living on a logarithmic scale; needs ``lo > 0``).
    """

    def __init__(self, lo, hi, kind="affine", k=1.0):
        if not hi > lo:
            raise ValueError("need hi > lo")
        if kind == "exp" and not lo > 0:
            raise ValueError("exponential map needs lo > 0")
        self.lo, self.hi, self.kind, self.k = float(lo), float(hi), kind, float(k)

    def __call__(self, t):
        lo, hi = self.lo, self.hi
        if self.kind == "affine":
            return lo + (hi - lo) * t, np.full_like(t, hi - lo)
        if self.kind == "power":
            tk = t ** self.k
            return lo + (hi - lo) * tk, (hi - lo) * self.k * t ** (self.k - 1.0)
        if self.kind == "exp":
            ell = np.log(hi / lo)
            r = lo * np.exp(ell * t)
            return r, ell * r
        raise ValueError(f"unknown map kind {self.kind!r}")

    def integrate(self, g, panels=8, **kw) -> QuadResult:
        """Integrate ``g(r)`` over ``[lo, hi]`` through the map."""
        def f(t):
            r, dr = self(t)
            return g(r) * dr
        return integrate(f, np.linspace(0.0, 1.0, panels + 1), **kw)
