"""Counting polynomial roots in the open unit disk.

The count is the winding number of ``phi -> p(exp(i phi))`` (argument
principle), computed by :mod:`riemann_degree.winding` with the Lipschitz
constant ``sum k*|c_k|`` so the count and the lower bound on ``|p|`` over the
circle are both certified.  :func:`find_all_roots` is an independent
Durand-Kerner root finder used as an oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bipoly import UniPoly
from .errors import LoopTooCloseToZero, NoConvergence, RootOnCircle, UnresolvedLoop, ZeroPolynomial
from .winding import SampledLoop, WindingConfig, resolve

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class RootCount:
    inside: int
    on_circle_detected: bool
    min_modulus_on_circle: float
    refinement_depth: int = 0


def count_roots_in_disk(p: UniPoly, config: WindingConfig | None = None) -> RootCount:
    """Number of roots of ``p`` with modulus < 1, with multiplicity.

    Raises :class:`RootOnCircle` when ``|p|`` cannot be certified positive on
    the unit circle within the refinement limit.
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot count roots of the zero polynomial")
    coeffs = p.as_array()
    if p.degree == 0:
        return RootCount(0, False, float(abs(coeffs[0])))

    lip = p.derivative_bound_on_circle()
    loop = SampledLoop(lambda phi: p(np.exp(1j * phi)), config or WindingConfig(), lipschitz=lip)
    try:
        res = resolve(loop)
    except LoopTooCloseToZero as exc:
        raise RootOnCircle(f"|p| = {exc.modulus:.3e} at angle {exc.phi:.6f} on the unit circle",
                           exc.phi) from exc
    except UnresolvedLoop as exc:
        raise RootOnCircle(f"|p| not certified positive near angle {exc.phi:.6f} on the unit circle",
                           exc.phi) from exc
    if res.certified_min_modulus <= 0:
        raise RootOnCircle("lower bound of |p| on the unit circle is not positive")
    return RootCount(res.index, False, res.certified_min_modulus, res.depth)


def find_all_roots(p: UniPoly, max_iter: int = 1000, tol: float = 1e-8) -> list[complex]:
    """All ``degree`` roots of ``p`` by simultaneous Weierstrass iteration.

    Exact zero low-order coefficients are split off as roots at 0 first.
    Residuals are measured on ``p`` scaled to unit max coefficient.
    """
    if p.degree < 1:
        raise ValueError("need a polynomial of degree >= 1")
    c = p.as_array()
    c = c / np.max(np.abs(c))
    shift = int(np.argmax(c != 0))
    zeros_at_origin = [0j] * shift
    c = c[shift:]
    n = len(c) - 1
    if n == 0:
        return zeros_at_origin

    monic = c / c[-1]
    radius = max(1.0, 2.0 * float(np.max(np.abs(monic[:-1]))))
    z = radius * np.exp(2j * math.pi * _GOLDEN * np.arange(n) + 0.25j)

    def horner(x):
        out = np.zeros_like(x)
        for a in monic[::-1]:
            out = out * x + a
        return out

    for _ in range(max_iter):
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        step = horner(z) / np.prod(diff, axis=1)
        z = z - step
        if np.all(np.abs(step) <= 1e-14 * (1.0 + np.abs(z))):
            break

    def residual(x):
        out = np.zeros_like(x)
        for a in c[::-1]:
            out = out * x + a
        return np.abs(out) / (1.0 + np.abs(x)) ** n

    if not np.all(np.isfinite(z)) or np.any(residual(z) >= tol):
        raise NoConvergence(f"Weierstrass iteration did not converge in {max_iter} steps")
    return zeros_at_origin + [complex(x) for x in z]


def cluster_roots(roots, tol: float = 1e-6) -> list[tuple[complex, int]]:
    """Group roots closer than ``tol`` into ``(mean, multiplicity)`` pairs.

    Heuristic: clusters are grown greedily by single linkage.
    """
    remaining = list(roots)
    out = []
    while remaining:
        group = [remaining.pop(0)]
        grew = True
        while grew:
            grew = False
            for r in list(remaining):
                if any(abs(r - g) < tol for g in group):
                    group.append(r)
                    remaining.remove(r)
                    grew = True
        out.append((complex(np.mean(group)), len(group)))
    return out
