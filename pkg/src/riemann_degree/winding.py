"""Winding numbers about 0 of sampled closed loops.

The index is accumulated from principal argument increments between
consecutive samples.  Arcs whose increment is not clearly below a quarter
turn are bisected until every increment is, so each one is taken on the
right branch of ``arg`` provided the loop does not wind around 0 faster
than the sampling can see.  That proviso cannot be checked from samples of
an arbitrary continuous loop.  When a Lipschitz constant of the loop (as a
function of the angle) is known, it is used to make the refinement
rigorous: an arc of length ``h`` is accepted only once ``L*h`` is below the
modulus at one of its endpoints, so the whole arc provably stays in a disk
that excludes 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import LoopTooCloseToZero, NonIntegerIndex, OpenLoop, UnresolvedLoop

TWO_PI = 2.0 * math.pi
QUARTER_TURN = math.pi / 2

Sampler = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class WindingConfig:
    initial_samples: int = 256
    min_modulus: float = 1e-12
    max_depth: int = 30
    integer_tol: float = 1e-6
    closure_tol: float = 1e-9

    def __post_init__(self):
        if self.initial_samples < 3:
            raise ValueError("need at least 3 initial samples")
        if self.min_modulus <= 0:
            raise ValueError("min_modulus must be positive")
        if self.max_depth < 0:
            raise ValueError("max_depth must be nonnegative")


@dataclass
class SampledLoop:
    """A closed loop ``phi -> sampler(phi)`` on ``[0, 2*pi]``.

    ``sampler`` should accept a numpy array of angles; scalar-only callables
    are wrapped automatically.  ``lipschitz``, when given, must bound
    ``|d sampler / d phi|``.
    """

    sampler: Callable
    config: WindingConfig = field(default_factory=WindingConfig)
    lipschitz: float | None = None
    phis: np.ndarray | None = field(default=None, repr=False)
    values: np.ndarray | None = field(default=None, repr=False)

    def sample(self, phis: np.ndarray) -> np.ndarray:
        phis = np.asarray(phis, dtype=float)
        try:
            out = np.asarray(self.sampler(phis), dtype=complex)
        except (TypeError, ValueError):
            out = None
        if out is None or out.shape != phis.shape:
            out = np.array([complex(self.sampler(float(t))) for t in phis], dtype=complex)
        return out


@dataclass(frozen=True)
class WindingResult:
    index: int
    raw: float
    depth: int
    n_samples: int
    min_sample_modulus: float
    certified_min_modulus: float | None


def _check_modulus(phis, vals, min_modulus):
    mods = np.abs(vals)
    bad = ~(mods >= min_modulus)  # also catches nan
    if bad.any():
        k = int(np.argmax(bad))
        raise LoopTooCloseToZero(float(phis[k]), float(mods[k]))


def resolve(loop: SampledLoop) -> WindingResult:
    """Refine ``loop`` until every argument increment is resolved and sum them."""
    cfg = loop.config
    phis = np.linspace(0.0, TWO_PI, cfg.initial_samples + 1)
    vals = loop.sample(phis)
    scale = max(1.0, abs(vals[0]))
    if not abs(vals[-1] - vals[0]) <= cfg.closure_tol * scale:
        raise OpenLoop(f"loop is not closed: |f(2pi) - f(0)| = {abs(vals[-1] - vals[0]):.3e}")
    _check_modulus(phis, vals, cfg.min_modulus)

    depth = 0
    while True:
        mods = np.abs(vals)
        darg = np.angle(vals[1:] * np.conj(vals[:-1]))
        bad = np.abs(darg) >= QUARTER_TURN
        if loop.lipschitz is not None:
            h = np.diff(phis)
            bad |= loop.lipschitz * h >= np.maximum(mods[1:], mods[:-1])
        if not bad.any():
            break
        if depth >= cfg.max_depth:
            k = int(np.argmax(bad))
            raise UnresolvedLoop(float(0.5 * (phis[k] + phis[k + 1])), depth)
        idx = np.nonzero(bad)[0]
        mids = 0.5 * (phis[idx] + phis[idx + 1])
        mid_vals = loop.sample(mids)
        _check_modulus(mids, mid_vals, cfg.min_modulus)
        phis = np.insert(phis, idx + 1, mids)
        vals = np.insert(vals, idx + 1, mid_vals)
        depth += 1

    loop.phis, loop.values = phis, vals
    raw = float(darg.sum() / TWO_PI)
    index = round(raw)
    if abs(raw - index) > cfg.integer_tol:
        raise NonIntegerIndex(raw)

    certified = None
    if loop.lipschitz is not None:
        h = np.diff(phis)
        a, b = mods[:-1], mods[1:]
        lh = loop.lipschitz * h
        per_arc = np.maximum(np.maximum(a, b) - lh, 0.5 * (a + b - lh))
        certified = float(per_arc.min())
    return WindingResult(
        index=int(index),
        raw=raw,
        depth=depth,
        n_samples=len(phis),
        min_sample_modulus=float(mods.min()),
        certified_min_modulus=certified,
    )


def winding_number(loop: SampledLoop) -> int:
    """Index of ``loop`` about the origin."""
    return resolve(loop).index


def winding_integral(loop: SampledLoop, n: int = 4096) -> complex:
    """``(1/2 pi i) * integral of loop'/loop`` by the periodic trapezoid rule.

    The derivative is a central difference with step ``pi / n``.  This is a
    cross-check for :func:`winding_number` and is returned unrounded.
    """
    h = TWO_PI / n
    delta = TWO_PI / (2 * n)
    t = np.arange(n) * h
    vals = loop.sample(t)
    _check_modulus(t, vals, loop.config.min_modulus)
    deriv = (loop.sample(t + delta) - loop.sample(t - delta)) / (2 * delta)
    return complex(np.sum(deriv / vals) * h / (TWO_PI * 1j))


def circle_loop(f: Callable, radius: float = 1.0, config: WindingConfig | None = None,
                lipschitz: float | None = None) -> SampledLoop:
    """The loop ``phi -> f(radius * exp(i phi))``."""
    def sampler(phi):
        return f(radius * np.exp(1j * np.asarray(phi)))

    return SampledLoop(sampler, config or WindingConfig(), lipschitz)
