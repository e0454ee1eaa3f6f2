"""Degree of a sphere map ``R = f / g``.

Two routes are available:

* symbolic, for polynomials in z and zbar: when ``deg f > deg g`` the degree
  is the number of roots of ``z**d * T(z, 1/z)`` in the unit disk minus
  ``d``, where ``T`` is the top homogeneous part of ``f`` and ``d = deg f``;
* numeric: the winding number of ``phi -> f(M exp(i phi))`` for a radius
  ``M`` beyond which ``f`` has no zeros and ``f/g`` tends to infinity.

Pairs that do not satisfy ``deg f > deg g`` are first rewritten as an
equivalent pair that does, by post-composing with ``w -> 1/w`` or with
``w -> 1/(w - c)``.  Both are degree-one automorphisms of the sphere, so
the degree is unchanged.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Union

import numpy as np

from .bipoly import BiPoly, GaussianRational, UniPoly, associated_poly, homogeneous_coeff_norms, top_component
from .disk_roots import count_roots_in_disk
from .errors import (
    CertificationBudgetExceeded,
    LimitDoesNotExist,
    RootOnCircle,
    TDominanceFailure,
    WindingError,
)
from .winding import WindingConfig, circle_loop, resolve

log = logging.getLogger(__name__)

Evaluable = Union[BiPoly, Callable]

_PROPORTIONAL_RTOL = 1e-9
_MAX_DOUBLINGS = 200


class Method(str, Enum):
    THEOREM2 = "theorem2"
    THEOREM2_AFTER_INVERSION = "theorem2_after_inversion"
    THEOREM2_AFTER_MOBIUS = "theorem2_after_mobius"
    NUMERIC_WINDING = "numeric_winding"
    CONSTANT_MAP = "constant_map"


@dataclass(frozen=True)
class MapSpec:
    f: Evaluable
    g: Evaluable
    kind: str = "polynomial"
    radius_override: float | None = None

    def __post_init__(self):
        if self.kind not in ("polynomial", "sampled"):
            raise ValueError(f"unknown map kind {self.kind!r}")
        if self.radius_override is not None and not self.radius_override > 0:
            raise ValueError("radius must be positive")
        if self.kind == "polynomial":
            if not (isinstance(self.f, BiPoly) and isinstance(self.g, BiPoly)):
                raise TypeError("polynomial maps need BiPoly numerator and denominator")
            if self.f.is_zero() and self.g.is_zero():
                raise ValueError("f and g are both identically zero")
        elif self.radius_override is None:
            raise ValueError("sampled maps need an explicit radius")

    @classmethod
    def polynomial(cls, f: BiPoly, g: BiPoly, radius: float | None = None) -> "MapSpec":
        return cls(f, g, "polynomial", radius)

    @classmethod
    def sampled(cls, f: Callable, g: Callable, radius: float) -> "MapSpec":
        return cls(f, g, "sampled", radius)


@dataclass
class Diagnostics:
    min_T_on_circle: float | None = None
    winding_refinement_depth: int = 0
    mobius_constant: complex | None = None
    common_zero_certified: bool | None = None
    oracle_value: float | None = None
    notes: list[str] = field(default_factory=list)


@dataclass
class DegreeReport:
    degree: int
    method: Method
    d: int | None = None
    M: float | None = None
    roots_inside: int | None = None
    tilde_T: UniPoly | None = None
    diagnostics: Diagnostics = field(default_factory=Diagnostics)


@dataclass(frozen=True)
class MobiusRecord:
    constant: complex | GaussianRational


# -- building blocks -----------------------------------------------------------

def dominance_radius(f: BiPoly, t: BiPoly | None = None, min_t: float | None = None,
                     config: WindingConfig | None = None) -> float:
    """Smallest ``M = 2**k`` (k >= 0) with ``m_T * M**d > sum_{j<d} C_j * M**j``.

    ``m_T`` is a certified lower bound of ``|T|`` on the unit circle and
    ``C_j`` the coefficient norms of the lower homogeneous parts of ``f``.
    Since ``sum C_j r**(j-d)`` decreases in ``r``, the inequality then holds
    for every ``|z| >= M``, so ``|T(z)| > |f(z) - T(z)|`` and ``f(z) != 0``.
    """
    if t is None:
        t = top_component(f)
    d = t.degree
    if min_t is None:
        min_t = tilde_min_on_circle(t, config)
    if not min_t > 0:
        raise TDominanceFailure("top homogeneous part vanishes on the unit circle")
    lower = [(j, c) for j, c in homogeneous_coeff_norms(f) if j < d]
    m = 1.0
    for _ in range(_MAX_DOUBLINGS):
        if min_t * m ** d > sum(c * m ** j for j, c in lower):
            return m
        m *= 2.0
    raise TDominanceFailure("no dominance radius found")


def tilde_min_on_circle(t: BiPoly, config: WindingConfig | None = None) -> float:
    try:
        return count_roots_in_disk(associated_poly(t), config).min_modulus_on_circle
    except RootOnCircle as exc:
        raise TDominanceFailure(
            f"the top homogeneous part {t} has a zero on the unit circle ({exc}); "
            "the symbolic formula does not apply"
        ) from exc


def _proportionality(tf: BiPoly, tg: BiPoly):
    """Return ``c`` with ``tf == c * tg``, or ``None``."""
    if set(tf.terms) != set(tg.terms):
        return None
    key = max(tg.terms, key=lambda k: abs(tg.terms[k]))
    c = tf.terms[key] / tg.terms[key]
    if tf.is_exact() and tg.is_exact():
        ok = all(tf.terms[k] == c * tg.terms[k] for k in tg.terms)
    else:
        ok = all(
            abs(complex(tf.terms[k]) - complex(c) * complex(tg.terms[k]))
            <= _PROPORTIONAL_RTOL * abs(complex(tf.terms[k]))
            for k in tg.terms
        )
    return c if ok else None


def mobius_reduce(f: BiPoly, g: BiPoly) -> tuple[BiPoly, BiPoly, MobiusRecord]:
    """For ``deg f == deg g`` with proportional tops ``T_f = c*T_g``, return
    ``(g, f - c*g)``: the map ``1/(R - c)``, whose numerator has strictly
    larger degree than its denominator.
    """
    if f.degree != g.degree or f.is_zero():
        raise ValueError("mobius_reduce needs nonzero f and g of equal degree")
    c = _proportionality(top_component(f), top_component(g))
    if c is None:
        raise LimitDoesNotExist(
            f"top components {top_component(f)} and {top_component(g)} are not proportional, "
            "so f/g has no limit at infinity and R does not extend to the sphere"
        )
    rest = f - c * g
    if rest.degree >= g.degree and not rest.is_zero():
        # floating proportionality within tolerance: drop the leftover top terms
        d = g.degree
        rest = BiPoly({k: v for k, v in rest.terms.items() if sum(k) < d})
    return g, rest, MobiusRecord(c)


def _as_sampler(f: Evaluable) -> Callable:
    return f if not isinstance(f, BiPoly) else f.__call__


def _lipschitz_on_circle(f: BiPoly, radius: float) -> float:
    # d/dphi of c * (M e^{i phi})^p (M e^{-i phi})^q has modulus |p - q| |c| M^(p+q)
    return float(sum(abs(p - q) * abs(c) * radius ** (p + q) for (p, q), c in f.terms.items()))


def numeric_degree(f: Evaluable, g: Evaluable | None, radius: float,
                   config: WindingConfig | None = None) -> DegreeReport:
    """Winding number of ``phi -> f(radius * exp(i phi))``.

    Only the circle ``|z| = radius`` is inspected; that ``f`` has no zeros
    outside it and that ``f/g -> infinity`` are the caller's obligations.
    """
    lip = _lipschitz_on_circle(f, radius) if isinstance(f, BiPoly) else None
    loop = circle_loop(_as_sampler(f), radius, config, lipschitz=lip)
    try:
        res = resolve(loop)
    except WindingError as exc:
        exc.args = (f"{exc} (on |z| = {radius}; try a larger radius M)",)
        raise
    diag = Diagnostics(winding_refinement_depth=res.depth)
    if g is not None:
        gv = np.asarray(_as_sampler(g)(radius * np.exp(1j * loop.phis)), dtype=complex)
        fv = np.abs(loop.values)
        if np.any(np.abs(gv) <= 1e-9 * np.maximum(fv, 1.0)):
            msg = f"denominator nearly vanishes on |z| = {radius}"
            log.warning(msg)
            diag.notes.append(msg)
    d = f.degree if isinstance(f, BiPoly) else None
    return DegreeReport(res.index, Method.NUMERIC_WINDING, d=d, M=radius, diagnostics=diag)


def theorem2_degree(f: BiPoly, config: WindingConfig | None = None) -> DegreeReport:
    """Degree of ``f/g`` for any ``g`` with ``deg g < deg f``."""
    t = top_component(f)
    tilde = associated_poly(t)
    try:
        rc = count_roots_in_disk(tilde, config)
    except RootOnCircle as exc:
        raise TDominanceFailure(
            f"z^d T(z, 1/z) = {tilde} has a root on the unit circle; "
            "the top homogeneous part of the numerator does not dominate"
        ) from exc
    d = f.degree
    m = dominance_radius(f, t, rc.min_modulus_on_circle)
    diag = Diagnostics(min_T_on_circle=rc.min_modulus_on_circle,
                       winding_refinement_depth=rc.refinement_depth)
    return DegreeReport(rc.inside - d, Method.THEOREM2, d=d, M=m, roots_inside=rc.inside,
                        tilde_T=tilde, diagnostics=diag)


# -- dispatch ------------------------------------------------------------------

@dataclass(frozen=True)
class Reduced:
    """A pair rewritten so that ``deg numerator > deg denominator``."""

    numerator: BiPoly | None
    denominator: BiPoly | None
    method: Method
    mobius_constant: complex | GaussianRational | None = None


def reduce_pair(f: BiPoly, g: BiPoly) -> Reduced:
    if f.is_zero() or g.is_zero():
        return Reduced(None, None, Method.CONSTANT_MAP)
    if f.degree > g.degree:
        return Reduced(f, g, Method.THEOREM2)
    if g.degree > f.degree:
        return Reduced(g, f, Method.THEOREM2_AFTER_INVERSION)
    num, den, rec = mobius_reduce(f, g)
    if den.is_zero():
        return Reduced(None, None, Method.CONSTANT_MAP, rec.constant)
    return Reduced(num, den, Method.THEOREM2_AFTER_MOBIUS, rec.constant)


def common_zero_radius(f: BiPoly, g: BiPoly, config: WindingConfig | None = None) -> float | None:
    """A radius outside which ``f`` or ``g`` has no zeros, or ``None`` if
    neither top component dominates its lower terms."""
    radii = []
    for p in (f, g):
        if p.degree < 1:
            continue
        try:
            radii.append(dominance_radius(p, config=config))
        except TDominanceFailure:
            pass
    return min(radii) if radii else None


def certify_hypothesis(f: BiPoly, g: BiPoly, config: WindingConfig | None = None,
                       **certify_kwargs) -> bool | None:
    """Check that ``f`` and ``g`` have no common zero anywhere in the plane.

    Returns ``True`` when certified and ``None`` when no certificate could be
    produced (either no dominance radius exists or the box budget ran out).
    Raises :class:`CommonZeroSuspected` when subdivision closes in on a point.
    """
    from .verify import certify_no_common_zeros

    if f.is_zero() or g.is_zero():
        return True
    if f.degree == 0 or g.degree == 0:
        return True
    radius = common_zero_radius(f, g, config)
    if radius is None:
        log.warning("no radius bounds the zeros of f or g; common zeros not checked")
        return None
    try:
        return certify_no_common_zeros(f, g, radius, **certify_kwargs)
    except CertificationBudgetExceeded as exc:
        log.warning("common-zero certification inconclusive: %s", exc)
        return None


def degree_of(spec: MapSpec, method: str = "auto", check_common_zeros: bool = False,
              config: WindingConfig | None = None, **certify_kwargs) -> DegreeReport:
    """Topological degree of ``R = f/g`` as a self-map of the Riemann sphere.

    ``method`` is ``"auto"`` (symbolic first, numeric fallback when a radius
    was supplied), ``"theorem2"`` (symbolic only) or ``"numeric"``.
    """
    if method not in ("auto", "theorem2", "numeric"):
        raise ValueError(f"unknown method {method!r}")
    if spec.kind == "sampled":
        if method == "theorem2":
            raise ValueError("the symbolic route needs polynomial input")
        return numeric_degree(spec.f, spec.g, spec.radius_override, config)

    f, g = spec.f, spec.g
    certified = None
    if check_common_zeros:
        certified = certify_hypothesis(f, g, config, **certify_kwargs)

    red = reduce_pair(f, g)
    if red.method is Method.CONSTANT_MAP:
        report = DegreeReport(0, Method.CONSTANT_MAP, d=max(f.degree, g.degree))
    elif method == "numeric":
        report = _numeric_on(red, spec.radius_override, config)
    else:
        try:
            report = theorem2_degree(red.numerator, config)
            report.method = red.method
        except TDominanceFailure as exc:
            if method == "theorem2" or spec.radius_override is None:
                raise
            log.info("falling back to the numeric route: %s", exc)
            report = _numeric_on(red, spec.radius_override, config)
            report.diagnostics.notes.append(f"symbolic route unavailable: {exc}")
    report.diagnostics.mobius_constant = (
        complex(red.mobius_constant) if red.mobius_constant is not None else None
    )
    report.diagnostics.common_zero_certified = certified
    return report


def _numeric_on(red: Reduced, radius: float | None, config) -> DegreeReport:
    if radius is None:
        radius = dominance_radius(red.numerator, config=config)
    return numeric_degree(red.numerator, red.denominator, radius, config)
