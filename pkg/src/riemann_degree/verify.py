"""Independent checks: common-zero certification and an area-integral degree.

``certify_no_common_zeros`` subdivides the square around a disk and proves
on each box that ``f`` or ``g`` is bounded away from 0, using the centred
enclosure ``|p(z)| >= |p(m)| - Lip * r``.

``degree_via_area_integral`` measures the signed area swept by ``R`` over
the two hemispherical charts ``|z| <= 1`` and ``|1/z| <= 1``.  It shares no
code with the winding-number routes and serves as their oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .bipoly import BiPoly
from .errors import CertificationBudgetExceeded, CommonZeroSuspected, GridPointSingular

Evaluable = Union[BiPoly, Callable]


@dataclass(frozen=True)
class Box2:
    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float

    def __post_init__(self):
        if not (self.x_lo <= self.x_hi and self.y_lo <= self.y_hi):
            raise ValueError(f"empty box {self}")

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.x_lo + self.x_hi), 0.5 * (self.y_lo + self.y_hi))

    @property
    def half_diagonal(self) -> float:
        return 0.5 * math.hypot(self.x_hi - self.x_lo, self.y_hi - self.y_lo)

    def contains(self, w: complex) -> bool:
        return self.x_lo <= w.real <= self.x_hi and self.y_lo <= w.imag <= self.y_hi


@dataclass(frozen=True)
class RangeBound:
    lower: float

    @property
    def certifies(self) -> bool:
        return self.lower > 0


def _lipschitz(p: BiPoly, rho: np.ndarray) -> np.ndarray:
    out = np.zeros_like(rho)
    for (i, j), c in p.terms.items():
        k = i + j
        if k:
            out = out + k * abs(c) * rho ** (k - 1)
    return out


def _enclosures(f: BiPoly, g: BiPoly, boxes: np.ndarray):
    """Lower bounds of ``max(|f|, |g|)`` for boxes given as rows (x0, x1, y0, y1)."""
    cx = 0.5 * (boxes[:, 0] + boxes[:, 1])
    cy = 0.5 * (boxes[:, 2] + boxes[:, 3])
    r = 0.5 * np.hypot(boxes[:, 1] - boxes[:, 0], boxes[:, 3] - boxes[:, 2])
    rho = np.hypot(np.maximum(np.abs(boxes[:, 0]), np.abs(boxes[:, 1])),
                   np.maximum(np.abs(boxes[:, 2]), np.abs(boxes[:, 3])))
    m = cx + 1j * cy
    lf = np.abs(f(m)) - _lipschitz(f, rho) * r
    lg = np.abs(g(m)) - _lipschitz(g, rho) * r
    return np.maximum(lf, lg)


def range_bound(f: BiPoly, g: BiPoly, box: Box2) -> RangeBound:
    lb = _enclosures(f, g, np.array([[box.x_lo, box.x_hi, box.y_lo, box.y_hi]]))[0]
    return RangeBound(max(float(lb), 0.0))


def _meets_disk(boxes: np.ndarray, radius: float) -> np.ndarray:
    dx = np.maximum(np.maximum(boxes[:, 0], -boxes[:, 1]), 0.0)
    dy = np.maximum(np.maximum(boxes[:, 2], -boxes[:, 3]), 0.0)
    return np.hypot(dx, dy) <= radius


def certify_no_common_zeros(f: BiPoly, g: BiPoly, radius: float, min_box: float = 1e-6,
                            max_boxes: int = 2_000_000) -> bool:
    """Prove that ``f`` and ``g`` have no common zero in ``|z| <= radius``.

    Boxes are processed level by level in a fixed order, so the box reported
    by a failure is reproducible.  Raises :class:`CommonZeroSuspected` with
    the first box that shrinks below ``min_box`` uncertified, and
    :class:`CertificationBudgetExceeded` after ``max_boxes`` box evaluations.
    """
    if not radius > 0:
        raise ValueError("radius must be positive")
    f, g = f.to_float(), g.to_float()
    boxes = np.array([[-radius, radius, -radius, radius]], dtype=float)
    used = 0
    while len(boxes):
        used += len(boxes)
        if used > max_boxes:
            b = boxes[0]
            raise CertificationBudgetExceeded(
                f"gave up after {max_boxes} boxes", Box2(*map(float, b)))
        lb = _enclosures(f, g, boxes)
        pending = boxes[~(lb > 0)]
        if not len(pending):
            return True
        side = np.maximum(pending[:, 1] - pending[:, 0], pending[:, 3] - pending[:, 2])
        small = side <= min_box
        if small.any():
            b = Box2(*map(float, pending[int(np.argmax(small))]))
            raise CommonZeroSuspected(
                f"f and g may share a zero in [{b.x_lo:.9g}, {b.x_hi:.9g}] x "
                f"[{b.y_lo:.9g}, {b.y_hi:.9g}]", b)
        xm = 0.5 * (pending[:, 0] + pending[:, 1])
        ym = 0.5 * (pending[:, 2] + pending[:, 3])
        x0, x1, y0, y1 = pending.T
        children = np.stack([
            np.stack([x0, xm, y0, ym], axis=1),
            np.stack([xm, x1, y0, ym], axis=1),
            np.stack([x0, xm, ym, y1], axis=1),
            np.stack([xm, x1, ym, y1], axis=1),
        ], axis=1).reshape(-1, 4)
        boxes = children[_meets_disk(children, radius)]
    return True


# -- area-integral oracle ------------------------------------------------------

def _sphere_point(fv: np.ndarray, gv: np.ndarray) -> np.ndarray:
    """Point of the unit sphere with stereographic coordinate ``f/g``.

    ``0`` goes to the north pole and ``infinity`` to the south pole, which
    makes the identity map orientation preserving.  No division by ``g``.
    """
    s = np.maximum(np.abs(fv), np.abs(gv))
    s = np.where(s > 0, s, 1.0)
    a, b = fv / s, gv / s
    prod = a * np.conj(b)
    na, nb = np.abs(a) ** 2, np.abs(b) ** 2
    den = na + nb
    return np.stack([2 * prod.real / den, 2 * prod.imag / den, (nb - na) / den])


def _chart_integral(f: Callable, g: Callable, to_z: Callable, grid: int, offset: float) -> float:
    dr = 1.0 / grid
    dt = 2 * math.pi / grid
    r = (np.arange(grid) + 0.5) * dr
    t = (np.arange(grid) + 0.5 + offset) * dt
    rr, tt = np.meshgrid(r, t, indexing="ij")

    w = rr * np.exp(1j * tt)

    def phi(pts):
        z = to_z(pts)
        fv = np.asarray(f(z), dtype=complex)
        gv = np.asarray(g(z), dtype=complex)
        if np.any(np.maximum(np.abs(fv), np.abs(gv)) < 1e-9):
            raise GridPointSingular("a grid point lies on a common near-zero of f and g")
        return _sphere_point(fv, gv)

    h = dr / 2
    p0 = phi(w)
    d_x = (phi(w + h) - phi(w - h)) / (2 * h)
    d_y = (phi(w + 1j * h) - phi(w - 1j * h)) / (2 * h)
    jac = np.einsum("i...,i...->...", np.cross(d_x, d_y, axis=0), p0)
    return float((jac * rr).sum() * dr * dt)


def _solid_angles(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Signed areas of the geodesic triangles with unit-vector vertices a, b, c."""
    num = np.einsum("i...,i...->...", a, np.cross(b, c, axis=0))
    den = 1.0 + np.einsum("i...,i...->...", a, b) + np.einsum("i...,i...->...", b, c) \
        + np.einsum("i...,i...->...", c, a)
    return 2.0 * np.arctan2(num, den)


def _polar_mesh_area(images: np.ndarray, centre: np.ndarray) -> float:
    """Signed solid angle of the polar mesh with vertex images ``images``.

    ``images[i, j]`` is the image of the vertex on ring ``i`` at angle ``j``;
    the innermost ring is fanned to ``centre``.  Angles wrap around.
    """
    nxt = np.roll(images, -1, axis=1)
    total = _solid_angles(np.broadcast_to(centre[:, None], images[0].T.shape),
                          images[0].T, nxt[0].T).sum()
    a, b, a1, b1 = images[:-1], images[1:], nxt[:-1], nxt[1:]
    flat = lambda x: x.reshape(-1, 3).T
    total += _solid_angles(flat(a), flat(b), flat(b1)).sum()
    total += _solid_angles(flat(a), flat(b1), flat(a1)).sum()
    return float(total)


def _loop_winding(*corners: np.ndarray) -> np.ndarray:
    """Discrete winding number of the closed polygons through ``corners``."""
    turn = sum(np.angle(corners[(k + 1) % len(corners)] * np.conj(corners[k]))
               for k in range(len(corners)))
    return np.rint(turn / (2 * math.pi)).astype(int)


def _cell_corners(v: np.ndarray, centre):
    """Corner arrays of the fan cells and of the quads, in mesh orientation."""
    vn = np.roll(v, -1, axis=1)
    return (centre, v[0], vn[0]), (v[:-1], v[1:], vn[1:], vn[:-1])


def _cells_to_refine(images: np.ndarray, centre: np.ndarray, max_chord: float) -> np.ndarray:
    """Mask over cells (row 0 = centre fan) with corner images farther apart than ``max_chord``."""
    fan, quad = _cell_corners(images, centre)
    out = []
    for corners in (fan, quad):
        span = 0.0
        for i in range(len(corners)):
            for j in range(i + 1, len(corners)):
                span = np.maximum(span, np.linalg.norm(corners[i] - corners[j], axis=-1))
        out.append(np.atleast_2d(span))
    return np.concatenate(out) > max_chord


def _wrap_counts(images, centre_img, fv, gv, centre_fg) -> np.ndarray:
    """Number of times each cell's image wraps the whole sphere.

    The corners of a resolved cell map close to some point ``p``, and the
    geodesic triangles only account for that neighbourhood.  The part of the
    image the corners cannot see is the preimages of the antipode ``q`` of
    ``p``; their signed count is the winding of ``f - q*g`` around the cell.
    A steep pole or zero hidden inside a single cell is caught this way.
    Without values at the centre (``centre_fg=None``) the fan counts as 0.
    """
    cf, cg = (None, None) if centre_fg is None else centre_fg
    rows = []
    for k, corners in enumerate(_cell_corners(images, centre_img)):
        if k == 0 and centre_fg is None:
            rows.append(np.zeros((1, images.shape[1]), dtype=int))
            continue
        x, y, zc = np.moveaxis(sum(corners), -1, 0)
        nrm = np.sqrt(x * x + y * y + zc * zc)
        x, y, zc = x / nrm, y / nrm, zc / nrm
        # projective coordinates (num : den) of q, never both zero
        south = zc <= 0
        num = np.where(south, -(x + 1j * y), 1 + zc)
        den = np.where(south, 1 - zc, -x + 1j * y)
        fk = _cell_corners(fv, cf)[k]
        gk = _cell_corners(gv, cg)[k]
        rows.append(np.atleast_2d(_loop_winding(*(den * a - num * b for a, b in zip(fk, gk)))))
    return np.concatenate(rows)


def _simplicial_degree(f: Callable, g: Callable, grid: int, offset: float,
                       max_chord: float = 0.5, max_rounds: int = 12,
                       max_vertices: int = 4_000_000) -> float:
    def values(z):
        fv = np.asarray(f(z), dtype=complex)
        gv = np.asarray(g(z), dtype=complex)
        if np.any(np.maximum(np.abs(fv), np.abs(gv)) < 1e-9):
            raise GridPointSingular("a grid vertex lies on a common near-zero of f and g")
        return fv, gv

    def image(fv, gv):
        return np.moveaxis(_sphere_point(fv, gv), 0, -1)

    def unit(v):
        return v / np.linalg.norm(v)

    t = 2 * math.pi * (np.arange(grid) + offset) / grid
    f0, g0 = values(np.zeros(1, dtype=complex))
    origin = image(f0, g0)[0]

    # chart 0 is |z| <= 1, chart 1 is |w| <= 1 with z = 1/w; w runs clockwise
    # in t so both boundary rings are the same points of |z| = 1.  Extra
    # geometric rings shrink the fan at infinity, where f and g have no values.
    to_z = (lambda r, t: r[:, None] * np.exp(1j * t)[None, :],
            lambda r, t: np.exp(1j * t)[None, :] / r[:, None])
    uniform = np.arange(1, grid + 1) / grid
    rings = [uniform, np.concatenate([uniform[0] * 2.0 ** -np.arange(30, 0, -1), uniform])]
    fg = [values(to_z[k](rings[k], t)) for k in range(2)]

    for _ in range(max_rounds):
        infinity = unit(image(*fg[1])[0].mean(axis=0))
        refine_t = np.zeros(len(t), dtype=bool)
        refine_r = []
        for k, centre in enumerate((origin, infinity)):
            bad = _cells_to_refine(image(*fg[k]), centre, max_chord)
            refine_r.append(bad.any(axis=1))
            refine_t |= bad.any(axis=0)
        if not refine_t.any() and not any(r.any() for r in refine_r):
            break
        if sum(len(r) for r in rings) * len(t) > max_vertices:
            break
        new_t = 0.5 * (t + np.append(t[1:], t[0] + 2 * math.pi))[refine_t]
        t_all = np.concatenate([t, new_t])
        t_order = np.argsort(t_all)
        for k in range(2):
            lower = np.concatenate([[0.0], rings[k][:-1]])
            new_r = 0.5 * (lower + rings[k])[refine_r[k]]
            r_all = np.concatenate([rings[k], new_r])
            r_order = np.argsort(r_all)
            rows = values(to_z[k](new_r, t))
            cols = values(to_z[k](r_all, new_t))
            fg[k] = tuple(
                np.concatenate([np.concatenate([old, row])[r_order], col[r_order]], axis=1)[:, t_order]
                for old, row, col in zip(fg[k], rows, cols)
            )
            rings[k] = r_all[r_order]
        t = t_all[t_order]

    infinity = unit(image(*fg[1])[0].mean(axis=0))
    total = 0.0
    # The outer chart w = 1/z reverses orientation in these coordinates.
    for sign, (fv, gv), centre, centre_fg in ((1, fg[0], origin, (f0[0], g0[0])),
                                               (-1, fg[1], infinity, None)):
        images = image(fv, gv)
        wraps = _wrap_counts(images, centre, fv, gv, centre_fg).sum()
        total += sign * (_polar_mesh_area(images, centre) + 4 * math.pi * wraps)
    return float(total / (4 * math.pi))


def degree_via_area_integral(f: Evaluable, g: Evaluable, grid: int = 400, retries: int = 3,
                             method: str = "simplicial") -> float:
    """Signed area of the image of ``R = f/g`` divided by ``4*pi``.

    Both charts ``|z| <= 1`` and ``|1/z| <= 1`` start from a uniform polar
    grid of ``grid x grid`` cells.  ``method="simplicial"`` (default) sums the
    exact signed spherical areas of the images of the grid triangles, which
    stays accurate when ``R`` is continuous but not differentiable at
    infinity.  Whole rings and angular columns are bisected until every
    cell's corner images lie within a chord of 0.5, so the mesh stays closed,
    and each cell adds the full-sphere wraps its corners cannot see (see
    :func:`_wrap_counts`).  The result is an integer up to rounding.

    ``method="jacobian"`` is midpoint quadrature of the pulled-back area form
    with central differences of half the cell size; it needs ``R`` smooth on
    both charts and features larger than a cell.  A grid that hits a common
    near-zero is rotated and retried.
    """
    if method not in ("simplicial", "jacobian"):
        raise ValueError(f"unknown method {method!r}")
    for attempt in range(retries + 1):
        offset = 0.5 * attempt / (retries + 1)
        try:
            if method == "simplicial":
                return _simplicial_degree(f, g, grid, offset)
            inner = _chart_integral(f, g, lambda w: w, grid, offset)
            outer = _chart_integral(f, g, lambda w: 1.0 / w, grid, offset)
            return (inner + outer) / (4 * math.pi)
        except GridPointSingular:
            if attempt == retries:
                raise
    raise AssertionError("unreachable")
