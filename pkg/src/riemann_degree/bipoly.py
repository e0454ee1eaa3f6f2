"""Sparse polynomials in z and conj(z), and dense univariate polynomials.

A :class:`BiPoly` is a finite sum ``sum c[p, q] * z**p * conj(z)**q`` with
complex coefficients.  Coefficients are either Python ``complex`` values
(the default) or exact :class:`GaussianRational` values; the two never mix
inside one polynomial unless the caller mixes them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number
from types import MappingProxyType
from typing import Iterable, Mapping, Union

import numpy as np

from .errors import NotHomogeneous, ZeroPolynomial


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        return cls(Fraction(x))

    def __add__(self, other):
        if not isinstance(other, (GaussianRational, int, Fraction, float, complex)):
            return NotImplemented
        if isinstance(other, complex) or isinstance(other, float):
            return complex(self) + other
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, (GaussianRational, int, Fraction, float, complex)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, (GaussianRational, int, Fraction, float, complex)):
            return NotImplemented
        if isinstance(other, complex) or isinstance(other, float):
            return complex(self) * other
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (GaussianRational, int, Fraction, float, complex)):
            return NotImplemented
        if isinstance(other, complex) or isinstance(other, float):
            return complex(self) / other
        o = GaussianRational.coerce(other)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * GaussianRational(o.re / n, -o.im / n)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __abs__(self) -> float:
        return abs(complex(self))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, Number):
            try:
                return self == GaussianRational.coerce(other)
            except (TypeError, ValueError, OverflowError):
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


Coeff = Union[complex, GaussianRational]
Bidegree = tuple[int, int]


def _conj(c):
    return c.conjugate()


def _as_coeff(c):
    if isinstance(c, GaussianRational):
        return c
    if isinstance(c, Fraction):
        return GaussianRational(c)
    if isinstance(c, int):
        return int(c)  # integers stay neutral between float and exact mode
    return complex(c)


class BiPoly:
    """Immutable sparse polynomial in the commuting symbols z and zbar.

    ``terms`` maps a bidegree ``(p, q)`` to the coefficient of
    ``z**p * zbar**q``.  Exact zeros are dropped on construction; nothing
    else is pruned.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Bidegree, Coeff] | Iterable[tuple[Bidegree, Coeff]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Bidegree, Coeff] = {}
        for (p, q), c in items:
            p, q = int(p), int(q)
            if p < 0 or q < 0:
                raise ValueError(f"negative exponent in bidegree {(p, q)}")
            c = _as_coeff(c)
            acc[(p, q)] = acc[(p, q)] + c if (p, q) in acc else c
        self._terms = MappingProxyType({k: v for k, v in sorted(acc.items()) if v != 0})
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls) -> "BiPoly":
        return cls()

    @classmethod
    def const(cls, c: Coeff) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def z(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def zbar(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    @classmethod
    def monomial(cls, p: int, q: int, c: Coeff = 1) -> "BiPoly":
        return cls({(p, q): c})

    # -- structure --------------------------------------------------------

    @property
    def terms(self) -> Mapping[Bidegree, Coeff]:
        return self._terms

    @property
    def degree(self) -> int:
        """Total degree ``max(p + q)``; ``-1`` for the zero polynomial."""
        return max((p + q for p, q in self._terms), default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def is_exact(self) -> bool:
        return not any(isinstance(c, complex) for c in self._terms.values())

    def is_homogeneous(self) -> bool:
        return len({p + q for p, q in self._terms}) <= 1

    def to_float(self) -> "BiPoly":
        return BiPoly({k: complex(c) for k, c in self._terms.items()})

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            if isinstance(other, Number):
                return self == BiPoly.const(other)
            return NotImplemented
        return dict(self._terms) == dict(other._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset((k, complex(v)) for k, v in self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"BiPoly({format_bipoly(self)!r})"

    def __str__(self):
        return format_bipoly(self)

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _lift(x) -> "BiPoly":
        return x if isinstance(x, BiPoly) else BiPoly.const(x)

    def __add__(self, other):
        other = self._lift(other)
        return BiPoly(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out = []
        for (p1, q1), c1 in self._terms.items():
            for (p2, q2), c2 in other._terms.items():
                out.append(((p1 + p2, q1 + q2), c1 * c2))
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result, base = BiPoly.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> "BiPoly":
        """Pointwise complex conjugate: swaps the roles of z and zbar."""
        return BiPoly({(q, p): _conj(c) for (p, q), c in self._terms.items()})

    # -- evaluation -------------------------------------------------------

    def __call__(self, w):
        return evaluate(self, w)


def add(a: BiPoly, b: BiPoly) -> BiPoly:
    return a + b


def mul(a: BiPoly, b: BiPoly) -> BiPoly:
    return a * b


def evaluate(p: BiPoly, w):
    """Evaluate ``p`` at a complex scalar or array ``w``."""
    scalar = np.ndim(w) == 0
    w = np.asarray(w, dtype=complex)
    if p.is_zero():
        out = np.zeros_like(w)
        return complex(out) if scalar else out
    max_p = max(k[0] for k in p.terms)
    max_q = max(k[1] for k in p.terms)
    wc = np.conj(w)
    zp = [np.ones_like(w)]
    for _ in range(max_p):
        zp.append(zp[-1] * w)
    zq = [np.ones_like(w)]
    for _ in range(max_q):
        zq.append(zq[-1] * wc)
    out = np.zeros_like(w)
    for (i, j), c in p.terms.items():
        out = out + complex(c) * zp[i] * zq[j]
    return complex(out) if scalar else out


# Alias matching the operation name used throughout the docs.
eval_at = evaluate


def top_component(p: BiPoly) -> BiPoly:
    """Terms of maximal total degree."""
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has no top homogeneous component")
    d = p.degree
    return BiPoly({k: c for k, c in p.terms.items() if sum(k) == d})


def homogeneous_coeff_norms(p: BiPoly) -> list[tuple[int, float]]:
    """``[(j, sum of |c| over terms of total degree j)]`` in decreasing ``j``.

    On ``|z| = r`` the degree-``j`` part of ``p`` is bounded by ``C_j * r**j``.
    """
    acc: dict[int, float] = {}
    for (p_, q_), c in p.terms.items():
        acc[p_ + q_] = acc.get(p_ + q_, 0.0) + abs(c)
    return sorted(acc.items(), reverse=True)


class UniPoly:
    """Dense univariate polynomial; ``coeffs[k]`` multiplies ``z**k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Coeff]):
        cs = [_as_coeff(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Coeff:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def as_array(self) -> np.ndarray:
        return np.array([complex(c) for c in self.coeffs], dtype=complex)

    def __call__(self, w):
        scalar = np.ndim(w) == 0
        w = np.asarray(w, dtype=complex)
        out = np.zeros_like(w)
        for c in reversed(self.as_array()):
            out = out * w + c
        return complex(out) if scalar else out

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(complex(c) for c in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UniPoly([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def reversed(self) -> "UniPoly":
        """``z**n * p(1/z)`` for ``n = degree``."""
        return UniPoly(self.coeffs[::-1])

    def derivative_bound_on_circle(self) -> float:
        """``sum k*|c_k|``, a Lipschitz constant of ``phi -> p(exp(i phi))``."""
        return float(sum(k * abs(c) for k, c in enumerate(self.coeffs)))

    def __repr__(self):
        return f"UniPoly({[complex(c) for c in self.coeffs]!r})"


def associated_poly(t: BiPoly) -> UniPoly:
    """``z**d * T(z, 1/z)`` for homogeneous ``T`` of degree ``d``.

    The term ``c * z**p * zbar**(d-p)`` contributes ``c * z**(2p)``, so only
    even powers occur.
    """
    if t.is_zero():
        raise ZeroPolynomial("associated polynomial of the zero polynomial")
    if not t.is_homogeneous():
        raise NotHomogeneous(f"{t} mixes total degrees")
    top = max(p for p, _ in t.terms)
    coeffs: list[Coeff] = [0] * (2 * top + 1)
    for (p, _), c in t.terms.items():
        coeffs[2 * p] = c
    return UniPoly(coeffs)


# -- canonical printing --------------------------------------------------------

def _fmt_real(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return repr(float(x))


def _fmt_coeff(c) -> str:
    if isinstance(c, GaussianRational):
        re, im = c.re, c.im
    else:
        c = complex(c)
        re, im = c.real, c.imag
    if im == 0:
        return f"({_fmt_real(re)})"
    sign = "-" if (im < 0 or (isinstance(im, float) and math.copysign(1.0, im) < 0)) else "+"
    return f"({_fmt_real(re)}{sign}{_fmt_real(abs(im))}*i)"


def format_bipoly(p: BiPoly) -> str:
    """Canonical text form, accepted back by :func:`riemann_degree.parser.parse`.

    Exponent and coefficient spellings are chosen so that re-parsing yields
    exactly the same coefficients (floats are written with ``repr``).
    """
    if p.is_zero():
        return "0"
    parts = []
    for (i, j), c in sorted(p.terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0])):
        factors = [_fmt_coeff(c)]
        if i:
            factors.append("z" if i == 1 else f"z^{i}")
        if j:
            factors.append("zbar" if j == 1 else f"zbar^{j}")
        parts.append("*".join(factors))
    return " + ".join(parts)
