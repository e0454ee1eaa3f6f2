import numpy as np
import pytest
from hypothesis import strategies as st

from riemann_degree.bipoly import BiPoly, top_component
from riemann_degree.degree import MapSpec, Method, certify_hypothesis, degree_of
from riemann_degree.errors import CommonZeroSuspected, LimitDoesNotExist, TDominanceFailure
from riemann_degree.parser import parse_bipoly

# The five worked examples: (numerator, denominator, degree, radius needed by the numeric route)
WORKED_EXAMPLES = {
    "ex1": ("z^2+1", "z", 2, None),  # k = 2, m = 1
    "ex2": ("1", "zbar^2", -2, None),  # m = 2
    "ex3": ("z*conj(z)^4+z*conj(z)^2+3", "z^3*conj(z)+z", -3, None),
    "ex4": ("z^2*conj(z)^3+2*z^4*conj(z)+3*z^2+2", "3*z^3+conj(z)", 3, None),
    "ex5": ("z^3+conj(z)^3+z", "1", 1, 1.0),
}


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


def example_pair(name):
    f, g, deg, radius = WORKED_EXAMPLES[name]
    return parse_bipoly(f), parse_bipoly(g), deg, radius


def random_bipoly(rng, degree, n_terms=4, scale=3.0, complex_coeffs=True):
    """Random polynomial of exact total degree ``degree``."""
    monos = [(p, j - p) for j in range(degree + 1) for p in range(j + 1)]
    tops = [m for m in monos if sum(m) == degree]
    picks = {tops[rng.integers(len(tops))]}
    for _ in range(n_terms - 1):
        picks.add(monos[rng.integers(len(monos))])
    terms = {}
    for m in picks:
        c = complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale) if complex_coeffs else 0.0)
        terms[m] = c
    return BiPoly(terms)


def certified_pair(rng, max_deg=4, n_terms=3, box=None):
    """A random pair with a well-defined degree and certified no common zeros.

    Equal-degree draws get proportional tops so the limit at infinity exists.
    With ``box`` set, every coefficient has real and imaginary parts in
    ``[-box, box]``.  Returns ``(f, g, report)``.
    """
    while True:
        df, dg = rng.integers(0, max_deg + 1, size=2)
        f = random_bipoly(rng, int(df), n_terms=n_terms)
        g = random_bipoly(rng, int(dg), n_terms=n_terms)
        if df == dg:
            g = g - top_component(g) + complex(*rng.normal(size=2)) * top_component(f)
        if box is not None and any(max(abs(c.real), abs(c.imag)) > box
                                   for p in (f, g) for c in map(complex, p.terms.values())):
            continue
        try:
            rep = degree_of(MapSpec.polynomial(f, g))
        except (TDominanceFailure, LimitDoesNotExist):
            continue
        if rep.method is Method.CONSTANT_MAP:
            continue
        try:
            if certify_hypothesis(f, g, max_boxes=100_000) is True:
                return f, g, rep
        except CommonZeroSuspected:
            continue


coeffs = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)
bidegrees = st.tuples(st.integers(0, 4), st.integers(0, 4))
bipolys = st.dictionaries(bidegrees, coeffs, max_size=6).map(BiPoly)
