import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from riemann_degree.bipoly import BiPoly, GaussianRational, evaluate, format_bipoly
from riemann_degree.errors import ExprSyntaxError, NegativeExponent, NonIntegerExponent
from riemann_degree.parser import BinOp, Conj, Const, Neg, Pow, Var, interpret, lower, parse, parse_bipoly

from conftest import bipolys

z, zb = BiPoly.z(), BiPoly.zbar()


def test_worked_example_expressions():
    assert parse_bipoly("z*conj(z)^4 + z*conj(z)^2 + 3") == z * zb ** 4 + z * zb ** 2 + 3
    assert parse_bipoly("3*z^3 + zbar") == 3 * z ** 3 + zb


def test_negative_exponent():
    with pytest.raises(NegativeExponent) as info:
        parse("z^(-1)")
    assert info.value.offset == 2


def test_non_integer_exponent():
    with pytest.raises(NonIntegerExponent):
        parse("z^1.5")
    with pytest.raises(NonIntegerExponent):
        parse("z^z")
    with pytest.raises(NonIntegerExponent):
        parse("z^i")


def test_lowering_examples():
    assert parse_bipoly("conj(z^2 + i)") == zb ** 2 - 1j
    assert parse_bipoly("conj(z*conj(z))") == z * zb
    expected = BiPoly({(k, 0): math.comb(3, k) for k in range(4)})
    assert parse_bipoly("(z+1)^3") == expected


def test_precedence_and_associativity():
    # ^ binds tighter than unary minus, which binds tighter than *
    assert parse_bipoly("-z^2") == -(z ** 2)
    assert parse_bipoly("2*-z") == -2 * z
    assert parse_bipoly("1 - z - z") == 1 - 2 * z
    # right-associative exponent: 2^3^2 == 2^9
    assert parse("z^2^2") == Pow(Var(0), 4, 1)
    assert parse_bipoly("z^2^3") == z ** 8


def test_literals():
    assert parse_bipoly("3/2*z") == 1.5 * z
    assert parse_bipoly("1.5+2*i") == BiPoly.const(1.5 + 2j)
    assert parse_bipoly("1e-3") == BiPoly.const(0.001)
    exact = parse_bipoly("3/2*z + 1/3*i", exact=True)
    assert exact.terms[(1, 0)] == GaussianRational(Fraction(3, 2))
    assert exact.terms[(0, 0)] == GaussianRational(0, Fraction(1, 3))


@pytest.mark.parametrize("src, offset", [
    ("z z", 2),          # implicit multiplication is not supported
    ("2*", 2),
    ("(z+1", 4),
    ("z + * 3", 4),
    ("sin(z)", 0),
    ("z/2", 1),
])
def test_syntax_errors_report_offset(src, offset):
    with pytest.raises(ExprSyntaxError) as info:
        parse(src)
    assert info.value.offset == offset


def test_syntax_error_expected_set():
    with pytest.raises(ExprSyntaxError) as info:
        parse("z +")
    assert "z" in info.value.expected and "(" in info.value.expected


def test_byte_offsets_count_utf8():
    with pytest.raises(ExprSyntaxError) as info:
        parse("z + é")
    assert info.value.offset == 4


def test_whitespace_insignificant():
    assert parse_bipoly(" z  *conj( z )^ 2\t+1 ") == parse_bipoly("z*conj(z)^2+1")


@settings(max_examples=200, deadline=None)
@given(bipolys)
def test_round_trip(p):
    assert parse_bipoly(format_bipoly(p)) == p


def test_round_trip_exact():
    p = parse_bipoly("3/7*z^2*zbar - 5/2*i*z + 1/9", exact=True)
    assert parse_bipoly(format_bipoly(p), exact=True) == p


leaves = st.one_of(
    st.builds(Const, st.fractions(min_value=-5, max_value=5, max_denominator=7)),
    st.just(Const(1j)),
    st.just(Var()),
)
asts = st.recursive(
    leaves,
    lambda sub: st.one_of(
        st.builds(Conj, sub),
        st.builds(Neg, sub),
        st.builds(BinOp, st.sampled_from("+-*"), sub, sub),
        st.builds(Pow, sub, st.integers(0, 3)),
    ),
    max_leaves=8,
)


@settings(max_examples=100, deadline=None)
@given(asts)
def test_lowering_matches_interpretation(ast):
    p = lower(ast)
    rng = np.random.default_rng(1)
    for w in rng.normal(size=20) + 1j * rng.normal(size=20):
        direct = interpret(ast, w)
        # relative to the size of the summands, the natural scale under cancellation
        size = sum(abs(c) * abs(w) ** (i + j) for (i, j), c in p.terms.items())
        assert abs(evaluate(p, w) - direct) <= 1e-12 * max(size, abs(direct), 1e-300)
