import pytest
from hypothesis import given, settings, strategies as st

from adrkit.corpus import BUILTIN_NAMES, a_family, builtin_algebra, builtin_text
from adrkit.exact import Field
from adrkit.quiver import (AdmissibilityError, ParseError, algebra_from_text, format_algebra,
                           parse_algebra)


def test_parse_builtin_header_and_arrows():
    pres = parse_algebra(builtin_text("a5"))
    assert pres.name == "a5"
    assert dict(pres.params) == {"n": 5}
    assert [a.name for a in pres.quiver.arrows] == ["eps", "a1", "b1", "a2", "b2"]
    assert len(pres.relations) == 6


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_format_parse_round_trip(name):
    pres = parse_algebra(builtin_text(name))
    again = parse_algebra(format_algebra(pres))
    assert again == pres


def test_param_override_and_field_override():
    pres = parse_algebra(builtin_text("a5"), params={"n": 3}, field="Fp:11")
    assert dict(pres.params) == {"n": 3}
    assert pres.field == Field(11)


def test_non_composable_product_reports_position():
    text = builtin_text("a5").replace("a2*a1\n", "a1*a2\n")
    with pytest.raises(ParseError) as err:
        parse_algebra(text)
    assert "non-composable" in str(err.value)
    assert (err.value.line, err.value.col) == (11, 1)


@pytest.mark.parametrize("text, fragment", [
    ("vertices 1\n", "missing 'algebra'"),
    ("algebra z field Q\n", "missing 'vertices'"),
    ("algebra z field Q\nvertices 2\narrow a: 1 -> 3\n", "outside"),
    ("algebra z field Q\nvertices 1\narrow a: 1 -> 1\narrow a: 1 -> 1\n", "duplicate"),
    ("algebra z field Fp:6\nvertices 1\n", "not prime"),
    ("algebra z field Q\nvertices 1\narrow x: 1 -> 1\nrelations:\nx^2 - x\n", "length >= 2"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_algebra(text)


def test_non_admissible_ideal_is_rejected():
    with pytest.raises(AdmissibilityError):
        algebra_from_text("algebra z field Q\nvertices 1\narrow x: 1 -> 1\nrelations:\n")


# Dimensions were counted by hand from the path bases:
#   ex36: 4 + 6 + (5 - 1) + 2 + 1; ex54: 6 + 5 + 2; A(n): 3 + 5 + n + 1 extra paths.
@pytest.mark.parametrize("name, dim, ll", [
    ("kx2", 2, 2), ("ex36", 17, 5), ("ex54", 13, 3),
])
def test_builtin_dimensions(name, dim, ll):
    a = builtin_algebra(name)
    assert (a.dim, a.loewy_length) == (dim, ll)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_a_family_dimension_and_loewy_length(n):
    a = a_family(n)
    assert a.dim == n + 9
    # b1*a1 is a nonzero path of length 2 at vertex 1, so LL is never below 3
    assert a.loewy_length == max(n, 3)


def test_a_family_needs_n_at_least_two():
    with pytest.raises(ValueError):
        a_family(1)


def _element(a, coeffs):
    return tuple((k, a.field(c)) for k, c in enumerate(coeffs) if c)


@pytest.mark.parametrize("name", ["ex36", "a5"])
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_multiplication_is_associative_on_random_elements(name, data):
    a = builtin_algebra(name)
    vec = st.lists(st.integers(-2, 2), min_size=a.dim, max_size=a.dim)
    x, y, z = (_element(a, data.draw(vec)) for _ in range(3))
    assert a.product_sparse(a.product_sparse(x, y), z) == a.product_sparse(x, a.product_sparse(y, z))


def test_sum_of_idempotents_is_the_unit():
    a = builtin_algebra("ex36")
    one = tuple((k, a.field.one) for k in sorted(a.idempotents.values()))
    for k in range(a.dim):
        b = ((k, a.field.one),)
        assert a.product_sparse(one, b) == b == a.product_sparse(b, one)
