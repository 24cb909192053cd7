import pytest

from adrkit.adr import SCModule
from adrkit.amod import Rep
from adrkit.expr import Evaluator, ExprError, parse_expression


def test_parse_keys_round_trip():
    for text in ("quot_soc(P(1),6)", "rad^2(dsum(P(1),S(3)))", "soc_1(homG(P(2)))",
                 "quot(P(1),rad^1(P(1)))", "Delta(1,2)", "quot_soc(PR(1,1),(1,2))"):
        assert parse_expression(text).key() == text


@pytest.mark.parametrize("text, dims", [
    ("P(1)", (1, 1, 1, 1, 1, 1)),
    ("quot_soc(P(1),6)", (1, 1, 1, 1, 1, 0)),
    ("rad^1(P(1))", (0, 1, 1, 1, 1, 1)),
    ("soc_1(P(1))", (0, 1, 0, 0, 1, 1)),
    ("quot(P(1),soc_1(P(1)))", (1, 0, 1, 1, 0, 0)),
    ("dsum(P(3),S(2))", (0, 1, 1, 0, 1, 0)),
    ("G(1,2)", (1, 1, 1, 1, 0, 0)),
])
def test_a_module_expressions(ex54, text, dims):
    m = Evaluator(ex54).evaluate(text)
    assert isinstance(m, Rep)
    assert m.dim_vector() == dims


def test_r_module_expressions(contexts):
    ev = Evaluator(contexts["kx2"].algebra, contexts["kx2"])
    assert isinstance(ev.evaluate("homG(P(1))"), SCModule)
    assert ev.evaluate("PR(1,2)").total_dim == 3
    assert ev.evaluate("Delta(1,1)").total_dim == 2
    assert ev.evaluate("LR(1,2)").total_dim == 1
    assert ev.evaluate("quot_soc(PR(1,2),(1,2))").total_dim == 2
    assert ev.evaluate("quot_soc(PR(1,2),1,2)").total_dim == 2


@pytest.mark.parametrize("text, fragment", [
    ("P(9)", "no vertex"),
    ("Q(1)", "unknown constructor"),
    ("P(1", "expected"),
    ("P(1) x", "expected"),
    ("rad(P(1))", r"rad\^k"),
    ("soc(P(1))", "soc_k"),
    ("quot(P(1),rad^1(P(2)))", "second argument"),
    ("quot_soc(P(1),1)", "does not occur"),
    ("dsum(P(1),homG(P(1)))", "cannot mix"),
    ("homG(homG(P(1)))", "A-module"),
    ("P(1)$", "unexpected character"),
    ("Delta(7,1)", "not in Lambda"),
])
def test_expression_errors(ex54, text, fragment):
    ev = Evaluator(ex54)
    with pytest.raises(Exception, match=fragment) as err:
        ev.evaluate(text)
    assert isinstance(err.value, (ExprError, ValueError))


def test_error_reports_column(ex54):
    with pytest.raises(ExprError) as err:
        Evaluator(ex54).evaluate("dsum(P(1), Z(2))")
    assert err.value.col == 11
