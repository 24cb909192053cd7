import pytest
from hypothesis import given, settings, strategies as st

from adrkit.adr import FieldValidityError, build_context, sc_loewy_length
from adrkit.amod import (direct_sum, find_isomorphism, hom_dim, hom_space, loewy_length,
                         projective, simple)
from adrkit.corpus import a_family, oracle_hom_dim, random_quotient, random_submodule
from adrkit.exact import Field, Matrix
from adrkit.strat import standard_module

# dim R from the global-matrix oracle: sum of dim Hom(G_s, G_t) over all label pairs
DIM_R = {"kx2": 5, "ex36": 87, "ex54": 27, "a5[n=2]": 53, "a5[n=3]": 55, "a5[n=4]": 80,
         "a5[n=5]": 116}


@pytest.mark.parametrize("name", sorted(DIM_R))
def test_context_dimensions(contexts, algebras, name):
    ctx = contexts[name]
    a = algebras[name]
    assert len(ctx.labels) == sum(loewy_length(projective(a, v)) for v in a.vertices)
    assert ctx.dim == DIM_R[name]
    assert ctx.radical.dim == ctx.dim - len(ctx.labels)


def test_local_algebra_projectives(contexts):
    ctx = contexts["kx2"]
    assert ctx.labels == [(1, 1), (1, 2)]
    assert ctx.projective_R((1, 1)).total_dim == 2
    assert ctx.projective_R((1, 2)).total_dim == 3


def test_prime_field_validity():
    with pytest.raises(FieldValidityError):
        build_context(a_family(5, Field(7)))
    assert build_context(a_family(5, Field(127))).dim == DIM_R["a5[n=5]"]


def _vec(ctx, coeffs):
    return tuple(ctx.field(c) for c in coeffs)


def elements(ctx):
    return st.lists(st.integers(-2, 2), min_size=ctx.dim, max_size=ctx.dim).map(
        lambda c: _vec(ctx, c))


@pytest.mark.parametrize("name", ["kx2", "ex54", "a5[n=2]"])
@settings(max_examples=15, deadline=None)
@given(data=st.data())
def test_ring_axioms(contexts, name, data):
    ctx = contexts[name]
    x, y, z = (data.draw(elements(ctx)) for _ in range(3))
    assert ctx.product(ctx.product(x, y), z) == ctx.product(x, ctx.product(y, z))
    one = ctx.one()
    assert ctx.product(one, x) == x == ctx.product(x, one)


@pytest.mark.parametrize("name", ["kx2", "ex54", "a5[n=2]"])
@settings(max_examples=10, deadline=None)
@given(data=st.data())
def test_modules_are_left_modules(contexts, name, data):
    ctx = contexts[name]
    lab = data.draw(st.sampled_from(ctx.labels))
    m = ctx.projective_R(lab)
    x, y = data.draw(elements(ctx)), data.draw(elements(ctx))
    assert m.act(ctx.product(x, y)) == m.act(x) @ m.act(y)
    assert m.act(ctx.one()) == Matrix.identity(ctx.field, m.total_dim)


@pytest.mark.parametrize("name", sorted(DIM_R))
def test_hom_of_simple_is_first_standard(contexts, name):
    ctx = contexts[name]
    for i in ctx.algebra.vertices:
        n = ctx.hom_G(simple(ctx.algebra, i))
        assert find_isomorphism(n, standard_module(ctx, (i, 1)).module) is not None


def test_projective_loewy_lengths_in_a5(contexts):
    ctx = contexts["a5[n=5]"]
    assert sc_loewy_length(ctx.projective_R((3, 3))) == 5
    assert sc_loewy_length(ctx.projective_R((2, 2))) == 6


def random_module(ctx, seed):
    a = ctx.algebra
    verts = list(a.vertices)
    parent = direct_sum([projective(a, verts[seed % len(verts)]),
                         projective(a, verts[(seed // 7) % len(verts)])])
    if seed % 2:
        return random_quotient(parent, seed)
    return random_submodule(parent, seed).as_rep()[0]


@pytest.mark.parametrize("name", ["ex36", "ex54", "a5[n=3]"])
@settings(max_examples=12, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_hom_functor_is_fully_faithful(contexts, name, s1, s2):
    ctx = contexts[name]
    m, n = random_module(ctx, s1), random_module(ctx, s2)
    assert hom_dim(ctx.hom_G(m), ctx.hom_G(n)) == hom_dim(m, n) == oracle_hom_dim(m, n)


@pytest.mark.parametrize("name", ["ex36", "a5[n=3]"])
@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_hom_functor_respects_composition(contexts, name, s1, s2, s3):
    ctx = contexts[name]
    m, n, k = (random_module(ctx, s) for s in (s1, s2, s3))
    fs, gs = hom_space(m, n)[:2], hom_space(n, k)[:2]
    for f in fs:
        for g in gs:
            assert ctx.hom_G_map(g @ f) == ctx.hom_G_map(g) @ ctx.hom_G_map(f)


@pytest.mark.parametrize("name", ["ex54", "a5[n=2]"])
@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_yoneda_round_trip(contexts, name, seed):
    ctx = contexts[name]
    m = random_module(ctx, seed)
    n = ctx.hom_G(m)
    for lab in ctx.labels:
        for f in hom_space(ctx.projective_R(lab), n):
            g = ctx.yoneda_transport(lab, f)
            assert g.is_morphism()
            assert ctx.hom_G_map(g) == f
