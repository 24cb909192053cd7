import random

import pytest
from hypothesis import given, settings, strategies as st

from adrkit.amod import (ModuleError, base_change, direct_sum, find_isomorphism, hom_dim,
                         hom_space, image, is_rigid, kernel, loewy_length, projective,
                         projective_cover_mod_radpower, push, quotient,
                         quotient_by_socle_component, rad, rad_power, simple, soc,
                         socle_series, sub_generated, top_dims)
from adrkit.corpus import corpus_algebra, oracle_hom_dim, random_quotient, random_submodule
from adrkit.exact import Matrix

ALGEBRAS = ["kx2", "ex36", "ex54", "a5[n=2]", "a5[n=4]"]
_cache = {}


def alg(name):
    if name not in _cache:
        _cache[name] = corpus_algebra(name)
    return _cache[name]


@st.composite
def modules(draw):
    """A random quotient or submodule of a sum of one or two projectives."""
    a = alg(draw(st.sampled_from(ALGEBRAS)))
    verts = draw(st.lists(st.sampled_from(a.vertices), min_size=1, max_size=2))
    parent = direct_sum([projective(a, v) for v in verts])
    seed = draw(st.integers(0, 10 ** 6))
    if draw(st.booleans()):
        return random_quotient(parent, seed)
    return random_submodule(parent, seed).as_rep()[0]


# ---------------------------------------------------------------------------
# fixed examples; values read off the path basis by hand

def test_projective_of_tree_algebra(ex54):
    p1 = projective(ex54, 1)
    assert p1.dim_vector() == (1, 1, 1, 1, 1, 1)
    assert soc(p1).dims == {1: 0, 2: 1, 3: 0, 4: 0, 5: 1, 6: 1}
    assert loewy_length(p1) == 3
    assert rad_power(p1, 2).dims == {1: 0, 2: 0, 3: 0, 4: 0, 5: 1, 6: 1}
    # rad^2 misses the socle summand L_2, so P_1 is not rigid
    assert not is_rigid(p1)


def test_quotient_by_socle_component(ex54):
    m = quotient_by_socle_component(projective(ex54, 1), 6)
    assert m.dim_vector() == (1, 1, 1, 1, 1, 0)
    with pytest.raises(ModuleError):
        quotient_by_socle_component(m, 1)


def test_uniserial_local_algebra_is_rigid(kx2):
    p = projective(kx2, 1)
    assert p.dim_vector() == (2,)
    assert is_rigid(p)
    assert hom_dim(p, p) == 2
    assert hom_dim(simple(kx2, 1), p) == 1


def test_simple_modules(ex36):
    for v in ex36.vertices:
        s = simple(ex36, v)
        assert s.total_dim == 1
        assert soc(s).is_full() and rad(s).is_zero()


def test_cover_mod_radpower_labels(ex54):
    m = quotient_by_socle_component(projective(ex54, 1), 6)
    for k, label in ((3, (1, 3)), (4, (1, 3))):
        cov = projective_cover_mod_radpower(m, k)
        assert cov.summands == (label,)
        assert image(cov.epi).is_full()
    with pytest.raises(ModuleError):
        projective_cover_mod_radpower(m, 2)


def test_find_isomorphism_after_base_change(ex36):
    m = projective(ex36, 4)
    rng = random.Random(3)
    mats = {}
    for v in m.vertices:
        d = m.dims[v]
        while True:
            g = Matrix(m.field, [[rng.randint(-2, 2) for _ in range(d)] for _ in range(d)]) if d else None
            if g is None or g.is_invertible():
                break
        if g is not None:
            mats[v] = g
    mats.update({v: Matrix.identity(m.field, 0) for v in m.vertices if not m.dims[v]})
    other = base_change(m, mats)
    iso = find_isomorphism(m, other)
    assert iso is not None and iso.is_isomorphism() and iso.is_morphism()
    assert find_isomorphism(m, projective(ex36, 3)) is None


# ---------------------------------------------------------------------------
# properties

@settings(max_examples=40, deadline=None)
@given(modules())
def test_hom_from_projective_is_the_vertex_space(m):
    a = m.algebra
    for v in a.vertices:
        assert hom_dim(projective(a, v), m) == m.dims[v]


@settings(max_examples=30, deadline=None)
@given(modules(), modules())
def test_hom_dim_matches_global_oracle(m, n):
    if m.algebra is not n.algebra:
        n = random_quotient(projective(m.algebra, m.algebra.vertices[0]), 1)
    assert hom_dim(m, n) == oracle_hom_dim(m, n)


@settings(max_examples=40, deadline=None)
@given(modules())
def test_series_have_equal_length_and_end_points(m):
    ll = loewy_length(m)
    ss = socle_series(m)
    assert len(ss) - 1 == ll
    assert ss[0].is_zero() and ss[-1].is_full()
    assert rad_power(m, ll).is_zero()
    for lower, upper in zip(ss, ss[1:]):
        assert lower <= upper and lower != upper


@settings(max_examples=30, deadline=None)
@given(modules(), st.integers(0, 10 ** 6))
def test_socle_is_hereditary(m, seed):
    """soc N = N meet soc M for every submodule N of M."""
    n = random_submodule(m, seed)
    sub, incl = n.as_rep()
    assert push(incl, soc(sub)) == (soc(m) & n)


@settings(max_examples=25, deadline=None)
@given(modules(), st.integers(0, 10 ** 6))
def test_morphisms_preserve_radical_and_socle(m, seed):
    q, pi = quotient(m, random_submodule(m, seed))
    for f in [pi] + hom_space(m, m)[:3]:
        assert push(f, rad(f.source)) <= rad(f.target)
        assert push(f, soc(f.source)) <= soc(f.target)


@settings(max_examples=25, deadline=None)
@given(modules())
def test_cover_is_minimal(m):
    if m.is_zero():
        return
    cov = projective_cover_mod_radpower(m, loewy_length(m))
    tops = top_dims(m)
    assert sorted(v for v, _ in cov.summands) == sorted(v for v, d in tops.items() for _ in range(d))
    assert image(cov.epi).is_full()
    assert kernel(cov.epi) <= rad(cov.source)


@settings(max_examples=25, deadline=None)
@given(modules(), st.integers(0, 10 ** 6))
def test_generated_submodule_contains_its_generators(m, seed):
    rng = random.Random(seed)
    verts = [v for v in m.vertices if m.dims[v]]
    if not verts:
        return
    v = rng.choice(verts)
    vec = tuple(m.field(rng.randint(-3, 3)) for _ in range(m.dims[v]))
    s = sub_generated(m, [(v, vec)])
    assert vec in s.spaces[v]
    assert s.is_stable()
