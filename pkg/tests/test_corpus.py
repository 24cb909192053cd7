import pytest

from adrkit.amod import projective, simple
from adrkit.corpus import (BUILTIN_NAMES, build_corpus, builtin_algebra, corpus_algebra,
                           oracle_composition_series, oracle_hom_dim, random_quotient,
                           random_submodule)


def test_corpus_is_deterministic_and_large_enough():
    first = build_corpus(seed=0)
    assert first == build_corpus(seed=0)
    assert first != build_corpus(seed=1)
    shapes = [c for c in first if c.expression.startswith(("rquot", "rsub"))]
    assert len(shapes) >= 50


def test_random_modules_are_reproducible(ex36):
    p = projective(ex36, 4)
    assert random_submodule(p, 12) == random_submodule(p, 12)
    assert random_quotient(p, 5).dim_vector() == random_quotient(p, 5).dim_vector()


def test_unknown_builtin():
    with pytest.raises(KeyError):
        builtin_algebra("nope")
    assert set(BUILTIN_NAMES) == {"kx2", "ex36", "ex54", "a5"}


def test_oracles_on_fixed_modules(ex54):
    p1 = projective(ex54, 1)
    assert oracle_composition_series(p1) == {v: 1 for v in ex54.vertices}
    assert oracle_hom_dim(p1, p1) == 1
    assert oracle_hom_dim(simple(ex54, 5), p1) == 1
    assert oracle_hom_dim(p1, simple(ex54, 5)) == 0


def test_oracle_composition_series_over_r(contexts):
    ctx = contexts["kx2"]
    assert oracle_composition_series(ctx.projective_R((1, 2))) == {(1, 1): 1, (1, 2): 2}


def test_corpus_algebra_names():
    assert corpus_algebra("a5[n=4]").dim == 13
    assert corpus_algebra("kx2").dim == 2
