"""Built-in algebras, a seeded module corpus and brute-force oracles.

The oracles work on the total space of a module with one global matrix per
arrow and per vertex idempotent, independently of the per-vertex solvers in
:mod:`adrkit.amod`.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from importlib import resources

from .amod import Representation, SubRep, quotient, sub_generated
from .exact import Field, Matrix, Subspace, nullspace, quotient_map
from .quiver import BoundAlgebra, algebra_from_text

BUILTIN_NAMES = ("kx2", "ex36", "ex54", "a5")


def builtin_text(name: str) -> str:
    if name not in BUILTIN_NAMES:
        raise KeyError(f"unknown built-in algebra {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
    return resources.files("adrkit.data").joinpath(f"{name}.alg").read_text()


def builtin_algebra(name: str, n: int | None = None, field: Field | None = None) -> BoundAlgebra:
    params = {"n": n} if n is not None else None
    return algebra_from_text(builtin_text(name), params=params, field=field)


def a_family(n: int, field: Field | None = None) -> BoundAlgebra:
    """A(n): the built-in ``a5`` presentation with eps^n."""
    if n < 2:
        raise ValueError("the A(n) family needs n >= 2")
    return builtin_algebra("a5", n=n, field=field)


def corpus_algebras() -> list[tuple[str, BoundAlgebra]]:
    out = [("kx2", builtin_algebra("kx2")), ("ex36", builtin_algebra("ex36")),
           ("ex54", builtin_algebra("ex54"))]
    out += [(f"a5[n={n}]", a_family(n)) for n in (2, 3, 4, 5)]
    return out


# ---------------------------------------------------------------------------
# random modules

def _random_vectors(m: Representation, rng: random.Random, count: int) -> list[tuple]:
    verts = [v for v in m.vertices if m.dims[v]]
    if not verts:
        return []
    out = []
    p = m.field.p
    for _ in range(count):
        v = rng.choice(verts)
        vec = tuple(m.field(rng.randint(-3, 3) if p is None else rng.randrange(p))
                    for _ in range(m.dims[v]))
        out.append((v, vec))
    return out


def random_submodule(m: Representation, seed: int) -> SubRep:
    """Submodule generated by one or two random vectors; deterministic per seed."""
    rng = random.Random(seed)
    return sub_generated(m, _random_vectors(m, rng, rng.randint(1, 2)))


def random_quotient(m: Representation, seed: int) -> Representation:
    return quotient(m, random_submodule(m, seed))[0]


@dataclass(frozen=True)
class CorpusItem:
    algebra: str
    expression: str


def corpus_expressions(algebra: BoundAlgebra, rng: random.Random, per_algebra: int) -> list[str]:
    """Projectives, simples and seeded random quotients/submodules, as module expressions."""
    verts = list(algebra.vertices)
    out = [f"P({v})" for v in verts] + [f"S({v})" for v in verts]
    shapes = ("rquot(P({a}),{s})", "rsub(P({a}),{s})", "rquot(dsum(P({a}),P({b})),{s})",
              "rsub(dsum(P({a}),P({b})),{s})")
    for _ in range(per_algebra):
        a, b = rng.choice(verts), rng.choice(verts)
        shape = rng.choice(shapes)
        out.append(shape.format(a=a, b=b, s=rng.randrange(10 ** 6)))
    return out


def build_corpus(seed: int = 0, per_algebra: int = 12) -> list[CorpusItem]:
    rng = random.Random(seed)
    items = []
    for name, alg in corpus_algebras():
        for e in corpus_expressions(alg, rng, per_algebra):
            items.append(CorpusItem(name, e))
    return items


def corpus_algebra(name: str) -> BoundAlgebra:
    if name.startswith("a5[n="):
        return a_family(int(name[5:-1]))
    return builtin_algebra(name)


# ---------------------------------------------------------------------------
# oracles

def _global_structure(m: Representation):
    """(idempotent projections, arrow matrices, vertex of each coordinate) on the total space."""
    field = m.field
    n = m.total_dim
    off, pos = {}, 0
    owner = []
    for v in m.vertices:
        off[v] = pos
        owner.extend([v] * m.dims[v])
        pos += m.dims[v]
    idem = {}
    for v in m.vertices:
        rows = [[field.one if (r == c and owner[r] == v) else field.zero for c in range(n)]
                for r in range(n)]
        idem[v] = Matrix._raw(field, rows, n)
    arrows = []
    for a in m.arrows:
        rows = [[field.zero] * n for _ in range(n)]
        blk = m.maps[a.name]
        for r in range(blk.nrows):
            for c in range(blk.ncols):
                rows[off[a.target] + r][off[a.source] + c] = blk.rows[r][c]
        arrows.append(Matrix._raw(field, rows, n))
    return idem, arrows


def _sc_radical_actions(m) -> list[Matrix]:
    """Action matrices of a basis of rad R on an R-module, through the full structure constants."""
    return [m.act(x) for x in m.ctx.radical.basis]


def oracle_composition_series(m: Representation) -> dict:
    """Composition multiplicities by peeling socles of the total space.

    soc is the joint kernel of all radical actions; the simple labels of a
    semisimple layer are the ranks of the idempotents on it.
    """
    idem, arrows = _global_structure(m)
    if hasattr(m, "ctx"):
        acting = _sc_radical_actions(m)
        idem = {lab: m.act(m.ctx.idempotent(lab)) for lab in m.ctx.labels}
    else:
        acting = arrows
    field = m.field
    n = m.total_dim
    counts: dict = {}
    lower = Subspace.zero(field, n)
    while lower.dim < n:
        q, qdim = quotient_map(n, lower)
        rows = []
        for a in acting:
            rows.extend((q @ a).rows)
        nxt = nullspace(Matrix._raw(field, rows, n)) if rows else Subspace.full(field, n)
        layer_dim = nxt.dim - lower.dim
        if layer_dim <= 0:
            raise RuntimeError("socle peeling stalled")
        # labels: rank of each idempotent on the layer nxt / lower
        for v, e in idem.items():
            imgs = [q.apply(e.apply(x)) for x in nxt.basis]
            r = Matrix._raw(field, imgs, qdim).rank() if imgs else 0
            if r:
                counts[v] = counts.get(v, 0) + r
        lower = nxt
    return dict(sorted(counts.items()))


def oracle_hom_dim(m: Representation, n: Representation) -> int:
    """dim Hom(m, n) as the nullity of one linear system in the entries of a full matrix X.

    X : total(m) -> total(n) must commute with every idempotent and every
    arrow (or radical generator) matrix.
    """
    idem_m, arr_m = _global_structure(m)
    idem_n, arr_n = _global_structure(n)
    field = m.field
    dm, dn = m.total_dim, n.total_dim
    unknowns = dm * dn
    if unknowns == 0:
        return 0
    pairs = [(idem_m[v], idem_n[v]) for v in m.vertices] + list(zip(arr_m, arr_n))
    rows = []
    z = field.zero
    for a, b in pairs:
        # B X - X A = 0, X[r][c] at index r*dm + c
        for r in range(dn):
            brow = b.rows[r]
            for c in range(dm):
                eq = [z] * unknowns
                for k in range(dn):
                    if brow[k]:
                        eq[k * dm + c] += brow[k]
                for k in range(dm):
                    x = a.rows[k][c]
                    if x:
                        eq[r * dm + k] -= x
                if any(eq):
                    rows.append(eq)
    if not rows:
        return unknowns
    return nullspace(Matrix._raw(field, rows, unknowns)).dim
