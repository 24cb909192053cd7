"""Modules as quiver representations.

:class:`Representation` is the generic container (one space per vertex, one
matrix per arrow) and every operation in this module works on it, so the
same code serves A-modules (:class:`Rep`, arrows of Q) and modules over the
ADR algebra (arrows = radical generators, see :mod:`adrkit.adr`).
"""
from __future__ import annotations

import random
from collections import deque
from typing import NamedTuple, Sequence

from .exact import (EchelonBuilder, Field, Matrix, Subspace, block_diag, column_space,
                    complement_lift, image_of, nullspace, preimage, quotient_map, vstack)
from .quiver import BoundAlgebra


class ModuleError(ValueError):
    pass


class InvariantError(RuntimeError):
    """A computed object failed a property that holds by construction."""


class Representation:
    """One vector space per vertex of ``quiver`` and one matrix per arrow."""

    def __init__(self, quiver, field: Field, dims: dict, maps: dict, check: bool = True):
        self.quiver = quiver
        self.field = field
        self.dims = {v: int(dims.get(v, 0)) for v in quiver.vertices}
        self.maps = {}
        for a in quiver.arrows:
            m = maps.get(a.name)
            shape = (self.dims[a.target], self.dims[a.source])
            if m is None:
                m = Matrix.zeros(field, *shape)
            if (m.nrows, m.ncols) != shape:
                raise ModuleError(f"arrow {a.name}: matrix {m.shape} does not match {shape}")
            self.maps[a.name] = m
        if check:
            self.check()

    def check(self):
        pass

    def _new(self, dims, maps, check=False) -> "Representation":
        return type(self)._like(self, dims, maps, check)

    @classmethod
    def _like(cls, proto, dims, maps, check):
        return cls(proto.quiver, proto.field, dims, maps, check=check)

    @property
    def vertices(self):
        return self.quiver.vertices

    @property
    def arrows(self):
        return self.quiver.arrows

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def dim_vector(self) -> tuple:
        return tuple(self.dims[v] for v in self.vertices)

    def act_word(self, word: Sequence[str], source) -> Matrix:
        """Matrix of a word of arrow names (rightmost applied first) starting at ``source``."""
        m = Matrix.identity(self.field, self.dims[source])
        for name in reversed(word):
            m = self.maps[name] @ m
        return m

    def same_frame(self, other: "Representation") -> bool:
        return self.quiver == other.quiver and self.field == other.field

    def __repr__(self):
        dv = ",".join(str(self.dims[v]) for v in self.vertices)
        return f"{type(self).__name__}(dims=({dv}))"


class Rep(Representation):
    """A left module over a :class:`BoundAlgebra`, given as a representation of its quiver."""

    def __init__(self, algebra: BoundAlgebra, dims: dict, maps: dict, check: bool = True):
        self.algebra = algebra
        super().__init__(algebra.quiver, algebra.field, dims, maps, check=check)

    @classmethod
    def _like(cls, proto, dims, maps, check):
        return cls(proto.algebra, dims, maps, check=check)

    def check(self):
        for rel in self.algebra.relations:
            acc = None
            src = self.algebra.quiver.arrows[rel[0][1][-1]].source
            for c, arrows in rel:
                term = self.act_path(arrows, src).scale(c)
                acc = term if acc is None else acc + term
            if acc is not None and not acc.is_zero():
                raise ModuleError("a relation of the algebra does not act as zero")

    def act_path(self, arrows: Sequence[int], source) -> Matrix:
        names = [self.algebra.quiver.arrows[k].name for k in arrows]
        return self.act_word(names, source)

    def act_basis(self, k: int) -> Matrix:
        p = self.algebra.basis[k]
        return self.act_path(p.arrows, p.source)

    def act_element(self, elem: dict, source, target) -> Matrix:
        """Action of a combination of basis paths, all running source -> target."""
        out = Matrix.zeros(self.field, self.dims[target], self.dims[source])
        for k, c in sorted(elem.items()):
            p = self.algebra.basis[k]
            if p.source != source or p.target != target:
                raise ModuleError("element is not homogeneous for the requested vertices")
            out = out + self.act_basis(k).scale(c)
        return out


# ---------------------------------------------------------------------------
# maps and subrepresentations

class RepMap:
    """A morphism given by one block per vertex (target space x source space)."""

    def __init__(self, source: Representation, target: Representation, blocks: dict, check: bool = True):
        self.source = source
        self.target = target
        self.blocks = {}
        for v in source.vertices:
            b = blocks.get(v)
            shape = (target.dims[v], source.dims[v])
            if b is None:
                b = Matrix.zeros(source.field, *shape)
            if (b.nrows, b.ncols) != shape:
                raise ModuleError(f"block at {v} has shape {b.shape}, expected {shape}")
            self.blocks[v] = b
        if check and not self.is_morphism():
            raise ModuleError("blocks do not commute with the arrow maps")

    def is_morphism(self) -> bool:
        s, t = self.source, self.target
        for a in s.arrows:
            if t.maps[a.name] @ self.blocks[a.source] != self.blocks[a.target] @ s.maps[a.name]:
                return False
        return True

    def __matmul__(self, other: "RepMap") -> "RepMap":
        """self o other."""
        return RepMap(other.source, self.target,
                      {v: self.blocks[v] @ other.blocks[v] for v in self.source.vertices}, check=False)

    def __add__(self, other: "RepMap") -> "RepMap":
        return RepMap(self.source, self.target,
                      {v: self.blocks[v] + other.blocks[v] for v in self.source.vertices}, check=False)

    def scale(self, c) -> "RepMap":
        return RepMap(self.source, self.target,
                      {v: b.scale(c) for v, b in self.blocks.items()}, check=False)

    def __eq__(self, other):
        return isinstance(other, RepMap) and self.blocks == other.blocks

    def __hash__(self):
        return hash(tuple(sorted(self.blocks.items(), key=lambda kv: repr(kv[0]))))

    def flatten(self) -> tuple:
        out = []
        for v in self.source.vertices:
            for r in self.blocks[v].rows:
                out.extend(r)
        return tuple(out)

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks.values())

    def is_injective(self) -> bool:
        return all(b.rank() == b.ncols for b in self.blocks.values())

    def is_surjective(self) -> bool:
        return all(b.rank() == b.nrows for b in self.blocks.values())

    def is_isomorphism(self) -> bool:
        return all(b.nrows == b.ncols and b.rank() == b.nrows for b in self.blocks.values())

    def inverse(self) -> "RepMap":
        return RepMap(self.target, self.source, {v: b.inverse() for v, b in self.blocks.items()},
                      check=False)

    def __repr__(self):
        return f"RepMap({self.source!r} -> {self.target!r})"


def identity_map(m: Representation) -> RepMap:
    return RepMap(m, m, {v: Matrix.identity(m.field, m.dims[v]) for v in m.vertices}, check=False)


def zero_map(m: Representation, n: Representation) -> RepMap:
    return RepMap(m, n, {}, check=False)


class SubRep:
    """An arrow-stable family of subspaces of ``parent``."""

    def __init__(self, parent: Representation, spaces: dict, check: bool = True):
        self.parent = parent
        self.spaces = {v: spaces.get(v) or Subspace.zero(parent.field, parent.dims[v])
                       for v in parent.vertices}
        if check and not self.is_stable():
            raise ModuleError("subspace family is not closed under the arrow maps")

    def is_stable(self) -> bool:
        for a in self.parent.arrows:
            m = self.parent.maps[a.name]
            tgt = self.spaces[a.target]
            for v in self.spaces[a.source].basis:
                if not tgt.contains(m.apply(v)):
                    return False
        return True

    @property
    def dims(self) -> dict:
        return {v: s.dim for v, s in self.spaces.items()}

    @property
    def total_dim(self) -> int:
        return sum(s.dim for s in self.spaces.values())

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def is_full(self) -> bool:
        return self.total_dim == self.parent.total_dim

    def __eq__(self, other):
        return isinstance(other, SubRep) and self.spaces == other.spaces

    def __hash__(self):
        return hash(tuple(self.spaces[v] for v in self.parent.vertices))

    def __le__(self, other: "SubRep") -> bool:
        return all(self.spaces[v] <= other.spaces[v] for v in self.parent.vertices)

    def __add__(self, other: "SubRep") -> "SubRep":
        return SubRep(self.parent, {v: self.spaces[v] + other.spaces[v] for v in self.parent.vertices},
                      check=False)

    def __and__(self, other: "SubRep") -> "SubRep":
        return SubRep(self.parent, {v: self.spaces[v] & other.spaces[v] for v in self.parent.vertices},
                      check=False)

    def as_rep(self) -> tuple[Representation, RepMap]:
        """The submodule as a representation in its own right, with its inclusion."""
        m = self.parent
        dims = self.dims
        maps = {}
        for a in m.arrows:
            src, tgt = self.spaces[a.source], self.spaces[a.target]
            cols = [tgt.coordinates(m.maps[a.name].apply(v)) for v in src.basis]
            maps[a.name] = Matrix.from_columns(m.field, cols, tgt.dim)
        sub = m._new(dims, maps)
        incl = RepMap(sub, m, {v: Matrix.from_columns(m.field, list(s.basis), m.dims[v])
                               for v, s in self.spaces.items()}, check=False)
        return sub, incl

    def __repr__(self):
        dv = ",".join(str(self.spaces[v].dim) for v in self.parent.vertices)
        return f"SubRep(dims=({dv}) of {self.parent!r})"


def whole(m: Representation) -> SubRep:
    return SubRep(m, {v: Subspace.full(m.field, m.dims[v]) for v in m.vertices}, check=False)


def zero_sub(m: Representation) -> SubRep:
    return SubRep(m, {}, check=False)


# ---------------------------------------------------------------------------
# constructions over A

def projective(a: BoundAlgebra, i) -> Rep:
    """P_i = A e_i on the basis paths starting at ``i``; its top is L_i."""
    if i not in a.quiver.vertices:
        raise ModuleError(f"no vertex {i}")
    cache = a.__dict__.setdefault("_projectives", {})
    if i in cache:
        return cache[i]
    field = a.field
    idx = {v: [k for k, p in enumerate(a.basis) if p.source == i and p.target == v]
           for v in a.quiver.vertices}
    pos = {v: {k: r for r, k in enumerate(ks)} for v, ks in idx.items()}
    maps = {}
    for n, arr in enumerate(a.quiver.arrows):
        alpha = a.index[(arr.source, (n,))]
        cols = []
        for k in idx[arr.source]:
            col = [field.zero] * len(idx[arr.target])
            for j, c in a.mult[alpha][k]:
                col[pos[arr.target][j]] = c
            cols.append(col)
        maps[arr.name] = Matrix.from_columns(field, cols, len(idx[arr.target]))
    rep = Rep(a, {v: len(ks) for v, ks in idx.items()}, maps)
    rep.path_basis = idx
    cache[i] = rep
    return rep


def simple(a: BoundAlgebra, i) -> Rep:
    return Rep(a, {i: 1}, {})


def generator_vector(p: Rep, i) -> tuple:
    """Coordinates of e_i in P_i at vertex i."""
    k = p.path_basis[i].index(p.algebra.idempotents[i])
    v = [p.field.zero] * p.dims[i]
    v[k] = p.field.one
    return tuple(v)


# ---------------------------------------------------------------------------
# radical and socle

def rad(m: Representation, sub: SubRep | None = None) -> SubRep:
    """rad of ``sub`` (default: all of m): the span of arrow images."""
    spaces = {v: [] for v in m.vertices}
    for a in m.arrows:
        src = sub.spaces[a.source].basis if sub is not None else \
            Matrix.identity(m.field, m.dims[a.source]).rows
        mat = m.maps[a.name]
        spaces[a.target].extend(mat.apply(v) for v in src)
    return SubRep(m, {v: Subspace(m.field, m.dims[v], vs) for v, vs in spaces.items()}, check=False)


def rad_power(m: Representation, k: int) -> SubRep:
    s = whole(m)
    for _ in range(k):
        if s.is_zero():
            break
        s = rad(m, s)
    return s


def radical_series(m: Representation) -> list[SubRep]:
    """[rad^0 M, rad^1 M, ..., rad^LL M = 0]."""
    out = [whole(m)]
    while not out[-1].is_zero():
        out.append(rad(m, out[-1]))
    return out


def soc(m: Representation, lower: SubRep | None = None) -> SubRep:
    """soc M, or (with ``lower`` = soc_{j-1}) the next socle-series term."""
    spaces = {}
    for v in m.vertices:
        blocks = []
        for a in m.arrows:
            if a.source != v:
                continue
            mat = m.maps[a.name]
            if lower is not None:
                q, _ = quotient_map(m.dims[a.target], lower.spaces[a.target])
                mat = q @ mat
            if mat.nrows:
                blocks.append(mat)
        if blocks:
            spaces[v] = nullspace(vstack(m.field, blocks, m.dims[v]))
        else:
            spaces[v] = Subspace.full(m.field, m.dims[v])
    return SubRep(m, spaces, check=False)


def socle_series(m: Representation) -> list[SubRep]:
    """[soc_0 M = 0, soc_1 M, ..., soc_LL M = M]."""
    out = [zero_sub(m)]
    while not out[-1].is_full():
        nxt = soc(m, out[-1])
        if nxt == out[-1]:
            raise InvariantError("socle series stalled")
        out.append(nxt)
    return out


def loewy_length(m: Representation) -> int:
    return len(radical_series(m)) - 1


def top_dims(m: Representation) -> dict:
    r = rad(m)
    return {v: m.dims[v] - r.spaces[v].dim for v in m.vertices}


def socle_dims(m: Representation) -> dict:
    return soc(m).dims


def is_rigid(m: Representation) -> bool:
    """Radical series equals socle series term by term."""
    rs = radical_series(m)
    ss = socle_series(m)
    if len(rs) != len(ss):
        return False
    ll = len(rs) - 1
    return all(rs[k] == ss[ll - k] for k in range(ll + 1))


# ---------------------------------------------------------------------------
# homomorphisms

def _hom_system(m: Representation, n: Representation):
    off = {}
    total = 0
    for v in m.vertices:
        off[v] = total
        total += n.dims[v] * m.dims[v]
    return off, total


def hom_space(m: Representation, n: Representation) -> list[RepMap]:
    """Canonical basis of Hom(m, n): RREF of the solution space of the commuting equations."""
    if not m.same_frame(n):
        raise ModuleError("modules over different algebras")
    field = m.field
    off, total = _hom_system(m, n)
    if total == 0:
        return []
    eqs = []
    z = field.zero
    for a in m.arrows:
        v, w = a.source, a.target
        mv, nv, mw, nw = m.dims[v], n.dims[v], m.dims[w], n.dims[w]
        if nw == 0 or mv == 0:
            continue
        na, ma = n.maps[a.name], m.maps[a.name]
        for r in range(nw):
            nrow = na.rows[r]
            for b in range(mv):
                eq = [z] * total
                # (N_a F_v)[r][b]
                for c in range(nv):
                    x = nrow[c]
                    if x:
                        eq[off[v] + c * mv + b] += x
                # -(F_w M_a)[r][b]
                for c in range(mw):
                    x = ma.rows[c][b]
                    if x:
                        eq[off[w] + r * mw + c] -= x
                if any(eq):
                    eqs.append(eq)
    if eqs:
        sol = nullspace(Matrix._raw(field, eqs, total))
    else:
        sol = Subspace.full(field, total)
    return [_unflatten(m, n, vec, off) for vec in sol.basis]


def _unflatten(m, n, vec, off) -> RepMap:
    blocks = {}
    for v in m.vertices:
        r, c = n.dims[v], m.dims[v]
        o = off[v]
        blocks[v] = Matrix._raw(m.field, [vec[o + i * c:o + (i + 1) * c] for i in range(r)], c)
    return RepMap(m, n, blocks, check=False)


def hom_dim(m: Representation, n: Representation) -> int:
    return len(hom_space(m, n))


def find_isomorphism(m: Representation, n: Representation, seed: int = 0,
                     retries: int = 20) -> RepMap | None:
    """An exactly certified isomorphism m -> n, or None when none was found.

    Scans the canonical Hom basis, then random integer combinations.  A
    returned map is always a verified isomorphism; None after the retries
    means "not found".
    """
    if m.dim_vector() != n.dim_vector():
        return None
    if m.total_dim == 0:
        return RepMap(m, n, {}, check=False)
    if loewy_length(m) != loewy_length(n) or top_dims(m) != top_dims(n) or socle_dims(m) != socle_dims(n):
        return None
    basis = hom_space(m, n)
    if not basis:
        return None
    for f in basis:
        if f.is_isomorphism():
            return f
    rng = random.Random(seed)
    p = m.field.p
    for _ in range(retries):
        coeffs = [rng.randint(-50, 50) if p is None else rng.randrange(p) for _ in basis]
        f = None
        for c, g in zip(coeffs, basis):
            if c:
                t = g.scale(c)
                f = t if f is None else f + t
        if f is not None and f.is_isomorphism():
            return f
    return None


def is_isomorphic(m: Representation, n: Representation, seed: int = 0) -> bool:
    return find_isomorphism(m, n, seed=seed) is not None


def find_injection(m: Representation, n: Representation, seed: int = 0, retries: int = 20) -> RepMap | None:
    """A certified monomorphism m -> n found by the same search as :func:`find_isomorphism`."""
    if m.total_dim == 0:
        return zero_map(m, n)
    basis = hom_space(m, n)
    for f in basis:
        if f.is_injective():
            return f
    rng = random.Random(seed)
    p = m.field.p
    for _ in range(retries if basis else 0):
        f = None
        for g in basis:
            c = rng.randint(-50, 50) if p is None else rng.randrange(p)
            if c:
                t = g.scale(c)
                f = t if f is None else f + t
        if f is not None and f.is_injective():
            return f
    return None


# ---------------------------------------------------------------------------
# sub, quotient, sums, kernels

def sub_generated(m: Representation, vectors: Sequence[tuple]) -> SubRep:
    """Smallest submodule containing the given ``(vertex, vector)`` pairs."""
    builders = {v: EchelonBuilder(m.field, m.dims[v]) for v in m.vertices}
    queue = deque()
    for v, vec in vectors:
        if v not in m.dims or len(vec) != m.dims[v]:
            raise ModuleError(f"vector outside the ambient space at vertex {v!r}")
        vec = tuple(m.field(x) for x in vec)
        if builders[v].add(vec):
            queue.append((v, vec))
    out_arrows = {v: [a for a in m.arrows if a.source == v] for v in m.vertices}
    while queue:
        v, vec = queue.popleft()
        for a in out_arrows[v]:
            w = m.maps[a.name].apply(vec)
            if any(w) and builders[a.target].add(w):
                queue.append((a.target, w))
    return SubRep(m, {v: b.subspace() for v, b in builders.items()}, check=False)


def quotient(m: Representation, s: SubRep) -> tuple[Representation, RepMap]:
    """m/s together with the canonical surjection."""
    if s.parent is not m and s.parent.dims != m.dims:
        raise ModuleError("subrepresentation of a different module")
    if not s.is_stable():
        raise ModuleError("subspace family is not arrow-stable")
    q = {}
    lift = {}
    dims = {}
    for v in m.vertices:
        q[v], dims[v] = quotient_map(m.dims[v], s.spaces[v])
        lift[v] = complement_lift(m.dims[v], s.spaces[v])
    maps = {a.name: q[a.target] @ m.maps[a.name] @ lift[a.source] for a in m.arrows}
    qm = m._new(dims, maps)
    pi = RepMap(m, qm, q, check=False)
    qm._lift = lift
    return qm, pi


def direct_sum_with_maps(mods: Sequence[Representation]):
    """(sum, injections, projections)."""
    if not mods:
        raise ModuleError("empty direct sum")
    first = mods[0]
    field = first.field
    dims = {v: sum(x.dims[v] for x in mods) for v in first.vertices}
    maps = {a.name: block_diag(field, [x.maps[a.name] for x in mods]) for a in first.arrows}
    s = first._new(dims, maps)
    inj, proj = [], []
    offs = {v: 0 for v in first.vertices}
    for x in mods:
        ib, pb = {}, {}
        for v in first.vertices:
            o, d, tot = offs[v], x.dims[v], dims[v]
            ident = Matrix.identity(field, d)
            ib[v] = Matrix._raw(field, [[field.zero] * d for _ in range(o)] + list(ident.rows)
                                + [[field.zero] * d for _ in range(tot - o - d)], d)
            pb[v] = ib[v].T
            offs[v] += d
        inj.append(RepMap(x, s, ib, check=False))
        proj.append(RepMap(s, x, pb, check=False))
    return s, inj, proj


def direct_sum(mods: Sequence[Representation]) -> Representation:
    return direct_sum_with_maps(mods)[0]


def image(f: RepMap) -> SubRep:
    return SubRep(f.target, {v: column_space(b) for v, b in f.blocks.items()}, check=False)


def kernel(f: RepMap) -> SubRep:
    return SubRep(f.source, {v: nullspace(b) for v, b in f.blocks.items()}, check=False)


def push(f: RepMap, s: SubRep) -> SubRep:
    """f(s)."""
    return SubRep(f.target, {v: image_of(f.blocks[v], s.spaces[v]) for v in f.source.vertices},
                  check=False)


def pull(f: RepMap, s: SubRep) -> SubRep:
    """f^{-1}(s)."""
    return SubRep(f.source, {v: preimage(f.blocks[v], s.spaces[v]) for v in f.source.vertices},
                  check=False)


def map_from_cyclic(source: Representation, vertex, gen: Sequence, target: Representation,
                    value: Sequence) -> RepMap:
    """The morphism from a cyclic module sending ``gen`` (at ``vertex``) to ``value``.

    ``source`` must be generated by ``gen`` and ``value`` must satisfy every
    relation ``gen`` does (e.g. ``source`` projective over the relevant
    quotient algebra); the result is checked to be a morphism.
    """
    field = source.field
    builders = {v: EchelonBuilder(field, source.dims[v]) for v in source.vertices}
    kept = {v: [] for v in source.vertices}
    queue = deque()
    gen = tuple(field(x) for x in gen)
    value = tuple(field(x) for x in value)
    if builders[vertex].add(gen):
        kept[vertex].append((gen, value))
        queue.append((vertex, gen, value))
    while queue:
        v, x, y = queue.popleft()
        for a in source.arrows:
            if a.source != v:
                continue
            x2 = source.maps[a.name].apply(x)
            if any(x2) and builders[a.target].add(x2):
                y2 = target.maps[a.name].apply(y)
                kept[a.target].append((x2, y2))
                queue.append((a.target, x2, y2))
    blocks = {}
    for v in source.vertices:
        if len(kept[v]) != source.dims[v]:
            raise ModuleError("source is not generated by the given vector")
        if not kept[v]:
            continue
        b = Matrix.from_columns(field, [x for x, _ in kept[v]], source.dims[v])
        c = Matrix.from_columns(field, [y for _, y in kept[v]], target.dims[v])
        blocks[v] = c @ b.inverse()
    f = RepMap(source, target, blocks, check=False)
    if not f.is_morphism():
        raise ModuleError("prescribed value does not define a morphism from the cyclic module")
    return f


def sum_of_maps_from(summands_maps: Sequence[RepMap], source: Representation,
                     projections: Sequence[RepMap]) -> RepMap:
    """[f_1 ... f_r] : (+) X_k -> M assembled from components."""
    target = summands_maps[0].target
    total = None
    for f, pr in zip(summands_maps, projections):
        g = f @ pr
        total = g if total is None else total + g
    return RepMap(source, target, total.blocks, check=False)


# ---------------------------------------------------------------------------

def quotient_by_socle_component(m: Representation, i) -> Representation:
    """m modulo the full L_i-isotypic part of its socle."""
    s = soc(m)
    comp = SubRep(m, {i: s.spaces[i]}, check=False)
    if comp.is_zero():
        raise ModuleError(f"L_{i} does not occur in the socle")
    return quotient(m, comp)[0]


def socle_multiplicity(m: Representation, i) -> int:
    return soc(m).spaces[i].dim


class Cover(NamedTuple):
    source: Representation
    epi: RepMap
    summands: tuple


def top_lifts(m: Representation) -> list[tuple]:
    """Deterministic lifts of a basis of top(m): unit vectors at the non-pivot coordinates of rad m."""
    r = rad(m)
    out = []
    for v in m.vertices:
        lift = complement_lift(m.dims[v], r.spaces[v])
        for col in lift.columns():
            out.append((v, col))
    return out


def projective_cover_mod_radpower(m: Rep, k: int) -> Cover:
    """Projective cover of ``m`` as an A/rad^k A-module.

    Summand labels are ``(i, j)`` with P_i/rad^j P_i, j = min(k, LL(P_i)).
    """
    if not rad_power(m, k).is_zero():
        raise ModuleError(f"rad^{k} of the module is nonzero")
    a = m.algebra
    lifts = top_lifts(m)
    if not lifts:
        z = Rep(a, {}, {})
        return Cover(z, zero_map(z, m), ())
    pieces, comps, labels = [], [], []
    for v, vec in lifts:
        p = projective(a, v)
        pq, pi = quotient(p, rad_power(p, k))
        gen = pi.blocks[v].apply(generator_vector(p, v))
        pieces.append(pq)
        comps.append((pq, gen, vec))
        labels.append((v, min(k, loewy_length(p))))
    src, _, projs = direct_sum_with_maps(pieces)
    maps = [map_from_cyclic(pq, v, gen, m, vec) for (pq, gen, vec), (v, _) in zip(comps, lifts)]
    epi = sum_of_maps_from(maps, src, projs)
    if not image(epi).is_full():
        raise InvariantError("cover map is not surjective")
    if not kernel(epi) <= rad(src):
        raise InvariantError("cover kernel is not superfluous")
    return Cover(src, epi, tuple(labels))


def base_change(m: Representation, mats: dict) -> Representation:
    """Isomorphic copy with maps g_w M_a g_v^{-1}."""
    inv = {v: g.inverse() for v, g in mats.items()}
    maps = {a.name: mats[a.target] @ m.maps[a.name] @ inv[a.source] for a in m.arrows}
    return m._new(dict(m.dims), maps)
