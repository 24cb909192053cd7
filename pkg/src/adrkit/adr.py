"""The ADR algebra R = End_A(G)^op of a bound quiver algebra A and its modules.

G is the direct sum of the modules G_(i,j) = P_i / rad^j P_i, 1 <= j <= LL(P_i).
A map G_s -> G_t with s = (i, j) is determined by the image of the generator
e_i, which may be any element of e_i soc_j(G_t); this evaluation
isomorphism gives canonical bases for all Hom blocks and for Hom_A(G, M).

R is kept as a structure-constant algebra.  Its modules (:class:`SCModule`)
are stored as representations of the Gabriel quiver of R: vertices are the
labels (i, j) and there is one arrow t -> s for every chosen radical
generator lying in e_s (rad R / rad^2 R) e_t.  Since these generate R, this
records the full action; :meth:`SCModule.act` recovers the action of any
element of R through a word basis.
"""
from __future__ import annotations

from typing import Sequence

from .amod import (Cover, InvariantError, ModuleError, Rep, RepMap, Representation, SubRep,
                   direct_sum_with_maps, generator_vector, hom_space, image, kernel, loewy_length,
                   map_from_cyclic, projective, quotient, rad, rad_power, radical_series,
                   socle_series, sum_of_maps_from, top_dims, top_lifts)
from .exact import EchelonBuilder, Matrix, Subspace, nullspace
from .quiver import Arrow, BoundAlgebra, Quiver


class ADRError(InvariantError):
    """An internal invariant of the ADR construction failed."""


class FieldValidityError(ValueError):
    pass


class SCModule(Representation):
    """A left R-module; ``maps`` holds the action of each radical generator."""

    def __init__(self, ctx: "ADRContext", dims: dict, maps: dict, check: bool = False):
        self.ctx = ctx
        super().__init__(ctx.gabriel, ctx.field, dims, maps, check=check)

    @classmethod
    def _like(cls, proto, dims, maps, check):
        return cls(proto.ctx, dims, maps, check=check)

    def offsets(self) -> dict:
        off, total = {}, 0
        for v in self.vertices:
            off[v] = total
            total += self.dims[v]
        return off

    def act_basis(self, k: int) -> Matrix:
        """Block of the action of R basis element k, from e_t M to e_s M."""
        s, t = self.ctx.blocks_of[k]
        out = Matrix.zeros(self.field, self.dims[s], self.dims[t])
        for c, word in self.ctx.word_expansion[k]:
            out = out + self.act_word(word, t).scale(c)
        return out

    def act(self, elem: Sequence) -> Matrix:
        """Global matrix of the action of an element of R (dense coordinate vector)."""
        n = self.total_dim
        off = self.offsets()
        field = self.field
        rows = [[field.zero] * n for _ in range(n)]
        for k, c in enumerate(elem):
            if not c:
                continue
            s, t = self.ctx.blocks_of[k]
            blk = self.act_basis(k)
            for r in range(blk.nrows):
                for q in range(blk.ncols):
                    x = blk.rows[r][q]
                    if x:
                        rows[off[s] + r][off[t] + q] += c * x
        if field.p is not None:
            rows = [[x % field.p for x in r] for r in rows]
        return Matrix._raw(field, rows, n)

    def global_generator_matrices(self) -> list[Matrix]:
        n = self.total_dim
        off = self.offsets()
        out = []
        for a in self.arrows:
            rows = [[self.field.zero] * n for _ in range(n)]
            blk = self.maps[a.name]
            for r in range(blk.nrows):
                for q in range(blk.ncols):
                    rows[off[a.target] + r][off[a.source] + q] = blk.rows[r][q]
            out.append(Matrix._raw(self.field, rows, n))
        return out


def SCMap(source: SCModule, target: SCModule, blocks: dict, check: bool = True) -> RepMap:
    return RepMap(source, target, blocks, check=check)


class ADRContext:
    """G, R = End_A(G)^op as structure constants, idempotents, radical and Gabriel quiver.

    Basis element k of R is a map G_s -> G_t (``blocks_of[k] == (s, t)``)
    stored as the image ``evals[k]`` of the generator of G_s.  The product
    in R is opposite composition: ``a . b = b o a``.
    """

    def __init__(self, algebra: BoundAlgebra):
        self.algebra = algebra
        self.field = algebra.field
        A = algebra
        self.loewy = {i: loewy_length(projective(A, i)) for i in A.vertices}
        self.labels = [(i, j) for i in A.vertices for j in range(1, self.loewy[i] + 1)]
        self.label_index = {lab: k for k, lab in enumerate(self.labels)}
        self._build_summands()
        self._build_basis()
        self._build_mult()
        self._build_radical()
        self._build_generators()
        self._build_words()
        self._verify()
        self._proj_cache: dict = {}

    # -- G -------------------------------------------------------------------
    def _build_summands(self):
        A = self.algebra
        self.summands: dict = {}
        self.summand_gen: dict = {}
        self.summand_proj: dict = {}
        for (i, j) in self.labels:
            p = projective(A, i)
            g, pi = quotient(p, rad_power(p, j))
            self.summands[(i, j)] = g
            self.summand_proj[(i, j)] = pi
            self.summand_gen[(i, j)] = pi.blocks[i].apply(generator_vector(p, i))
        self._soc_series = {lab: socle_series(g) for lab, g in self.summands.items()}

    def G(self) -> Rep:
        return direct_sum_with_maps([self.summands[lab] for lab in self.labels])[0]

    def hom_block_space(self, s, t) -> Subspace:
        """e_i soc_j(G_t) for s = (i, j): the image-of-generator space of Hom(G_s, G_t)."""
        i, j = s
        ss = self._soc_series[t]
        return ss[min(j, len(ss) - 1)].spaces[i]

    def _build_basis(self):
        self.basis_blocks: dict = {}
        self.blocks_of: list = []
        self.evals: list = []
        for s in self.labels:
            for t in self.labels:
                sp = self.hom_block_space(s, t)
                start = len(self.evals)
                for x in sp.basis:
                    self.blocks_of.append((s, t))
                    self.evals.append(x)
                self.basis_blocks[(s, t)] = range(start, len(self.evals))
        self.dim = len(self.evals)
        self._maps: dict = {}

    def basis_map(self, k: int) -> RepMap:
        """Basis element k as an A-linear map G_s -> G_t."""
        if k not in self._maps:
            s, t = self.blocks_of[k]
            self._maps[k] = map_from_cyclic(self.summands[s], s[0], self.summand_gen[s],
                                            self.summands[t], self.evals[k])
        return self._maps[k]

    def element_map(self, coords: dict, s, t) -> RepMap:
        f = None
        for k, c in coords.items():
            g = self.basis_map(k).scale(c)
            f = g if f is None else f + g
        if f is None:
            return RepMap(self.summands[s], self.summands[t], {}, check=False)
        return f

    def block_coords(self, s, t, x) -> tuple:
        """Coordinates (global R indices) of the map G_s -> G_t sending the generator to x."""
        sp = self.hom_block_space(s, t)
        c = sp.coordinates(x)
        return tuple((k, v) for k, v in zip(self.basis_blocks[(s, t)], c) if v)

    # -- multiplication ------------------------------------------------------
    def _build_mult(self):
        self.mult: dict = {}
        for a in range(self.dim):
            s, t = self.blocks_of[a]
            xa = self.evals[a]
            for u in self.labels:
                for b in self.basis_blocks[(t, u)]:
                    img = self.basis_map(b).blocks[s[0]].apply(xa)
                    self.mult[(a, b)] = self.block_coords(s, u, img)

    def product(self, x: Sequence, y: Sequence) -> tuple:
        """x . y in R (dense coordinate vectors)."""
        field = self.field
        acc = [field.zero] * self.dim
        for a, ca in enumerate(x):
            if not ca:
                continue
            t = self.blocks_of[a][1]
            for u in self.labels:
                for b in self.basis_blocks[(t, u)]:
                    cb = y[b]
                    if cb:
                        for k, c in self.mult[(a, b)]:
                            acc[k] += ca * cb * c
        if field.p is not None:
            acc = [v % field.p for v in acc]
        return tuple(acc)

    def unit_vector(self, k: int) -> tuple:
        v = [self.field.zero] * self.dim
        v[k] = self.field.one
        return tuple(v)

    def idempotent(self, lab) -> tuple:
        v = [self.field.zero] * self.dim
        for k, c in self.block_coords(lab, lab, self.summand_gen[lab]):
            v[k] = c
        return tuple(v)

    def one(self) -> tuple:
        v = [self.field.zero] * self.dim
        for lab in self.labels:
            for k, c in enumerate(self.idempotent(lab)):
                if c:
                    v[k] += c
        return tuple(v)

    # -- radical -------------------------------------------------------------
    def _build_radical(self):
        field = self.field
        if field.p is not None and field.p <= self.dim:
            raise FieldValidityError(
                f"trace-form radical needs characteristic 0 or p > dim R = {self.dim}; got p = {field.p}")
        # trace of left multiplication; only diagonal blocks contribute
        tr = [field.zero] * self.dim
        for c in range(self.dim):
            s, t = self.blocks_of[c]
            if s != t:
                continue
            acc = field.zero
            for u in self.labels:
                for b in self.basis_blocks[(s, u)]:
                    for k, v in self.mult[(c, b)]:
                        if k == b:
                            acc += v
            tr[c] = acc % field.p if field.p else acc
        self.trace_vector = tuple(tr)
        gram = [[field.zero] * self.dim for _ in range(self.dim)]
        for (a, b), prod in self.mult.items():
            val = field.zero
            for k, c in prod:
                if tr[k]:
                    val += c * tr[k]
            if field.p is not None:
                val %= field.p
            gram[a][b] = val
        self.radical = nullspace(Matrix._raw(field, gram, self.dim))
        # split the radical into its Peirce blocks e_s rad e_t
        per_block: dict = {key: [] for key in self.basis_blocks}
        for vec in self.radical.basis:
            for key, rng in self.basis_blocks.items():
                part = [vec[k] if k in rng else field.zero for k in range(self.dim)]
                if any(part):
                    per_block[key].append(part)
        self.rad_blocks = {key: Subspace(field, self.dim, vs) for key, vs in per_block.items()}
        if sum(sp.dim for sp in self.rad_blocks.values()) != self.radical.dim:
            raise ADRError("radical is not a sum of Peirce blocks")

    def _build_generators(self):
        field = self.field
        rad2: dict = {key: [] for key in self.basis_blocks}
        for (s, t), sp in self.rad_blocks.items():
            for u in self.labels:
                other = self.rad_blocks[(t, u)]
                for x in sp.basis:
                    for y in other.basis:
                        z = self.product(x, y)
                        if any(z):
                            rad2[(s, u)].append(z)
        self.rad2_blocks = {key: Subspace(field, self.dim, vs) for key, vs in rad2.items()}
        arrows = []
        self.generators = []   # (name, s, t, coordinate vector)
        for (s, t), sp in self.rad_blocks.items():
            eb = EchelonBuilder(field, self.dim)
            for v in self.rad2_blocks[(s, t)].basis:
                eb.add(v)
            for v in sp.basis:
                if eb.add(v):
                    name = f"r{len(self.generators)}"
                    self.generators.append((name, s, t, tuple(v)))
                    arrows.append(Arrow(name, t, s))
        self.gabriel = Quiver(tuple(self.labels), tuple(arrows))
        # each generator as an element of e_i A e_k acting on A-modules
        self.gen_eval = {}
        self.gen_element = {}
        A = self.algebra
        for name, s, t, v in self.generators:
            i, k = s[0], t[0]
            dim_ti = self.summands[t].dims[i]
            x = [field.zero] * dim_ti
            for idx in self.basis_blocks[(s, t)]:
                c = v[idx]
                if c:
                    for r, e in enumerate(self.evals[idx]):
                        if e:
                            x[r] += c * e
            if field.p is not None:
                x = [e % field.p for e in x]
            self.gen_eval[name] = tuple(x)
            lift = self.summands[t]._lift[i]
            pk = projective(A, k)
            up = lift.apply(x)
            self.gen_element[name] = {pk.path_basis[i][r]: c for r, c in enumerate(up) if c}

    def _build_words(self):
        """Express every basis element of R as a combination of generator words."""
        field = self.field
        gens_from = {}
        for name, s, t, _ in self.generators:
            gens_from.setdefault(s, []).append((name, t))
        self._gen_map = {}
        for name, s, t, v in self.generators:
            coords = {k: v[k] for k in self.basis_blocks[(s, t)] if v[k]}
            self._gen_map[name] = self.element_map(coords, s, t)
        self.word_expansion: list = [None] * self.dim
        for s in self.labels:
            i = s[0]
            builders = {u: EchelonBuilder(field, self.hom_block_space(s, u).dim) for u in self.labels}
            found = {u: [] for u in self.labels}
            start = self.summand_gen[s]
            sp = self.hom_block_space(s, s)
            builders[s].add(sp.coordinates(start))
            found[s].append(((), start))
            frontier = [(s, (), start)]
            while frontier:
                nxt = []
                for t, word, x in frontier:
                    for name, u in gens_from.get(t, []):
                        y = self._gen_map[name].blocks[i].apply(x)
                        if not any(y):
                            continue
                        cu = self.hom_block_space(s, u).coordinates(y)
                        if builders[u].add(cu):
                            w2 = word + (name,)
                            found[u].append((w2, y))
                            nxt.append((u, w2, y))
                frontier = nxt
            for u in self.labels:
                rng = self.basis_blocks[(s, u)]
                spu = self.hom_block_space(s, u)
                if len(found[u]) != len(rng):
                    raise ADRError(f"generators do not span block {(s, u)}")
                if not rng:
                    continue
                wmat = Matrix.from_columns(field, [spu.coordinates(y) for _, y in found[u]], spu.dim)
                winv = wmat.inverse()
                for col, k in enumerate(rng):
                    coeffs = winv.col(col)
                    self.word_expansion[k] = tuple((c, w) for c, (w, _) in zip(coeffs, found[u]) if c)

    # -- checks ----------------------------------------------------------------
    def _verify(self):
        field = self.field
        if self.dim - self.radical.dim != len(self.labels):
            raise ADRError(f"dim R/rad R = {self.dim - self.radical.dim}, expected {len(self.labels)}")
        one = self.one()
        for k in range(self.dim):
            e = self.unit_vector(k)
            if self.product(one, e) != e or self.product(e, one) != e:
                raise ADRError("sum of idempotents is not the unit")
        for lab in self.labels:
            e = self.idempotent(lab)
            if self.product(e, e) != e:
                raise ADRError(f"e_{lab} is not idempotent")
            # End(G_lab) local: its radical part has codimension one and misses the identity
            blk = self.basis_blocks[(lab, lab)]
            if len(blk) - self.rad_blocks[(lab, lab)].dim != 1 or self.radical.contains(e):
                raise ADRError(f"End(G_{lab}) is not local")
        # two-sided ideal
        for x in self.radical.basis:
            for k in range(self.dim):
                e = self.unit_vector(k)
                if not self.radical.contains(self.product(x, e)) or \
                        not self.radical.contains(self.product(e, x)):
                    raise ADRError("radical is not a two-sided ideal")
        # nilpotent
        power = self.radical
        for _ in range(self.dim + 1):
            if power.dim == 0:
                break
            power = Subspace(field, self.dim,
                             [self.product(x, y) for x in power.basis for y in self.radical.basis])
        if power.dim:
            raise ADRError("radical is not nilpotent")

    # -- functor Hom_A(G, -) ---------------------------------------------------
    def hom_G(self, m: Rep) -> SCModule:
        """Hom_A(G, m) with e_(i,j) part identified with e_i soc_j(m) by evaluation."""
        cache = m.__dict__.setdefault("_homG", {})
        if id(self) in cache:
            return cache[id(self)]
        if m.algebra is not self.algebra:
            raise ModuleError("module over a different algebra")
        ss = socle_series(m)
        spaces = {}
        for (i, j) in self.labels:
            spaces[(i, j)] = ss[min(j, len(ss) - 1)].spaces[i]
        dims = {lab: sp.dim for lab, sp in spaces.items()}
        maps = {}
        for name, s, t, _ in self.generators:
            act = m.act_element(self.gen_element[name], t[0], s[0])
            tgt = spaces[s]
            cols = [tgt.coordinates(act.apply(y)) for y in spaces[t].basis]
            maps[name] = Matrix.from_columns(self.field, cols, tgt.dim)
        out = SCModule(self, dims, maps)
        out.origin = m
        out.eval_spaces = spaces
        cache[id(self)] = out
        return out

    def hom_G_map(self, f: RepMap) -> RepMap:
        src, tgt = self.hom_G(f.source), self.hom_G(f.target)
        blocks = {}
        for (i, j) in self.labels:
            a, b = src.eval_spaces[(i, j)], tgt.eval_spaces[(i, j)]
            cols = [b.coordinates(f.blocks[i].apply(y)) for y in a.basis]
            blocks[(i, j)] = Matrix.from_columns(self.field, cols, b.dim)
        return RepMap(src, tgt, blocks, check=False)

    def projective_R(self, lab) -> SCModule:
        """P_(i,j) = Hom_A(G, G_(i,j)); top L_(i,j)."""
        if lab not in self.label_index:
            raise ModuleError(f"label {lab} not in Lambda")
        return self.hom_G(self.summands[lab])

    def projective_generator(self, lab) -> tuple:
        """The identity of G_lab as a vector at vertex lab of P_lab."""
        p = self.projective_R(lab)
        return p.eval_spaces[lab].coordinates(self.summand_gen[lab])

    def simple_R(self, lab) -> SCModule:
        return SCModule(self, {lab: 1}, {})

    def zero_R(self) -> SCModule:
        return SCModule(self, {}, {})

    def yoneda_transport(self, lab, f: RepMap) -> RepMap:
        """The A-map G_lab -> M corresponding to f : P_lab -> hom_G(M)."""
        tgt = f.target
        if not hasattr(tgt, "origin"):
            raise ModuleError("target of f must be of the form hom_G(M)")
        coords = f.blocks[lab].apply(self.projective_generator(lab))
        x = tgt.eval_spaces[lab].combine(coords)
        return map_from_cyclic(self.summands[lab], lab[0], self.summand_gen[lab], tgt.origin, x)

    def __repr__(self):
        return (f"ADRContext({self.algebra.name}: |Lambda|={len(self.labels)}, dim R={self.dim}, "
                f"dim rad R={self.radical.dim})")


def build_context(a: BoundAlgebra) -> ADRContext:
    return ADRContext(a)


# ---------------------------------------------------------------------------
# R-module primitives

def sc_radical_series(m: SCModule) -> list[SubRep]:
    return radical_series(m)


def sc_socle_series(m: SCModule) -> list[SubRep]:
    return socle_series(m)


def sc_top(m: SCModule) -> dict:
    return {lab: d for lab, d in top_dims(m).items() if d}


def sc_loewy_length(m: SCModule) -> int:
    return loewy_length(m)


def comp_multiplicities(m: SCModule) -> dict:
    """[M : L_(i,j)] = dim e_(i,j) M (R is split basic, checked when the context is built)."""
    return {lab: d for lab, d in m.dims.items() if d}


def sc_hom(m: SCModule, n: SCModule) -> list[RepMap]:
    return hom_space(m, n)


def sc_projective_cover(m: SCModule) -> Cover:
    """Projective cover (+) P_lab^(c_lab) -> m, generators sent to the canonical top lifts."""
    ctx = m.ctx
    lifts = top_lifts(m)
    if not lifts:
        z = ctx.zero_R()
        return Cover(z, RepMap(z, m, {}, check=False), ())
    pieces = [ctx.projective_R(lab) for lab, _ in lifts]
    src, _, projs = direct_sum_with_maps(pieces)
    comps = [map_from_cyclic(ctx.projective_R(lab), lab, ctx.projective_generator(lab), m, vec)
             for lab, vec in lifts]
    epi = sum_of_maps_from(comps, src, projs)
    if not image(epi).is_full():
        raise ADRError("projective cover is not surjective")
    if not kernel(epi) <= rad(src):
        raise ADRError("projective cover kernel not in the radical")
    cov = Cover(src, epi, tuple(lab for lab, _ in lifts))
    return cov


def yoneda_transport(ctx: ADRContext, lab, f: RepMap) -> RepMap:
    return ctx.yoneda_transport(lab, f)
