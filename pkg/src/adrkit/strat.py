"""Standard modules of the ADR algebra, the preradical delta and Delta-semisimple filtrations.

Also hosts the standard modules of a general basic algebra with a vertex
order, computed as trace quotients of projectives.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

from .adr import ADRContext, ADRError, SCModule
from .amod import (ModuleError, Rep, RepMap, Representation, SubRep, direct_sum,
                   direct_sum_with_maps, find_isomorphism, hom_space, image,
                   kernel, projective, pull, quotient, rad, rad_power,
                   radical_series, soc, socle_series, sub_generated, top_dims, whole, zero_sub)
from .quiver import BoundAlgebra


def label_str(lab) -> str:
    return f"({lab[0]},{lab[1]})"


# ---------------------------------------------------------------------------
# trace and reject

def trace(thetas: Sequence[Representation], m: Representation) -> SubRep:
    """Sum of the images of all maps U -> m with U in ``thetas``."""
    total = zero_sub(m)
    for u in thetas:
        for f in hom_space(u, m):
            total = total + image(f)
    return total


def reject(m: Representation, thetas: Sequence[Representation]) -> SubRep:
    """Intersection of the kernels of all maps m -> U with U in ``thetas``."""
    total = whole(m)
    for u in thetas:
        for f in hom_space(m, u):
            total = total & kernel(f)
    return total


# ---------------------------------------------------------------------------
# standard modules of R

@dataclass
class StandardModule:
    label: tuple
    module: SCModule            # rad^{j-1} P_{i,1}
    cokernel: SCModule          # P_{i,j} / Hom(G, rad P_i / rad^j P_i)
    iso: RepMap                 # certified module -> cokernel
    projective_dim: int         # dim P_{i,j}
    kernel_dim: int             # dim Hom(G, rad P_i / rad^j P_i)

    @property
    def composition_length(self) -> int:
        return self.module.total_dim


def _radical_of_summand(ctx: ADRContext, lab):
    """rad G_lab as an A-module with its inclusion into G_lab."""
    g = ctx.summands[lab]
    return rad(g).as_rep()


def standard_module(ctx: ADRContext, lab) -> StandardModule:
    """Delta(i,j) realized twice and certified isomorphic.

    The first realization is rad^{j-1} of P_{i,1} = Hom(G, L_i); the second
    is the cokernel of Hom(G, -) applied to rad G_{i,j} -> G_{i,j}.
    """
    cache = ctx.__dict__.setdefault("_standards", {})
    if lab in cache:
        return cache[lab]
    if lab not in ctx.label_index:
        raise ModuleError(f"label {lab} not in Lambda")
    i, j = lab
    top_projective = ctx.projective_R((i, 1))
    first, _ = rad_power(top_projective, j - 1).as_rep()
    sub, incl = _radical_of_summand(ctx, lab)
    pj = ctx.projective_R(lab)
    emb = ctx.hom_G_map(incl)
    if not emb.is_injective():
        raise ADRError(f"Hom(G, -) of rad G_{lab} -> G_{lab} is not injective")
    second, _ = quotient(pj, image(emb))
    iso = find_isomorphism(first, second)
    if iso is None:
        raise ADRError(f"the two realizations of Delta{lab} are not isomorphic")
    out = StandardModule(lab, first, second, iso, pj.total_dim, emb.source.total_dim)
    cache[lab] = out
    return out


def standard_family(ctx: ADRContext) -> dict:
    return {lab: standard_module(ctx, lab) for lab in ctx.labels}


def standards(ctx: ADRContext) -> list[SCModule]:
    return [standard_module(ctx, lab).module for lab in ctx.labels]


def uniserial_chain(m: Representation) -> list | None:
    """Vertices of the radical layers when every layer is simple, else None."""
    chain = []
    series = radical_series(m)
    for upper, lower in zip(series, series[1:]):
        dims = {v: upper.spaces[v].dim - lower.spaces[v].dim for v in m.vertices}
        nz = [v for v, d in dims.items() if d]
        if len(nz) != 1 or dims[nz[0]] != 1:
            return None
        chain.append(nz[0])
    return chain


# ---------------------------------------------------------------------------
# delta and Delta-semisimplicity

def delta_preradical(ctx: ADRContext, m: SCModule) -> SubRep:
    """delta(m): the trace of the standard modules in m."""
    return trace(standards(ctx), m)


def _top_label(ctx, lab):
    return (lab[0], ctx.loewy[lab[0]])


def is_delta_good(m: SCModule) -> bool:
    """soc m only contains simples L_(i, l_i)."""
    ctx = m.ctx
    s = soc(m)
    return all(s.spaces[lab].dim == 0 for lab in ctx.labels if lab[1] != ctx.loewy[lab[0]])


def delta_factor_count(m: SCModule) -> int:
    ctx = m.ctx
    return sum(m.dims[(i, ctx.loewy[i])] for i in ctx.algebra.vertices)


@dataclass
class DeltaSSDecision:
    value: bool
    decomposition: dict = dc_field(default_factory=dict)
    iso: RepMap | None = None
    reason: str = ""


def is_delta_semisimple(m: SCModule) -> DeltaSSDecision:
    """Decide whether m is a direct sum of standard modules, with a certified isomorphism."""
    ctx = m.ctx
    if not is_delta_good(m):
        return DeltaSSDecision(False, reason="not Delta-good: socle has a simple L_(i,j) with j < l_i")
    socle_count = soc(m).total_dim
    factors = delta_factor_count(m)
    if socle_count != factors:
        return DeltaSSDecision(False, reason=f"socle has {socle_count} simple summands but "
                                             f"{factors} Delta-factors")
    decomposition = {lab: d for lab, d in top_dims(m).items() if d}
    if m.total_dim == 0:
        return DeltaSSDecision(True, {}, RepMap(m, m, {}, check=False))
    pieces = [standard_module(ctx, lab).module
              for lab in ctx.labels for _ in range(decomposition.get(lab, 0))]
    target = direct_sum(pieces)
    iso = find_isomorphism(m, target)
    if iso is None:
        raise ADRError("socle count equals Delta-factor count but no isomorphism "
                       "onto the direct sum of standards was found")
    return DeltaSSDecision(True, decomposition, iso)


@dataclass
class DeltaSSFiltration:
    module: SCModule
    chain: list                 # SubRep terms delta_0 = 0, ..., delta_m = module
    layers: list                # one {label: multiplicity} per factor delta_k / delta_{k-1}

    @property
    def length(self) -> int:
        return len(self.layers)

    def chain_dims(self) -> list[int]:
        return [s.total_dim for s in self.chain]

    def to_dict(self) -> dict:
        return {
            "length": self.length,
            "chain_dims": self.chain_dims(),
            "layers": [[{"label": [lab[0], lab[1]], "multiplicity": c}
                        for lab, c in sorted(layer.items())] for layer in self.layers],
        }


def delta_ss_filtration(m: SCModule) -> DeltaSSFiltration:
    """0 = delta_0 < delta_1 < ... < delta_m = m with delta_{k+1}/delta_k = delta(m/delta_k)."""
    if not is_delta_good(m):
        raise ModuleError("module is not Delta-good")
    ctx = m.ctx
    chain = [zero_sub(m)]
    layers = []
    while not chain[-1].is_full():
        q, pi = quotient(m, chain[-1])
        d = delta_preradical(ctx, q)
        if d.is_zero():
            raise ADRError("delta of a nonzero Delta-good quotient vanished")
        layer, _ = d.as_rep()
        decision = is_delta_semisimple(layer)
        if not decision.value:
            raise ADRError(f"filtration layer is not Delta-semisimple: {decision.reason}")
        layers.append(decision.decomposition)
        chain.append(pull(pi, d))
    return DeltaSSFiltration(m, chain, layers)


# ---------------------------------------------------------------------------
# socle correspondence

@dataclass
class CorrespondenceReport:
    loewy_length: int
    filtration: DeltaSSFiltration
    checks: list = dc_field(default_factory=list)    # (name, ok)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.checks)

    def violations(self) -> list[str]:
        return [name for name, ok in self.checks if not ok]


def socle_layer_law(m: Rep) -> list[dict]:
    """Expected layers: layer j is the sum of Delta(x, j) over the simples L_x in soc_j m / soc_{j-1} m."""
    ss = socle_series(m)
    out = []
    for j in range(1, len(ss)):
        out.append({(x, j): ss[j].spaces[x].dim - ss[j - 1].spaces[x].dim
                    for x in m.vertices if ss[j].spaces[x].dim > ss[j - 1].spaces[x].dim})
    return out


def verify_socle_correspondence(ctx: ADRContext, m: Rep) -> CorrespondenceReport:
    """Check delta_k(Hom(G, m)) = Hom(G, soc_k m) and the layer and trace laws."""
    n = ctx.hom_G(m)
    filt = delta_ss_filtration(n)
    ss = socle_series(m)
    report = CorrespondenceReport(len(ss) - 1, filt)
    report.checks.append(("delta-ss length equals LL(M)", filt.length == len(ss) - 1))
    for k in range(len(ss)):
        sub, incl = ss[k].as_rep()
        expected = image(ctx.hom_G_map(incl))
        got = filt.chain[k] if k < len(filt.chain) else None
        report.checks.append((f"delta_{k} = Hom(G, soc_{k} M)", got is not None and got == expected))
    law = socle_layer_law(m)
    for j, layer in enumerate(filt.layers, start=1):
        want = law[j - 1] if j - 1 < len(law) else None
        report.checks.append((f"layer {j} follows the socle layers", layer == want))
    for k in range(1, len(filt.chain)):
        gens = [(lab, vec) for lab in ctx.labels if lab[1] <= k
                for vec in _unit_vectors(n, lab)]
        report.checks.append((f"delta_{k} is generated by P_(x,l) with l <= {k}",
                              sub_generated(n, gens) == filt.chain[k]))
    return report


def _unit_vectors(m: Representation, v):
    d = m.dims[v]
    for r in range(d):
        yield tuple(m.field.one if c == r else m.field.zero for c in range(d))


# ---------------------------------------------------------------------------
# extensions by pushout

def extension_by_pushout(ctx: ADRContext, sub_label, top_label, coeffs: Sequence[int]):
    """An extension 0 -> Delta(sub) -> X -> Delta(top) -> 0.

    Uses the presentation 0 -> K -> P_top -> Delta(top) -> 0 and pushes out
    along the map K -> Delta(sub) given by ``coeffs`` in the canonical Hom basis.
    Returns (X, inclusion of Delta(sub), projection onto Delta(top) realized as
    the cokernel module).
    """
    lower = standard_module(ctx, sub_label).module
    upper = standard_module(ctx, top_label)
    sub, incl = _radical_of_summand(ctx, top_label)
    kmod = ctx.hom_G(sub)
    emb = ctx.hom_G_map(incl)
    pj = emb.target
    basis = hom_space(kmod, lower)
    h = None
    for c, g in zip(coeffs, basis):
        if c:
            t = g.scale(c)
            h = t if h is None else h + t
    if h is None:
        h = RepMap(kmod, lower, {}, check=False)
    total, inj, proj = direct_sum_with_maps([lower, pj])
    graph = inj[0] @ h + inj[1] @ emb.scale(-1)
    x, pi = quotient(total, image(graph))
    return x, pi @ inj[0], upper


# ---------------------------------------------------------------------------
# standard modules of a general basic algebra

def order_from_sequence(seq: Sequence) -> Callable:
    """The total order in which ``seq`` is increasing."""
    pos = {v: k for k, v in enumerate(seq)}
    return lambda a, b: pos[a] <= pos[b]


def general_standard_modules(b: BoundAlgebra, leq: Callable) -> dict:
    """Delta(i) = P_i modulo the trace of all P_j with j not <= i."""
    out = {}
    for i in b.vertices:
        p = projective(b, i)
        gens = [(j, vec) for j in b.vertices if not leq(j, i) for vec in _unit_vectors(p, j)]
        tr = sub_generated(p, gens)
        out[i], _ = quotient(p, tr)
    return out


@dataclass
class GeneralDeltaSSDecision:
    value: bool
    decomposition: dict | None
    iso: RepMap | None
    reason: str


def general_is_delta_semisimple(m: Rep, stds: dict) -> GeneralDeltaSSDecision:
    """Whether m is a direct sum of the given standard modules.

    Every multiset of standards with the dimension vector of m is tried; a
    negative answer with no candidate multiset is a proof by dimension count.
    """
    target = m.dim_vector()
    verts = list(stds)
    dvs = {v: stds[v].dim_vector() for v in verts}
    candidates = []

    def search(k, remaining, chosen):
        if k == len(verts):
            if not any(remaining):
                candidates.append(dict(chosen))
            return
        v = verts[k]
        dv = dvs[v]
        c = 0
        rem = remaining
        while all(x >= 0 for x in rem):
            chosen[v] = c
            search(k + 1, rem, chosen)
            if not any(dv):
                break
            c += 1
            rem = tuple(x - y for x, y in zip(rem, dv))
        chosen.pop(v, None)

    search(0, target, {})
    if not candidates:
        return GeneralDeltaSSDecision(False, None, None, "no multiset of standard modules has "
                                                         "the dimension vector of the module")
    for cand in candidates:
        pieces = [stds[v] for v in verts for _ in range(cand[v])]
        iso = find_isomorphism(m, direct_sum(pieces)) if pieces else None
        if iso is not None:
            return GeneralDeltaSSDecision(True, {v: c for v, c in cand.items() if c}, iso, "")
    return GeneralDeltaSSDecision(False, None, None, "dimension vectors match but no isomorphism found")
