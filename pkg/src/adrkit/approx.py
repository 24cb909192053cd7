"""Add(G)-approximations, minimal projective resolutions over R and the DLL audit."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .adr import (ADRContext, ADRError, SCModule, build_context, comp_multiplicities,
                  sc_loewy_length, sc_projective_cover, sc_top)
from .amod import (ModuleError, Rep, RepMap, direct_sum_with_maps, image, is_rigid, kernel,
                   loewy_length, projective, projective_cover_mod_radpower, quotient, rad,
                   radical_series, soc, sub_generated, sum_of_maps_from)
from .corpus import a_family
from .strat import delta_ss_filtration, standard_module, uniserial_chain


class NotRigidError(ModuleError):
    pass


def multiset(labels: Sequence) -> dict:
    return dict(sorted(Counter(labels).items()))


def multiset_json(ms: dict) -> list:
    return [{"label": [lab[0], lab[1]], "multiplicity": c} for lab, c in sorted(ms.items())]


# ---------------------------------------------------------------------------
# approximations

@dataclass
class ApproxResult:
    summands: dict
    source: Rep
    epi: RepMap
    is_approximation: bool
    is_right_minimal: bool

    def to_dict(self) -> dict:
        return {"summands": multiset_json(self.summands),
                "source_dim": self.source.total_dim,
                "is_approximation": self.is_approximation,
                "is_right_minimal": self.is_right_minimal}


def _check_approximation(ctx: ADRContext, epi: RepMap) -> tuple[bool, bool]:
    """(Add(G)-approximation, right minimal), both read off Hom(G, epi).

    Every Hom(G_s, M) factoring through epi means Hom(G, epi) is onto; right
    minimality means its kernel lies in the radical of Hom(G, source).
    """
    h = ctx.hom_G_map(epi)
    surjective = image(epi).is_full()
    approximation = surjective and image(h).is_full()
    minimal = kernel(h) <= rad(h.source)
    return approximation, minimal


def approx_rigid(ctx: ADRContext, m: Rep) -> ApproxResult:
    """The projective cover over A/rad^LL(m) A, valid as an approximation for rigid m."""
    if m.is_zero():
        raise ModuleError("the zero module has no nonzero approximation")
    if not is_rigid(m):
        raise NotRigidError("module is not rigid; use approx_general")
    cov = projective_cover_mod_radpower(m, loewy_length(m))
    ok, minimal = _check_approximation(ctx, cov.epi)
    return ApproxResult(multiset(cov.summands), cov.source, cov.epi, ok, minimal)


def approx_general(ctx: ADRContext, m: Rep) -> ApproxResult:
    """Transport the projective cover of Hom(G, m) back to an A-map from Add(G)."""
    if m.is_zero():
        raise ModuleError("the zero module has no nonzero approximation")
    cov = sc_projective_cover(ctx.hom_G(m))
    _, r_inj, _ = direct_sum_with_maps([ctx.projective_R(lab) for lab in cov.summands])
    comps = [ctx.yoneda_transport(lab, cov.epi @ inj) for lab, inj in zip(cov.summands, r_inj)]
    source, _, projs = direct_sum_with_maps([ctx.summands[lab] for lab in cov.summands])
    epi = sum_of_maps_from(comps, source, projs)
    if not epi.is_morphism():
        raise ADRError("transported approximation is not A-linear")
    ok, minimal = _check_approximation(ctx, epi)
    return ApproxResult(multiset(cov.summands), source, epi, ok, minimal)


# ---------------------------------------------------------------------------
# resolutions

@dataclass
class ResolutionStep:
    summands: dict
    loewy_length: int
    addg_loewy_length: int
    map: RepMap                 # P_k -> P_{k-1} (or -> m for k = 0)


@dataclass
class ResolutionReport:
    module: SCModule
    steps: list
    truncated: bool
    exact: bool

    @property
    def loewy_lengths(self) -> list[int]:
        return [s.loewy_length for s in self.steps]

    @property
    def first_violation(self) -> int | None:
        """Smallest k >= 1 with LL(P_{k+1}) >= LL(P_k)."""
        ll = self.loewy_lengths
        for k in range(1, len(ll) - 1):
            if ll[k + 1] >= ll[k]:
                return k
        return None

    @property
    def dll_ok(self) -> bool:
        return self.first_violation is None

    def to_dict(self) -> dict:
        return {
            "module_dim": self.module.total_dim,
            "steps": [{"index": k, "summands": multiset_json(s.summands),
                       "loewy_length": s.loewy_length, "addg_loewy_length": s.addg_loewy_length}
                      for k, s in enumerate(self.steps)],
            "dll_ok": self.dll_ok,
            "first_violation": self.first_violation,
            "truncated": self.truncated,
            "exact": self.exact,
        }


def minimal_resolution_R(m: SCModule, max_steps: int = 32) -> ResolutionReport:
    """Iterated projective covers of successive kernels, at most ``max_steps`` covers."""
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    steps = []
    current, into_prev = m, None
    exact = True
    truncated = False
    while not current.is_zero():
        if len(steps) == max_steps:
            truncated = True
            break
        cov = sc_projective_cover(current)
        d = cov.epi if into_prev is None else into_prev @ cov.epi
        if steps:
            prev = steps[-1].map
            exact = exact and (prev @ d).is_zero() and image(d) == kernel(prev)
        summands = multiset(cov.summands)
        steps.append(ResolutionStep(summands, sc_loewy_length(cov.source),
                                    max(lab[1] for lab in summands), d))
        current, into_prev = kernel(cov.epi).as_rep()
    return ResolutionReport(m, steps, truncated, exact)


@dataclass
class AddGAudit:
    loewy_lengths: list         # LL_A(X_k) = max j over the summands G_(i,j) of step k
    violations: list            # indices k >= 1 with LL(X_{k+1}) >= LL(X_k)
    truncated: bool

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"addg_loewy_lengths": self.loewy_lengths, "violations": self.violations,
                "ok": self.ok, "truncated": self.truncated}


def addG_loewy_audit(m: SCModule, max_steps: int = 32) -> AddGAudit:
    res = minimal_resolution_R(m, max_steps)
    ll = [s.addg_loewy_length for s in res.steps]
    bad = [k for k in range(1, len(ll) - 1) if ll[k + 1] >= ll[k]]
    return AddGAudit(ll, bad, res.truncated)


# ---------------------------------------------------------------------------
# Ext^1 between simples

@dataclass
class Ext1Row:
    label: tuple
    targets: dict               # (k, l) -> dim Ext^1(L_label, L_(k,l))
    rigid: bool
    violations: list


def ext1_support(ctx: ADRContext) -> list[Ext1Row]:
    """Read Ext^1(L_(i,j), -) off rad P_(i,j) / rad^2 P_(i,j) and test the label constraint.

    Allowed targets are (i, j+1) and labels (k, l) with l <= j-1; when G_(i,j)
    is rigid the second case tightens to l = j-1.
    """
    rows = []
    for lab in ctx.labels:
        i, j = lab
        p = ctx.projective_R(lab)
        series = radical_series(p)
        r1 = series[1] if len(series) > 1 else None
        r2 = series[2] if len(series) > 2 else None
        targets = {}
        if r1 is not None:
            for v in ctx.labels:
                d = r1.spaces[v].dim - (r2.spaces[v].dim if r2 is not None else 0)
                if d:
                    targets[v] = d
        rigid = is_rigid(ctx.summands[lab])
        bad = []
        for (k, l) in targets:
            if (k, l) == (i, j + 1):
                continue
            if l > j - 1 or (rigid and l != j - 1):
                bad.append((k, l))
        rows.append(Ext1Row(lab, targets, rigid, bad))
    return rows


# ---------------------------------------------------------------------------
# the A(n) family

@dataclass
class CounterexampleReport:
    n: int
    checks: list                # (name, expected, computed)
    resolution: ResolutionReport

    @property
    def ll_pair(self) -> tuple:
        ll = self.resolution.loewy_lengths
        return (ll[1] if len(ll) > 1 else 0, ll[2] if len(ll) > 2 else 0)

    @property
    def dll_ok(self) -> bool:
        return self.resolution.dll_ok

    @property
    def failures(self) -> list:
        return [c for c in self.checks if c[1] != c[2]]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "checks": [{"name": name, "expected": _jsonable(e), "computed": _jsonable(c),
                        "ok": e == c} for name, e, c in self.checks],
            "ll_pair": list(self.ll_pair),
            "dll_ok": self.dll_ok,
            "resolution": self.resolution.to_dict(),
        }


def _jsonable(x):
    if isinstance(x, dict):
        return [[_jsonable(k), _jsonable(v)] for k, v in sorted(x.items())]
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    if isinstance(x, list):
        return [_jsonable(y) for y in x]
    return x


def counterexample_driver(n: int, max_steps: int = 32) -> CounterexampleReport:
    """Build R for A(n), check the structure around P_(3,3) and resolve M = P_(3,3)/soc."""
    a = a_family(n)
    ctx = build_context(a)
    # longest nonzero path from vertex 1: the eps-chain, or b1*a1 followed by one arrow
    l1 = max(n, 3)
    checks = []
    p33 = ctx.projective_R((3, 3))
    p22 = ctx.projective_R((2, 2))
    checks.append(("dim P_(3,3)", 6, p33.total_dim))
    checks.append(("LL P_(3,3)", 5, sc_loewy_length(p33)))
    checks.append(("LL P_(2,2)", 1 + l1, sc_loewy_length(p22)))
    checks.append(("LL Delta(1,1)", l1, sc_loewy_length(standard_module(ctx, (1, 1)).module)))
    rad_p3, _ = rad(projective(a, 3)).as_rep()
    n1 = ctx.hom_G(rad_p3)
    checks.append(("LL N_1", 4, sc_loewy_length(n1)))
    checks.append(("composition length N_1", 5, sum(comp_multiplicities(n1).values())))
    checks.append(("top N_1", {(2, 2): 1}, sc_top(n1)))
    filt = delta_ss_filtration(n1)
    checks.append(("Delta-ss layers of N_1", [{(3, 1): 1}, {(2, 2): 1}], filt.layers))
    n2_gens = [((2, 3), vec) for vec in _basis_vectors(n1, (2, 3))]
    n2, _ = sub_generated(n1, n2_gens).as_rep()
    checks.append(("factor chain of N_2", [(2, 3), (3, 2), (3, 3)], uniserial_chain(n2)))
    socle = soc(p33)
    checks.append(("soc P_(3,3)", {(3, 3): 1}, {v: d for v, d in socle.dims.items() if d}))
    m, _ = quotient(p33, socle)
    res = minimal_resolution_R(m, max_steps)
    return CounterexampleReport(n, checks, res)


def _basis_vectors(m, v):
    d = m.dims[v]
    return [tuple(m.field.one if c == r else m.field.zero for c in range(d)) for r in range(d)]

