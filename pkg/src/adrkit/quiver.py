"""Quivers, the algebra text format and bound quiver algebras KQ/I.

Paths compose like functions: ``p*q`` means "first q, then p".  A path is
stored as the tuple of arrow indices in written order, so the rightmost arrow
is applied first.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .exact import EchelonBuilder, Field, FieldError, QQ, Subspace, parse_field


class Arrow(NamedTuple):
    name: str
    source: object
    target: object


@dataclass(frozen=True)
class Quiver:
    """Finite quiver; loops and multiple arrows are allowed."""

    vertices: tuple
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("arrow names must be unique")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise ValueError(f"arrow {a.name} has an endpoint outside the vertex set")

    @property
    def arrow_index(self) -> dict[str, int]:
        return {a.name: k for k, a in enumerate(self.arrows)}

    def arrows_from(self, v) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def arrows_to(self, v) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]


class Path(NamedTuple):
    source: object
    target: object
    arrows: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.arrows)


# A relation is a tuple of (coefficient, arrow-index tuple) terms.
Relation = tuple


@dataclass(frozen=True)
class Presentation:
    name: str
    field: Field
    params: tuple[tuple[str, int], ...]
    quiver: Quiver
    relations: tuple[Relation, ...]


class ParseError(ValueError):
    def __init__(self, msg: str, line: int = 0, col: int = 0):
        super().__init__(f"line {line}, col {col}: {msg}" if line else msg)
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# text format

_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_TOKEN = re.compile(rf"\s*(?:(?P<int>\d+)|(?P<name>{_NAME})|(?P<op>[-+*^]))")


def _tokenize(text: str, lineno: int, col0: int):
    pos = 0
    toks = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[0]!r}",
                             lineno, col0 + pos + 1 + (len(text[pos:]) - len(text[pos:].lstrip())))
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), col0 + start + 1))
        pos = m.end()
    return toks


def _parse_expression(text, lineno, col0, quiver: Quiver, params: dict, field: Field) -> Relation:
    toks = _tokenize(text, lineno, col0)
    if not toks:
        raise ParseError("empty relation", lineno, col0 + 1)
    aidx = quiver.arrow_index
    i = 0
    terms: dict[tuple, object] = {}
    order: list[tuple] = []

    def peek():
        return toks[i] if i < len(toks) else (None, None, col0 + len(text) + 1)

    first = True
    while i < len(toks):
        sign = 1
        kind, val, col = peek()
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            i += 1
        elif not first:
            raise ParseError(f"expected + or -, got {val!r}", lineno, col)
        first = False
        coeff = 1
        kind, val, col = peek()
        if kind == "int":
            coeff = int(val)
            i += 1
            kind, val, col = peek()
            if kind == "op" and val == "*":
                i += 1
        arrows: list[int] = []
        term_col = peek()[2]
        while True:
            kind, val, col = peek()
            if kind != "name":
                raise ParseError(f"expected arrow name, got {val!r}", lineno, col)
            if val not in aidx:
                raise ParseError(f"unknown arrow {val!r}", lineno, col)
            i += 1
            power = 1
            kind2, val2, col2 = peek()
            if kind2 == "op" and val2 == "^":
                i += 1
                kind3, val3, col3 = peek()
                if kind3 == "int":
                    power = int(val3)
                elif kind3 == "name" and val3 in params:
                    power = params[val3]
                else:
                    raise ParseError(f"bad exponent {val3!r}", lineno, col3)
                i += 1
                a = quiver.arrows[aidx[val]]
                if a.source != a.target:
                    raise ParseError(f"power of non-loop arrow {val!r}", lineno, col)
                if power < 1:
                    raise ParseError("exponent must be positive", lineno, col3)
            arrows.extend([aidx[val]] * power)
            kind, val, col = peek()
            if kind == "op" and val == "*":
                i += 1
                continue
            break
        path = tuple(arrows)
        for left, right in zip(path, path[1:]):
            if quiver.arrows[right].target != quiver.arrows[left].source:
                raise ParseError(
                    f"non-composable path: {quiver.arrows[left].name}*{quiver.arrows[right].name}",
                    lineno, term_col)
        if len(path) < 2:
            raise ParseError("relation terms must have length >= 2", lineno, term_col)
        if path not in terms:
            terms[path] = 0
            order.append(path)
        terms[path] += sign * coeff
    rel = tuple((field(terms[p]), p) for p in order if field(terms[p]))
    if not rel:
        raise ParseError("relation is identically zero", lineno, col0 + 1)
    ends = {(quiver.arrows[p[-1]].source, quiver.arrows[p[0]].target) for _, p in rel}
    if len(ends) > 1:
        raise ParseError("relation mixes paths with different endpoints", lineno, col0 + 1)
    return rel


def parse_algebra(text: str, params: dict[str, int] | None = None,
                  field: Field | str | None = None) -> Presentation:
    """Parse the line-oriented algebra format.

    ``params`` overrides ``param`` declarations in the header; ``field``
    overrides the declared field.
    """
    name = None
    fld = None
    decl_params: dict[str, int] = {}
    n = None
    arrows: list[Arrow] = []
    rel_lines: list[tuple[int, int, str]] = []
    in_rel = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        col0 = len(line) - len(line.lstrip())
        stripped = line.strip()
        if in_rel and not re.match(r"(algebra|vertices|arrow)\b", stripped):
            rel_lines.append((lineno, col0, stripped))
            continue
        words = stripped.split()
        head = words[0]
        if head == "algebra":
            m = re.fullmatch(rf"algebra\s+(\S+)\s+field\s+(\S+)((?:\s+param\s+{_NAME}\s*=\s*-?\d+)*)",
                             stripped)
            if not m:
                raise ParseError("malformed header; expected 'algebra <name> field <Q|Fp:p> [param k=v]'",
                                 lineno, col0 + 1)
            name = m.group(1)
            try:
                fld = parse_field(m.group(2))
            except FieldError as e:
                raise ParseError(str(e), lineno, col0 + 1 + stripped.find(m.group(2))) from None
            for pm in re.finditer(rf"param\s+({_NAME})\s*=\s*(-?\d+)", m.group(3)):
                decl_params[pm.group(1)] = int(pm.group(2))
        elif head == "vertices":
            if len(words) != 2 or not words[1].isdigit() or int(words[1]) < 1:
                raise ParseError("expected 'vertices <n>' with n >= 1", lineno, col0 + 1)
            n = int(words[1])
        elif head == "arrow":
            m = re.fullmatch(rf"arrow\s+({_NAME})\s*:\s*(\d+)\s*->\s*(\d+)", stripped)
            if not m:
                raise ParseError("expected 'arrow <name>: <src> -> <tgt>'", lineno, col0 + 1)
            if n is None:
                raise ParseError("'vertices' must precede arrows", lineno, col0 + 1)
            s, t = int(m.group(2)), int(m.group(3))
            for v in (s, t):
                if not 1 <= v <= n:
                    raise ParseError(f"vertex {v} outside 1..{n}", lineno, col0 + 1 + stripped.find(str(v)))
            if any(a.name == m.group(1) for a in arrows):
                raise ParseError(f"duplicate arrow {m.group(1)!r}", lineno, col0 + 7)
            arrows.append(Arrow(m.group(1), s, t))
        elif head == "relations:" or stripped == "relations:":
            in_rel = True
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, col0 + 1)
    if name is None:
        raise ParseError("missing 'algebra' header line")
    if n is None:
        raise ParseError("missing 'vertices' line")
    if params:
        decl_params.update(params)
    if field is not None:
        fld = parse_field(field) if isinstance(field, str) else field
    quiver = Quiver(tuple(range(1, n + 1)), tuple(arrows))
    rels = tuple(_parse_expression(txt, ln, c0, quiver, decl_params, fld) for ln, c0, txt in rel_lines)
    return Presentation(name, fld, tuple(sorted(decl_params.items())), quiver, rels)


def _format_path(quiver: Quiver, path: tuple[int, ...]) -> str:
    parts = []
    for a, grp in itertools.groupby(path):
        k = len(list(grp))
        nm = quiver.arrows[a].name
        parts.append(nm if k == 1 else f"{nm}^{k}")
    return "*".join(parts)


def format_relation(quiver: Quiver, rel: Relation) -> str:
    out = []
    for k, (c, path) in enumerate(rel):
        # F_p residues are ints and print as nonnegative representatives
        neg = not isinstance(c, int) and c < 0
        mag = -c if neg else c
        coef = "" if mag == 1 else f"{mag}*"
        sign = ("- " if neg else "") if k == 0 else (" - " if neg else " + ")
        out.append(f"{sign}{coef}{_format_path(quiver, path)}")
    return "".join(out)


def format_algebra(pres: Presentation) -> str:
    """Inverse of :func:`parse_algebra` up to whitespace and comments."""
    head = f"algebra {pres.name} field {pres.field.tag}"
    for k, v in pres.params:
        head += f" param {k}={v}"
    lines = [head, f"vertices {len(pres.quiver.vertices)}"]
    for a in pres.quiver.arrows:
        lines.append(f"arrow {a.name}: {a.source} -> {a.target}")
    lines.append("relations:")
    for r in pres.relations:
        lines.append(format_relation(pres.quiver, r))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------

class AdmissibilityError(ValueError):
    pass


def _path_key(p: Path):
    return (p.length, p.arrows, p.source)


def _extend(quiver: Quiver, paths: list[Path]) -> list[Path]:
    out = []
    for q in paths:
        for k, a in enumerate(quiver.arrows):
            if a.source == q.target:
                out.append(Path(q.source, a.target, (k,) + q.arrows))
    return out


def _concat(quiver: Quiver, p: Path, q: Path) -> Path | None:
    """p*q (first q then p), or None when not composable."""
    if q.target != p.source:
        return None
    return Path(q.source, p.target, p.arrows + q.arrows)


class BoundAlgebra:
    """The finite-dimensional algebra KQ/I with a path-residue basis.

    Attributes:
        quiver, field, relations: the presentation.
        basis: list of :class:`Path`, ordered by (length, arrow sequence).
        mult: ``mult[i][j]`` is a tuple of ``(k, coeff)`` giving b_i * b_j.
        loewy_length: least L with rad^L A = 0.
    """

    def __init__(self, quiver: Quiver, relations: Sequence[Relation], field: Field = QQ,
                 max_length: int = 64, name: str = "A", presentation: Presentation | None = None):
        self.quiver = quiver
        self.field = field
        self.relations = tuple(relations)
        self.name = name
        self.presentation = presentation
        self._build(max_length)
        self._check()

    # -- construction -------------------------------------------------------
    def _ideal_vectors(self, L, by_len, truncate):
        """Vectors u*r*v over monomials of length <= L."""
        q = self.quiver
        for rel in self.relations:
            lens = [len(p) for _, p in rel]
            src = q.arrows[rel[0][1][-1]].source
            tgt = q.arrows[rel[0][1][0]].target
            lo = min(lens) if truncate else max(lens)
            for lu in range(0, L - lo + 1):
                for lv in range(0, L - lo - lu + 1):
                    for u in by_len[lu]:
                        if u.source != tgt:
                            continue
                        for v in by_len[lv]:
                            if v.target != src:
                                continue
                            terms = []
                            for c, path in rel:
                                full = u.arrows + path + v.arrows
                                if len(full) <= L:
                                    terms.append((c, full))
                            yield v.source, u.target, terms

    def _build(self, max_length):
        q, field = self.quiver, self.field
        by_len = [[Path(v, v, ()) for v in q.vertices]]
        L = 0
        while True:
            L += 1
            if L > max_length:
                raise AdmissibilityError(
                    f"path length bound {max_length} exceeded: ideal not admissible or bound too small")
            by_len.append(_extend(q, by_len[-1]))
            monos = sorted(itertools.chain.from_iterable(by_len), key=_path_key, reverse=True)
            col = {(p.source, p.arrows): k for k, p in enumerate(monos)}
            eb = EchelonBuilder(field, len(monos))
            for s, t, terms in self._ideal_vectors(L, by_len, truncate=False):
                vec = [field.zero] * len(monos)
                for c, arr in terms:
                    vec[col[(s, arr)]] += c
                if field.p is not None:
                    vec = [x % field.p for x in vec]
                eb.add(vec)
            top = by_len[L]
            done = True
            for p in top:
                e = [field.zero] * len(monos)
                e[col[(p.source, p.arrows)]] = field.one
                if not eb.subspace().contains(e):
                    done = False
                    break
            if done:
                break
        # every path of length >= L lies in I; truncated generators complete I below L
        for s, t, terms in self._ideal_vectors(L, by_len, truncate=True):
            vec = [field.zero] * len(monos)
            for c, arr in terms:
                vec[col[(s, arr)]] += c
            if field.p is not None:
                vec = [x % field.p for x in vec]
            eb.add(vec)
        for p in by_len[L]:
            e = [field.zero] * len(monos)
            e[col[(p.source, p.arrows)]] = field.one
            eb.add(e)
        ideal = eb.subspace()
        self._monos = monos
        self._col = col
        self._ideal = ideal
        self._bound = L
        pivset = set(ideal.pivots)
        self.basis: list[Path] = sorted((monos[k] for k in range(len(monos)) if k not in pivset),
                                        key=_path_key)
        self.index = {(p.source, p.arrows): k for k, p in enumerate(self.basis)}
        self.dim = len(self.basis)
        self.mult = [[self._reduce_path(_concat(q, bi, bj)) for bj in self.basis] for bi in self.basis]
        self.idempotents = {v: self.index[(v, ())] for v in q.vertices}
        self.loewy_length = self._compute_loewy_length()

    def _reduce_path(self, path: Path | None) -> tuple:
        """Basis coordinates of a path residue as sparse ``(index, coeff)`` pairs."""
        if path is None or path.length >= self._bound:
            return ()
        field = self.field
        vec = [field.zero] * len(self._monos)
        vec[self._col[(path.source, path.arrows)]] = field.one
        vec = self._ideal.reduce(vec)
        out = []
        for k, c in enumerate(vec):
            if c:
                m = self._monos[k]
                out.append((self.index[(m.source, m.arrows)], c))
        return tuple(sorted(out))

    def reduce_element(self, terms) -> dict[int, object]:
        """Reduce a combination of (coeff, arrow tuple) terms to basis coordinates."""
        acc: dict[int, object] = {}
        for c, arrows in terms:
            a = self.quiver.arrows
            path = Path(a[arrows[-1]].source, a[arrows[0]].target, tuple(arrows))
            for k, x in self._reduce_path(path):
                acc[k] = acc.get(k, self.field.zero) + c * x
        p = self.field.p
        return {k: (v % p if p else v) for k, v in acc.items() if (v % p if p else v)}

    def _compute_loewy_length(self) -> int:
        k = 0
        while self.radical_power_basis(k).dim:
            k += 1
        return k

    def _check(self):
        field = self.field
        # relations vanish
        for rel in self.relations:
            if self.reduce_element(rel):
                raise AdmissibilityError("a relation does not reduce to zero")
        # idempotents
        for v, ev in self.idempotents.items():
            for j, b in enumerate(self.basis):
                left = self.mult[ev][j]
                right = self.mult[j][ev]
                want_l = ((j, field.one),) if b.target == v else ()
                want_r = ((j, field.one),) if b.source == v else ()
                if left != want_l or right != want_r:
                    raise AssertionError("vertex idempotents misbehave")
        # associativity on all basis triples
        for i in range(self.dim):
            for j in range(self.dim):
                ij = self.mult[i][j]
                for k in range(self.dim):
                    if self.product_sparse(ij, ((k, field.one),)) != \
                            self.product_sparse(((i, field.one),), self.mult[j][k]):
                        raise AssertionError(f"associativity fails on basis triple {(i, j, k)}")

    # -- arithmetic ---------------------------------------------------------
    def product_sparse(self, x: Sequence, y: Sequence) -> tuple:
        field = self.field
        acc: dict[int, object] = {}
        for i, a in x:
            for j, b in y:
                for k, c in self.mult[i][j]:
                    acc[k] = acc.get(k, field.zero) + a * b * c
        p = field.p
        if p is not None:
            acc = {k: v % p for k, v in acc.items()}
        return tuple(sorted((k, v) for k, v in acc.items() if v))

    def radical_power_basis(self, k: int) -> Subspace:
        """rad^k A as a subspace of A: the span of residues of paths of length >= k."""
        field = self.field
        vecs = []
        for i, p in enumerate(self.basis):
            if p.length >= k:
                v = [field.zero] * self.dim
                v[i] = field.one
                vecs.append(v)
        return Subspace(field, self.dim, vecs)

    def basis_between(self, source, target) -> list[int]:
        return [k for k, p in enumerate(self.basis) if p.source == source and p.target == target]

    def path_label(self, k: int) -> str:
        p = self.basis[k]
        if not p.arrows:
            return f"e{p.source}"
        return _format_path(self.quiver, p.arrows)

    @property
    def vertices(self):
        return self.quiver.vertices

    def __repr__(self):
        return f"BoundAlgebra({self.name}, dim={self.dim}, LL={self.loewy_length}, field={self.field.tag})"


def build_bound_algebra(quiver: Quiver, relations: Sequence[Relation], field: Field = QQ,
                        max_length: int = 64, name: str = "A") -> BoundAlgebra:
    return BoundAlgebra(quiver, relations, field, max_length=max_length, name=name)


def algebra_from_text(text: str, params: dict[str, int] | None = None,
                      field: Field | str | None = None, max_length: int = 64) -> BoundAlgebra:
    pres = parse_algebra(text, params=params, field=field)
    return BoundAlgebra(pres.quiver, pres.relations, pres.field, max_length=max_length,
                        name=pres.name, presentation=pres)


def radical_power_basis(a: BoundAlgebra, k: int) -> Subspace:
    return a.radical_power_basis(k)
