"""Module expressions such as ``quot_soc(P(1),6)`` or ``homG(rad^1(P(3)))``.

Grammar::

    expr  := NAME['_' INT] ['^' INT] '(' [arg (',' arg)*] ')'
    arg   := expr | INT | '(' INT ',' INT ')'

A-modules:  P(i)  S(i)  G(i,j)
R-modules:  homG(E)  PR(i,j)  LR(i,j)  Delta(i,j)
either:     rad^k(E)  soc_k(E)  quot(E, rad^k(E))  quot(E, soc_k(E))
            quot_soc(E, v)  dsum(E1, E2, ...)  rsub(E, seed)  rquot(E, seed)

``v`` in ``quot_soc`` is a vertex for A-modules and a label ``(i,j)`` (or
two integers) for R-modules.  Equal subexpressions evaluate to the same
object, which is how ``quot`` knows its second argument is a submodule of
its first.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .adr import ADRContext, SCModule, build_context
from .amod import (Rep, Representation, SubRep, direct_sum, projective,
                   quotient, quotient_by_socle_component, rad_power, simple, socle_series)
from .corpus import random_quotient, random_submodule
from .quiver import BoundAlgebra


class ExprError(ValueError):
    def __init__(self, msg: str, col: int | None = None):
        self.col = col
        super().__init__(msg if col is None else f"{msg} (column {col + 1})")


_TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[(),^]))")


_INDEXED = re.compile(r"^([A-Za-z][A-Za-z0-9]*)_(\d+)$")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


@dataclass(frozen=True)
class Call:
    name: str
    power: int | None
    index: int | None
    args: tuple
    col: int

    def key(self) -> str:
        head = self.name
        if self.power is not None:
            head += f"^{self.power}"
        if self.index is not None:
            head += f"_{self.index}"
        return f"{head}({','.join(_key(a) for a in self.args)})"


def _key(a) -> str:
    if isinstance(a, Call):
        return a.key()
    if isinstance(a, tuple):
        return f"({a[0]},{a[1]})"
    return str(a)


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ExprError(f"expected {want!r}, found {got!r}", tok[2])
        self.i += 1
        return tok

    def expr(self) -> Call:
        _, name, col = self.take("name")
        power = index = None
        m = _INDEXED.match(name)
        if m:
            name, index = m.group(1), int(m.group(2))
        if self.peek()[1] == "^":
            self.take()
            power = int(self.take("int")[1])
        self.take("op", "(")
        args = []
        if self.peek()[1] != ")":
            args.append(self.arg())
            while self.peek()[1] == ",":
                self.take()
                args.append(self.arg())
        self.take("op", ")")
        return Call(name, power, index, tuple(args), col)

    def arg(self):
        kind, val, col = self.peek()
        if kind == "int":
            self.take()
            return int(val)
        if val == "(":
            self.take()
            i = int(self.take("int")[1])
            self.take("op", ",")
            j = int(self.take("int")[1])
            self.take("op", ")")
            return (i, j)
        return self.expr()


def parse_expression(text: str) -> Call:
    p = _Parser(text)
    e = p.expr()
    p.take("end")
    return e


class Evaluator:
    """Evaluates expressions over one algebra; the ADR context is built on first use."""

    def __init__(self, algebra: BoundAlgebra, ctx: ADRContext | None = None):
        self.algebra = algebra
        self._ctx = ctx
        self.memo: dict = {}

    @property
    def ctx(self) -> ADRContext:
        if self._ctx is None:
            self._ctx = build_context(self.algebra)
        return self._ctx

    def evaluate(self, text: str) -> Representation:
        return self.module(parse_expression(text))

    # values are modules, or SubReps whose parent is a memoized module
    def module(self, e) -> Representation:
        v = self.value(e)
        if not isinstance(v, SubRep):
            return v
        k = e.key() + "#module"
        if k not in self.memo:
            self.memo[k] = v.as_rep()[0]
        return self.memo[k]

    def value(self, e):
        if not isinstance(e, Call):
            raise ExprError(f"expected a module expression, found {e!r}")
        k = e.key()
        if k not in self.memo:
            self.memo[k] = self._eval(e)
        return self.memo[k]

    def _ints(self, e: Call, count: int) -> tuple:
        if len(e.args) != count or not all(isinstance(a, int) for a in e.args):
            raise ExprError(f"{e.name} takes {count} integer argument(s)", e.col)
        return e.args

    def _label(self, e: Call):
        args = self._ints(e, 2)
        lab = (args[0], args[1])
        if lab not in self.ctx.label_index:
            raise ExprError(f"label {lab} is not in Lambda", e.col)
        return lab

    def _vertex(self, e: Call, v):
        if v not in self.algebra.vertices:
            raise ExprError(f"no vertex {v}", e.col)
        return v

    def _eval(self, e: Call):
        name = e.name
        if e.power is not None and name != "rad":
            raise ExprError("'^' only applies to rad", e.col)
        if e.index is not None and name != "soc":
            raise ExprError("'_' only applies to soc", e.col)
        if name == "P":
            return projective(self.algebra, self._vertex(e, self._ints(e, 1)[0]))
        if name == "S":
            return simple(self.algebra, self._vertex(e, self._ints(e, 1)[0]))
        if name == "G":
            return self.ctx.summands[self._label(e)]
        if name == "PR":
            return self.ctx.projective_R(self._label(e))
        if name == "LR":
            return self.ctx.simple_R(self._label(e))
        if name == "Delta":
            from .strat import standard_module
            return standard_module(self.ctx, self._label(e)).module
        if name == "homG":
            m = self._one_module(e)
            if not isinstance(m, Rep):
                raise ExprError("homG takes an A-module", e.col)
            return self.ctx.hom_G(m)
        if name == "rad":
            if e.power is None:
                raise ExprError("write rad^k(E)", e.col)
            return rad_power(self._one_module(e), e.power)
        if name == "soc":
            if e.index is None:
                raise ExprError("write soc_k(E)", e.col)
            m = self._one_module(e)
            ss = socle_series(m)
            return ss[min(e.index, len(ss) - 1)]
        if name == "quot":
            if len(e.args) != 2 or not all(isinstance(a, Call) for a in e.args):
                raise ExprError("quot takes a module and a submodule expression", e.col)
            parent = self.module(e.args[0])
            sub = self.value(e.args[1])
            if not isinstance(sub, SubRep) or sub.parent is not parent:
                raise ExprError("the second argument of quot must be rad^k or soc_k of the first",
                                e.col)
            return quotient(parent, sub)[0]
        if name == "quot_soc":
            if len(e.args) not in (2, 3) or not isinstance(e.args[0], Call):
                raise ExprError("quot_soc takes a module and a vertex or label", e.col)
            m = self.module(e.args[0])
            rest = e.args[1:]
            if isinstance(m, SCModule):
                lab = rest[0] if len(rest) == 1 else tuple(rest)
                if not isinstance(lab, tuple) or lab not in m.ctx.label_index:
                    raise ExprError(f"{lab!r} is not a label", e.col)
                which = lab
            else:
                if len(rest) != 1 or not isinstance(rest[0], int):
                    raise ExprError("quot_soc on an A-module takes a vertex", e.col)
                which = self._vertex(e, rest[0])
            return quotient_by_socle_component(m, which)
        if name == "dsum":
            if not e.args:
                raise ExprError("dsum needs at least one summand", e.col)
            mods = [self.module(a) for a in e.args]
            if len({type(x) for x in mods}) != 1:
                raise ExprError("dsum cannot mix A-modules and R-modules", e.col)
            return direct_sum(mods)
        if name in ("rsub", "rquot"):
            if len(e.args) != 2 or not isinstance(e.args[0], Call) or not isinstance(e.args[1], int):
                raise ExprError(f"{name} takes a module and an integer seed", e.col)
            m = self.module(e.args[0])
            if name == "rsub":
                return random_submodule(m, e.args[1])
            return random_quotient(m, e.args[1])
        raise ExprError(f"unknown constructor {name!r}", e.col)

    def _one_module(self, e: Call) -> Representation:
        if len(e.args) != 1 or not isinstance(e.args[0], Call):
            raise ExprError(f"{e.name} takes one module argument", e.col)
        return self.module(e.args[0])


def evaluate(algebra: BoundAlgebra, text: str, ctx: ADRContext | None = None) -> Representation:
    return Evaluator(algebra, ctx).evaluate(text)
