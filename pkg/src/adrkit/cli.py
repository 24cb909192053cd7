"""Command line interface: ``adr <verb> [options]``.

Exit codes: 0 success, 1 input error, 2 internal invariant failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources

import jsonschema

from . import __version__
from .adr import ADRError, FieldValidityError, SCModule, build_context, sc_loewy_length
from .amod import (InvariantError, ModuleError, Rep, is_rigid, loewy_length, projective, projective_cover_mod_radpower,
                   radical_series, socle_series)
from .approx import (addG_loewy_audit, approx_general, approx_rigid, counterexample_driver,
                     ext1_support, minimal_resolution_R, multiset, multiset_json)
from .corpus import BUILTIN_NAMES, build_corpus, builtin_text
from .exact import FieldError, parse_field
from .expr import Evaluator, ExprError
from .quiver import AdmissibilityError, ParseError, algebra_from_text
from .strat import delta_ss_filtration, standard_family, uniserial_chain

VERBS = ("build", "module", "adr", "standard", "filtration", "approx", "resolve", "ext-table",
         "dll-check", "counterexample", "corpus-dump")
NEEDS_ALGEBRA = {"build", "module", "adr", "standard", "filtration", "approx", "resolve",
                 "ext-table", "dll-check"}
NEEDS_MODULE = {"module", "filtration", "approx", "resolve", "dll-check"}


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers

def _vertex_json(v):
    return [v[0], v[1]] if isinstance(v, tuple) else v


def _vertex_str(v) -> str:
    return f"({v[0]},{v[1]})" if isinstance(v, tuple) else str(v)


def _layers(m, series, descending: bool) -> list[list[dict]]:
    out = []
    pairs = zip(series, series[1:]) if descending else zip(series[1:], series)
    for upper, lower in pairs:
        row = [{"vertex": _vertex_json(v), "multiplicity": upper.spaces[v].dim - lower.spaces[v].dim}
               for v in m.vertices if upper.spaces[v].dim != lower.spaces[v].dim]
        out.append(row)
    return out


def _grid(layers: list[list[dict]]) -> list[str]:
    """One line per layer, each simple repeated by its multiplicity."""
    lines = []
    for row in layers:
        cells = []
        for c in row:
            v = c["vertex"]
            cells += [_vertex_str(tuple(v) if isinstance(v, list) else v)] * c["multiplicity"]
        lines.append("  ".join(cells))
    width = max((len(s) for s in lines), default=0)
    return [s.center(width).rstrip() for s in lines]


def _table(headers: list[str], rows: list[list]) -> list[str]:
    cells = [[str(h) for h in headers]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(headers))]
    out = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    out.insert(1, "  ".join("-" * w for w in widths))
    return out


def _ms_str(ms_json: list[dict], prefix: str = "") -> str:
    parts = []
    for c in ms_json:
        lab = f"{prefix}({c['label'][0]},{c['label'][1]})"
        parts.append(lab if c["multiplicity"] == 1 else f"{lab}^{c['multiplicity']}")
    return " + ".join(parts) if parts else "0"


def _is_label(x) -> bool:
    return isinstance(x, list) and len(x) == 2 and all(isinstance(y, int) for y in x)


def _fmt_value(x) -> str:
    """Compact text for check values: labels, label multisets, chains and layer lists."""
    if not isinstance(x, list):
        return str(x)
    if _is_label(x):
        return f"({x[0]},{x[1]})"
    if all(isinstance(y, list) and len(y) == 2 and _is_label(y[0]) for y in x):
        return " + ".join(_fmt_value(y[0]) + (f"^{y[1]}" if y[1] != 1 else "") for y in x)
    if all(_is_label(y) for y in x):
        return " / ".join(_fmt_value(y) for y in x)
    return " | ".join(_fmt_value(y) for y in x)


def load_algebra(args):
    source = args.algebra
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    elif source in BUILTIN_NAMES:
        text = builtin_text(source)
    else:
        raise InputError(f"algebra file {source!r} not found (built-ins: {', '.join(BUILTIN_NAMES)})")
    params = {"n": args.n} if args.n is not None else None
    return algebra_from_text(text, params=params, field=args.field)


def _r_module(ev: Evaluator, text: str) -> tuple[SCModule, str]:
    m = ev.evaluate(text)
    if isinstance(m, Rep):
        return ev.ctx.hom_G(m), f"homG({text})"
    return m, text


# ---------------------------------------------------------------------------
# verbs: each returns (json payload, text lines)

def cmd_build(args):
    a = load_algebra(args)
    payload = {
        "verb": "build", "algebra": a.name, "field": a.field.tag, "dim": a.dim,
        "loewy_length": a.loewy_length, "vertices": list(a.vertices),
        "arrows": [{"name": x.name, "source": x.source, "target": x.target} for x in a.quiver.arrows],
        "basis": [a.path_label(k) for k in range(a.dim)],
        "projectives": [{"vertex": v, "dim": projective(a, v).total_dim,
                         "loewy_length": loewy_length(projective(a, v))} for v in a.vertices],
    }
    lines = [f"algebra {a.name} over {a.field.tag}: dim {a.dim}, Loewy length {a.loewy_length}",
             "basis: " + " ".join(payload["basis"]), ""]
    lines += _table(["vertex", "dim P", "LL P"],
                    [[p["vertex"], p["dim"], p["loewy_length"]] for p in payload["projectives"]])
    return payload, lines


def cmd_module(args):
    a = load_algebra(args)
    ev = Evaluator(a)
    m = ev.evaluate(args.module)
    side = "R" if isinstance(m, SCModule) else "A"
    rad_layers = _layers(m, radical_series(m), descending=True)
    soc_layers = _layers(m, socle_series(m), descending=False)
    payload = {
        "verb": "module", "algebra": a.name, "expression": args.module, "side": side,
        "dim": m.total_dim,
        "dim_vector": [{"vertex": _vertex_json(v), "dim": d} for v, d in m.dims.items() if d],
        "loewy_length": len(rad_layers), "rigid": is_rigid(m),
        "radical_layers": rad_layers, "socle_layers": soc_layers,
    }
    lines = [f"{args.module} over {'R' if side == 'R' else 'A'} = {a.name}: dim {m.total_dim}, "
             f"Loewy length {len(rad_layers)}, rigid {str(payload['rigid']).lower()}",
             "radical layers (top first):"]
    lines += ["  " + s for s in _grid(rad_layers)]
    return payload, lines


def cmd_adr(args):
    a = load_algebra(args)
    ctx = build_context(a)
    projs = []
    for lab in ctx.labels:
        p = ctx.projective_R(lab)
        projs.append({"label": list(lab), "dim": p.total_dim, "loewy_length": sc_loewy_length(p)})
    payload = {"verb": "adr", "algebra": a.name, "labels": [list(l) for l in ctx.labels],
               "dim_R": ctx.dim, "dim_rad_R": ctx.radical.dim, "generators": len(ctx.generators),
               "projectives": projs}
    lines = [f"ADR algebra of {a.name}: |Lambda| = {len(ctx.labels)}, dim R = {ctx.dim}, "
             f"dim rad R = {ctx.radical.dim}, radical generators {len(ctx.generators)}", ""]
    lines += _table(["label", "dim P", "LL P"],
                    [[_vertex_str(tuple(p["label"])), p["dim"], p["loewy_length"]] for p in projs])
    return payload, lines


def cmd_standard(args):
    a = load_algebra(args)
    ctx = build_context(a)
    rows = []
    for lab, s in standard_family(ctx).items():
        chain = uniserial_chain(s.module)
        rows.append({"label": list(lab), "composition_length": s.composition_length,
                     "loewy_length": sc_loewy_length(s.module),
                     "chain": [list(c) for c in chain] if chain else None,
                     "certified": s.iso is not None and s.iso.is_isomorphism(),
                     "projective_dim": s.projective_dim, "kernel_dim": s.kernel_dim})
    payload = {"verb": "standard", "algebra": a.name, "standards": rows}
    lines = _table(["label", "length", "LL", "factors (top to socle)", "certified"],
                   [[_vertex_str(tuple(r["label"])), r["composition_length"], r["loewy_length"],
                     " / ".join(_vertex_str(tuple(c)) for c in r["chain"]) if r["chain"] else "-",
                     str(r["certified"]).lower()] for r in rows])
    return payload, lines


def cmd_filtration(args):
    a = load_algebra(args)
    ev = Evaluator(a)
    n, shown = _r_module(ev, args.module)
    filt = delta_ss_filtration(n)
    payload = {"verb": "filtration", "algebra": a.name, "expression": shown, **filt.to_dict()}
    lines = [f"Delta-semisimple filtration of {shown}: length {filt.length}, "
             f"chain dims {filt.chain_dims()}"]
    for k, layer in enumerate(payload["layers"], start=1):
        lines.append(f"  layer {k}: " + " + ".join(
            f"Delta({c['label'][0]},{c['label'][1]})" + (f"^{c['multiplicity']}" if c["multiplicity"] > 1 else "")
            for c in layer))
    return payload, lines


def cmd_approx(args):
    a = load_algebra(args)
    ev = Evaluator(a)
    m = ev.evaluate(args.module)
    if not isinstance(m, Rep):
        raise InputError("approx takes an A-module expression")
    res = approx_general(ev.ctx, m)
    rigid = is_rigid(m)
    rigid_summands = multiset_json(approx_rigid(ev.ctx, m).summands) if rigid else None
    cover = projective_cover_mod_radpower(m, loewy_length(m))
    payload = {"verb": "approx", "algebra": a.name, "expression": args.module, **res.to_dict(),
               "rigid": rigid, "rigid_summands": rigid_summands,
               "cover_mod_radpower_summands": multiset_json(multiset(cover.summands))}
    lines = [f"right minimal Add(G)-approximation of {args.module}:",
             "  summands " + _ms_str(payload["summands"], "G_"),
             f"  approximation {str(res.is_approximation).lower()}, right minimal "
             f"{str(res.is_right_minimal).lower()}, rigid {str(rigid).lower()}",
             f"  projective cover over A/rad^{loewy_length(m)} A: "
             + _ms_str(payload["cover_mod_radpower_summands"], "G_")]
    return payload, lines


def _resolution_lines(rep: dict) -> list[str]:
    rows = [[s["index"], _ms_str(s["summands"]), s["loewy_length"], s["addg_loewy_length"]]
            for s in rep["steps"]]
    return _table(["step", "projective", "LL_R", "LL_A(X)"], rows)


def cmd_resolve(args):
    a = load_algebra(args)
    ev = Evaluator(a)
    n, shown = _r_module(ev, args.module)
    res = minimal_resolution_R(n, args.max_steps)
    payload = {"verb": "resolve", "algebra": a.name, "expression": shown, **res.to_dict()}
    lines = [f"minimal projective resolution of {shown}"
             + (" (truncated)" if res.truncated else "")]
    lines += _resolution_lines(payload)
    lines.append(f"dll_ok = {str(res.dll_ok).lower()}")
    return payload, lines


def cmd_ext_table(args):
    a = load_algebra(args)
    ctx = build_context(a)
    rows = ext1_support(ctx)
    payload = {"verb": "ext-table", "algebra": a.name, "rows": [
        {"label": list(r.label),
         "targets": [{"label": list(t), "dim": d} for t, d in sorted(r.targets.items())],
         "rigid": r.rigid, "violations": [list(v) for v in r.violations]} for r in rows],
        "violation_count": sum(len(r.violations) for r in rows)}
    lines = _table(["label", "Ext^1 targets", "G rigid", "violations"],
                   [[_vertex_str(r.label), " ".join(_vertex_str(t) for t in sorted(r.targets)) or "-",
                     str(r.rigid).lower(), " ".join(_vertex_str(v) for v in r.violations) or "-"]
                    for r in rows])
    lines.append(f"violations: {payload['violation_count']}")
    return payload, lines


def cmd_dll_check(args):
    a = load_algebra(args)
    ev = Evaluator(a)
    n, shown = _r_module(ev, args.module)
    res = minimal_resolution_R(n, args.max_steps)
    audit = addG_loewy_audit(n, args.max_steps)
    payload = {"verb": "dll-check", "algebra": a.name, "expression": shown,
               "resolution": res.to_dict(), "addg_audit": audit.to_dict()}
    lines = [f"DLL check for {shown}"] + _resolution_lines(payload["resolution"])
    lines.append(f"dll_ok = {str(res.dll_ok).lower()}; Add(G) Loewy lengths "
                 f"{audit.loewy_lengths} strictly decreasing from step 1: {str(audit.ok).lower()}")
    return payload, lines


def cmd_counterexample(args):
    n = 5 if args.n is None else args.n
    if n < 2:
        raise InputError("--n must be at least 2")
    rep = counterexample_driver(n, args.max_steps)
    payload = {"verb": "counterexample", **rep.to_dict()}
    lines = [f"A(n) with n = {n}"]
    lines += _table(["check", "expected", "computed", "ok"],
                    [[c["name"], _fmt_value(c["expected"]), _fmt_value(c["computed"]),
                      str(c["ok"]).lower()]
                     for c in payload["checks"]])
    lines.append("")
    lines += _resolution_lines(payload["resolution"])
    lines.append(f"LL pair (P_1(M), P_2(M)) = {tuple(rep.ll_pair)}; dll_ok = {str(rep.dll_ok).lower()}")
    if rep.failures:
        raise ADRError("counterexample checks failed: "
                       + "; ".join(f"{n}: expected {e}, computed {c}" for n, e, c in rep.failures))
    return payload, lines


def cmd_corpus_dump(args):
    seed = 0 if args.seed is None else args.seed
    items = build_corpus(seed)
    payload = {"verb": "corpus-dump", "seed": seed,
               "items": [{"algebra": it.algebra, "expression": it.expression} for it in items]}
    lines = [f"{it.algebra}\t{it.expression}" for it in items]
    return payload, lines


COMMANDS = {
    "build": cmd_build, "module": cmd_module, "adr": cmd_adr, "standard": cmd_standard,
    "filtration": cmd_filtration, "approx": cmd_approx, "resolve": cmd_resolve,
    "ext-table": cmd_ext_table, "dll-check": cmd_dll_check, "counterexample": cmd_counterexample,
    "corpus-dump": cmd_corpus_dump,
}


# ---------------------------------------------------------------------------

def load_schema(verb: str) -> dict:
    text = resources.files("adrkit.schemas").joinpath(f"{verb}.json").read_text()
    return json.loads(text)


def validate_payload(verb: str, payload: dict):
    jsonschema.validate(payload, load_schema(verb))


def _to_json(x):
    """Exact scalars and tuples to JSON-friendly values."""
    if isinstance(x, dict):
        return {str(k): _to_json(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_to_json(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="adr",
        description="Exact computations with ADR algebras of bound quiver algebras.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("--algebra", help="algebra file, or a built-in name: " + ", ".join(BUILTIN_NAMES))
    p.add_argument("--module", help="module expression, e.g. 'quot_soc(P(1),6)'")
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.add_argument("--seed", type=int, help="corpus seed (corpus-dump)")
    p.add_argument("--n", type=int, help="value for the algebra parameter n")
    p.add_argument("--max-steps", type=int, default=32, help="resolution step bound (default 32)")
    p.add_argument("--field", help="override the ground field: Q or Fp:<prime>")
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.verb in NEEDS_ALGEBRA and not args.algebra:
            raise InputError(f"{args.verb} needs --algebra")
        if args.verb in NEEDS_MODULE and not args.module:
            raise InputError(f"{args.verb} needs --module")
        if args.max_steps < 1:
            raise InputError("--max-steps must be at least 1")
        if args.field is not None:
            args.field = parse_field(args.field)
        payload, lines = COMMANDS[args.verb](args)
        payload = _to_json(payload)
        validate_payload(args.verb, payload)
    except (InputError, ParseError, ExprError, FieldError, FieldValidityError,
            AdmissibilityError, ModuleError, OSError) as exc:
        print(f"adr {args.verb}: error: {exc}", file=sys.stderr)
        return 1
    except (InvariantError, jsonschema.ValidationError, ArithmeticError) as exc:
        msg = exc.message if isinstance(exc, jsonschema.ValidationError) else exc
        print(f"adr {args.verb}: internal invariant failed: {msg}", file=sys.stderr)
        return 2
    if args.json:
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
