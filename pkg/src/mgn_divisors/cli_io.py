"""Command line interface and JSON/CSV encoding.

Rationals are written as lowest-terms strings ("3/4", or "2" when the
denominator is 1) and never as decimals.  Exit codes: 0 success, 1 domain
error (an operation rejected its input), 2 usage error (bad flags or
malformed JSON).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from fractions import Fraction
from typing import Any, Optional, Sequence

from .ample_model import (
    AmpleModelResult,
    ChamberRecord,
    GridSpec,
    RationalRange,
    classify,
    recover_walls,
    summarize,
    sweep,
)
from .divisor_algebra import AdjointParams, DivisorClass, Space, to_adjoint
from .fcurves import FCurve, enumerate_fcurves, intersect, intersect_bridge
from .geometry_props import descends, factorize, is_q_factorial
from .index_set import (
    BoundaryIndex,
    BridgeType,
    CapExceeded,
    MarkedGenus,
    TSubset,
    count_admissible,
    enumerate_admissible,
    enumerate_indices,
)
from .positivity import (
    Inequality,
    Mode,
    PositivityVerdict,
    adjoint_fnef_closed_form,
    brute_force_verdict,
    crosscheck_mgn,
    crosscheck_ps,
    ps_adjoint_fnef_for_T,
    verdict_for_T,
)


class UsageError(Exception):
    """Malformed input; reported with exit code 2."""


# --- rationals and small pieces -----------------------------------------------

def fmt(x: Fraction) -> str:
    return str(Fraction(x))


def parse_rational(s: Any) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (int, str)):
        raise UsageError(f"expected a rational as \"p/q\" string or integer, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"bad rational {s!r}: {e}") from None


def _marks(x: Any) -> tuple[int, ...]:
    if not isinstance(x, list) or not all(isinstance(k, int) for k in x):
        raise UsageError(f"expected a list of marks, got {x!r}")
    return tuple(sorted(x))


def _get(d: dict, key: str) -> Any:
    if not isinstance(d, dict) or key not in d:
        raise UsageError(f"missing key {key!r}")
    return d[key]


def encode_index(k: BoundaryIndex) -> Any:
    return "irr" if k.is_irr else [k.genus, list(k.marks)]


def ambient_json(amb: MarkedGenus) -> dict:
    return {"g": amb.g, "n": amb.n}


def decode_ambient(d: dict) -> MarkedGenus:
    g, n = _get(d, "g"), _get(d, "n")
    if not isinstance(g, int) or not isinstance(n, int):
        raise UsageError("g and n must be integers")
    return MarkedGenus(g, n)


# --- TSubset ----------------------------------------------------------------

def encode_tsubset(T: TSubset, with_ambient: bool = True) -> dict:
    out = ambient_json(T.ambient) if with_ambient else {}
    out["irr"] = T.has_irr
    out["pairs"] = [[k.genus, list(k.marks)] for k in T.pairs()]
    return out


def decode_tsubset(d: dict, ambient: Optional[MarkedGenus] = None) -> TSubset:
    amb = ambient if ambient is not None else decode_ambient(d)
    irr = _get(d, "irr")
    if not isinstance(irr, bool):
        raise UsageError("'irr' must be true or false")
    pairs = _get(d, "pairs")
    if not isinstance(pairs, list):
        raise UsageError("'pairs' must be a list")
    items: list = ["irr"] if irr else []
    for p in pairs:
        if not isinstance(p, list) or len(p) != 2 or not isinstance(p[0], int):
            raise UsageError(f"bad pair {p!r}; expected [i, [marks]]")
        items.append((p[0], _marks(p[1])))
    return TSubset.of(amb, *items)


# --- DivisorClass -------------------------------------------------------------

def encode_divisor(L: DivisorClass) -> dict:
    return {
        "space": L.space.value,
        "g": L.ambient.g,
        "n": L.ambient.n,
        "lambda": fmt(L.lam),
        "irr": fmt(L.irr),
        "boundary": [{"i": k.genus, "I": list(k.marks), "c": fmt(c)}
                     for k, c in sorted(L.boundary.items(), key=lambda kv: kv[0].sort_key())],
    }


def _space(s: Any) -> Space:
    try:
        return Space(s)
    except ValueError:
        raise UsageError(f"space must be 'Mgn' or 'MgnPs', got {s!r}") from None


def decode_divisor(d: dict) -> DivisorClass:
    amb = decode_ambient(d)
    space = _space(d.get("space", "Mgn"))
    boundary: dict = {}
    for e in d.get("boundary", []):
        key = amb.index(_get(e, "i"), _marks(_get(e, "I")))
        boundary[key] = boundary.get(key, Fraction(0)) + parse_rational(_get(e, "c"))
    return DivisorClass(space, amb, parse_rational(d.get("lambda", 0)), parse_rational(d.get("irr", 0)), boundary)


# --- FCurve and bridges ---------------------------------------------------------

def encode_fcurve(C: FCurve) -> dict:
    return {"family": C.family, "parts": [[i, list(m)] for i, m in C.parts]}


def decode_fcurve(d: dict, ambient: MarkedGenus) -> FCurve:
    parts = d.get("parts", [])
    if not isinstance(parts, list):
        raise UsageError("'parts' must be a list")
    decoded = []
    for p in parts:
        if not isinstance(p, list) or len(p) != 2 or not isinstance(p[0], int):
            raise UsageError(f"bad part {p!r}; expected [i, [marks]]")
        decoded.append((p[0], _marks(p[1])))
    return FCurve(_get(d, "family"), ambient, tuple(decoded))


def decode_bridge(x: Any, ambient: MarkedGenus) -> BridgeType:
    if x == "irr":
        if ambient.g < 2:
            raise ValueError("the irr bridge type needs g >= 2")
        return BridgeType(ambient)
    if not isinstance(x, list) or len(x) != 2 or not isinstance(x[0], int):
        raise UsageError(f"bad bridge {x!r}; expected \"irr\" or [tau, [marks]]")
    tau, marks = x[0], _marks(x[1])
    ambient.index(tau, marks)
    ambient.index(tau + 1, marks)
    return BridgeType(ambient, tau, marks)


# --- adjoint parameters -------------------------------------------------------

def encode_params(p: AdjointParams) -> dict:
    return {
        "space": p.space.value,
        "g": p.ambient.g,
        "n": p.ambient.n,
        "a": fmt(p.a),
        "alpha_irr": fmt(p.alpha_irr),
        "alphas": [{"i": k.genus, "I": list(k.marks), "c": fmt(c)}
                   for k, c in sorted(p.alphas.items(), key=lambda kv: kv[0].sort_key())],
    }


def _alphas(entries: Any, amb: MarkedGenus) -> dict:
    if not isinstance(entries, list):
        raise UsageError("'alphas' must be a list of {i, I, c}")
    out = {}
    for e in entries:
        out[amb.index(_get(e, "i"), _marks(_get(e, "I")))] = parse_rational(_get(e, "c"))
    return out


def decode_params(d: dict) -> AdjointParams:
    """Accepts either "alphas": [...] or a shared "alpha": "p/q"."""
    amb = decode_ambient(d)
    space = _space(d.get("space", "Mgn"))
    a = parse_rational(d.get("a", 0))
    ai = parse_rational(_get(d, "alpha_irr"))
    if "alpha" in d:
        return AdjointParams.uniform(amb, a, ai, parse_rational(d["alpha"]), space)
    return AdjointParams(amb, a, ai, _alphas(_get(d, "alphas"), amb), space)


# --- verdicts and results -----------------------------------------------------

def encode_inequality(q: Inequality) -> dict:
    return {"label": q.label, "lhs": fmt(q.lhs), "rel": q.rel, "rhs": fmt(q.rhs), "holds": q.holds}


def encode_verdict(v: PositivityVerdict) -> dict:
    return {
        "status": v.status.value,
        "witnesses": [{"curve": encode_fcurve(C), "value": fmt(x)} for C, x in v.witnesses],
    }


def encode_result(r: AmpleModelResult) -> dict:
    return {
        "model": r.model.value,
        "label": r.label,
        "raw_label": r.raw_label,
        "T": None if r.t is None else encode_tsubset(r.t, with_ambient=False),
        "reason": None if r.reason is None else r.reason.value,
        "certificate": {
            "clause": r.certificate.clause,
            "inequalities": [encode_inequality(q) for q in r.certificate.inequalities],
            "notes": list(r.certificate.notes),
        },
    }


# --- grids --------------------------------------------------------------------

def decode_range(x: Any) -> RationalRange:
    if isinstance(x, dict):
        start = parse_rational(_get(x, "start"))
        stop = parse_rational(x.get("stop", x["start"]))
        step = parse_rational(x.get("step", 1))
        return RationalRange(start, stop, step)
    return RationalRange.point(parse_rational(x))


def decode_grid(d: dict) -> GridSpec:
    amb = decode_ambient(d)
    a = decode_range(d.get("a", 0))
    ai = decode_range(_get(d, "alpha_irr"))
    if "alpha" in d:
        return GridSpec(amb, a, ai, alpha=decode_range(d["alpha"]))
    return GridSpec(amb, a, ai, per_index=_alphas(_get(d, "per_index"), amb))


CSV_COLUMNS = ["a", "alpha", "alpha_irr", "label", "raw_label", "T", "clause"]


def _alpha_cell(p: AdjointParams) -> str:
    vals = set(p.alphas.values())
    if len(vals) <= 1:
        return fmt(vals.pop()) if vals else ""
    return json.dumps(encode_params(p)["alphas"], separators=(",", ":"))


def write_csv(records: Sequence[ChamberRecord], out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        p, res = r.point, r.result
        t = "" if res.t is None else json.dumps(encode_tsubset(res.t, with_ambient=False), separators=(",", ":"))
        w.writerow([fmt(p.a), _alpha_cell(p), fmt(p.alpha_irr), res.label, res.raw_label, t, res.certificate.clause])


_PALETTE = ["#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860",
            "#da8bc3", "#8c8c8c", "#ccb974", "#64b5cd"]


def render_svg(records: Sequence[ChamberRecord], cell: int = 6) -> str:
    """Cells over (alpha, alpha_irr), one colour per raw label, alpha_irr upward."""
    xs = sorted({_uniform(r.point) for r in records})
    ys = sorted({r.point.alpha_irr for r in records})
    labels = sorted({r.result.raw_label for r in records})
    colour = {lab: _PALETTE[i % len(_PALETTE)] for i, lab in enumerate(labels)}
    xi = {x: i for i, x in enumerate(xs)}
    yi = {y: i for i, y in enumerate(ys)}
    width, height = cell * len(xs), cell * len(ys)
    legend_h = 16 * len(labels) + 8
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width + 8}" height="{height + legend_h + 8}">']
    for r in records:
        x = 4 + cell * xi[_uniform(r.point)]
        y = 4 + cell * (len(ys) - 1 - yi[r.point.alpha_irr])
        lines.append(f'<rect x="{x}" y="{y}" width="{cell}" height="{cell}" fill="{colour[r.result.raw_label]}"/>')
    for i, lab in enumerate(labels):
        y = height + 12 + 16 * i
        lines.append(f'<rect x="4" y="{y}" width="10" height="10" fill="{colour[lab]}"/>')
        lines.append(f'<text x="18" y="{y + 9}" font-size="11" font-family="monospace">{_xml(lab)}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _xml(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _uniform(p: AdjointParams) -> Fraction:
    vals = set(p.alphas.values())
    if len(vals) > 1:
        raise ValueError("the SVG slice needs a uniform boundary coefficient")
    return vals.pop() if vals else Fraction(0)


# --- commands -----------------------------------------------------------------

def _load_json(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: malformed JSON: {e}") from None
    except OSError as e:
        raise UsageError(f"{path}: {e.strerror}") from None


def _emit(obj: Any) -> None:
    if isinstance(obj, str):
        print(obj)
    else:
        print(json.dumps(obj, indent=2))


def _amb(args) -> MarkedGenus:
    return MarkedGenus(args.g, args.n)


def cmd_indices(args) -> int:
    _emit([encode_index(k) for k in enumerate_indices(_amb(args), include_irr=not args.no_irr)])
    return 0


def cmd_admissible(args) -> int:
    amb = _amb(args)
    if args.action == "count":
        if args.enumerate:
            _emit(str(sum(1 for _ in enumerate_admissible(amb, cap=args.cap))))
        else:
            _emit(str(count_admissible(amb)))
        return 0
    _emit([encode_tsubset(T, with_ambient=False) for T in enumerate_admissible(amb, cap=args.cap)])
    return 0


def cmd_fcurves(args) -> int:
    _emit([encode_fcurve(C) for C in enumerate_fcurves(_amb(args))])
    return 0


def cmd_intersect(args) -> int:
    L = decode_divisor(_load_json(args.divisor))
    d = _load_json(args.curve)
    if isinstance(d, dict) and "bridge" in d:
        _emit(fmt(intersect_bridge(L, decode_bridge(d["bridge"], L.ambient))))
    else:
        _emit(fmt(intersect(L, decode_fcurve(d, L.ambient))))
    return 0


def cmd_nef(args) -> int:
    L = decode_divisor(_load_json(args.divisor))
    if args.space == "ps":
        if L.space is not Space.MGN_PS:
            raise ValueError("--space ps needs a divisor on MgnPs")
        if args.t is None:
            raise UsageError("--space ps needs --t")
        T = decode_tsubset(_load_json(args.t), L.ambient)
        v = verdict_for_T(L, T)
        out = encode_verdict(v)
        p = to_adjoint(L)
        out["closed_form"] = ps_adjoint_fnef_for_T(p, T) if isinstance(p, AdjointParams) else None
    else:
        if L.space is not Space.MGN:
            raise ValueError("--space mgn needs a divisor on Mgn")
        out = encode_verdict(brute_force_verdict(L))
        p = to_adjoint(L)
        mode = Mode.AMPLE if args.mode == "ample" else Mode.NEF_ELL_ONLY
        out["closed_form"] = adjoint_fnef_closed_form(p, mode) if isinstance(p, AdjointParams) else None
        out["mode"] = args.mode
    _emit(out)
    return 0


def cmd_classify(args) -> int:
    p = decode_params(_load_json(args.params))
    _emit(encode_result(classify(p)))
    return 0


def cmd_sweep(args) -> int:
    grid = decode_grid(_load_json(args.spec))
    records = list(sweep(grid))
    buf = io.StringIO()
    write_csv(records, buf)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as f:
            f.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as f:
            f.write(render_svg(records))
    summary = {"points": len(records), "labels": dict(sorted(summarize(records).items()))}
    if args.walls:
        rep = recover_walls(records)
        summary["walls"] = [{"wall": str(w), "labels": list(w.labels), "columns": w.support} for w in rep.walls]
        summary["region_boundary"] = [{"wall": str(w), "labels": list(w.labels), "columns": w.support}
                                      for w in rep.region_boundary]
        summary["vertices"] = [{"label": lab, "alpha": fmt(x), "alpha_irr": fmt(y)} for lab, x, y in rep.vertices]
    # the CSV owns stdout when no --out is given
    print(json.dumps(summary, indent=2), file=sys.stderr if not args.out else sys.stdout)
    return 0


def _t_for(args, amb: Optional[MarkedGenus] = None) -> TSubset:
    d = _load_json(args.t)
    if amb is None and args.g is not None and args.n is not None:
        amb = MarkedGenus(args.g, args.n)
    return decode_tsubset(d, amb)


def cmd_space(args) -> int:
    T = _t_for(args)
    f = factorize(T)
    qf = is_q_factorial(T)
    _emit({
        "q_factorial": qf,
        "q_gorenstein": qf,
        "factorization": {
            "divisorial_steps": list(f.divisorial_steps),
            "small_contraction_generators": [
                "irr" if b.is_irr else [encode_index(s) for s in b.slots] for b in f.small_contraction_generators
            ],
            "small_contraction": "Identity" if f.small_is_identity else "Small",
            "k_negative_small": f.k_negative_small,
        },
    })
    return 0


def cmd_descend(args) -> int:
    L = decode_divisor(_load_json(args.divisor))
    T = _t_for(args, L.ambient)
    _emit({"descends": descends(L, T)})
    return 0


def cmd_crosscheck(args) -> int:
    amb = _amb(args)
    rng = random.Random(args.seed)
    mgn = crosscheck_mgn(amb, args.samples, rng)
    out: dict = {"g": amb.g, "n": amb.n, "seed": args.seed, "samples": args.samples,
                 "mgn_discrepancies": [{"kind": d.kind, "params": encode_params(d.params), "detail": d.detail} for d in mgn]}
    if (amb.g, amb.n) not in ((1, 1), (2, 0), (1, 2)) and amb.g >= 1:
        Ts = list(enumerate_admissible(amb, cap=2 ** 16))
        if len(Ts) > args.max_t:
            Ts = rng.sample(Ts, args.max_t)
        ps = crosscheck_ps(amb, Ts, args.samples, rng)
        out["subsets_checked"] = len(Ts)
        out["ps_discrepancies"] = [{"kind": d.kind, "params": encode_params(d.params), "detail": d.detail} for d in ps]
    _emit(out)
    return 0 if not mgn and not out.get("ps_discrepancies") else 1


# --- parser -------------------------------------------------------------------

def _add_gn(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--g", type=int, required=required, help="genus")
    p.add_argument("--n", type=int, required=required, help="number of marked points")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mgn-divisors",
                                 description="Exact divisor calculus on moduli of pointed curves.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("indices", help="boundary index classes")
    s = p.add_subparsers(dest="action", required=True)
    q = s.add_parser("list", help="list the index set")
    _add_gn(q)
    q.add_argument("--no-irr", action="store_true", help="omit irr")
    q.set_defaults(func=cmd_indices)

    p = sub.add_parser("admissible", help="admissible subsets")
    s = p.add_subparsers(dest="action", required=True)
    for name in ("count", "list"):
        q = s.add_parser(name)
        _add_gn(q)
        q.add_argument("--cap", type=int, default=2 ** 20, help="enumeration cap")
        if name == "count":
            q.add_argument("--enumerate", action="store_true", help="count by enumeration instead of the formula")
        q.set_defaults(func=cmd_admissible)

    p = sub.add_parser("fcurves", help="F-curves up to numerical equivalence")
    s = p.add_subparsers(dest="action", required=True)
    q = s.add_parser("list")
    _add_gn(q)
    q.set_defaults(func=cmd_fcurves)

    p = sub.add_parser("intersect", help="intersect a divisor with an F-curve or a bridge curve")
    p.add_argument("--divisor", required=True, help="divisor JSON file ('-' for stdin)")
    p.add_argument("--curve", required=True, help='F-curve JSON, or {"bridge": ...} for a bridge curve')
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("nef", help="F-nef / F-ample checks")
    s = p.add_subparsers(dest="action", required=True)
    q = s.add_parser("check")
    q.add_argument("--divisor", required=True)
    q.add_argument("--space", choices=["mgn", "ps"], default="mgn")
    q.add_argument("--t", help="TSubset JSON (with --space ps)")
    q.add_argument("--mode", choices=["ample", "nef"], default="ample")
    q.set_defaults(func=cmd_nef)

    p = sub.add_parser("ample-model", help="ample model of an adjoint divisor")
    s = p.add_subparsers(dest="action", required=True)
    q = s.add_parser("classify")
    q.add_argument("--params", required=True, help="adjoint parameters JSON")
    q.set_defaults(func=cmd_classify)

    p = sub.add_parser("sweep", help="classify a grid of adjoint parameters")
    p.add_argument("--spec", required=True, help="grid JSON")
    p.add_argument("--out", help="CSV output (default stdout)")
    p.add_argument("--svg", help="also render the (alpha, alpha_irr) slice")
    p.add_argument("--walls", action="store_true", help="recover wall equations into the summary")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("space", help="properties of the T-semistable space")
    s = p.add_subparsers(dest="action", required=True)
    q = s.add_parser("props")
    q.add_argument("--t", required=True)
    _add_gn(q, required=False)
    q.set_defaults(func=cmd_space)

    p = sub.add_parser("descend", help="does a pseudostable class descend to the T-space")
    p.add_argument("--divisor", required=True)
    p.add_argument("--t", required=True)
    p.set_defaults(func=cmd_descend, g=None, n=None)

    p = sub.add_parser("crosscheck", help="closed forms against brute force on random points")
    _add_gn(p)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-t", type=int, default=64)
    p.set_defaults(func=cmd_crosscheck)
    return ap


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except (ValueError, CapExceeded, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
