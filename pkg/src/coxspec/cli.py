"""Command-line front end.

Grammar: `coxspec <topic> <action> [flags] [graph file]` with topics
rho {eval|solve|classify}, sigma {sets|member|phi}, graph
{index|spectrum|classify|emit}, coxeter {orbit|standard|verify-transport|
roots|character|classify-root}, star {index|verify|sweep}, and
`verify all`.  A graph file argument of "-" reads standard input; JSON
documents are detected by a leading '{', anything else parses as an edge
list.

Exit codes: 0 success, 1 domain error, 2 usage error, 3 internal
consistency error.  With --json exactly one JSON document goes to stdout
(floats printed with 17 significant digits); diagnostics go to stderr.
The COXSPEC_TOL environment variable overrides default tolerances;
explicit --tol flags win over the environment.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from fractions import Fraction

import numpy as np

from . import coxeter as cx
from . import graphs as gr
from . import sigma as sg
from . import star as st
from .rho import (
    INFINITE,
    classify_branch_vector,
    rho,
    rho_closed_form,
    rho_prefix,
    solve_rho_equation,
    u_sequence,
    v_sequence,
)
from ._kernels import BACKEND
from .errors import DomainError, InternalConsistencyError, PoleError

__all__ = ["main", "run"]


# --------------------------------------------------------------------------
# Formatting helpers


def _format_scalar(x) -> str:
    if x is INFINITE:
        return "infinity"
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.17g}"


def _jsonable(x):
    """JSON-ready form: Fractions and infinity become strings, floats stay
    floats (rendered later with 17 significant digits)."""
    if x is INFINITE:
        return "infinity"
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    return x


def _dump_json(value) -> str:
    """Deterministic JSON with floats at 17 significant digits."""
    value = _jsonable(value)
    if value is None:
        return "null"
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, str):
        out = value.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{out}"'
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return '"nan"'
        if math.isinf(value):
            return '"infinity"' if value > 0 else '"-infinity"'
        return f"{value:.17g}"
    if isinstance(value, dict):
        items = ", ".join(f"{_dump_json(str(k))}: {_dump_json(v)}" for k, v in value.items())
        return "{" + items + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_dump_json(v) for v in value) + "]"
    raise TypeError(f"cannot serialize {type(value)!r}")


def _emit(payload, args, text_lines) -> None:
    if getattr(args, "json", False):
        print(_dump_json(payload))
    else:
        for line in text_lines:
            print(line)


# --------------------------------------------------------------------------
# Argument parsing helpers


def _parse_number(text: str):
    """int, "p/q" Fraction, or float."""
    try:
        return int(text)
    except ValueError:
        pass
    if "/" in text:
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise argparse.ArgumentTypeError(f"bad rational {text!r}") from None
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad number {text!r}") from None


def _parse_branches(text: str) -> tuple:
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad branch list {text!r}") from None


def _parse_vector_flag(text: str) -> dict:
    out = {}
    for part in text.split(","):
        label, sep, value = part.partition("=")
        if not sep or not label:
            raise argparse.ArgumentTypeError(f"bad vector entry {part!r}")
        out[label] = _parse_number(value)
    return out


def _read_graph(path: str) -> gr.Graph:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    if text.lstrip().startswith("{"):
        return gr.Graph.from_json(text)
    return gr.parse_graph(text)


def _tol(args, default: float) -> float:
    if getattr(args, "tol", None) is not None:
        return args.tol
    env = os.environ.get("COXSPEC_TOL")
    if env:
        try:
            return float(env)
        except ValueError:
            raise DomainError(f"bad COXSPEC_TOL value {env!r}") from None
    return default


def _int_vector(g: gr.Graph, mapping: dict) -> tuple:
    vec = cx.vector_from_map(g, mapping)
    out = []
    for v in vec:
        if isinstance(v, Fraction) and v.denominator == 1:
            v = int(v)
        if not isinstance(v, int):
            raise DomainError(f"integer vector required, got {v!r}")
        out.append(v)
    return tuple(out)


# --------------------------------------------------------------------------
# Topic handlers


def _cmd_rho_eval(args) -> int:
    value = rho(args.r, args.n, exact=True if args.exact else None)
    _emit(
        {"r": args.r, "n": args.n, "value": value},
        args,
        [_format_scalar(value)],
    )
    return 0


def _cmd_rho_solve(args) -> int:
    res = solve_rho_equation(args.r, s_max=args.smax, n_max=args.nmax)
    payload = {
        "r": args.r,
        "solutions": [list(v) for v in res.solutions],
        "exhaustive": res.exhaustive,
        "s_max": res.s_max,
        "n_max": res.n_max,
    }
    lines = [",".join(map(str, v)) for v in res.solutions]
    lines.append(f"exhaustive: {'true' if res.exhaustive else 'false'}")
    _emit(payload, args, lines)
    return 0


def _cmd_rho_classify(args) -> int:
    cls = classify_branch_vector(args.branches)
    payload = {"branches": sorted(args.branches), "tag": cls.tag, "rho4": cls.rho4}
    _emit(payload, args, [f"{cls.tag} (rho_4 = {cls.rho4})"])
    return 0


def _cmd_sigma_sets(args) -> int:
    desc = sg.sigma_description(args.r, k_max=args.kmax)
    payload = {
        "r": args.r,
        "lambda1": list(desc.lambda1),
        "lambda2": list(desc.lambda2),
        "band": list(desc.band),
        "r_minus_lambda1": list(desc.reflected1),
        "r_minus_lambda2": list(desc.reflected2),
    }
    lines = [
        "lambda1: " + ", ".join(_format_scalar(x) for x in desc.lambda1),
        "lambda2: " + ", ".join(_format_scalar(x) for x in desc.lambda2),
        f"band: [{_format_scalar(desc.band[0])}, {_format_scalar(desc.band[1])}]",
        "r-lambda1: " + ", ".join(_format_scalar(x) for x in desc.reflected1),
        "r-lambda2: " + ", ".join(_format_scalar(x) for x in desc.reflected2),
    ]
    _emit(payload, args, lines)
    return 0


def _cmd_sigma_member(args) -> int:
    tol = _tol(args, 1e-9)
    hits = sg.sigma_membership(args.r, args.alpha, tol=tol)
    payload = {
        "r": args.r,
        "alpha": args.alpha,
        "tol": tol,
        "member": bool(hits),
        "parts": [
            {"part": part, "k": k, "value": val} for part, k, val in hits
        ],
    }
    if hits:
        lines = [
            part + (f"[{k}] = {_format_scalar(val)}" if k is not None else "")
            for part, k, val in hits
        ]
    else:
        lines = ["not a member"]
    _emit(payload, args, lines)
    return 0


def _cmd_sigma_phi(args) -> int:
    closed = sg.phi_plus(args.r, args.alpha, args.k)
    recurrent = sg.phi_plus_recurrent(args.r, args.alpha, args.k)
    delta = abs(float(closed) - float(recurrent))
    payload = {
        "r": args.r,
        "alpha": args.alpha,
        "k": args.k,
        "value": closed,
        "recurrent": recurrent,
        "delta": delta,
    }
    _emit(payload, args, [f"{_format_scalar(closed)} (recurrent form agrees to {delta:.3g})"])
    return 0


def _cmd_graph_index(args) -> int:
    g = _read_graph(args.file)
    res = gr.index_and_principal(g, tol=_tol(args, 1e-13))
    payload = {
        "index": res.index,
        "principal": cx.vector_to_json_obj(g, tuple(float(x) for x in res.principal)),
        "iterations": res.iterations,
        "residual": res.residual,
    }
    lines = [f"index: {res.index:.17g}"]
    lines += [f"  {v} {float(x):.17g}" for v, x in zip(g.vertices, res.principal)]
    _emit(payload, args, lines)
    return 0


def _cmd_graph_spectrum(args) -> int:
    g = _read_graph(args.file)
    values = gr.full_spectrum(g, tol=_tol(args, 1e-12))
    payload = {"spectrum": [float(x) for x in values]}
    _emit(payload, args, [" ".join(f"{float(x):.17g}" for x in values)])
    return 0


def _cmd_graph_classify(args) -> int:
    g = _read_graph(args.file)
    cls = gr.smith_classify(g, tol=_tol(args, 1e-9))
    payload = {"tag": cls.tag, "name": cls.name, "index": cls.index}
    label = cls.name if cls.name else "unrecognized shape"
    _emit(payload, args, [f"{cls.tag} ({label}), index {cls.index:.12g}"])
    return 0


def _cmd_graph_emit(args) -> int:
    g = gr.make_star(args.star)
    if args.format == "json":
        print(g.to_json())
    else:
        sys.stdout.write(g.to_edge_text())
    return 0


def _cmd_coxeter_orbit(args) -> int:
    g = _read_graph(args.file)
    b = gr.bipartition(g)
    x = cx.vector_from_map(g, args.vector)
    t_max = args.tmax if args.tmax is not None else 10 * g.n
    rows = []
    for t in range(-t_max, t_max + 1):
        rows.append({"t": t, "vector": cx.vector_to_json_obj(g, cx.coxeter_t(g, b, x, t))})
    _emit(
        {"orbit": rows},
        args,
        [f"t={row['t']:+d}: {row['vector']}" for row in rows],
    )
    return 0


def _cmd_coxeter_standard(args) -> int:
    g = _read_graph(args.file)
    b = gr.bipartition(g)
    sv = cx.standard_vectors(g, b, gr.index_and_principal(g))
    payload = {
        "odd": cx.vector_to_json_obj(g, sv.y_odd),
        "even": cx.vector_to_json_obj(g, sv.y_even),
        "parity": {v: b.parity[v] for v in g.vertices},
    }
    _emit(
        payload,
        args,
        ["odd:  " + str(payload["odd"]), "even: " + str(payload["even"])],
    )
    return 0


def _cmd_coxeter_verify_transport(args) -> int:
    g = _read_graph(args.file)
    b = gr.bipartition(g)
    report = cx.verify_transport(g, b, t_max=args.tmax if args.tmax else 10)
    payload = {
        "r": report.r,
        "base_residual": report.base_residual,
        "max_defect": report.max_defect,
        "rows": [
            {"t": row.t, "defects": list(row.defects), "pole": row.pole}
            for row in report.rows
        ],
    }
    lines = [f"r = {report.r:.12g}, two-step identity residual {report.base_residual:.3e}"]
    for row in report.rows:
        joined = " ".join(f"{d:.3e}" for d in row.defects)
        lines.append(f"t={row.t}: {joined}" + (" (pole)" if row.pole else ""))
    _emit(payload, args, lines)
    return 0


def _cmd_coxeter_roots(args) -> int:
    g = _read_graph(args.file)
    res = cx.enumerate_real_roots(
        g,
        norm_bound=args.bound if args.bound else 10,
        budget=args.budget,
    )
    payload = {
        "count": len(res.roots),
        "exhaustive": res.exhaustive,
        "hit_norm_bound": res.hit_norm_bound,
        "hit_budget": res.hit_budget,
    }
    if args.list:
        payload["roots"] = [list(map(int, root)) for root in res.roots]
    lines = [
        f"{len(res.roots)} roots ({'exhaustive' if res.exhaustive else 'truncated'})"
    ]
    if args.list:
        lines += [" ".join(map(str, root)) for root in res.roots]
    _emit(payload, args, lines)
    return 0


def _cmd_coxeter_classify_root(args) -> int:
    g = _read_graph(args.file)
    b = gr.bipartition(g)
    d = _int_vector(g, args.vector)
    cls = cx.classify_root(g, b, d, t_max=args.tmax)
    payload = {
        "verdict": cls.verdict,
        "t": cls.t,
        "vertex": cls.vertex,
        "period": cls.period,
        "t_max": cls.t_max,
    }
    if cls.verdict == "singular":
        text = f"singular: transported simple root at {cls.vertex}, t = {cls.t}"
    elif cls.verdict == "regular":
        text = f"regular: orbit periodic with period {cls.period}"
    else:
        text = f"undetermined within |t| <= {cls.t_max}"
    _emit(payload, args, [text])
    return 0


def _cmd_coxeter_character(args) -> int:
    g = _read_graph(args.file)
    b = gr.bipartition(g)
    d = _int_vector(g, args.vector)
    res = cx.standard_character(g, b, d, t_max=args.tmax)
    payload = {
        "t": res.t,
        "vertex": res.vertex,
        "character": cx.vector_to_json_obj(g, res.character),
        "base": cx.vector_to_json_obj(g, res.base),
    }
    _emit(
        payload,
        args,
        [
            f"witness: simple root at {res.vertex}, t = {res.t}",
            f"character: {payload['character']}",
        ],
    )
    return 0


def _cmd_star_index(args) -> int:
    report = st.solve_star_index(args.branches, tol=_tol(args, 1e-12))
    payload = {
        "branches": list(report.branches),
        "r": report.r,
        "index": report.index,
        "residual": report.residual,
        "method": report.method,
        "cross_check_delta": report.cross_check_delta,
    }
    _emit(
        payload,
        args,
        [
            f"r = {report.r:.17g}",
            f"index = {report.index:.17g}",
            f"residual = {report.residual:.3e}",
            f"cross-check delta = {report.cross_check_delta:.3e}",
        ],
    )
    return 0


def _cmd_star_verify(args) -> int:
    report = st.verify_star_theorem(args.branches, tol=_tol(args, 1e-8))
    payload = {
        "branches": list(report.branches),
        "r": report.r,
        "index": report.index,
        "residual": report.residual,
    }
    _emit(payload, args, [f"r = {report.r:.17g}, residual = {report.residual:.3e}"])
    return 0


def _cmd_star_sweep(args) -> int:
    tol = _tol(args, 1e-7)
    rows = []
    worst = 0.0
    for v in st.branch_vectors(args.smax, args.max_entry):
        rep = st.solve_star_index(v)
        verify = st.verify_star_theorem(v, tol=tol)
        worst = max(worst, verify.residual, rep.cross_check_delta)
        rows.append(
            {
                "branches": list(v),
                "r": rep.r,
                "index": rep.index,
                "residual": verify.residual,
                "cross_check_delta": rep.cross_check_delta,
            }
        )
    payload = {"count": len(rows), "worst": worst, "rows": rows}
    lines = [
        f"{','.join(map(str, row['branches'])):>12}  r={row['r']:.12g}  "
        f"residual={row['residual']:.2e}  delta={row['cross_check_delta']:.2e}"
        for row in rows
    ]
    lines.append(f"{len(rows)} vectors, worst deviation {worst:.3e}")
    _emit(payload, args, lines)
    return 0


# --------------------------------------------------------------------------
# verify all


def _identity_suites() -> list:
    """(name, callable) pairs; each callable returns (ok, detail)."""

    def recurrence_vs_closed():
        worst = 0.0
        for r in (4.5, 5.0, 6.0, 10.0):
            for n in range(31):
                a = float(rho(r, n, exact=False))
                c = rho_closed_form(r, n)
                worst = max(worst, abs(a - c) / max(1.0, abs(c)))
        return worst <= 1e-10, f"max relative gap {worst:.2e}"

    def odd_index_quotient():
        for r in (4, 5, 6, 7):
            seq = u_sequence(r)
            for k in range(1, 16):
                if rho(r, 2 * k - 1) != 1 + Fraction(seq.term(k - 1), seq.term(k)):
                    return False, f"failed at r={r}, k={k}"
        return True, "exact for r in 4..7, k <= 15"

    def sqrt_quotient():
        worst = 0.0
        for r in (4.0, 5.0, 2.0 + math.sqrt(3.0)):
            seq = v_sequence(r)
            for n in range(21):
                den = seq.term(n + 1)
                if abs(den) <= 1e-9 * max(1.0, abs(seq.term(n))):
                    continue  # pole row: both sides are formally infinite
                lhs = float(rho(r, n, exact=False))
                rhs = math.sqrt(r) * seq.term(n) / den
                worst = max(worst, abs(lhs - rhs))
        return worst <= 1e-10, f"max gap {worst:.2e}"

    def periodicity():
        for r, period in ((1, 3), (2, 4), (3, 6)):
            values = rho_prefix(r, 3 * period + 2, exact=True)
            for m in range(len(values) - period):
                if values[m] != values[m + period]:
                    return False, f"period {period} broken at r={r}, m={m}"
        return True, "exact periods 3, 4, 6 at r = 1, 2, 3"

    def phi_agreement():
        worst = 0.0
        for r in (4, 5, 6):
            for alpha in (0, Fraction(1, 2), 1, 2):
                for k in range(1, 11):
                    try:
                        a = sg.phi_plus(r, alpha, k)
                        b = sg.phi_plus_recurrent(r, alpha, k)
                    except PoleError:
                        continue
                    worst = max(worst, abs(float(a) - float(b)) / max(1.0, abs(float(a))))
        return worst <= 1e-10, f"max relative gap {worst:.2e}"

    def sigma_monotone():
        for r in (4, 5, 6):
            desc = sg.sigma_description(r, k_max=12)
            lo = desc.band[0]
            for series in (desc.lambda1, desc.lambda2):
                floats = [float(x) for x in series]
                if any(b <= a for a, b in zip(floats, floats[1:])):
                    return False, f"series not increasing at r={r}"
                if any(x > lo + 1e-12 for x in floats):
                    return False, f"series escapes the band edge at r={r}"
        return True, "both series increase toward the left band edge"

    def index_bounds():
        suite = [gr.make_path(7), gr.make_cycle(6), gr.make_star((2, 2, 2)),
                 gr.Graph("abcde", [(u, v) for u in "abcde" for v in "abcde" if u < v])]
        for g in suite:
            res = gr.index_and_principal(g)
            if not (1.0 - 1e-9 <= res.index <= g.n - 1 + 1e-9):
                return False, f"bounds violated on {g.n}-vertex graph"
            spectrum = gr.full_spectrum(g)
            if abs(res.index - float(spectrum[-1])) > 1e-9:
                return False, "power iteration and Jacobi disagree"
        return True, "1 <= index <= n-1 and eigensolvers agree"

    def bipartite_symmetry():
        for g in (gr.make_path(6), gr.make_star((1, 2, 5)), gr.make_cycle(8)):
            spec = gr.full_spectrum(g)
            if any(abs(a + b) > 1e-9 for a, b in zip(spec, spec[::-1])):
                return False, "spectrum not symmetric"
        return True, "spectra symmetric about 0 on bipartite suite"

    def smith_boundary():
        for name in gr.ade_names(9):
            cls = gr.smith_classify(gr.dynkin(name))
            if cls.name != name:
                return False, f"recognizer returned {cls.name} for {name}"
            if name.startswith("~"):
                if abs(cls.index - 2.0) > 1e-9:
                    return False, f"{name}: index {cls.index} not 2"
            elif not cls.index < 2.0 - 1e-6:
                return False, f"{name}: index {cls.index} not below 2"
        return True, "all ADE and extended shapes up to 9 vertices"

    def transport():
        worst = 0.0
        for branches in ((1, 1, 1, 1), (2, 2, 2), (1, 3, 3), (1, 2, 5), (1, 2, 6)):
            g = gr.make_star(branches)
            report = cx.verify_transport(g, gr.bipartition(g), t_max=10)
            worst = max(worst, report.max_defect, report.base_residual)
        return worst <= 1e-8, f"max defect {worst:.2e}"

    def star_identity():
        worst = 0.0
        for v in st.branch_vectors(4, 5):
            rep = st.solve_star_index(v)
            ver = st.verify_star_theorem(v)
            worst = max(worst, ver.residual, rep.cross_check_delta)
        return worst <= 1e-7, f"worst deviation {worst:.2e} over {len(st.branch_vectors(4, 5))} stars"

    def root_census():
        expected = {"A2": 6, "D4": 24, "E6": 72, "E7": 126, "E8": 240}
        for name, count in expected.items():
            res = cx.enumerate_real_roots(gr.dynkin(name))
            if not res.exhaustive or len(res.roots) != count:
                return False, f"{name}: got {len(res.roots)}, exhaustive={res.exhaustive}"
            for root in res.roots:
                if min(root) < 0 < max(root):
                    return False, f"{name}: mixed-sign root {root}"
        return True, "A2/D4/E6/E7/E8 counts and sign dichotomy"

    return [
        ("rho recurrence vs closed form", recurrence_vs_closed),
        ("odd-index quotient identity (u-series)", odd_index_quotient),
        ("sqrt-r quotient identity (v-series)", sqrt_quotient),
        ("rho periodicity at resonant r", periodicity),
        ("parameter map: closed vs recurrent", phi_agreement),
        ("spectrum sets: monotone discrete series", sigma_monotone),
        ("index bounds and eigensolver agreement", index_bounds),
        ("bipartite spectrum symmetry", bipartite_symmetry),
        ("index-2 boundary classification", smith_boundary),
        ("standard vector transport proportionality", transport),
        ("star index identity sweep", star_identity),
        ("real-root census and sign dichotomy", root_census),
    ]


def _cmd_verify_all(args) -> int:
    results = []
    for name, suite in _identity_suites():
        ok, detail = suite()
        results.append({"name": name, "ok": ok, "detail": detail})
    all_ok = all(r["ok"] for r in results)
    if getattr(args, "json", False):
        print(_dump_json({"ok": all_ok, "checks": results, "backend": BACKEND}))
    else:
        for r in results:
            print(f"{'PASS' if r['ok'] else 'FAIL'}  {r['name']}: {r['detail']}")
        print(f"{'all checks passed' if all_ok else 'FAILURES PRESENT'} (kernels: {BACKEND})")
    return 0 if all_ok else 1


# --------------------------------------------------------------------------
# Parser assembly


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coxspec",
        description="Separating functions, graph spectra and reflection dynamics.",
    )
    topics = parser.add_subparsers(dest="topic", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true", help="emit one JSON document")

    # rho
    p_rho = topics.add_parser("rho", help="separating functions")
    rho_actions = p_rho.add_subparsers(dest="action", required=True)
    p = rho_actions.add_parser("eval", help="evaluate rho_r(n)")
    p.add_argument("--r", type=_parse_number, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--exact", action="store_true", help="force exact rational arithmetic")
    add_json(p)
    p.set_defaults(func=_cmd_rho_eval)
    p = rho_actions.add_parser("solve", help="all v with rho_r(v) = r")
    p.add_argument("--r", type=_parse_number, required=True)
    p.add_argument("--smax", type=int, default=None)
    p.add_argument("--nmax", type=int, default=50)
    add_json(p)
    p.set_defaults(func=_cmd_rho_solve)
    p = rho_actions.add_parser("classify", help="r = 4 trichotomy of a branch vector")
    p.add_argument("--branches", type=_parse_branches, required=True)
    add_json(p)
    p.set_defaults(func=_cmd_rho_classify)

    # sigma
    p_sigma = topics.add_parser("sigma", help="admissible parameter sets")
    sigma_actions = p_sigma.add_subparsers(dest="action", required=True)
    p = sigma_actions.add_parser("sets", help="discrete series, band and reflections")
    p.add_argument("--r", type=_parse_number, required=True)
    p.add_argument("--kmax", type=int, default=10)
    add_json(p)
    p.set_defaults(func=_cmd_sigma_sets)
    p = sigma_actions.add_parser("member", help="membership of alpha, within tolerance")
    p.add_argument("--r", type=_parse_number, required=True)
    p.add_argument("--alpha", type=_parse_number, required=True)
    p.add_argument("--tol", type=float, default=None)
    add_json(p)
    p.set_defaults(func=_cmd_sigma_member)
    p = sigma_actions.add_parser("phi", help="k-fold parameter map")
    p.add_argument("--r", type=_parse_number, required=True)
    p.add_argument("--alpha", type=_parse_number, required=True)
    p.add_argument("--k", type=int, required=True)
    add_json(p)
    p.set_defaults(func=_cmd_sigma_phi)

    # graph
    p_graph = topics.add_parser("graph", help="spectra and classification")
    graph_actions = p_graph.add_subparsers(dest="action", required=True)
    for action, func, needs_tol in (
        ("index", _cmd_graph_index, True),
        ("spectrum", _cmd_graph_spectrum, True),
        ("classify", _cmd_graph_classify, True),
    ):
        p = graph_actions.add_parser(action)
        p.add_argument("file", help="edge list or JSON graph; '-' for stdin")
        if needs_tol:
            p.add_argument("--tol", type=float, default=None)
        add_json(p)
        p.set_defaults(func=func)
    p = graph_actions.add_parser("emit", help="emit a star-shaped graph")
    p.add_argument("--star", type=_parse_branches, required=True)
    p.add_argument("--format", choices=("edges", "json"), default="edges")
    p.set_defaults(func=_cmd_graph_emit)

    # coxeter
    p_cox = topics.add_parser("coxeter", help="reflection dynamics")
    cox_actions = p_cox.add_subparsers(dest="action", required=True)
    p = cox_actions.add_parser("orbit", help="c_t trajectory of a vector")
    p.add_argument("file")
    p.add_argument("--vector", type=_parse_vector_flag, required=True)
    p.add_argument("--tmax", type=int, default=None)
    add_json(p)
    p.set_defaults(func=_cmd_coxeter_orbit)
    p = cox_actions.add_parser("standard", help="standard vectors of a bipartite graph")
    p.add_argument("file")
    add_json(p)
    p.set_defaults(func=_cmd_coxeter_standard)
    p = cox_actions.add_parser("verify-transport", help="standard-vector transport defects")
    p.add_argument("file")
    p.add_argument("--tmax", type=int, default=10)
    add_json(p)
    p.set_defaults(func=_cmd_coxeter_verify_transport)
    p = cox_actions.add_parser("roots", help="real-root closure")
    p.add_argument("file")
    p.add_argument("--bound", type=int, default=10)
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--list", action="store_true", help="print every root")
    add_json(p)
    p.set_defaults(func=_cmd_coxeter_roots)
    p = cox_actions.add_parser("classify-root", help="singular/regular verdict")
    p.add_argument("file")
    p.add_argument("--vector", type=_parse_vector_flag, required=True)
    p.add_argument("--tmax", type=int, default=None)
    add_json(p)
    p.set_defaults(func=_cmd_coxeter_classify_root)
    p = cox_actions.add_parser("character", help="standard character of a singular root")
    p.add_argument("file")
    p.add_argument("--vector", type=_parse_vector_flag, required=True)
    p.add_argument("--tmax", type=int, default=None)
    add_json(p)
    p.set_defaults(func=_cmd_coxeter_character)

    # star
    p_star = topics.add_parser("star", help="star-shaped graph index")
    star_actions = p_star.add_subparsers(dest="action", required=True)
    p = star_actions.add_parser("index", help="solve r = rho_r(v) and cross-check")
    p.add_argument("--branches", type=_parse_branches, required=True)
    p.add_argument("--tol", type=float, default=None)
    add_json(p)
    p.set_defaults(func=_cmd_star_index)
    p = star_actions.add_parser("verify", help="check the index identity")
    p.add_argument("--branches", type=_parse_branches, required=True)
    p.add_argument("--tol", type=float, default=None)
    add_json(p)
    p.set_defaults(func=_cmd_star_verify)
    p = star_actions.add_parser("sweep", help="identity sweep over branch vectors")
    p.add_argument("--smax", type=int, default=4)
    p.add_argument("--max-entry", dest="max_entry", type=int, default=5)
    p.add_argument("--tol", type=float, default=None)
    add_json(p)
    p.set_defaults(func=_cmd_star_sweep)

    # verify
    p_verify = topics.add_parser("verify", help="one-shot verification suite")
    verify_actions = p_verify.add_subparsers(dest="action", required=True)
    p = verify_actions.add_parser("all", help="run every identity suite")
    add_json(p)
    p.set_defaults(func=_cmd_verify_all)

    return parser


def run(argv) -> int:
    """Dispatch an argument vector; returns the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InternalConsistencyError as exc:
        print(f"internal consistency error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
