"""Command-line front end.

Every command builds a ``Result`` (plain text, a JSON-able object and a
table) and the chosen ``--format`` picks one of the three.  Exit codes: 0
success, 1 a verification failed, 2 bad usage or an unparsable value.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import analysis, closed_forms, enumerations, geometry, mcf, stern
from .exact import PHI, SQRT2, SQRT3, ParseError, QuadElem, format_value, parse_value, to_json

__all__ = ["main", "run", "build_parser"]

ENUM_TAGS = ("r", "s", "t", "u")
FAMILY_TAGS = ("a", "b", "c", "d")
VERIFY_TARGETS = ("agree", "bijection", "closed", "genfun", "tangency", "roundtrip", "uconj")


class UsageError(Exception):
    pass


@dataclass
class Result:
    plain: str
    data: object
    header: list = field(default_factory=list)
    rows: list = field(default_factory=list)
    ok: bool = True


def _jsonable(x):
    if isinstance(x, (QuadElem, Fraction)):
        return to_json(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _table(header, rows) -> str:
    cells = [list(map(str, header))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells)


def _render(res: Result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_jsonable(res.data), indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if res.header:
            w.writerow(res.header)
            w.writerows([[format_value(c) if isinstance(c, (QuadElem, Fraction)) else c for c in r] for r in res.rows])
        else:
            w.writerow([res.plain])
        return buf.getvalue()
    return res.plain.rstrip("\n") + "\n"


def _value(token: str):
    try:
        return parse_value(token)
    except ParseError as exc:
        raise UsageError(str(exc)) from None


def _pass(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


# -- gen / index --------------------------------------------------------------

def cmd_gen(a) -> Result:
    if a.count < 1:
        raise UsageError("--count must be >= 1")
    tag = a.seq.upper()
    if a.seq in FAMILY_TAGS:
        if a.method is not None:
            raise UsageError("--method applies to the enumerations r, s, t, u only")
        vals = stern.seq_prefix(tag, a.count - 1)
    else:
        vals = enumerations.prefix(tag, a.count, a.method or "ratio")
    toks = [format_value(v) for v in vals]
    start = 0 if a.seq in FAMILY_TAGS else 1
    return Result(" ".join(toks), vals, ["n", "value"], [[start + i, t] for i, t in enumerate(toks)])


def cmd_index(a) -> Result:
    x = _value(a.value)
    try:
        n = enumerations.index_of(a.enum.upper(), x, a.max_steps)
    except enumerations.NotPositive as exc:
        raise UsageError(str(exc)) from None
    except enumerations.BoundExceeded as exc:
        return Result(f"not found: {exc}", {"value": x, "index": None}, ok=False)
    return Result(str(n), {"value": x, "index": n}, ["value", "index"], [[format_value(x), n]])


# -- verify -------------------------------------------------------------------

def _verify_agree(bound, jobs):
    bound = bound or 1000
    header = ["enumeration", "method", "terms", "agree"]
    rows, ok = [], True
    for tag in ENUM_TAGS:
        ref = enumerations.prefix(tag.upper(), bound, "ratio")
        for method in enumerations.METHODS:
            n = min(bound, 2000) if method == "greedy" else bound
            same = enumerations.prefix(tag.upper(), n, method) == ref[:n]
            ok &= same
            rows.append([tag, method, n, _pass(same)])
    return header, rows, ok, {"bound": bound}


def _verify_bijection(bound, jobs):
    bound = bound or 40
    header = ["enumeration", "checked", "max_index", "failures", "status"]
    rows, ok, reports = [], True, []
    for tag in ("r", "s", "t"):
        rep = enumerations.verify_bijection(tag.upper(), bound, jobs)
        ok &= rep.ok
        reports.append(rep.to_dict())
        rows.append([tag, rep.checked, rep.max_index, len(rep.failures), _pass(rep.ok)])
    orb = enumerations.corollary_orbit_report(bound)
    ok &= orb.covered
    rows.append(["orbit", orb.targets, orb.required_steps, orb.targets - orb.visited, _pass(orb.covered)])
    return header, rows, ok, {"bound": bound, "reports": reports, "orbit": orb.to_dict()}


def _closed_rows(bound):
    header = ["check", "family", "range", "status"]
    rows, ok = [], True
    for tag in "ABCD":
        n_max = bound or (1000 if tag == "C" else 2000)
        ref = stern.seq_prefix(tag, n_max + 1)
        good = all(closed_forms.weighted_rep_sum(tag, n) == ref[n + 1] for n in range(n_max + 1))
        rows.append(["weighted", tag, n_max, _pass(good)])
        ok &= good
        t_max = min(n_max, 40)
        good = all(
            closed_forms.tuple_rep_sum(tag, n) == closed_forms.weighted_rep_sum(tag, n) for n in range(t_max + 1)
        )
        rows.append(["tuple", tag, t_max, _pass(good)])
        ok &= good
    for name, fn, tag, default in (
        ("binet_a", closed_forms.binet_a_prefix, "A", 4096),
        ("binet_b", closed_forms.binet_b_prefix, "B", 2187),
    ):
        n_max = bound or default
        try:
            vals = fn(n_max)
            ref = stern.seq_prefix(tag, n_max + 1)
            good = all(vals[n] == ref[n + 1] for n in range(n_max + 1))
        except ArithmeticError:
            good = False
        rows.append([name, tag, n_max, _pass(good)])
        ok &= good
    return header, rows, ok


def _verify_closed(bound, jobs):
    header, rows, ok = _closed_rows(bound)
    return header, rows, ok, {"bound": bound}


_GENFUN_DEGREE = {"A": 1000, "B": 729, "C": 625, "D": 1024}


def _genfun_rows(bound, families="ABCD"):
    header = ["family", "check", "detail", "status"]
    rows, ok = [], True
    for tag in families:
        g = analysis.genfun_verify(tag, bound or _GENFUN_DEGREE[tag])
        rows.append([tag, "factor identity", f"degree {g.degree}", _pass(g.ok)])
        p = analysis.primary_roots_check(tag)
        rows.append([tag, "primary roots", f"max|P|={p.max_abs:.3e}", _pass(p.ok)])
        ok &= g.ok and p.ok
    return header, rows, ok


def _verify_genfun(bound, jobs):
    header, rows, ok = _genfun_rows(bound)
    return header, rows, ok, {"bound": bound}


def _verify_tangency(bound, jobs):
    depth = bound or 6
    header = ["check", "detail", "status"]
    rows, ok = [], True
    for tag in "ABCD":
        chain = geometry.packing(tag, depth)
        good = all(geometry.tangent(c1, c2) for c1, c2 in zip(chain, chain[1:]))
        rows.append([f"packing {tag}", f"depth {depth}, {len(chain)} circles", _pass(good)])
        ok &= good
    good = True
    for k in range(9):
        pts = geometry.tangency_points(geometry.packing("A", k))
        want = [Fraction(stern.seq_term("A", n), stern.seq_term("A", 2**k + n)) for n in range(2**k + 1)]
        good &= pts == want
    rows.append(["ford points", "k <= 8", _pass(good)])
    ok &= good
    for alpha, length in ((1, 3), (SQRT2, 4), (PHI, 5), (SQRT3, 6)):
        got = geometry.cheb_chain(alpha).length
        rows.append([f"chain {format_value(alpha)}", f"length {got}", _pass(got == length)])
        ok &= got == length
    tot = [geometry.totient_halved(n) for n in range(1, 11)]
    good = tot == [1, 1, 2, 2, 2, 3, 4, 3, 4, 5]
    rows.append(["totient", " ".join(map(str, tot)), _pass(good)])
    return header, rows, ok and good, {"depth": depth}


def _verify_roundtrip(bound, jobs):
    k_b = bound or 5
    header = ["family", "k", "checked", "passed", "unexplained", "status"]
    rows = []
    k_a = 10
    checked = passed = 0
    for k in range(k_a + 1):
        for n in range(2**k + 1):
            x = Fraction(stern.seq_term("A", n), stern.seq_term("A", 2**k + n))
            passed += analysis.question_mark(x) == Fraction(n, 2**k)
            checked += 1
    good_a = passed == checked
    rows.append(["A", k_a, checked, passed, checked - passed, _pass(good_a)])
    reports = {}
    for tag, k in (("B", k_b), ("C", min(k_b, 4)), ("D", k_b)):
        rep = analysis.singular_experiment(tag, k)
        reports[tag] = rep.to_dict()
        status = _pass(rep.passed == rep.checked) if tag == "B" else "INFO"
        rows.append([tag, k, rep.checked, rep.passed, len(rep.unexplained), status])
    ok = good_a and reports["B"]["passed"] == reports["B"]["checked"]
    return header, rows, ok, {"reports": reports}


def _verify_uconj(bound, jobs):
    rep = enumerations.u_conjecture_experiment(bound or 5)
    header = ["bound", "max_steps", "total", "reached", "max_depth", "witnesses"]
    rows = [[rep.bound, rep.max_steps, rep.total, rep.reached, rep.max_depth, len(rep.witnesses)]]
    # unreached values are reported as candidate counterexamples, not failures
    return header, rows, True, rep.to_dict()


_VERIFY = {
    "agree": _verify_agree,
    "bijection": _verify_bijection,
    "closed": _verify_closed,
    "genfun": _verify_genfun,
    "tangency": _verify_tangency,
    "roundtrip": _verify_roundtrip,
    "uconj": _verify_uconj,
}


def cmd_verify(a) -> Result:
    if a.bound is not None and a.bound < 1:
        raise UsageError("--bound must be >= 1")
    if a.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    header, rows, ok, extra = _VERIFY[a.target](a.bound, a.jobs)
    data = {"target": a.target, "pass": ok, "rows": [dict(zip(header, r)) for r in rows], "detail": extra}
    plain = _table(header, rows) + f"\n{a.target}: {_pass(ok)}"
    return Result(plain, data, header, rows, ok)


# -- analysis commands ---------------------------------------------------------

def cmd_degree(a) -> Result:
    if a.rows < 4:
        raise UsageError("--rows must be >= 4")
    est = analysis.degree_estimate(a.family.upper(), a.rows)
    d = est.to_dict()
    header = ["family", "k", "estimate", "target", "error", "pass"]
    row = [d["family"], d["k"], f"{d['estimate']:.9f}", f"{d['target']:.10g}", f"{d['error']:.2e}", d["pass"]]
    plain = _table(header, [row])
    if est.conjectural:
        plain += "\n(target is conjectural)"
    return Result(plain, d, header, [row], est.passed)


def cmd_genfun(a) -> Result:
    fams = [a.family.upper()] if a.family else "ABCD"
    header, rows, ok = _genfun_rows(a.degree, fams)
    return Result(_table(header, rows), {"pass": ok, "rows": [dict(zip(header, r)) for r in rows]}, header, rows, ok)


def cmd_closed(a) -> Result:
    header, rows, ok = _closed_rows(a.bound)
    return Result(_table(header, rows), {"pass": ok, "rows": [dict(zip(header, r)) for r in rows]}, header, rows, ok)


def cmd_singular(a) -> Result:
    tag = a.family.upper()
    if tag == "A":
        raise UsageError("family a is the question-mark case; use `qmark` or `verify roundtrip`")
    rep = analysis.singular_experiment(tag, a.k)
    d = rep.to_dict()
    header = ["family", "k", "checked", "passed", "pass_rate", "mismatches", "unexplained"]
    row = [tag, a.k, rep.checked, rep.passed, f"{rep.pass_rate:.4f}", len(rep.mismatches), len(rep.unexplained)]
    return Result(_table(header, [row]), d, header, [row], True)


def cmd_qmark(a) -> Result:
    x = _value(a.value)
    if not isinstance(x, Fraction):
        raise UsageError(f"cannot parse {a.value!r}: qmark takes a rational")
    if not 0 <= x <= 1:
        raise UsageError(f"{a.value!r} lies outside [0, 1]")
    try:
        y = analysis.question_mark(x)
    except OverflowError as exc:
        return Result(f"too large: {exc}", {"x": x, "qmark": None}, ok=False)
    return Result(format_value(y), {"x": x, "qmark": y}, ["x", "qmark"], [[format_value(x), format_value(y)]])


# -- mcf ------------------------------------------------------------------------

def cmd_mcf(a) -> Result:
    if a.action == "eval":
        if not a.args:
            raise UsageError("mcf eval needs at least one term")
        terms = [_value(t) for t in a.args]
        try:
            v = mcf.mcf_eval(terms)
        except mcf.ZeroDenominator as exc:
            return Result(f"undefined: {exc}", {"terms": terms, "value": None}, ok=False)
        return Result(format_value(v), {"terms": terms, "value": v}, ["value"], [[format_value(v)]])
    if len(a.args) != 2:
        raise UsageError(f"mcf {a.action} takes two arguments")
    if a.action == "encode":
        tag, n = a.args[0], _int(a.args[1])
        if tag.lower() not in ("r", "s", "t"):
            raise UsageError(f"cannot parse {tag!r}: expected r, s or t")
        terms = mcf.mcf_encode_valuation(tag, n)
        v = mcf.mcf_eval(terms)
        plain = " ".join(map(str, terms)) + f"\n= {format_value(v)}"
        return Result(plain, {"terms": terms, "value": v}, ["term"], [[t] for t in terms])
    k, n = _int(a.args[0]), _int(a.args[1])
    if k < 2:
        raise UsageError(f"cannot parse {a.args[0]!r}: base must be >= 2")
    ell = mcf.digit_list(k, n)
    v = mcf.term_from_list(k, n) if n else None
    vs = format_value(v) if not hasattr(v, "ae") else str(v)
    plain = " ".join(map(str, ell)) + (f"\n= {vs}" if v is not None else "")
    return Result(plain, {"list": ell, "value": vs}, ["digit"], [[t] for t in ell])


def _int(token: str) -> int:
    try:
        v = int(token)
    except ValueError:
        raise UsageError(f"cannot parse {token!r}: expected an integer") from None
    if v < 0:
        raise UsageError(f"cannot parse {token!r}: expected a non-negative integer")
    return v


# -- svg ------------------------------------------------------------------------

def _viewport(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"cannot parse {text!r}: viewport is x0,x1")
    x0, x1 = (_value(p) for p in parts)
    if not (isinstance(x0, Fraction) and isinstance(x1, Fraction)) or x1 <= x0:
        raise UsageError(f"cannot parse {text!r}: need rationals x0 < x1")
    return x0, x1


def cmd_svg(a) -> Result:
    vp = _viewport(a.viewport)
    if a.depth < 0:
        raise UsageError("--depth must be >= 0")
    if a.name == "necklace":
        alpha = _value(a.alpha)
        try:
            circles = geometry.necklace_circles(alpha)
        except geometry.NoTermination as exc:
            return Result(str(exc), {"error": str(exc)}, ok=False)
    else:
        circles = geometry.packing(a.name, a.depth)
    doc = geometry.render_svg(circles, viewport=vp)
    n = doc.count("<circle")
    return Result(doc, {"circles": n}, ["circles"], [[n]])


# -- report ---------------------------------------------------------------------

def cmd_report(a) -> Result:
    from . import plotting

    out = Path(a.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = []

    def write_csv(name, header, rows):
        path = out / name
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
        files.append(name)

    rows_k = {"A": 20, "B": 12, "C": 9, "D": 10}
    ests = {t: analysis.degree_estimate(t, k) for t, k in rows_k.items()}
    write_csv(
        "degrees.csv",
        ["family", "k", "estimate", "target", "error", "pass"],
        [[t, e.rows_used[1], f"{e.estimate:.9f}", e.target, f"{e.abs_error:.3e}", e.passed] for t, e in ests.items()],
    )
    plotting.plot_degrees(ests, out / "degrees.png")
    files.append("degrees.png")

    n = a.count
    vals = {t: enumerations.prefix(t.upper(), n) for t in ENUM_TAGS}
    write_csv(
        "enumerations.csv",
        ["n", *ENUM_TAGS],
        [[i + 1, *(format_value(vals[t][i]) for t in ENUM_TAGS)] for i in range(n)],
    )
    for t in ENUM_TAGS:
        plotting.plot_enumeration(t, n, out / f"enumeration_{t}.png")
        files.append(f"enumeration_{t}.png")

    sing = [analysis.singular_experiment(t, k) for t, k in (("B", 5), ("C", 4), ("D", 5))]
    write_csv(
        "singular.csv",
        ["family", "k", "checked", "passed", "pass_rate", "mismatches", "unexplained"],
        [[r.family, r.k_max, r.checked, r.passed, f"{r.pass_rate:.4f}", len(r.mismatches), len(r.unexplained)] for r in sing],
    )
    plotting.plot_question_mark(out / "singular.png")
    files.append("singular.png")

    for name, tag in geometry.PACKING_NAMES.items():
        plotting.plot_packing(geometry.packing(tag, a.depth), out / f"packing_{name}.png", title=name)
        files.append(f"packing_{name}.png")

    files.sort()
    return Result("\n".join(str(out / f) for f in files), {"files": files}, ["file"], [[f] for f in files])


# -- parser -----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("plain", "json", "csv"), default="plain")
    common.add_argument("--out", help="write output here instead of stdout")

    p = _Parser(prog="sternenum", description="Stern-type enumerations of positive rationals.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common], help="list the first terms")
    g.add_argument("seq", choices=ENUM_TAGS + FAMILY_TAGS)
    g.add_argument("--count", type=int, required=True)
    g.add_argument("--method", choices=tuple(enumerations.METHODS))
    g.set_defaults(fn=cmd_gen)

    i = sub.add_parser("index", parents=[common], help="position of a value")
    i.add_argument("enum", choices=ENUM_TAGS)
    i.add_argument("value")
    i.add_argument("--max-steps", type=int)
    i.set_defaults(fn=cmd_index)

    v = sub.add_parser("verify", parents=[common], help="run a cross-check")
    v.add_argument("target", choices=VERIFY_TARGETS)
    v.add_argument("--bound", type=int)
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(fn=cmd_verify)

    d = sub.add_parser("degree", parents=[common], help="growth degree estimate")
    d.add_argument("family", choices=FAMILY_TAGS)
    d.add_argument("--rows", type=int, required=True)
    d.set_defaults(fn=cmd_degree)

    m = sub.add_parser("mcf", parents=[common], help="minus continued fractions")
    m.add_argument("action", choices=("eval", "encode", "list"))
    m.add_argument("args", nargs="*")
    m.set_defaults(fn=cmd_mcf)

    s = sub.add_parser("svg", parents=[common], help="render a packing or necklace")
    s.add_argument("name", choices=(*geometry.PACKING_NAMES, "necklace"))
    s.add_argument("--depth", type=int, default=4)
    s.add_argument("--viewport", default="0,1")
    s.add_argument("--alpha", default="phi", help="necklace parameter")
    s.set_defaults(fn=cmd_svg)

    q = sub.add_parser("qmark", parents=[common], help="Minkowski question mark")
    q.add_argument("value")
    q.set_defaults(fn=cmd_qmark)

    c = sub.add_parser("closed", parents=[common], help="closed forms against the recursion")
    c.add_argument("--bound", type=int)
    c.set_defaults(fn=cmd_closed)

    gf = sub.add_parser("genfun", parents=[common], help="generating-function identities")
    gf.add_argument("family", nargs="?", choices=FAMILY_TAGS)
    gf.add_argument("--degree", type=int)
    gf.set_defaults(fn=cmd_genfun)

    sg = sub.add_parser("singular", parents=[common], help="singular-function round trips")
    sg.add_argument("family", choices=FAMILY_TAGS)
    sg.add_argument("--k", type=int, default=4)
    sg.set_defaults(fn=cmd_singular)

    r = sub.add_parser("report", parents=[common], help="CSV tables and PNG figures")
    r.add_argument("out_dir")
    r.add_argument("--count", type=int, default=2000)
    r.add_argument("--depth", type=int, default=5)
    r.set_defaults(fn=cmd_report)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        res = args.fn(args)
    except UsageError as exc:
        print(f"sternenum: error: {exc}", file=stderr)
        return 2
    text = _render(res, args.format)
    if args.out and args.cmd != "report":
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        stdout.write(text)
    return 0 if res.ok else 1


def main() -> None:
    sys.exit(run())
