"""Command-line front end.

Every subcommand builds a plain dict document; ``--format json`` prints it as
sorted JSON (schema-versioned) and ``--format text`` renders it for people.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import case_filter as cf
from .core_arith import Factorization, parse_factored, tenth_power_free_reduce, trivial_point_count
from .curve_points import (
    PointClass,
    SearchReport,
    classify_point,
    rational_torsion_points,
    search_points,
)
from .errors import (
    ClassNotApplicable,
    CompositeResidual,
    FixtureError,
    NotASquare,
    PrecisionExhausted,
    UnsupportedPrime,
    UnsupportedRamified,
    ZeroReduction,
)
from .expansions import (
    ClassKind,
    compare_expansions,
    expand,
    expand_at_square_class,
    expand_at_weierstrass,
    expand_v3_zero_class,
)
from .padic import PadicNumber
from .series import TruncatedSeries, evaluate_linear_form
from .zero_bounds import ZeroBoundResult, root_witnesses, strassmann_bound

SCHEMA = "quintic-chabauty/1"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_FIXTURE = 3
EXIT_INCONCLUSIVE = 4

METHODS = ("closed_form", "oracle")


@dataclass(frozen=True)
class RunConfig:
    precision_digits: int = 30
    numerator_bound: int = 10_000
    denominator_bound: int = 10
    output_format: str = "text"
    include_negative: bool = False
    worker_count: int = 1

    def __post_init__(self):
        if self.numerator_bound < 1 or self.denominator_bound < 1:
            raise ValueError("search bounds must be positive")
        if self.worker_count < 1:
            raise ValueError("worker count must be at least 1")
        if self.precision_digits < 1:
            raise ValueError("precision must be positive")


class UsageError(Exception):
    pass


# -- documents --------------------------------------------------------------------

def document(command: str, body: dict) -> dict:
    return {"schema": SCHEMA, "command": command, **body}


def render_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)


def parse_document(text: str) -> dict:
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA:
        raise ValueError(f"unknown schema {doc.get('schema')!r}")
    return doc


def search_report_from_document(doc: dict) -> SearchReport:
    return SearchReport.from_dict(doc["report"])


def _read_A(text: str) -> tuple[Factorization, Factorization, int]:
    try:
        f = parse_factored(text)
    except (ValueError, CompositeResidual) as exc:
        raise UsageError(f"cannot read A from {text!r}: {exc}") from exc
    g, c = tenth_power_free_reduce(f)
    return f, g, c


def _reduction_note(f: Factorization, g: Factorization, c: int) -> Optional[str]:
    if c == 1:
        return None
    return f"A = {f} reduced to {g} (removed {c}^10)"


# -- search / classify ---------------------------------------------------------------

def cmd_search(args, cfg: RunConfig) -> tuple[dict, int]:
    f, g, c = _read_A(args.A)
    report = search_points(g, cfg.numerator_bound, cfg.denominator_bound, workers=cfg.worker_count)
    return document("search", {"reduction": _reduction_note(f, g, c), "report": report.to_dict()}), EXIT_OK


def _text_search(doc: dict) -> str:
    r = doc["report"]
    lines = []
    if doc.get("reduction"):
        lines.append(doc["reduction"])
    lines.append(f"C_A : y^2 = x^5 + {r['A_value']}   (A = {r['A']})")
    lines.append(f"search box: |m| <= {r['height_bound']} e^2, e <= {r['denominator_bound']}")
    for pt in r["points"]:
        where = "oo" if pt["x"] is None else f"({pt['x']}, {pt['y']})"
        lines.append(f"  {where:<40} {pt['classification']}")
    lines.append(f"d_A = {r['d_A']}   n_A >= {r['n_A_lower']}   #C_A(Q) >= {r['total_found']}")
    return "\n".join(lines)


def cmd_classify(args, cfg: RunConfig) -> tuple[dict, int]:
    f, g, c = _read_A(args.A)
    body = {
        "reduction": _reduction_note(f, g, c),
        "A": str(g),
        "A_value": g.value(),
        "d_A": trivial_point_count(g),
        "torsion_points": [pt.to_dict() for pt in rational_torsion_points(g)],
    }
    if args.point:
        try:
            x, y = Fraction(args.point[0]), Fraction(args.point[1])
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        try:
            body["point"] = {"x": str(x), "y": str(y), "classification": classify_point(g.value(), x, y).value}
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    return document("classify", body), EXIT_OK


def _text_classify(doc: dict) -> str:
    lines = []
    if doc.get("reduction"):
        lines.append(doc["reduction"])
    lines.append(f"A = {doc['A']} = {doc['A_value']}   d_A = {doc['d_A']}")
    lines.append("rational torsion points from the known list:")
    for pt in doc["torsion_points"]:
        where = "oo" if pt["x"] is None else f"({pt['x']}, {pt['y']})"
        lines.append(f"  {where:<40} {pt['classification']}")
    if "point" in doc:
        pt = doc["point"]
        lines.append(f"({pt['x']}, {pt['y']}) is {pt['classification']}")
    return "\n".join(lines)


# -- bound -------------------------------------------------------------------------------

def cmd_bound(args, cfg: RunConfig) -> tuple[dict, int]:
    f, g, c = _read_A(args.A)
    verdicts = cf.all_verdicts(g)
    best = cf.best_bound(g)
    lift = cf.torsion_lifting_verdict(g, 11)
    body = {
        "reduction": _reduction_note(f, g, c),
        "A": str(g),
        "hypothesis": cf.HYPOTHESIS,
        "verdicts": [_verdict_dict(v) for v in verdicts],
        "best": _verdict_dict(best),
        "best_sources": sorted({v.source for v in verdicts if v.bound == best.bound}),
        "torsion_lifting": None if lift is None else _verdict_dict(lift),
    }
    return document("bound", body), EXIT_OK


def _verdict_dict(v: cf.FilterVerdict) -> dict:
    return {"bound": v.bound, "source": v.source, "applicable": v.applicable, "detail": v.detail}


def _text_bound(doc: dict) -> str:
    lines = []
    if doc.get("reduction"):
        lines.append(doc["reduction"])
    lines.append(f"A = {doc['A']}, {doc['hypothesis']}:")
    for v in doc["verdicts"]:
        lines.append(f"  n_A <= {v['bound']}   [{v['source']}] {v['detail']}")
    best = doc["best"]
    srcs = ", ".join(doc["best_sources"])
    lines.append(f"best: n_A <= {best['bound']} ({srcs}), {doc['hypothesis']}")
    lift = doc.get("torsion_lifting")
    if lift:
        lines.append(f"note: every point of C_A(F_11) lifts to torsion ({lift['detail']}), "
                     f"so n_A <= 1, {doc['hypothesis']}")
    return "\n".join(lines)


# -- expand -----------------------------------------------------------------------------

def _lf_dict(lf) -> dict:
    return {"alpha": lf.coeff_alpha.pretty(), "beta": lf.coeff_beta.pretty()}


def cmd_expand(args, cfg: RunConfig) -> tuple[dict, int]:
    prec = cfg.precision_digits
    order = args.order
    kind = args.cls
    try:
        if kind == "v3-zero":
            A = args.a if args.a is not None else 1
            fast, slow = (expand_v3_zero_class(A, order, method=m, precision=prec) for m in METHODS)
        else:
            if args.p is None or args.nu is None:
                raise UsageError("expand needs --p and --nu")
            kw = dict(alpha_prime=args.alpha_prime, precision=prec)
            if args.b is not None and kind == "weierstrass":
                if args.nu != 5:
                    raise ClassNotApplicable("the (-b, 0) class needs nu = 5")
                fast, slow = (expand_at_weierstrass(args.p, args.b, order, method=m, **kw) for m in METHODS)
            elif args.b is not None and kind == "square":
                fast, slow = (expand_at_square_class(args.p, args.nu, args.b, order, method=m, **kw)
                              for m in METHODS)
            else:
                a = 1 if args.a is None else args.a
                fast, slow = (expand(args.p, args.nu, kind, a, order, method=m, **kw) for m in METHODS)
    except (UnsupportedPrime, ClassNotApplicable, NotASquare, UnsupportedRamified) as exc:
        raise UsageError(f"{type(exc).__name__}: {exc}") from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    through = min(args.through, order - 1)
    agreement = compare_expansions(fast, slow, through)
    params = {k: (v.pretty() if isinstance(v, PadicNumber) else v) for k, v in fast.parameters.items()}
    rows = []
    for m in range(through + 1):
        x, y = fast.coefficient(m), slow.coefficient(m)
        if x.is_exact_zero and y.is_exact_zero:
            continue
        rows.append({"index": m, "closed_form": _lf_dict(x), "oracle": _lf_dict(y),
                     "valuation_tenths": None if x.lower_valuation == float("inf") else x.lower_valuation,
                     "agree": x.agrees_with(y)})
    body = {
        "class": kind,
        "parameters": params,
        "prefactor_tenths": fast.prefactor_tenths,
        "scale": fast.scale.pretty(),
        "uniformizer_tenths": fast.uniformizer_tenths,
        "alpha_prime": fast.alpha_prime,
        "coefficients": rows,
        "agreement": {"agree": agreement.agree, "through": agreement.through,
                      "min_digits": agreement.min_digits, "mismatches": list(agreement.mismatches)},
    }
    return document("expand", body), EXIT_OK


def _text_expand(doc: dict) -> str:
    p = doc["parameters"]
    head = ", ".join(f"{k}={v}" for k, v in sorted(p.items()))
    lines = [f"class {doc['class']}: {head}",
             f"lambda = scale * pi^{doc['prefactor_tenths']} * N(t),  scale = {doc['scale']},"
             f"  T = pi^{doc['uniformizer_tenths']} t" + ("  (alpha = p alpha')" if doc["alpha_prime"] else "")]
    for row in doc["coefficients"]:
        mark = "ok" if row["agree"] else "MISMATCH"
        cfm, orc = row["closed_form"], row["oracle"]
        lines.append(f"  t^{row['index']:<3} v>={row['valuation_tenths']}  "
                     f"closed form: ({cfm['alpha']}) alpha + ({cfm['beta']}) beta   "
                     f"oracle: ({orc['alpha']}) alpha + ({orc['beta']}) beta   [{mark}]")
    ag = doc["agreement"]
    lines.append(f"agreement through t^{ag['through']}: {'yes' if ag['agree'] else 'NO'}"
                 f" (at least {ag['min_digits']} digits)")
    return "\n".join(lines)


# -- zero-bound --------------------------------------------------------------------------

def _zero_dict(r: ZeroBoundResult) -> dict:
    return {"max_zeros": r.max_zeros, "nontrivial": r.nontrivial, "certified": r.certified,
            "dominating_index": r.dominating_index, "notes": r.notes}


def _series_text(s: TruncatedSeries) -> str:
    terms = [f"({c.pretty()}) t^{m}" for m, c in enumerate(s.coefficients) if not c.is_exact_zero]
    tail = "" if s.is_exact else f" + O(t^{len(s)})"
    return (" + ".join(terms) or "0") + tail


def cmd_zero_bound(args, cfg: RunConfig) -> tuple[dict, int]:
    prec = cfg.precision_digits
    try:
        if args.v3_class is not None:
            exp = expand_v3_zero_class(args.v3_class, method="closed_form", precision=prec)
            s = evaluate_linear_form(exp.normalized_series, Fraction(args.alpha), Fraction(args.beta))
            p, disc = 3, 10
        else:
            if args.coeffs is None or args.p is None:
                raise UsageError("zero-bound needs --coeffs and --p, or --v3-class")
            values = [Fraction(x) for x in args.coeffs.split(",")]
            s = TruncatedSeries.from_values(args.p, values, prec)
            p, disc = args.p, args.disc_tenths
        result = strassmann_bound(s, disc)
    except (ValueError, NotASquare, ZeroReduction, PrecisionExhausted) as exc:
        raise UsageError(f"{type(exc).__name__}: {exc}") from exc
    body = {"p": p, "disc_valuation_tenths": disc, "series": _series_text(s), "result": _zero_dict(result)}
    if args.v3_class is not None and result.certified:
        body["witnesses_mod_9"] = [{"residue": r, "hensel": h} for r, h in root_witnesses(s, 2)]
    return document("zero-bound", body), EXIT_OK if result.certified else EXIT_INCONCLUSIVE


def _text_zero_bound(doc: dict) -> str:
    r = doc["result"]
    lines = [f"series over Q_{doc['p']}: {doc['series']}",
             f"disc: v(t) >= {doc['disc_valuation_tenths'] / 10}"]
    if r["certified"]:
        lines.append(f"at most {r['max_zeros']} zeros with multiplicity "
                     f"({r['nontrivial']} besides t = 0); {r['notes']}")
    else:
        lines.append(f"inconclusive: {r['notes']}")
    for w in doc.get("witnesses_mod_9", []):
        lines.append(f"  root witness t = {w['residue']} mod 9"
                     + (" (lifts by Hensel)" if w["hensel"] else ""))
    return "\n".join(lines)


# -- enumerate ------------------------------------------------------------------------------

def cmd_enumerate(args, cfg: RunConfig) -> tuple[dict, int]:
    census = cf.enumerate_post_proposition_candidates(cfg.include_negative)
    histogram: dict[int, int] = {}
    torsion_pairs = []
    for f in census:
        b = cf.best_bound(f).bound
        histogram[b] = histogram.get(b, 0) + 1
        if args.torsion:
            pts = [pt for pt in rational_torsion_points(f) if pt.classification is PointClass.TORSION_4A]
            if pts:
                torsion_pairs.append({"A": str(f), "points": [pt.to_dict() for pt in pts]})
    body = {"include_negative": cfg.include_negative, "count": census.count,
            "best_bound_histogram": {str(k): v for k, v in sorted(histogram.items())}}
    if args.torsion:
        body["torsion_4a"] = torsion_pairs
    return document("enumerate", body), EXIT_OK


def _text_enumerate(doc: dict) -> str:
    sign = "positive and negative" if doc["include_negative"] else "positive"
    lines = [f"census ({sign} A): {doc['count']} curves"]
    for k, v in doc["best_bound_histogram"].items():
        lines.append(f"  best bound n_A <= {k}: {v}   ({cf.HYPOTHESIS})")
    if "torsion_4a" in doc:
        for row in doc["torsion_4a"]:
            pts = ", ".join(f"({p['x']}, {p['y']})" for p in row["points"])
            lines.append(f"  non-trivial torsion at A = {row['A']}: {pts}")
    return "\n".join(lines)


# -- candidates ---------------------------------------------------------------------------------

def cmd_candidates(args, cfg: RunConfig) -> tuple[dict, int]:
    chain = cf.seven_point_candidates()
    six = cf.six_point_candidates()
    table = []
    for pair in cf.P1_F3:
        row = {"residues": list(pair)}
        for nu in cf.EVEN:
            r = cf.contribution_table_p3(pair, nu)
            row[f"nu={nu}"] = {"infinity": r.infinity, "square_class": r.square_class}
        table.append(row)
    p7 = cf.p7_extra_solutions(4)
    body = {
        "stage1": [str(f) for f in chain.stage1],
        "stage2": [str(f) for f in chain.stage2],
        "congruence_agrees": chain.congruence_agrees,
        "six_point": [{"A": str(c.A), "A_mod_11": c.residue_mod_11, "lifts_mod_11": c.lifts_mod_11}
                      for c in six.candidates],
        "six_point_survivors": [str(f) for f in six.survivors],
        "p3_contributions": table,
        "p7_nu4_max_extra_roots": max(p7.values()),
    }
    return document("candidates", body), EXIT_OK


def _text_candidates(doc: dict) -> str:
    lines = [f"seven points, stage 1 ({len(doc['stage1'])} squares with best bound 2):",
             "  " + ", ".join(doc["stage1"]),
             f"stage 2 (not all of C_A(F_11) lifts to torsion; {len(doc['stage2'])} values):",
             "  " + ", ".join(doc["stage2"]),
             f"lifting test agrees with A mod 11 in {{1, 3, 9}}: {doc['congruence_agrees']}",
             "six points, fifth powers left by the v_p = 5 clauses:"]
    for c in doc["six_point"]:
        lines.append(f"  {c['A']}: A = {c['A_mod_11']} mod 11, lifts: {c['lifts_mod_11']}")
    lines.append(f"  survivors: {', '.join(doc['six_point_survivors']) or 'none'}")
    lines.append("contributions to n_A at p = 3 (infinity | (0, +-b)) for v_3(A) = 2, 4, 6, 8:")
    for row in doc["p3_contributions"]:
        cells = " ".join(f"{row[f'nu={nu}']['infinity']}|{row[f'nu={nu}']['square_class']}" for nu in cf.EVEN)
        lines.append(f"  ({row['residues'][0]} : {row['residues'][1]})  {cells}")
    lines.append(f"p = 7, v_7(A) = 4: at most {doc['p7_nu4_max_extra_roots']} roots in F_7 per class")
    return "\n".join(lines)


# -- tables and fixtures --------------------------------------------------------------------------

def _fixture_rows(fixtures, cfg: RunConfig, cache: dict) -> list[dict]:
    rows = []
    for fx in fixtures:
        key = str(fx.A)
        if key not in cache:
            cache[key] = search_points(fx.A, cfg.numerator_bound, cfg.denominator_bound,
                                       workers=cfg.worker_count)
        rep = cache[key]
        problems = []
        if fx.n_A_known is not None:
            if rep.n_A_lower < fx.n_A_known:
                problems.append(f"search found n_A >= {rep.n_A_lower}, fixture says {fx.n_A_text()}")
            if not fx.n_A_is_lower_bound and rep.n_A_lower > fx.n_A_known:
                problems.append(f"search found n_A >= {rep.n_A_lower}, above fixture value {fx.n_A_known}")
        if fx.rank == 1 and rep.n_A_lower > cf.best_bound(fx.A).bound:
            problems.append("point count exceeds the rank-one bound")
        rows.append({"A": str(fx.A), "rank": fx.rank, "n_A": fx.n_A_text(), "d_A": fx.d_A,
                     "n_A_found": rep.n_A_lower, "points_found": rep.total_found,
                     "problems": problems, "provenance": fx.provenance})
    return rows


def _by_rank(rows: list[dict]) -> list[dict]:
    out = {}
    for row in rows:
        r = row["rank"]
        n = row["n_A_found"]
        total = row["points_found"]
        cur = out.setdefault(r, {"rank": r, "N": n, "N_A": row["A"], "B": total, "B_A": row["A"],
                                 "exact": r <= 1})
        if n > cur["N"]:
            cur["N"], cur["N_A"] = n, row["A"]
        if total > cur["B"]:
            cur["B"], cur["B_A"] = total, row["A"]
    return [out[r] for r in sorted(out)]


def cmd_tables(args, cfg: RunConfig) -> tuple[dict, int]:
    cache: dict = {}
    try:
        rank_rows = _fixture_rows(cf.rank_table_fixtures(), cfg, cache)
        cand_rows = _fixture_rows(cf.candidate_table_fixtures(), cfg, cache)
    except FixtureError as exc:
        raise UsageError(f"bad fixture file: {exc}") from exc
    violations = sum(len(r["problems"]) for r in rank_rows + cand_rows)
    body = {"search_bounds": [cfg.numerator_bound, cfg.denominator_bound],
            "ranks": _by_rank(rank_rows), "rank_examples": rank_rows, "candidates": cand_rows,
            "violations": violations}
    return document("tables", body), EXIT_FIXTURE if violations else EXIT_OK


def _text_tables(doc: dict) -> str:
    nb, db = doc["search_bounds"]
    lines = [f"point counts recomputed with |m| <= {nb} e^2, e <= {db}; ranks from fixtures", "",
             " r | N(r) | B(r) | A with max N(r)      | A with max B(r)"]
    for row in doc["ranks"]:
        ge = "" if row["exact"] else ">="
        lines.append(f" {row['rank']} | {ge + str(row['N']):>4} | {ge + str(row['B']):>4} | "
                     f"{row['N_A']:<20} | {row['B_A']}")
    lines += ["", " A               | r_A | n_A (fixture) | n_A found | status"]
    for row in doc["candidates"]:
        status = "ok" if not row["problems"] else "; ".join(row["problems"])
        lines.append(f" {row['A']:<15} | {row['rank']:>3} | {row['n_A']:>13} | {row['n_A_found']:>9} | {status}")
    for row in doc["rank_examples"]:
        for prob in row["problems"]:
            lines.append(f" {row['A']}: {prob}")
    lines.append(f"fixture violations: {doc['violations']}")
    return "\n".join(lines)


def cmd_verify_fixtures(args, cfg: RunConfig) -> tuple[dict, int]:
    try:
        if args.file:
            groups = {args.file: cf.load_fixtures(args.file)}
        else:
            groups = {"ranks_small_n.txt": cf.rank_table_fixtures(),
                      "seven_point_candidates.txt": cf.candidate_table_fixtures()}
    except (FixtureError, OSError) as exc:
        body = {"files": {}, "violations": 1, "error": str(exc)}
        return document("verify-fixtures", body), EXIT_FIXTURE
    cache: dict = {}
    files = {name: _fixture_rows(fx, cfg, cache) for name, fx in groups.items()}
    violations = sum(len(r["problems"]) for rows in files.values() for r in rows)
    body = {"files": files, "violations": violations}
    return document("verify-fixtures", body), EXIT_FIXTURE if violations else EXIT_OK


def _text_verify(doc: dict) -> str:
    if doc.get("error"):
        return f"fixture error: {doc['error']}"
    lines = []
    for name, rows in doc["files"].items():
        lines.append(f"{name}: {len(rows)} records")
        for row in rows:
            status = "ok" if not row["problems"] else "; ".join(row["problems"])
            lines.append(f"  {row['A']:<18} rank {row['rank']}  n_A {row['n_A']:<4} found {row['n_A_found']}  {status}")
    lines.append(f"fixture violations: {doc['violations']}")
    return "\n".join(lines)


# -- parser ----------------------------------------------------------------------------------

COMMANDS = {
    "search": (cmd_search, _text_search),
    "classify": (cmd_classify, _text_classify),
    "bound": (cmd_bound, _text_bound),
    "expand": (cmd_expand, _text_expand),
    "zero-bound": (cmd_zero_bound, _text_zero_bound),
    "enumerate": (cmd_enumerate, _text_enumerate),
    "candidates": (cmd_candidates, _text_candidates),
    "tables": (cmd_tables, _text_tables),
    "verify-fixtures": (cmd_verify_fixtures, _text_verify),
}


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=_positive, default=30, help="p-adic digits tracked")
    common.add_argument("--num-bound", type=_positive, default=10_000, help="search |x| up to this (times e^2)")
    common.add_argument("--den-bound", type=_positive, default=10, help="largest e in x = m/e^2")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--include-negative", action="store_true", help="census also over A < 0")
    common.add_argument("--workers", type=_positive, default=1)

    parser = argparse.ArgumentParser(prog="quintic-chabauty",
                                     description="Rational points on y^2 = x^5 + A.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("search", parents=[common], help="search for rational points")
    p.add_argument("A", help="integer or factored form such as 2^2*3^4")

    p = sub.add_parser("classify", parents=[common], help="torsion points and point classification")
    p.add_argument("A")
    p.add_argument("--point", nargs=2, metavar=("X", "Y"))

    p = sub.add_parser("bound", parents=[common], help="elimination bounds on n_A")
    p.add_argument("A")

    p = sub.add_parser("expand", parents=[common], help="residue-class expansion of the logarithm")
    p.add_argument("--p", type=int)
    p.add_argument("--nu", type=int)
    p.add_argument("--class", dest="cls", choices=[k.value for k in ClassKind] + ["v3-zero"], required=True)
    p.add_argument("--a", type=int, help="unit part of A (for v3-zero: A itself)")
    p.add_argument("--b", type=int, help="class parameter b; a is derived from it when --a is absent")
    p.add_argument("--order", type=_positive, default=24)
    p.add_argument("--through", type=int, default=13)
    p.add_argument("--alpha-prime", action="store_true", help="substitute alpha = p alpha'")

    p = sub.add_parser("zero-bound", parents=[common], help="Newton-polygon zero bound")
    p.add_argument("--p", type=int)
    p.add_argument("--coeffs", help="comma-separated rational coefficients c0,c1,...")
    p.add_argument("--disc-tenths", type=int, default=10, help="disc v(t) >= this/10")
    p.add_argument("--v3-class", type=int, metavar="A", help="use the (0, a) class at p = 3 for this A")
    p.add_argument("--alpha", default="1")
    p.add_argument("--beta", default="1")

    p = sub.add_parser("enumerate", parents=[common], help="census of candidate A")
    p.add_argument("--torsion", action="store_true", help="also list non-trivial rational torsion")

    sub.add_parser("candidates", parents=[common], help="seven- and six-point candidate chains")
    sub.add_parser("tables", parents=[common], help="reproduce the rank and candidate tables")
    p = sub.add_parser("verify-fixtures", parents=[common], help="check rank fixture files")
    p.add_argument("--file")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(args.precision, args.num_bound, args.den_bound, args.format,
                    args.include_negative, args.workers)
    run, text = COMMANDS[args.command]
    try:
        doc, code = run(args, cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = render_json(doc) if cfg.output_format == "json" else text(doc)
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
