"""Command-line front end.

    powercentral -c session.ini <command> [options]

Writes line-delimited JSON records to stdout (a header, then the result) and
diagnostics to stderr.  Exit codes: 0 verdict reached, 1 verdict is a
failure (fails / relation-found / trivial / transform-failed), 2 usage or
config error, 3 budget or cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .algebra import Element
from .config import ConfigError, SessionConfig, parse_config
from .errors import AlgebraError, BudgetExceeded, TransformFailed, TruncationError
from .freeness import RELATION, build_witnesses, relation_search, torsion_partner_scan
from .identity import (
    FullUnitGroup,
    GeneratedSubgroup,
    Sampler,
    check_ggi,
    check_gpcgi,
    is_nontrivial,
    locally_finite_exponent,
    radical_over_center,
    reduce_to_full_group,
    retarget_endpoints,
)
from .laurent import (
    check_central_pipeline,
    format_series,
    invert_algebraic,
    invert_geometric,
    bad_beta,
    expand_monomial,
    sample_args,
)
from .minpoly import is_torsion, minimal_polynomial
from .words import SeriesDescriptor, build_c, build_u, check_star_form, format_monomial, parse_monomial

SUBSTITUTION_NOTE = (
    "exact computable coefficient algebra; hypotheses on uncountable or "
    "infinite centers are not instantiated, verdicts are desk-scale evidence"
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def series_record(s, **extra):
    rec = {
        "record": "series",
        "text": format_series(s),
        "terms": [[d, str(c)] for d, c in s.terms()],
        "order": s.order,
    }
    rec.update(extra)
    return rec


def _word(cfg: SessionConfig, text: str):
    return parse_monomial(text, cfg.constants, cfg.algebra)


def _wtext(cfg, w):
    return format_monomial(w, cfg.constants)


def _scope(cfg, args, alg):
    cap = cfg.limits["cap"]
    kind = args.scope
    if kind == "auto":
        kind = "exhaustive" if alg.is_finite else "sample"
    if kind == "exhaustive":
        return FullUnitGroup(cap)
    if kind == "generated":
        if not args.generators:
            raise ConfigError("--scope generated needs --generators")
        gens = tuple(cfg.element(g.strip()) for g in args.generators.split(","))
        return GeneratedSubgroup(gens, cap)
    return Sampler(args.count, cfg.limits["height"])


def cmd_check_ggi(cfg, args):
    w = _word(cfg, args.w)
    rep = check_ggi(w, _scope(cfg, args, w.alg), cfg.seed)
    rec = rep.to_record()
    rec["word"] = _wtext(cfg, w)
    return [rec], rep.holds


def cmd_check_gpcgi(cfg, args):
    w = _word(cfg, args.w)
    p_max = args.p_max or cfg.limits["p_max"]
    rep = check_gpcgi(w, _scope(cfg, args, w.alg), p_max, cfg.seed)
    rec = rep.to_record()
    rec["word"] = _wtext(cfg, w)
    return [rec], rep.holds


def cmd_nontrivial(cfg, args):
    w = _word(cfg, args.w)
    res = is_nontrivial(w, args.p_max or cfg.limits["p_max"])
    rec = {
        "record": "nontriviality",
        "word": _wtext(cfg, w),
        "nontrivial": res.nontrivial,
        "certificate": res.certificate,
        "checked_up_to": res.checked_up_to,
    }
    return [rec], res.nontrivial


def cmd_retarget(cfg, args):
    w = _word(cfg, args.w)
    rec = {"record": "retarget", "input": _wtext(cfg, w)}
    try:
        out = retarget_endpoints(w)
    except TransformFailed as exc:
        rec.update({"status": "transform-failed", "output": None, "reason": str(exc)})
        return [rec], False
    rec.update({"status": "unchanged" if out == w else "doubled", "output": _wtext(cfg, out)})
    return [rec], True


def cmd_reduce(cfg, args):
    w = _word(cfg, args.w)
    a = cfg.element(args.a)
    series = SeriesDescriptor.parse(args.series)
    out = reduce_to_full_group(w, a, series)
    rec = {
        "record": "reduction",
        "input": _wtext(cfg, w),
        "base": str(a),
        "series": str(series),
        "output": _wtext(cfg, out),
        "letters": out.length,
        "nontrivial": bool(is_nontrivial(out, 5)),
    }
    return [rec], True


def cmd_build_c(cfg, args):
    a = cfg.element(args.a)
    series = SeriesDescriptor.parse(args.series)
    degenerate = a.is_central()
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        w = build_u(a, series) if args.u else build_c(a, series)
    rec = {
        "record": "word",
        "name": "u" if args.u else "c",
        "base": str(a),
        "series": str(series),
        "word": _wtext(cfg, w),
        "letters": w.length,
        "star_form": check_star_form(w, a) if not args.u else None,
        "degenerate": degenerate,
    }
    return [rec], True


def _arg_list(cfg, text):
    return [cfg.element(t.strip()) for t in text.split(";") if t.strip()]


def cmd_expand(cfg, args):
    w = _word(cfg, args.w)
    order = args.order or cfg.limits["order"]
    s = expand_monomial(w, _arg_list(cfg, args.args), order)
    return [series_record(s, word=_wtext(cfg, w))], True


def cmd_series_invert(cfg, args):
    a = cfg.element(args.a)
    order = args.order if args.order is not None else cfg.limits["order"]
    records = []
    if args.route in ("geometric", "both"):
        records.append(series_record(invert_geometric(a, order), route="geometric"))
    if args.route in ("algebraic", "both"):
        form = invert_algebraic(a)
        records.append(
            series_record(
                form.expand(order),
                route="algebraic",
                numerator=[str(c) for c in form.numerator],
                denominator=[str(c) for c in form.denominator],
            )
        )
    return records, True


def cmd_bad_beta(cfg, args):
    a = cfg.element(args.a)
    betas = bad_beta(a)
    mp = minimal_polynomial(a)
    rec = {"record": "bad-beta", "a": str(a), "minimal_polynomial": str(mp), "degree": mp.degree, "beta": [str(b) for b in betas]}
    return [rec], True


def cmd_pipeline(cfg, args):
    w = _word(cfg, args.w)
    order = args.order or cfg.limits["order"]
    samples = sample_args(w.alg, w.arity, args.count, cfg.seed, cfg.limits["height"])
    rep = check_central_pipeline(w, samples, args.M, args.alpha, order, cfg.seed)
    rec = rep.to_record()
    rec["word"] = _wtext(cfg, w)
    return [rec], rep.holds


def cmd_torsion(cfg, args):
    x = cfg.element(args.x)
    m = is_torsion(x, args.bound)
    return [{"record": "torsion", "x": str(x), "bound": args.bound, "order": m}], True


def cmd_radical(cfg, args):
    x = cfg.element(args.x)
    n_max = args.n_max or cfg.limits["n_max"]
    n = radical_over_center(x, n_max)
    return [{"record": "radical", "x": str(x), "n_max": n_max, "n": n}], True


def cmd_free_search(cfg, args):
    u = cfg.element(args.u)
    series = SeriesDescriptor.parse(args.series)
    L = args.L or cfg.limits["L"]
    if args.v:
        v = cfg.element(args.v)
        pair = build_witnesses(u, v, series)
        cert = relation_search(pair.x, pair.y, L, bit_cap=cfg.limits["bit_cap"])
        cert.provenance = {"u": str(u), "v": str(v), "series": str(series)}
        cert.degenerate = pair.commute
        return [cert.to_record()], cert.verdict != RELATION
    certs = torsion_partner_scan(u, args.height, series, L, bit_cap=cfg.limits["bit_cap"])
    summary = {
        "record": "scan-summary",
        "u": str(u),
        "height": args.height,
        "series": str(series),
        "L": L,
        "certificates": len(certs),
        "degenerate": sum(c.degenerate for c in certs),
    }
    return [c.to_record() for c in certs] + [summary], True


def cmd_exponent(cfg, args):
    a = cfg.element(args.a)
    m = locally_finite_exponent(a)
    return [{"record": "exponent", "a": str(a), "m": m, "verified": True}], True


COMMANDS = {
    "check-ggi": cmd_check_ggi,
    "check-gpcgi": cmd_check_gpcgi,
    "nontrivial": cmd_nontrivial,
    "retarget": cmd_retarget,
    "reduce": cmd_reduce,
    "build-c": cmd_build_c,
    "expand": cmd_expand,
    "series-invert": cmd_series_invert,
    "bad-beta": cmd_bad_beta,
    "pipeline": cmd_pipeline,
    "torsion": cmd_torsion,
    "radical": cmd_radical,
    "free-search": cmd_free_search,
    "exponent": cmd_exponent,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="powercentral", description=__doc__.split("\n\n")[0])
    parser.add_argument("-c", "--config", required=True, help="session config file")
    parser.add_argument("--seed", type=int, help="override the config seed")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def word_cmd(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--w", required=True, help="monomial in the DSL, e.g. '@a * x1 * @a^-1 * x1^-1'")
        return p

    for name in ("check-ggi", "check-gpcgi"):
        p = word_cmd(name, f"{name[6:].upper()} check")
        p.add_argument("--scope", choices=["auto", "exhaustive", "sample", "generated"], default="auto")
        p.add_argument("--generators", help="comma-separated constants or literals")
        p.add_argument("--count", type=int, default=200)
        if name == "check-gpcgi":
            p.add_argument("--p-max", type=int)
    word_cmd("nontrivial", "non-triviality of w").add_argument("--p-max", type=int)
    word_cmd("retarget", "make first and last indices differ")
    p = word_cmd("reduce", "substitute u_r(a, y_i) for x_i")
    p.add_argument("--a", required=True)
    p.add_argument("--series", default="")
    p = sub.add_parser("build-c", help="the word c_r(a, x) (or u_r with --u)")
    p.add_argument("--a", required=True)
    p.add_argument("--series", default="")
    p.add_argument("--u", action="store_true")
    p = word_cmd("expand", "w(1 + c_1 t, ...) as a series")
    p.add_argument("--args", required=True, help="';'-separated constants or literals")
    p.add_argument("--order", type=int)
    p = sub.add_parser("series-invert", help="(1 + a t)^-1")
    p.add_argument("--a", required=True)
    p.add_argument("--order", type=int)
    p.add_argument("--route", choices=["geometric", "algebraic", "both"], default="geometric")
    sub.add_parser("bad-beta", help="central beta with 1 + a beta singular").add_argument("--a", required=True)
    p = word_cmd("pipeline", "centrality of the first non-trivial expansion coefficient")
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--M", type=int, default=1)
    p.add_argument("--alpha", type=int, default=1)
    p.add_argument("--order", type=int)
    p = sub.add_parser("torsion", help="order of a unit, if bounded")
    p.add_argument("--x", required=True)
    p.add_argument("--bound", type=int, default=64)
    p = sub.add_parser("radical", help="least n with x^n central")
    p.add_argument("--x", required=True)
    p.add_argument("--n-max", type=int)
    p = sub.add_parser("free-search", help="relation search on x = c_r(u,v), y = c_r(u,v^2)")
    p.add_argument("--u", required=True)
    p.add_argument("--v", help="a single partner; omit to scan by height")
    p.add_argument("--height", type=int, default=2)
    p.add_argument("--series", default="")
    p.add_argument("--L", type=int)
    sub.add_parser("exponent", help="|GL_n(P_a)| with a^m = 1 verified").add_argument("--a", required=True)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        with open(args.config) as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=stderr)
        return EXIT_USAGE
    try:
        cfg = parse_config(text)
        if args.seed is not None:
            cfg.seed = args.seed
        header = {
            "record": "header",
            "tool": "powercentral",
            "version": __version__,
            "command": args.command,
            "algebra": str(cfg.algebra),
            "config_digest": cfg.digest,
            "seed": cfg.seed,
            "substitution": SUBSTITUTION_NOTE,
        }
        records, ok = COMMANDS[args.command](cfg, args)
    except BudgetExceeded as exc:
        print(f"budget: {exc}", file=stderr)
        return EXIT_BUDGET
    except TruncationError as exc:
        print(f"budget: {exc}", file=stderr)
        return EXIT_BUDGET
    except (ConfigError, AlgebraError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    for rec in [header] + records:
        stdout.write(json.dumps(rec, separators=(",", ":")) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def main():
    sys.exit(run())
