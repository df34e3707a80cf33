"""Command-line entry point: ``qdef <command> [args]``.

Exit status is 0 when every check passes, 1 when a check fails and 2 on
usage errors (bad arguments, invalid input such as a non-prime in S).
"""

from __future__ import annotations

import argparse
import logging
import os
import re
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import certificates, harness
from .arith import Place
from .errors import PreconditionViolated, QdefError, UnknownSuite
from .localglobal import QuatAlg, delta, hilbert_symbol, poonen_decompose
from .logic.emit import decide_exists3, emit_semilocal_exists3, quantifier_ledger
from .logic.sexpr import show, to_sexpr
from .semilocal import SemilocalDefinition, in_semilocal, member_via_definition, synthesize_semilocal

log = logging.getLogger("qdef")


class UsageError(Exception):
    pass


def _primes(text: str) -> frozenset[int]:
    try:
        S = frozenset(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated primes, got {text!r}") from None
    if not S:
        raise argparse.ArgumentTypeError("need at least one prime")
    return S


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _place(text: str) -> Place:
    try:
        return Place.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _name(S) -> str:
    return "_".join(map(str, sorted(S)))


# rationals such as -1/2 are positionals, not options
_NEGATIVE_NUMBER = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")

DEFAULTS = {"seed": None, "height": 1000, "count": 10_000, "budget": None, "out": None, "format": "text", "verbose": False}


def _common() -> argparse.ArgumentParser:
    # defaults are suppressed so a flag given before the subcommand survives
    c = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    c.add_argument("--seed", type=int, help="run seed (default: $QDEF_SEED or 0)")
    c.add_argument("--height", type=int, help="corpus height bound (default 1000)")
    c.add_argument("--count", type=int, help="corpus size (default 10000)")
    c.add_argument("--budget", type=int, help="search budget (witness height, decomposition height)")
    c.add_argument("--out", type=Path, help="write the main output here")
    c.add_argument("--format", choices=("text", "tabular"), help="report format (default text)")
    c.add_argument("-v", "--verbose", action="store_true")
    return c


class _Parser(argparse.ArgumentParser):
    def __init__(self, *a, **kw):
        super().__init__(*a, **kw)
        self._negative_number_matcher = _NEGATIVE_NUMBER


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    p = _Parser(prog="qdef", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("symbol", parents=[common], help="Hilbert symbol (s, t) at a place")
    c.add_argument("s", type=_rational)
    c.add_argument("t", type=_rational)
    c.add_argument("place", type=_place)

    c = sub.add_parser("delta", parents=[common], help="ramification of [a, b)")
    c.add_argument("a", type=_rational)
    c.add_argument("b", type=_rational)

    c = sub.add_parser("define-semilocal", parents=[common], help="synthesize a semilocal certificate and its formula")
    c.add_argument("primes", type=_primes)

    c = sub.add_parser("verify-semilocal", parents=[common], help="differential run of a semilocal certificate")
    c.add_argument("cert", type=Path)
    c.add_argument("--no-search", action="store_true", help="skip the witness search")

    c = sub.add_parser("poonen", parents=[common], help="write x as a sum of two elements of S([a, b))")
    c.add_argument("a", type=_rational)
    c.add_argument("b", type=_rational)
    c.add_argument("x", type=_rational)

    c = sub.add_parser("universal", parents=[common], help="assemble and verify an S-integer certificate")
    c.add_argument("primes", type=_primes)

    c = sub.add_parser("emit-formula", parents=[common], help="print the formula of a certificate")
    c.add_argument("cert", type=Path)
    c.add_argument("--sexpr", action="store_true", help="s-expression instead of infix")

    c = sub.add_parser("ledger", parents=[common], help="quantifier bookkeeping for S_user")
    c.add_argument("primes", type=_primes)

    c = sub.add_parser("run", parents=[common], help="run one named suite")
    c.add_argument("suite")
    c.add_argument("--S", dest="sets", type=_primes, action="append", help="prime set (repeatable)")

    sub.add_parser("suites", parents=[common], help="list the named suites")
    sub.add_parser("selftest", parents=[common], help="run every suite")
    return p


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("QDEF_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"QDEF_SEED must be an integer, got {env!r}") from None


def _spec(args) -> harness.CorpusSpec:
    try:
        return harness.CorpusSpec(args.height, args.count, _seed(args), include_boundary=True)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(args, text: str) -> None:
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text)


def _report(args, report: harness.RunReport) -> int:
    _emit(args, report.render(args.format))
    print(f"[{report.command}] {report.elapsed:.2f}s", file=sys.stderr)
    return 0 if report.ok else 1


# -- commands ---------------------------------------------------------------------------


def cmd_symbol(args) -> int:
    _emit(args, f"{hilbert_symbol(args.s, args.t, args.place)}\n")
    return 0


def cmd_delta(args) -> int:
    d = delta(QuatAlg(args.a, args.b))
    real = "ramified" if d.real_ramified else "split"
    finite = ",".join(map(str, sorted(d.finite_places))) or "-"
    _emit(args, f"finite: {finite}\nreal: {real}\n")
    return 0


def _formula_text(prenex, sexpr: bool) -> str:
    phi = prenex.formula()
    return to_sexpr(phi) if sexpr else show(phi)


def cmd_define_semilocal(args) -> int:
    defn = synthesize_semilocal(args.primes)
    out = args.out or Path(f"semilocal_{_name(args.primes)}.json")
    out.write_text(certificates.dump_semilocal(defn))
    print(f"certificate: {out}")
    print(f"Q = {defn.Q}, pi = {defn.pi}, a = {defn.a}, Delta = {sorted(defn.delta_places)}")
    print(_formula_text(emit_semilocal_exists3(defn), sexpr=False))
    return 0


def _load(path: Path):
    try:
        return certificates.load_any(path.read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except (ValueError, KeyError, QdefError) as exc:
        raise UsageError(f"invalid certificate {path}: {exc}") from None


def cmd_verify_semilocal(args) -> int:
    defn = _load(args.cert)
    if not isinstance(defn, SemilocalDefinition):
        raise UsageError(f"{args.cert} is not a semilocal certificate")
    spec = _spec(args)
    height_budget = args.budget or 1000
    res = harness.SuiteResult()
    emitted = emit_semilocal_exists3(defn)
    res.check("quantifier count", emitted.quantifier_count == 3)
    positives = found = 0
    start = time.perf_counter()
    for x in harness.generate_corpus(spec):
        oracle = in_semilocal(defn.S, x)
        res.check("definition", member_via_definition(defn, x) == oracle, lambda: f"x={x}")
        dec = decide_exists3(emitted, defn, x, height_budget, search=not args.no_search)
        res.check("decision", dec.value == oracle, lambda: f"x={x}")
        if dec.value and not args.no_search:
            positives += 1
            found += dec.status in ("found", "trivial")
            res.rows.append({"x": str(x), "status": dec.status, "height": dec.witness_height})
    if positives:
        res.metrics["witness rate"] = f"{found / positives:.4f}"
        res.note(f"witnesses of height <= {height_budget} for {found} of {positives} positive cases")
    params = {"height": spec.height_bound, "count": spec.count, "S": ",".join(map(str, sorted(defn.S)))}
    params["witness_height"] = height_budget
    report = harness.RunReport("verify-semilocal", params, res, spec.seed, time.perf_counter() - start)
    return _report(args, report)


def cmd_poonen(args) -> int:
    s, t = poonen_decompose(QuatAlg(args.a, args.b), args.x, args.budget or 10**4)
    _emit(args, f"{args.x} = {s} + {t}\n")
    return 0


def cmd_universal(args) -> int:
    cert = certificates.assemble_certificate(args.primes)
    path = Path(f"universal_{_name(args.primes)}.json")
    path.write_text(cert.dumps())
    print(f"certificate: {path}", file=sys.stderr)
    report = harness.run_differential("universal", _spec(args), S=[args.primes])
    report.command = "universal"
    return _report(args, report)


def cmd_emit_formula(args) -> int:
    obj = _load(args.cert)
    if isinstance(obj, SemilocalDefinition):
        _emit(args, _formula_text(emit_semilocal_exists3(obj), args.sexpr) + "\n")
        return 0
    phi = obj.universal_formula
    _emit(args, (to_sexpr(phi) if args.sexpr else show(phi)) + "\n")
    return 0


def cmd_ledger(args) -> int:
    led = quantifier_ledger(args.primes)
    lines = [f"{{paper: {led.paper}, naive: {led.naive}, merge_constructed: {str(led.merge_constructed).lower()}}}"]
    for name, paper, naive in led.blocks:
        lines.append(f"  {name}: paper {paper}, naive {naive}")
    lines.append(f"universal: {led.universal}")
    lines += [f"note: {n}" for n in led.notes]
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_run(args) -> int:
    options = {"S": args.sets} if args.sets else {}
    if args.budget is not None:
        options["witness_height" if args.suite == "exists3" else "budget"] = args.budget
    return _report(args, harness.run_differential(args.suite, _spec(args), **options))


def cmd_suites(args) -> int:
    _emit(args, "".join(f"{name}: {desc}\n" for name, (_, desc) in sorted(harness.SUITES.items())))
    return 0


def cmd_selftest(args) -> int:
    reports = harness.selftest(_spec(args))
    text = "".join(r.render(args.format) for r in reports)
    _emit(args, text)
    for r in reports:
        print(f"[{r.command}] {'pass' if r.ok else 'FAIL'} {r.elapsed:.2f}s", file=sys.stderr)
    return 0 if all(r.ok for r in reports) else 1


COMMANDS = {
    "symbol": cmd_symbol,
    "delta": cmd_delta,
    "define-semilocal": cmd_define_semilocal,
    "verify-semilocal": cmd_verify_semilocal,
    "poonen": cmd_poonen,
    "universal": cmd_universal,
    "emit-formula": cmd_emit_formula,
    "ledger": cmd_ledger,
    "run": cmd_run,
    "suites": cmd_suites,
    "selftest": cmd_selftest,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for key, value in DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UnknownSuite as exc:
        print(f"qdef: error: {exc.args[0]}", file=sys.stderr)
        return 2
    except (UsageError, PreconditionViolated) as exc:
        print(f"qdef: error: {exc}", file=sys.stderr)
        return 2
    except QdefError as exc:
        print(f"qdef: check failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
