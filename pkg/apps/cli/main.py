"""
Командная строка лаборатории: check, demo, probe-conjecture
"""
import argparse
import logging
import sys
from fractions import Fraction
from typing import List, Optional

from apps.cli.demos import DEMOS, run_demo
from core.config import settings
from core.duality import conjecture_sweep
from core.duality.conjecture import ProbeResult
from core.errors import LabError, SpecParseError, SpecValidationError, UnknownTopic
from core.reports import ExponentProbe, ProbeReport
from core.spec_file import load_spec
from core.suites import ALL, SUITES, run_suite

logger = logging.getLogger("apps.cli")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="riesz-lab",
        description="Finite-model lab for conditional expectation operators on Riesz spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run invariant suites")
    check.add_argument("--spec", help="space file (reference instance if omitted)")
    check.add_argument("--suite", choices=[ALL] + list(SUITES), default=ALL)
    check.add_argument("--seed", type=int, default=None)
    check.add_argument("--cases", type=int, default=None, help=f"default {settings.LAB_CASES}")
    check.add_argument("--max-omega", type=int, default=None, help=f"default {settings.MAX_OMEGA}")
    check.add_argument("--report", help="write the JSON report here")

    demo = sub.add_parser("demo", help="print a walkthrough with exact values")
    demo.add_argument("--spec")
    demo.add_argument("--topic", required=True, help=", ".join(DEMOS))
    demo.add_argument("--charge", help="named charge from the space file")
    demo.add_argument("--vector", help="vector as rationals, e.g. '1/3 2/3 1'")

    probe = sub.add_parser("probe-conjecture", help="float experiment for p ∉ {1, 2, ∞}")
    probe.add_argument("--p", action="append", type=Fraction, dest="exponents",
                       help="exponent, repeatable (default CONJECTURE_EXPONENTS)")
    probe.add_argument("--seed", type=int, default=None)
    probe.add_argument("--instances", type=int, default=None)
    probe.add_argument("--restarts", type=int, default=None)
    probe.add_argument("--tol", type=float, default=None, help="p=2 cross-check tolerance")
    probe.add_argument("--max-omega", type=int, default=None)
    probe.add_argument("--report")
    return parser


def cmd_check(args: argparse.Namespace) -> int:
    spec = load_spec(args.spec)
    report = run_suite(spec, args.suite, args.seed, args.cases, args.max_omega,
                       spec_label=args.spec or "reference")
    for failure in report.failures:
        logger.error(f"❌ {failure.suite}.{failure.check} [{failure.instance}]: {failure.witness}")
    counts = report.counts
    print(f"{report.suite}: {counts['pass']} pass, {counts['fail']} fail, "
          f"{counts['expected_fail']} expected_fail")
    if args.report:
        report.write(args.report)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_demo(args: argparse.Namespace) -> int:
    spec = load_spec(args.spec)
    for line in run_demo(spec, args.topic, args.charge, args.vector):
        print(line)
    return EXIT_OK


def _exponent_probe(label: str, result: ProbeResult, required: float) -> ExponentProbe:
    worst = max(result.instances, key=lambda instance: instance.gap, default=None)
    return ExponentProbe(
        p=label, q=result.q, instances=len(result.instances), restarts=result.restarts,
        tol=result.tol, max_gap=result.max_gap, pass_share=result.pass_share,
        required_share=required,
        worst_f=list(worst.f) if worst else [],
        worst_attainer=list(worst.attainer) if worst else [],
    )


def cmd_probe(args: argparse.Namespace) -> int:
    seed = settings.LAB_SEED if args.seed is None else args.seed
    exponents = args.exponents or settings.conjecture_exponents
    report = ProbeReport(seed=seed)
    for p in exponents:
        result = conjecture_sweep(p, args.instances, settings.CONJECTURE_GAP, args.restarts,
                                  seed, args.max_omega)
        report.exponents.append(_exponent_probe(str(p), result, settings.CONJECTURE_PASS_SHARE))
    tol = settings.CONJECTURE_TOL if args.tol is None else args.tol
    # при p = 2 ответ известен точно
    cross = conjecture_sweep(2, args.instances, tol, args.restarts, seed, args.max_omega)
    report.cross_check = _exponent_probe("2", cross, 1.0)

    for probe in report.exponents + [report.cross_check]:
        status = "pass" if probe.passed else "FAIL"
        print(f"p={probe.p}: max gap {probe.max_gap:.3e}, share {probe.pass_share:.3f} "
              f"(need {probe.required_share}) {status}")
    if args.report:
        report.write(args.report)
    return EXIT_OK if report.passed else EXIT_FAILED


COMMANDS = {"check": cmd_check, "demo": cmd_demo, "probe-conjecture": cmd_probe}


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(
        level=getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (SpecParseError, SpecValidationError, UnknownTopic) as e:
        logger.error(f"⚠️ {e}")
        return EXIT_USAGE
    except LabError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        return EXIT_FAILED
    except FileNotFoundError as e:
        logger.error(f"⚠️ {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
