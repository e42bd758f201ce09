#!/usr/bin/env python3
"""
Command-line front end for the quantum Minkowski engine.
Normalizes, multiplies, specializes and conjugates expressions, applies
operators loaded from description files and runs the verification suites.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional, TextIO

from coeff_ring import PRESET_ALIASES, PRESETS, get_preset
from config import (
    EXIT_OK,
    EXIT_USAGE_ERROR,
    EXIT_VERIFICATION_FAILED,
    MAX_LEN,
    OUTPUT_FORMAT,
    OUTPUT_FORMATS,
    SAVE_REPORTS,
    SEED,
    STATUS_FAIL,
    STATUS_PASS,
    SUITE_ALIASES,
    SUITES,
    TRIALS,
    TRUNCATE_DEGREE,
)
from data_handler import report_handler
from flag_algebra import FlagAlgebra, NCPoly, RewriteBoundExceeded, specialize
from performance_optimizer import performance_optimizer
from qoperators import (
    DegreeContractError,
    OperatorSpecError,
    hierarchy_skeleton,
    load_operator_file,
    quantum_hierarchy_apply,
    triple_from,
)
from repr_spaces import DegreeBoundError
from utils import ParseError, format_ncpoly, parse_expr, setup_logging
from verification import VerificationRunner

logger = logging.getLogger(__name__)

COMMANDS = ('normalize', 'mul', 'specialize', 'omega', 'apply-op', 'verify')


class UsageError(ValueError):
    """Invalid combination of command-line options."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='minkq',
        description='Normal ordering and verification for the multiparameter quantum Minkowski algebra.')
    parser.add_argument('--format', choices=OUTPUT_FORMATS, default=OUTPUT_FORMAT, help='output format')
    parser.add_argument('--log-level', default=None, help='logging level (DEBUG, INFO, WARNING, ...)')
    sub = parser.add_subparsers(dest='command', required=True)

    def expression_command(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument('expr', nargs='?', help='expression; read from stdin when omitted')
        return p

    expression_command('normalize', 'print the normal form of an expression')
    mul = sub.add_parser('mul', help='multiply two expressions and normal-order the product')
    mul.add_argument('left')
    mul.add_argument('right')

    presets = sorted(PRESETS) + sorted(PRESET_ALIASES)
    spec = expression_command('specialize', 'normal-order, then substitute a named preset')
    spec.add_argument('--preset', required=True, choices=presets)
    omega = expression_command('omega', 'apply the conjugation omega')
    omega.add_argument('--preset', choices=presets, default=None,
                       help='normal-order in the algebra specialized by this preset')

    apply_op = expression_command('apply-op', 'apply an operator from a description file')
    apply_op.add_argument('--op-file', required=True, help='JSON operator description file')
    apply_op.add_argument('--op', default=None, help='operator name; default is the hierarchy operator')
    apply_op.add_argument('--sign', choices=('+', '-'), default='+')
    apply_op.add_argument('--level', type=int, default=0)
    apply_op.add_argument('--preset', choices=presets, default=None)

    verify = sub.add_parser('verify', help='run verification suites')
    verify.add_argument('--suite', action='append', choices=SUITES + list(SUITE_ALIASES),
                        help='suite to run (repeatable, default all)')
    verify.add_argument('--preset', choices=presets, default=None,
                        help='preset for the confluence and omega suites')
    verify.add_argument('--trials', type=int, default=TRIALS)
    verify.add_argument('--max-len', type=int, default=MAX_LEN)
    verify.add_argument('--seed', type=int, default=SEED)
    verify.add_argument('--truncate-degree', type=int, default=TRUNCATE_DEGREE)
    verify.add_argument('--save-report', action='store_true', default=SAVE_REPORTS)
    verify.add_argument('--verbose', action='store_true', help='list every case, not only failures')
    return parser


def _read_expr(args, stdin: TextIO) -> str:
    text = args.expr if args.expr is not None else stdin.read()
    text = text.strip()
    if not text:
        raise UsageError("No expression given")
    return text


def _emit(stdout: TextIO, fmt: str, payload: Dict[str, Any], text: str) -> None:
    if fmt == 'json':
        stdout.write(json.dumps(payload, indent=2, ensure_ascii=False, default=str) + "\n")
    else:
        stdout.write(text + "\n")


def _result_payload(command: str, text: str, result: NCPoly, **extra) -> Dict[str, Any]:
    payload = {'command': command, 'input': text, 'result': str(result), 'terms': format_ncpoly(result, 'json')}
    payload.update(extra)
    return payload


def cmd_normalize(args, algebra: FlagAlgebra, stdin: TextIO, stdout: TextIO) -> int:
    text = _read_expr(args, stdin)
    result = algebra.normal_order(parse_expr(text))
    _emit(stdout, args.format, _result_payload('normalize', text, result), str(result))
    return EXIT_OK


def cmd_mul(args, algebra: FlagAlgebra, stdin: TextIO, stdout: TextIO) -> int:
    result = algebra.multiply(parse_expr(args.left), parse_expr(args.right))
    text = f"({args.left}) * ({args.right})"
    _emit(stdout, args.format, _result_payload('mul', text, result), str(result))
    return EXIT_OK


def cmd_specialize(args, algebra: FlagAlgebra, stdin: TextIO, stdout: TextIO) -> int:
    text = _read_expr(args, stdin)
    s = get_preset(args.preset)
    result = specialize(algebra.normal_order(parse_expr(text)), s)
    _emit(stdout, args.format, _result_payload('specialize', text, result, preset=s.name), str(result))
    return EXIT_OK


def cmd_omega(args, algebra: FlagAlgebra, stdin: TextIO, stdout: TextIO) -> int:
    text = _read_expr(args, stdin)
    target = algebra.specialized(get_preset(args.preset)) if args.preset else algebra
    result = target.omega(parse_expr(text))
    _emit(stdout, args.format, _result_payload('omega', text, result, preset=args.preset or 'generic'), str(result))
    return EXIT_OK


def cmd_apply_op(args, algebra: FlagAlgebra, stdin: TextIO, stdout: TextIO) -> int:
    text = _read_expr(args, stdin)
    target = algebra.specialized(get_preset(args.preset)) if args.preset else algebra
    operators = load_operator_file(args.op_file, target)
    f = target.normal_order(parse_expr(text))
    if args.op:
        if args.op not in operators:
            raise OperatorSpecError(f"Operator '{args.op}' not in {args.op_file}; available: {', '.join(operators)}")
        result = operators[args.op](f)
        label = args.op
    else:
        I1, I2, I3 = triple_from(operators)
        result = quantum_hierarchy_apply(args.sign, args.level, I1, I2, I3, f)
        label = hierarchy_skeleton(args.sign, args.level)
    _emit(stdout, args.format, _result_payload('apply-op', text, result, operator=label), str(result))
    return EXIT_OK


def cmd_verify(args, algebra: FlagAlgebra, stdin: TextIO, stdout: TextIO) -> int:
    if args.trials < 1 or args.max_len < 2 or args.truncate_degree < 0:
        raise UsageError("--trials must be >= 1, --max-len >= 2 and --truncate-degree >= 0")
    runner = VerificationRunner(algebra, seed=args.seed, trials=args.trials, max_len=args.max_len,
                                truncate_degree=args.truncate_degree, preset=args.preset)
    results = runner.run_all(args.suite or ['all'])
    passed = all(r.passed for r in results)
    report = {
        'command': 'verify',
        'passed': passed,
        'seed': args.seed,
        'trials': args.trials,
        'max_len': args.max_len,
        'suites': [r.to_dict() for r in results],
        'performance': performance_optimizer.get_performance_report(),
    }
    if args.save_report:
        report['saved'] = report_handler.save_report(report)

    lines: List[str] = []
    for r in results:
        lines.extend(r.summary_lines(verbose=args.verbose))
    failed = [r.suite for r in results if not r.passed]
    lines.append(f"{STATUS_PASS} all {len(results)} suites passed" if passed
                 else f"{STATUS_FAIL} {len(failed)} of {len(results)} suites failed: {', '.join(failed)}")
    _emit(stdout, args.format, report, "\n".join(lines))
    return EXIT_OK if passed else EXIT_VERIFICATION_FAILED


HANDLERS = {
    'normalize': cmd_normalize,
    'mul': cmd_mul,
    'specialize': cmd_specialize,
    'omega': cmd_omega,
    'apply-op': cmd_apply_op,
    'verify': cmd_verify,
}


def main(argv: Optional[List[str]] = None, algebra: Optional[FlagAlgebra] = None,
         stdin: Optional[TextIO] = None, stdout: Optional[TextIO] = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE_ERROR

    try:
        setup_logging(args.log_level)
        return HANDLERS[args.command](args, algebra or FlagAlgebra(), stdin, stdout)
    except ParseError as e:
        logger.debug("Parse error", exc_info=True)
        sys.stderr.write(f"{STATUS_FAIL} parse error: {e}\n")
        return EXIT_USAGE_ERROR
    except (UsageError, OperatorSpecError, DegreeBoundError, KeyError, OSError) as e:
        sys.stderr.write(f"{STATUS_FAIL} {e}\n")
        return EXIT_USAGE_ERROR
    except (DegreeContractError, RewriteBoundExceeded) as e:
        sys.stderr.write(f"{STATUS_FAIL} {e}\n")
        return EXIT_VERIFICATION_FAILED
    except ValueError as e:
        sys.stderr.write(f"{STATUS_FAIL} {e}\n")
        return EXIT_USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
