import io
import json
from pathlib import Path

import pytest

from cli import main
from config import EXIT_OK, EXIT_USAGE_ERROR, EXIT_VERIFICATION_FAILED
from flag_algebra import FlagAlgebra, relation_table

OPERATOR_FILE = str(Path(__file__).resolve().parent / 'operators' / 'classical_limit.json')


@pytest.fixture(scope='module')
def algebra():
    return FlagAlgebra(relation_table(''))


def run(argv, algebra, stdin=''):
    out = io.StringIO()
    code = main(argv, algebra=algebra, stdin=io.StringIO(stdin), stdout=out)
    return code, out.getvalue()


def test_normalize(algebra):
    code, out = run(['normalize', 'zb*z'], algebra)
    assert code == EXIT_OK
    assert out == "(q13*q24*q14^-1*q23^-1) * z*zb\n"


def test_normalize_reads_stdin(algebra):
    code, out = run(['normalize'], algebra, stdin="zb*v - (q13*q34*q^-2*q14^-1)*v*zb - (q-q^-1)*xp\n")
    assert code == EXIT_OK
    assert out == "0\n"


def test_normalize_output_is_fixed_point(algebra):
    _, first = run(['normalize', '(xp + zb)*(xm + z)'], algebra)
    _, second = run(['normalize'], algebra, stdin=first)
    assert first == second


def test_mul(algebra):
    code, out = run(['mul', 'v', 'z'], algebra)
    assert code == EXIT_OK
    assert out == "(q13*q12^-1*q23^-1) * z*v\n"


def test_specialize(algebra):
    code, out = run(['specialize', '--preset', 'conj-2param', 'q23*q34*q24^-1'], algebra)
    assert code == EXIT_OK
    assert out == "q^3*q14^-2\n"
    _, out = run(['specialize', '--preset', 'relq', 'zb*z'], algebra)
    assert out == "z*zb\n"


def test_omega(algebra):
    code, out = run(['omega', 'z*v'], algebra)
    assert code == EXIT_OK
    assert out == "vb*zb\n"
    _, out = run(['omega', 'v*z'], algebra)
    assert out == "(q23*q34*q24^-1) * vb*zb\n"
    _, out = run(['omega', '--preset', 'relq', 'zb*z'], algebra)
    assert out == "z*zb\n"


def test_json_output(algebra):
    code, out = run(['--format', 'json', 'normalize', 'zb*z'], algebra)
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload['command'] == 'normalize'
    assert payload['result'] == "(q13*q24*q14^-1*q23^-1) * z*zb"
    assert payload['terms'][0]['text'] == "z*zb"


def test_apply_hierarchy_operator(algebra):
    code, out = run(['apply-op', '--op-file', OPERATOR_FILE, 'z*xm'], algebra)
    assert code == EXIT_OK
    assert out == "-1/2*q^2 + 1/2*q - 1/2 + 1/2*q^-1 - 1/2*q^-2\n"


def test_apply_named_operator(algebra):
    code, out = run(['apply-op', '--op-file', OPERATOR_FILE, '--op', 'I1', 'z^2'], algebra)
    assert code == EXIT_OK
    assert out == "(q + q^-1) * z\n"
    code, _ = run(['apply-op', '--op-file', OPERATOR_FILE, '--op', 'I9', 'z'], algebra)
    assert code == EXIT_USAGE_ERROR


def test_apply_op_degree_errors(algebra):
    code, _ = run(['apply-op', '--op-file', OPERATOR_FILE, 'z^3'], algebra)
    assert code == EXIT_USAGE_ERROR
    code, _ = run(['apply-op', '--op-file', OPERATOR_FILE, 'z^2*xp'], algebra)
    assert code == EXIT_VERIFICATION_FAILED
    code, out = run(['apply-op', '--op-file', OPERATOR_FILE, '--preset', 'relq', 'z^2*xp'], algebra)
    assert code == EXIT_OK
    assert out == "0\n"


@pytest.mark.parametrize('argv', [
    ['normalize', 'zb * * z'],
    ['normalize', 'w*z'],
    ['normalize'],
    ['specialize', '--preset', 'bogus', 'z'],
    ['frobnicate'],
    ['apply-op', '--op-file', 'missing.json', 'z'],
    ['verify', '--trials', '0'],
])
def test_usage_errors(algebra, argv):
    code, _ = run(argv, algebra)
    assert code == EXIT_USAGE_ERROR


def test_verify_passes(algebra):
    code, out = run(['verify', '--suite', 'classical-maxwell', '--suite', 'relations'], algebra)
    assert code == EXIT_OK
    assert "✅ classical-maxwell" in out
    assert "all 2 suites passed" in out


def test_verify_json_report(algebra):
    code, out = run(['--format', 'json', 'verify', '--suite', 'relations'], algebra)
    assert code == EXIT_OK
    report = json.loads(out)
    assert report['passed'] is True
    assert report['suites'][0]['suite'] == 'relations'


def test_verify_detects_fault():
    faulty = FlagAlgebra(relation_table('xp,v'))
    code, out = run(['verify', '--suite', 'relations', '--trials', '10', '--max-len', '3'], faulty)
    assert code == EXIT_VERIFICATION_FAILED
    assert "❌" in out


def test_verify_split_preset_fails_confluence(algebra):
    code, _ = run(['verify', '--suite', 'confluence', '--preset', 'sl4-split',
                   '--trials', '10', '--max-len', '3'], algebra)
    assert code == EXIT_VERIFICATION_FAILED


def test_verify_verdict_line_flags_generic_obstructions(algebra):
    code, out = run(['verify', '--suite', 'confluence', '--trials', '10', '--max-len', '3'], algebra)
    assert code == EXIT_OK
    verdict = out.splitlines()[0]
    assert verdict.startswith("✅ confluence")
    assert "[checked under relq; generic table leaves 7 overlaps unresolved]" in verdict
