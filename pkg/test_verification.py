import pytest

from coeff_ring import get_preset
from config import SUITES
from flag_algebra import FlagAlgebra, relation_table
from qoperators import classical_limit_triple
from repr_spaces import make_hierarchy_element
from verification import (
    SuiteResult,
    VerificationRunner,
    degree_contract_failures,
    load_golden,
    resolve_golden_dir,
    run_suites,
)

FAST = dict(seed=5, trials=40, max_len=4, truncate_degree=0)


@pytest.fixture(scope='module')
def runner():
    return VerificationRunner(FlagAlgebra(relation_table('')), **FAST)


@pytest.fixture(scope='module')
def faulty_runner():
    return VerificationRunner(FlagAlgebra(relation_table('xp,v')), **FAST)


def test_expand_suite_names():
    assert VerificationRunner.expand_suite_names(['all']) == SUITES
    assert VerificationRunner.expand_suite_names(['degrees', 'relations', 'degrees']) == ['degrees', 'relations']
    with pytest.raises(KeyError):
        VerificationRunner.expand_suite_names(['bogus'])


def test_empty_suite_does_not_pass():
    result = SuiteResult('empty')
    assert not result.passed
    result.add('one', True)
    assert result.passed
    result.add('two', False, 'broken')
    assert not result.passed
    assert [c.name for c in result.failures] == ['two']
    assert result.to_dict()['failure_count'] == 1


def test_golden_files_cover_every_rule():
    for name in ('relations.txt', 'relations_conj_2param.txt'):
        relations = load_golden(resolve_golden_dir() / name)
        assert len(relations) == 15


def test_golden_rejects_malformed_line(tmp_path):
    path = tmp_path / 'bad.txt'
    path.write_text("# comment\nzb*z = z*zb = 1\n")
    with pytest.raises(ValueError):
        load_golden(path)


@pytest.mark.parametrize('suite', [
    'relations', 'confluence', 'relations-omega', 'specialization',
    'classical-maxwell', 'operator-identity', 'degrees',
])
def test_suite_passes(runner, suite):
    result = runner.run(suite)
    assert result.passed, result.summary_lines()


def test_q_limit_suite(runner):
    result = runner.run('q-limit')
    assert result.passed, result.summary_lines()


def test_confluence_suite_reports_generic_obstructions(runner):
    result = runner.run('confluence')
    assert len(result.details['generic_obstructions']) == 7
    assert result.notes


def test_degrees_suite_notes_generic_failure(runner):
    result = runner.run('degrees')
    assert any('generic table' in note and 'spin degrees' in note for note in result.notes)


def test_degree_contract_is_checked_per_coefficient():
    algebra = FlagAlgebra(relation_table(''))
    template = make_hierarchy_element(0, '+', 1)
    generic = degree_contract_failures('+', 0, classical_limit_triple(algebra), template)
    assert 'mu[2,0;2,0,0,1,0,0]' in {label for label, _ in generic}
    relq = algebra.specialized(get_preset('relq'))
    assert degree_contract_failures('+', 0, classical_limit_triple(relq), template) == []


def test_confluence_suite_fails_under_split_preset():
    runner = VerificationRunner(FlagAlgebra(relation_table('')), preset='sl4-split', **FAST)
    assert not runner.run('confluence').passed


@pytest.mark.parametrize('suite', ['relations', 'confluence', 'relations-omega', 'specialization'])
def test_injected_fault_is_detected(faulty_runner, suite):
    assert not faulty_runner.run(suite).passed


def test_run_suites_helper():
    results = run_suites(['classical-maxwell'], algebra=FlagAlgebra(relation_table('')))
    assert [r.suite for r in results] == ['classical-maxwell']
    assert results[0].passed
