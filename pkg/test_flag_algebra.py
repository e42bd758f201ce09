import pytest
from hypothesis import given, settings, strategies as st

from coeff_ring import ONE, LaurentPoly, get_preset, lambda_const
from flag_algebra import (
    LEFTMOST,
    RIGHTMOST,
    FlagAlgebra,
    Generator as G,
    NCPoly,
    NormalMonomial,
    RewriteBoundExceeded,
    RewriteRule,
    WordPoly,
    decreasing_triples,
    deglex_key,
    normal_order,
    omega,
    parse_fault,
    relation_table,
    rewrite_bound,
    specialize,
)
from utils import parse_expr

words = st.lists(st.sampled_from(list(G)), max_size=5).map(tuple)

GENERIC_OBSTRUCTIONS = {
    (G.ZB, G.V, G.Z), (G.ZB, G.XM, G.Z), (G.ZB, G.XM, G.V), (G.ZB, G.XP, G.V),
    (G.ZB, G.XP, G.XM), (G.ZB, G.VB, G.V), (G.ZB, G.VB, G.XM),
}


@pytest.fixture(scope='module')
def algebra():
    return FlagAlgebra(relation_table(''))


@pytest.fixture(scope='module')
def relq(algebra):
    return algebra.specialized(get_preset('relq'))


def test_table_has_one_rule_per_pair(algebra):
    patterns = {(r.left, r.right) for r in algebra.relation_table()}
    assert len(patterns) == 15
    assert patterns == {(b, a) for b in G for a in G if b > a}


def test_rule_replacements_are_deglex_smaller(algebra):
    for rule in algebra.relation_table():
        for mono in rule.replacement.terms:
            assert deglex_key(mono.to_word()) < deglex_key(rule.pattern)
        assert rule.swap_coefficient.is_unit()


def test_rule_must_be_an_inversion():
    with pytest.raises(ValueError):
        RewriteRule(G.Z, G.ZB, NCPoly.scalar(ONE))


def test_zb_z_normalizes_to_swap(algebra):
    result = algebra.normal_order((G.ZB, G.Z))
    assert str(result) == "(q13*q24*q14^-1*q23^-1) * z*zb"


def test_xp_xm_is_solved_from_implicit_form(algebra):
    rule = algebra.rule(G.XP, G.XM)
    assert rule.swap_coefficient == LaurentPoly.monomial(q=-2, q12=1, q23=1, q34=1, q14=-1)
    assert rule.extra_terms == NCPoly.monomial(NormalMonomial(v=1, vb=1),
                                               lambda_const() * LaurentPoly.monomial(q=-1, q23=1, q34=1, q24=-1))


def test_defining_relation_normalizes_to_zero(algebra):
    expr = parse_expr("zb*v - (q13*q34*q^-2*q14^-1)*v*zb - (q-q^-1)*xp")
    assert algebra.normal_order(expr).is_zero()


def test_empty_word_is_unit(algebra):
    assert algebra.normal_order(()) == NCPoly.scalar(ONE)
    assert algebra.normal_order(WordPoly()).is_zero()


def test_normal_word_is_unchanged(algebra):
    word = (G.Z, G.Z, G.V, G.XP, G.ZB)
    assert algebra.normal_order(word) == NCPoly.monomial(NormalMonomial.from_word(word))


def test_from_word_rejects_unordered_word():
    with pytest.raises(ValueError):
        NormalMonomial.from_word((G.ZB, G.Z))


def test_monomial_printing():
    assert str(NormalMonomial(z=2, zb=1)) == "z^2*zb"
    assert str(NormalMonomial()) == "1"
    assert NormalMonomial(z=2, v=1, zb=1).spin_degrees() == (2, 1)


def test_module_level_helpers_use_default_table():
    assert normal_order((G.V, G.Z)) == NCPoly.monomial(
        NormalMonomial(z=1, v=1), LaurentPoly.monomial(q13=1, q12=-1, q23=-1))


def test_unknown_strategy(algebra):
    with pytest.raises(ValueError):
        algebra.normal_order((G.ZB, G.Z), strategy='middle')


@settings(max_examples=60, deadline=None)
@given(words)
def test_normal_order_is_idempotent(algebra, word):
    once = algebra.normal_order(word)
    assert algebra.normal_order(once) == once


@settings(max_examples=60, deadline=None)
@given(words)
def test_relq_strategies_agree(relq, word):
    assert relq.normal_order(word, LEFTMOST) == relq.normal_order(word, RIGHTMOST)


@settings(max_examples=40, deadline=None)
@given(words, words, words)
def test_relq_multiplication_is_associative(relq, a, b, c):
    left = relq.multiply(relq.multiply(a, b), c)
    right = relq.multiply(a, relq.multiply(b, c))
    assert left == right


def test_rewrite_bound():
    assert rewrite_bound(0) == 1
    assert rewrite_bound(2) == 1 + 6 + 36


def test_growing_rule_hits_rewrite_bound():
    rules = [r for r in relation_table('') if r.pattern != (G.V, G.Z)]
    rules.append(RewriteRule(G.V, G.Z, NCPoly.monomial(NormalMonomial(z=2, v=2))))
    with pytest.raises(RewriteBoundExceeded):
        FlagAlgebra(rules).normal_order((G.V, G.Z, G.Z))


def test_table_size_is_checked():
    with pytest.raises(ValueError):
        FlagAlgebra(relation_table('')[:14])


def test_specialized_algebra_is_cached(algebra):
    s = get_preset('relq')
    assert algebra.specialized(s) is algebra.specialized(s)
    assert algebra.specialized(s).substitution.name == 'relq'
    assert algebra.specialized(get_preset(None)) is algebra


def test_specialize_accepts_preset_name(algebra):
    result = specialize(algebra.normal_order((G.ZB, G.Z)), 'relq')
    assert result == NCPoly.monomial(NormalMonomial(z=1, zb=1))


# -- omega ------------------------------------------------------------------

def test_omega_on_generators(algebra):
    assert algebra.omega((G.Z,)) == NCPoly.generator(G.ZB)
    assert algebra.omega((G.V,)) == NCPoly.generator(G.VB)
    assert algebra.omega((G.XP,)) == NCPoly.generator(G.XP)
    assert algebra.omega((G.XM,)) == NCPoly.generator(G.XM)


def test_omega_conjugates_coefficients():
    p = WordPoly.from_word((G.Z, G.ZB), lambda_const())
    assert omega(p) == NCPoly.monomial(NormalMonomial(z=1, zb=1), -lambda_const())


def test_omega_words_reverses_order():
    image = FlagAlgebra.omega_words((G.Z, G.V, G.XP))
    assert image == WordPoly.from_word((G.XP, G.VB, G.ZB))


def test_zb_z_relation_needs_relq(algebra):
    rule = algebra.rule(G.ZB, G.Z)
    assert not algebra.check_relation_preserved(rule)
    assert algebra.check_relation_preserved(rule, get_preset('relq'))


def test_all_relations_preserved_under_relq(algebra):
    s = get_preset('relq')
    for rule in algebra.relation_table():
        assert algebra.relation_residual(rule, s).is_zero(), str(rule)


@settings(max_examples=40, deadline=None)
@given(words)
def test_relq_omega_is_involution(relq, word):
    p = relq.normal_order(word)
    assert relq.omega(relq.omega(p)) == p


# -- confluence -------------------------------------------------------------

def test_twenty_decreasing_triples():
    triples = decreasing_triples()
    assert len(triples) == 20
    assert all(c > b > a for c, b, a in triples)


def test_generic_table_obstructions(algebra):
    failing = {w for w, d in algebra.overlap_obstructions().items() if not d.is_zero()}
    assert failing == GENERIC_OBSTRUCTIONS


def test_generic_obstructions_vanish_under_relq(relq):
    assert all(d.is_zero() for d in relq.overlap_obstructions().values())


@pytest.mark.parametrize('preset', ['relq', 'conj-2param', 'one-param', 'classical'])
def test_confluent_presets(algebra, preset):
    report = algebra.confluence_check(100, 5, seed=7, substitution=get_preset(preset))
    assert report.passed, report.to_dict()
    assert report.overlaps_checked == 20
    assert report.words_checked == 100


def test_split_preset_is_not_confluent(algebra):
    report = algebra.confluence_check(20, 4, seed=7, substitution=get_preset('sl4-split'))
    assert not report.passed
    assert report.counterexample.kind == 'overlap'


def test_confluence_arguments_are_validated(algebra):
    with pytest.raises(ValueError):
        algebra.confluence_check(0, 4, seed=1)
    with pytest.raises(ValueError):
        algebra.confluence_check(10, 1, seed=1)


# -- fault injection --------------------------------------------------------

def test_parse_fault():
    assert parse_fault('xp,v') == (G.XP, G.V)
    assert parse_fault('') is None
    with pytest.raises(ValueError):
        parse_fault('xp')


def test_injected_fault_breaks_confluence(algebra):
    faulty = FlagAlgebra(relation_table('xp,v'))
    assert faulty.rule(G.XP, G.V).swap_coefficient == (
        algebra.rule(G.XP, G.V).swap_coefficient * LaurentPoly.param('q'))
    report = faulty.confluence_check(10, 4, seed=3, substitution=get_preset('relq'))
    assert not report.passed
    assert (G.XP, G.XM, G.V) in {f.word for f in report.failures if f.kind == 'overlap'}


def test_explicit_associativity_triple(algebra):
    left = algebra.multiply(algebra.multiply((G.ZB,), (G.VB,)), (G.Z,))
    right = algebra.multiply((G.ZB,), algebra.multiply((G.VB,), (G.Z,)))
    assert left == right
    assert algebra.multiply((G.Z,), (G.ZB,)) == NCPoly.monomial(NormalMonomial(z=1, zb=1))
