import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

import classical_maxwell as cm
from coeff_ring import ONE, LaurentPoly, get_preset, q_int
from flag_algebra import FlagAlgebra, Generator as G, NCPoly, NormalMonomial, relation_table
from qoperators import (
    DegreeContractError,
    OperatorSpecError,
    add,
    build_operator,
    chain,
    classical_limit_triple,
    compose,
    evaluate_at_one,
    hat_I_pm_n,
    hierarchy_skeleton,
    identity,
    load_operator_file,
    monomials_up_to,
    mult_op,
    q_deriv,
    q_scale,
    quantum_hierarchy_apply,
    scale,
    triple_from,
)
from repr_spaces import DegreeBoundError

OPERATOR_FILE = Path(__file__).resolve().parent / 'operators' / 'classical_limit.json'


def mono(**exponents):
    return NCPoly.monomial(NormalMonomial(**exponents))


@pytest.fixture(scope='module')
def algebra():
    return FlagAlgebra(relation_table(''))


@pytest.fixture(scope='module')
def triple(algebra):
    return classical_limit_triple(algebra)


def test_q_derivative_lowers_exponent():
    assert q_deriv(G.Z)(mono(z=2)) == NCPoly.monomial(NormalMonomial(z=1), LaurentPoly.param('q') + LaurentPoly.param('q', -1))
    assert q_deriv(G.Z)(mono(z=3, v=1)) == NCPoly.monomial(NormalMonomial(z=2, v=1), q_int(3))
    assert q_deriv(G.Z)(mono(v=1)).is_zero()
    assert q_deriv(G.Z)(NCPoly.scalar(ONE)).is_zero()


def test_q_derivative_weights():
    q = LaurentPoly.param('q')
    op = q_deriv(G.XP, {G.Z: q})
    assert op(mono(z=2, xp=1)) == NCPoly.monomial(NormalMonomial(z=2), q ** 2)
    assert op.name == "D_xp[z:q]"


def test_q_derivative_rejects_bad_weights():
    with pytest.raises(OperatorSpecError):
        q_deriv(G.Z, {G.XP: LaurentPoly.param('q')})
    with pytest.raises(OperatorSpecError):
        q_deriv(G.XP, {G.Z: LaurentPoly.param('q') + 1})


def test_q_scale_is_diagonal():
    q12 = LaurentPoly.param('q12')
    op = q_scale({G.V: q12})
    assert op(mono(v=3, zb=1)) == NCPoly.monomial(NormalMonomial(v=3, zb=1), q12 ** 3)


def test_multiplication_operator(algebra):
    A7 = LaurentPoly.monomial(q13=1, q24=1, q14=-1, q23=-1)
    assert mult_op(G.ZB, algebra)(mono(z=1)) == NCPoly.monomial(NormalMonomial(z=1, zb=1), A7)
    assert mult_op(G.Z, algebra)(NCPoly.scalar(ONE)) == mono(z=1)


def test_combinators(algebra):
    p = mono(z=2, xm=1) + NCPoly.monomial(NormalMonomial(vb=1), LaurentPoly.param('q14'))
    D = q_deriv(G.Z)
    assert compose(identity(), D)(p) == D(p)
    assert chain()(p) == p
    assert add(identity(), identity())(p) == p.scale(LaurentPoly.constant(2))
    assert scale(0, D)(p).is_zero()
    assert add()(p).is_zero()
    mz = mult_op(G.Z, algebra)
    assert chain(D, mz)(mono(xm=1)) == mono(xm=1)


def test_hierarchy_on_identity_triple():
    I = identity()
    p = mono(z=1)
    expected = p.scale((q_int(2) - q_int(3)) * LaurentPoly.constant(Fraction(1, 2)))
    assert hat_I_pm_n('+', 0, I, I, I)(p) == expected


def test_minus_hierarchy_uses_third_operator(triple):
    I1, I2, I3 = triple
    p = mono(z=1, v=1, zb=2)
    assert hat_I_pm_n('-', 1, I1, I2, I3)(p) == hat_I_pm_n('+', 1, I3, I2, I1)(p)


def test_hierarchy_rejects_bad_level(triple):
    with pytest.raises(OperatorSpecError):
        hat_I_pm_n('0', 0, *triple)
    with pytest.raises(OperatorSpecError):
        hat_I_pm_n('+', -1, *triple)


def test_hierarchy_skeleton():
    assert hierarchy_skeleton('+', 0) == "I+0 = 1/2 * ((q + q^-1) I1 I2 - (q^2 + 1 + q^-2) I2 I1)"


def test_quantum_hierarchy_on_z_xm(triple):
    result = quantum_hierarchy_apply('+', 0, *triple, mono(z=1, xm=1))
    expected = (q_int(2) - q_int(3)) * LaurentPoly.constant(Fraction(1, 2))
    assert result == NCPoly.scalar(expected)
    assert evaluate_at_one(result) == NCPoly.scalar(LaurentPoly.constant(Fraction(-1, 2)))


def test_quantum_hierarchy_on_zero(triple):
    assert quantum_hierarchy_apply('+', 0, *triple, NCPoly()).is_zero()


def test_input_outside_space_is_rejected(triple):
    with pytest.raises(DegreeBoundError):
        quantum_hierarchy_apply('+', 0, *triple, mono(z=3))
    with pytest.raises(DegreeBoundError):
        quantum_hierarchy_apply('+', 0, *triple, mono(zb=1))


def test_degree_contract_needs_relq(algebra):
    f = mono(z=2, xp=1)
    with pytest.raises(DegreeContractError):
        quantum_hierarchy_apply('+', 0, *classical_limit_triple(algebra), f)
    relq = algebra.specialized(get_preset('relq'))
    assert quantum_hierarchy_apply('+', 0, *classical_limit_triple(relq), f).is_zero()


@pytest.mark.parametrize('sign', ['+', '-'])
@pytest.mark.parametrize('n', [0, 1])
def test_hierarchy_reduces_to_classical(triple, sign, n):
    op = hat_I_pm_n(sign, n, *triple)
    for m in monomials_up_to(2):
        quantum = cm.commutative_image(evaluate_at_one(op(NCPoly.monomial(m))), evaluate=False)
        classical = cm.op_I_pm_n_factored(sign, n, cm.commutative_image(NCPoly.monomial(m)))
        assert quantum == classical, m


def test_operator_file_matches_builtin_triple(algebra, triple):
    loaded = triple_from(load_operator_file(OPERATOR_FILE, algebra))
    for m in monomials_up_to(2):
        p = NCPoly.monomial(m)
        for from_file, builtin in zip(loaded, triple):
            assert from_file(p) == builtin(p)


def test_build_operator_with_scalar_and_weights(algebra):
    op = build_operator('K', [{'kind': 'scale', 'weights': {'z': 'q'}, 'scalar': '1/2'},
                              {'factors': [{'kind': 'identity'}], 'scalar': 'q12'}], algebra)
    q = LaurentPoly.param('q')
    expected = NCPoly.monomial(NormalMonomial(z=2), q ** 2 * LaurentPoly.constant(Fraction(1, 2))
                               + LaurentPoly.param('q12'))
    assert op(mono(z=2)) == expected


@pytest.mark.parametrize('terms', [
    [{'kind': 'twist', 'slot': 'z'}],
    [{'kind': 'q_deriv', 'slot': 'w'}],
    [{'kind': 'scale', 'weights': {'w': 'q'}}],
    [{'kind': 'scale', 'weights': {'z': 'q + 1'}}],
    [{'kind': 'identity', 'scalar': 'q^'}],
    ['q_deriv'],
])
def test_build_operator_rejects_bad_terms(terms):
    with pytest.raises(OperatorSpecError):
        build_operator('bad', terms)


def test_load_operator_file_errors(tmp_path):
    broken = tmp_path / 'broken.json'
    broken.write_text('{"operators": ')
    with pytest.raises(OperatorSpecError):
        load_operator_file(broken)

    empty = tmp_path / 'empty.json'
    empty.write_text(json.dumps({'operators': {}}))
    with pytest.raises(OperatorSpecError):
        load_operator_file(empty)

    partial = tmp_path / 'partial.json'
    partial.write_text(json.dumps({'operators': {'I1': [{'kind': 'q_deriv', 'slot': 'z'}]}}))
    with pytest.raises(OperatorSpecError):
        triple_from(load_operator_file(partial))


def test_monomials_up_to():
    assert len(monomials_up_to(0)) == 1
    assert len(monomials_up_to(1)) == 7
    assert len(monomials_up_to(2)) == 28


small_monomials = st.sampled_from(monomials_up_to(2))
coefficients = st.integers(-3, 3).map(LaurentPoly.constant)
elements = st.dictionaries(small_monomials, coefficients, max_size=3).map(NCPoly)


@settings(max_examples=40, deadline=None)
@given(elements, elements, coefficients)
def test_hierarchy_operator_is_linear(triple, a, b, c):
    op = hat_I_pm_n('+', 1, *triple)
    assert op(a + b.scale(c)) == op(a) + op(b).scale(c)
