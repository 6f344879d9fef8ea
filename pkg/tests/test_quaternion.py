import random
from fractions import Fraction

import pytest

from cycdiv import (AlbertForm, BiquaternionAlgebra, QQ, QuadraticExtension,
                    QuaternionAlgebra, albert_form, anisotropy_sample_test,
                    is_square_in_tower, laurent, nonsquare_witness, quat_invert,
                    quat_mul, sos_leading_data)
from cycdiv.errors import CycdivError, DomainMismatchError, PrecisionError
from cycdiv.quaternion import reduced_norm
from cycdiv.verify import albert_setup

R, F, D1, D2, PHI = albert_setup(precision=10)


def test_quaternion_relations():
    i, j = D1.i, D1.j
    assert (i * i).coords[0].agrees_to_precision(D1.u)
    assert (j * j).coords[0].agrees_to_precision(D1.v)
    assert (i * j + j * i).is_known_zero()
    ij = i * j
    # (ij)^2 = -uv
    sq = (ij * ij).coords[0]
    assert sq.agrees_to_precision(F.neg(F.mul(D1.u, D1.v)))


def test_characteristic_two_rejected():
    from cycdiv import PrimeField
    F2 = PrimeField(2)
    with pytest.raises(CycdivError):
        QuaternionAlgebra(F2, F2.one, F2.one)


def test_reduced_norm_multiplicative():
    rng = random.Random(31)
    for _ in range(10):
        x = D1.random_element(rng, n_terms=1, exp_lo=-1, exp_hi=2)
        y = D1.random_element(rng, n_terms=1, exp_lo=-1, exp_hi=2)
        assert F.eq(reduced_norm(x * y), F.mul(reduced_norm(x), reduced_norm(y)))


def test_quat_invert():
    # over a single-level series field the coefficient arithmetic is exact,
    # so the inverse round-trips on all known coefficients
    D = QuaternionAlgebra(R, R.variable, R.from_int(-1))
    rng = random.Random(32)
    for _ in range(8):
        x = D.random_element(rng, n_terms=2, exp_lo=-2, exp_hi=3, nonzero=True)
        if R.is_known_zero(reduced_norm(x)):
            continue
        xi = quat_invert(x)
        diff = x * xi - D.one
        assert all(R.is_known_zero(c) for c in diff.coords)


def test_quat_norm_is_x_conj_x():
    rng = random.Random(33)
    x = D1.random_element(rng, n_terms=1, exp_lo=0, exp_hi=2)
    prod = quat_mul(x, x.conjugate())
    assert F.eq(prod.coords[0], reduced_norm(x))
    assert all(F.is_known_zero(c) for c in prod.coords[1:])


def test_biquaternion_tensor_structure():
    B = BiquaternionAlgebra(D1, D2)
    assert B.n == 16
    # (i (x) 1)(1 (x) i') = i (x) i' = (1 (x) i')(i (x) 1): tensor factors commute
    a = B.simple_tensor(D1.i, D2.one)
    b = B.simple_tensor(D1.one, D2.i)
    ab, ba = a * b, b * a
    assert all(F.eq(x, y) for x, y in zip(ab.coords, ba.coords))
    # one is the identity
    rng = random.Random(34)
    z = B.random_element(rng, n_terms=1, exp_lo=-1, exp_hi=2)
    assert all(F.eq(x, y) for x, y in zip((B.one * z).coords, z.coords))


def test_biquaternion_associativity():
    B = BiquaternionAlgebra(D1, D2)
    rng = random.Random(35)
    for _ in range(5):
        a = B.random_element(rng, n_terms=1, exp_lo=-1, exp_hi=2)
        b = B.random_element(rng, n_terms=1, exp_lo=-1, exp_hi=2)
        c = B.random_element(rng, n_terms=1, exp_lo=-1, exp_hi=2)
        lhs = (a * b) * c
        rhs = a * (b * c)
        assert all(F.eq(x, y) for x, y in zip(lhs.coords, rhs.coords))


def test_albert_form_coefficients():
    # phi = <u, v, -uv, -u', -v', u'v'> with D1 = (X, -1), D2 = (-X, Y)
    x = F.constant(R.variable)
    y = F.variable
    expected = [x, F.from_int(-1), x, x, F.neg(y), F.neg(F.mul(x, y))]
    assert all(F.eq(a, b) for a, b in zip(PHI.coefficients, expected))


def test_albert_form_evaluate():
    a = [F.one] + [F.zero] * 5
    assert F.eq(PHI.evaluate(a), PHI.coefficients[0])
    with pytest.raises(CycdivError):
        PHI.evaluate([F.one] * 5)


def test_albert_form_mismatched_fields():
    other = QuaternionAlgebra(F, F.from_int(-1), F.from_int(-1))
    inner = laurent(QQ, "Z", 10)
    outer = laurent(inner, "W", 10)
    foreign = QuaternionAlgebra(outer, outer.from_int(-1), outer.from_int(-1))
    with pytest.raises(DomainMismatchError):
        albert_form(other, foreign)


def test_anisotropy_sampling_clean():
    rep = anisotropy_sample_test(PHI, F, 100, random.Random(36))
    assert rep["failures"] == 0 and rep["trials"] == 100


def test_isotropic_form_is_caught():
    # a sampler that always draws 1 finds the zeros of <1, -1, ..., 1, -1>
    from cycdiv.basefields import RationalField

    class AlwaysOne(RationalField):
        def random_element(self, rng, **opts):
            return Fraction(1)

    dom = AlwaysOne()
    iso = AlbertForm(tuple(Fraction(1 if k % 2 == 0 else -1) for k in range(6)), QQ)
    rep = anisotropy_sample_test(iso, dom, 20, random.Random(37))
    assert rep["failures"] == 20
    assert rep["counterexamples"][0] == (Fraction(1),) * 6


def test_quadratic_extension_arithmetic():
    w, cert = nonsquare_witness(R)
    assert not cert["is_square"]
    K = QuadraticExtension(F, F.constant(w))
    g2 = K.mul(K.gamma, K.gamma)
    assert K.eq(g2, K.inject(F.constant(w)))
    x = (F.one + F.variable, F.one)
    assert K.eq(K.mul(x, K.invert(x)), K.one)
    with pytest.raises(ZeroDivisionError):
        K.invert(K.zero)


def test_nonsquare_witness_values():
    w, _ = nonsquare_witness(R)
    # w = 2 + 2X^2 = (1+X)^2 + (1-X)^2
    one, x = R.one, R.variable
    assert R.eq(w, (one + x) * (one + x) + (one - x) * (one - x))
    assert not is_square_in_tower(w)
    assert is_square_in_tower((one + x) * (one + x))


def test_sos_leading_data_invariants():
    rng = random.Random(38)
    for _ in range(30):
        summands = [F.random_element(rng, n_terms=2, exp_lo=-2, exp_hi=3)
                    for _ in range(rng.randint(1, 4))]
        if all(s.is_known_zero() for s in summands):
            continue
        data = sos_leading_data(summands)
        assert data["outer_valuation"] % 2 == 0
        assert data["inner_valuation"] % 2 == 0
        assert data["leading_rational"] > 0


def test_sos_rejects_truncated():
    with pytest.raises(CycdivError):
        sos_leading_data([F.one.truncate(5)])


def test_sos_rejects_all_zero():
    with pytest.raises(CycdivError):
        sos_leading_data([F.zero])


def test_square_test_rejects_truncated():
    with pytest.raises(PrecisionError):
        is_square_in_tower(R.one.truncate(4))
