import logging

import numpy as np
import pytest

from errors import ConfigError, FieldMismatchError, ReducibleModulusError, ZeroDivisionFieldError
from field_service import FieldSpec, add, inv, mul, sqrt, trace
from field_service.galois_field import clmul, is_irreducible, poly_mod, smallest_irreducible


@pytest.fixture
def gf4():
    return FieldSpec.from_order(4)


@pytest.fixture
def gf8():
    return FieldSpec.from_order(8)


def test_default_moduli(gf4, gf8):
    assert gf4.modulus == 0b111
    assert gf8.modulus == 0b1011
    assert FieldSpec.from_order(16).modulus == 0b10011


def test_addition_is_xor(gf4):
    w = gf4.element(2)
    assert add(w, w) == gf4.zero
    assert add(w, gf4.one).bits == 3
    assert w - gf4.one == w + gf4.one


def test_gf4_omega_squared(gf4):
    w = gf4.element(2)
    assert mul(w, w).bits == 3  # w^2 = w + 1
    assert inv(w).bits == 3


def test_gf8_inverse_of_x(gf8):
    x = gf8.element(2)
    assert inv(x).bits == 0b101  # x * (x^2 + 1) = x^3 + x = 1
    assert (x * inv(x)) == gf8.one


def test_trace_values(gf4):
    assert trace(gf4.zero).bits == 0
    assert trace(gf4.one).bits == 0
    assert trace(gf4.element(2)).bits == 1


@pytest.mark.parametrize("q", [2, 4, 8, 16, 32])
def test_trace_is_onto_gf2_and_balanced(q):
    field = FieldSpec.from_order(q)
    values = [field.trace_bits(a) for a in range(q)]
    assert set(values) <= {0, 1}
    assert values.count(1) == q // 2


@pytest.mark.parametrize("q", [2, 4, 8, 16])
def test_sqrt_inverts_squaring(q):
    field = FieldSpec.from_order(q)
    for a in field.elements():
        assert sqrt(a) * sqrt(a) == a


def test_division_by_zero(gf8):
    with pytest.raises(ZeroDivisionFieldError):
        inv(gf8.zero)
    with pytest.raises(ZeroDivisionError):
        gf8.one / gf8.zero
    with pytest.raises(ZeroDivisionFieldError):
        gf8.inv_array(np.array([1, 0, 3]))


def test_mixed_fields_rejected(gf4, gf8):
    with pytest.raises(FieldMismatchError):
        gf4.one + gf8.one


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulusError):
        FieldSpec(2, 0b101)  # x^2 + 1 = (x + 1)^2
    with pytest.raises(ReducibleModulusError):
        FieldSpec(3, 0b111)  # wrong degree


def test_order_must_be_power_of_two():
    with pytest.raises(ConfigError):
        FieldSpec.from_order(6)
    with pytest.raises(ConfigError):
        FieldSpec.from_order(1)


def test_non_primitive_modulus_still_builds_tables():
    # x^4+x^3+x^2+x+1 is irreducible but x has order 5
    field = FieldSpec(4, 0b11111)
    assert field.generator != 2
    for a in range(16):
        for b in range(16):
            assert field.mul_bits(a, b) == poly_mod(clmul(a, b), 0b11111)


@pytest.mark.parametrize("q", [4, 8, 16])
def test_array_ops_match_scalar_ops(q):
    field = FieldSpec.from_order(q)
    a, b = np.meshgrid(np.arange(q), np.arange(q))
    expected = np.vectorize(field.mul_bits)(a, b)
    assert np.array_equal(field.mul_array(a, b), expected)
    nonzero = np.arange(1, q)
    assert np.array_equal(field.mul_array(nonzero, field.inv_array(nonzero)), np.ones(q - 1))
    assert np.array_equal(field.trace_array(np.arange(q)), [field.trace_bits(x) for x in range(q)])


def test_power_and_pow_zero(gf8):
    x = gf8.element(2)
    assert x**7 == gf8.one
    assert x**-1 == inv(x)
    assert gf8.zero**0 == gf8.one
    with pytest.raises(ZeroDivisionFieldError):
        gf8.zero**-1


def test_hex_parse_and_format(gf8):
    assert gf8.element("5").bits == 5
    assert str(gf8.element(6)) == "6"
    with pytest.raises(ValueError):
        gf8.element("8")
    with pytest.raises(ValueError):
        gf8.element("z")


def test_irreducibility_search():
    assert is_irreducible(0b1011)
    assert not is_irreducible(0b1111)  # (x+1)^3
    assert smallest_irreducible(6) == 0b1000011


def test_gf8_square_of_x_squared(gf8):
    x2 = gf8.element(0b100)
    assert mul(x2, x2).bits == 0b110  # x^4 = x^2 + x


def _grid(q, n):
    return np.meshgrid(*[np.arange(q)] * n, indexing="ij")


@pytest.mark.parametrize("q", [2, 4, 8, 16])
def test_multiplication_axioms(q):
    field = FieldSpec.from_order(q)
    mul_ = field.mul_array
    a, b = _grid(q, 2)
    assert np.array_equal(mul_(a, b), mul_(b, a))
    assert np.array_equal(mul_(a, 1), a)
    assert np.array_equal(mul_(a, 0), np.zeros_like(a))

    a, b, c = _grid(q, 3)
    assert np.array_equal(mul_(mul_(a, b), c), mul_(a, mul_(b, c)))
    assert np.array_equal(mul_(a, b ^ c), mul_(a, b) ^ mul_(a, c))


@pytest.mark.parametrize("q", [2, 4, 8, 16])
def test_inverses(q):
    field = FieldSpec.from_order(q)
    nonzero = np.arange(1, q)
    assert np.array_equal(field.mul_array(nonzero, field.inv_array(nonzero)), np.ones(q - 1))
    assert len(set(field.inv_array(nonzero).tolist())) == q - 1
    for a in field.elements():
        assert a + a == field.zero


@pytest.mark.parametrize("q", [2, 4, 8, 16])
def test_frobenius_and_trace_are_additive(q):
    field = FieldSpec.from_order(q)
    a, b = _grid(q, 2)
    s = a ^ b
    assert np.array_equal(field.mul_array(s, s), field.mul_array(a, a) ^ field.mul_array(b, b))
    assert np.array_equal(field.trace_array(a ^ b), field.trace_array(a) ^ field.trace_array(b))


def test_q2_logs_a_warning(caplog):
    with caplog.at_level(logging.WARNING, logger="field_service.galois_field"):
        FieldSpec.from_order(2)
    assert "q=2" in caplog.text

    caplog.clear()
    with caplog.at_level(logging.WARNING, logger="field_service.galois_field"):
        FieldSpec.from_order(4)
    assert caplog.text == ""
