"""Unit tests for exact rational arithmetic, SNF and discriminant groups."""

from __future__ import annotations

from fractions import Fraction

import pytest

from enriques_cnd.errors import ValidationError
from enriques_cnd.exact_lattice import (
    add_vectors,
    as_vector,
    discriminant_group,
    enumerate_isotropic_classes,
    format_rational,
    gram,
    integer_combination,
    is_integral,
    matrix_apply,
    pairing,
    parse_rational,
    rational_det,
    rational_inverse,
    rational_nullspace,
    rational_solve,
    reduce_class,
    scale_vector,
    smith_normal_form,
    sub_vectors,
    zero_vector,
)


# ---------------------------------------------------------------------------
# Rational literals
# ---------------------------------------------------------------------------

def test_parse_rational_accepts_ints_fractions_and_strings():
    assert parse_rational(7) == Fraction(7)
    assert parse_rational(-3) == Fraction(-3)
    assert parse_rational("5") == Fraction(5)
    assert parse_rational("-5") == Fraction(-5)
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-7/2") == Fraction(-7, 2)
    assert parse_rational(Fraction(9, 5)) == Fraction(9, 5)


@pytest.mark.parametrize("bad", [
    True, False, 1.5, "1.5", "", "1/0", "1/-2", "--3", "3/", "/4", " 1", "1 ",
    None, [1],
])
def test_parse_rational_rejects_non_rationals(bad):
    with pytest.raises(ValidationError):
        parse_rational(bad)


def test_format_rational_round_trips():
    assert format_rational(Fraction(4)) == 4
    assert format_rational(Fraction(-4)) == -4
    assert format_rational(Fraction(1, 2)) == "1/2"
    assert format_rational(Fraction(-13, 6)) == "-13/6"
    for value in (Fraction(0), Fraction(22, 7), Fraction(-3, 8), Fraction(91)):
        assert parse_rational(format_rational(value)) == value


# ---------------------------------------------------------------------------
# Vectors and pairings
# ---------------------------------------------------------------------------

def test_vector_arithmetic():
    a = as_vector([1, "1/2", -2])
    b = as_vector([0, "3/2", 5])
    assert add_vectors(a, b) == (Fraction(1), Fraction(2), Fraction(3))
    assert sub_vectors(a, b) == (Fraction(1), Fraction(-1), Fraction(-7))
    assert scale_vector(Fraction(2), a) == (Fraction(2), Fraction(1), Fraction(-4))
    assert zero_vector(3) == (Fraction(0),) * 3
    assert is_integral(add_vectors(a, a))
    assert not is_integral(a)


def test_pairing_and_gram():
    m = [[-2, 1], [1, -2]]
    x = as_vector(["1/2", "1/2"])
    assert pairing(x, x, m) == Fraction(-1, 2)
    assert matrix_apply(m, (Fraction(1), Fraction(0))) == (Fraction(-2), Fraction(1))
    g = gram([x, (Fraction(1), Fraction(0))], m)
    assert g == ((Fraction(-1, 2), Fraction(-1, 2)),
                 (Fraction(-1, 2), Fraction(-2)))


def test_linear_algebra_small_cases():
    assert rational_det([[2, 1], [1, 1]]) == 1
    assert rational_det([[1, 2], [2, 4]]) == 0
    inv = rational_inverse([[2, 1], [1, 1]])
    assert inv == ((Fraction(1), Fraction(-1)), (Fraction(-1), Fraction(2)))
    sol = rational_solve([[2, 0], [0, 4]], (Fraction(3), Fraction(2)))
    assert sol == (Fraction(3, 2), Fraction(1, 2))
    assert rational_solve([[1, 0], [1, 0]], (Fraction(0), Fraction(1))) is None
    null = rational_nullspace([[1, 1]])
    assert len(null) == 1
    assert sum(c * v for c, v in zip((1, 1), null[0])) == 0
    assert any(v != 0 for v in null[0])


def test_integer_combination():
    gens = [(Fraction(2), Fraction(0)), (Fraction(1), Fraction(1))]
    assert integer_combination(gens, (Fraction(3), Fraction(1))) == (1, 1)
    assert integer_combination(gens, (Fraction(1), Fraction(0))) is None
    assert integer_combination(gens, (Fraction(0), Fraction(0))) == (0, 0)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def test_smith_normal_form_literals():
    snf = smith_normal_form([[1, 2], [3, 4]])
    assert [snf.diagonal[i][i] for i in range(2)] == [1, 2]
    snf = smith_normal_form([[2, 0], [0, 3]])
    assert [snf.diagonal[i][i] for i in range(2)] == [1, 6]
    snf = smith_normal_form([[0, 0], [0, 0]])
    assert [snf.diagonal[i][i] for i in range(2)] == [0, 0]
    snf = smith_normal_form([[2, 4, 6]])
    assert snf.diagonal[0][0] == 2


def test_smith_normal_form_reconstruction():
    a = [[6, 4, 2], [4, 6, 8], [2, 8, 6]]
    snf = smith_normal_form(a)
    k = len(a)
    product = [
        [
            sum(snf.left[i][p] * a[p][q] * snf.right[q][j]
                for p in range(k) for q in range(k))
            for j in range(k)
        ]
        for i in range(k)
    ]
    assert product == [list(row) for row in snf.diagonal]
    assert abs(rational_det(snf.left)) == 1
    assert abs(rational_det(snf.right)) == 1


def test_smith_normal_form_rejects_ragged_input():
    with pytest.raises(ValidationError):
        smith_normal_form([[1, 2], [3]])


# ---------------------------------------------------------------------------
# Discriminant groups and isotropic classes
# ---------------------------------------------------------------------------

def test_discriminant_group_unimodular_is_trivial():
    group = discriminant_group([[0, 1], [1, 0]])
    assert group.invariant_factors == ()
    assert group.order == 1
    assert enumerate_isotropic_classes(group) == ()


def test_discriminant_group_z2_with_isotropic_class():
    group = discriminant_group([[2, 0], [0, -2]])
    assert group.invariant_factors == (2, 2)
    assert group.order == 4
    classes = enumerate_isotropic_classes(group)
    assert classes == ((Fraction(1, 2), Fraction(1, 2)),)


def test_discriminant_group_z2_without_isotropic_class():
    group = discriminant_group([[-2]])
    assert group.invariant_factors == (2,)
    assert enumerate_isotropic_classes(group) == ()


def test_discriminant_group_generator_lifts_live_in_dual():
    gram_matrix = [[-2, 1, 0], [1, -2, 1], [0, 1, -4]]
    group = discriminant_group(gram_matrix)
    for lift in group.generator_lifts:
        assert is_integral(matrix_apply(gram_matrix, lift))


def test_discriminant_group_input_validation():
    with pytest.raises(ValidationError, match="square"):
        discriminant_group([[1, 2]])
    with pytest.raises(ValidationError, match="symmetric"):
        discriminant_group([[2, 1], [0, 2]])
    with pytest.raises(ValidationError, match="degenerate"):
        discriminant_group([[1, 1], [1, 1]])
    with pytest.raises(ValidationError, match="integers"):
        discriminant_group([[Fraction(1, 2)]])


def test_isotropic_enumeration_requires_even_form():
    group = discriminant_group([[3]])
    with pytest.raises(ValidationError, match="not even"):
        enumerate_isotropic_classes(group)


def test_isotropic_enumeration_cap():
    big = [[0] * 21 for _ in range(21)]
    for i in range(21):
        big[i][i] = -2
    group = discriminant_group(big)
    assert group.order == 2 ** 21
    with pytest.raises(ValidationError, match="too large"):
        enumerate_isotropic_classes(group)


def test_reduce_class():
    assert reduce_class((Fraction(5, 2), Fraction(-1, 4), Fraction(3))) == \
        (Fraction(1, 2), Fraction(3, 4), Fraction(0))
