import pytest

from acgraphs.elements import (
    AbelianTuple,
    MatrixGF,
    Permutation,
    conj,
    cycle_count,
    element_from_json,
    format_cycles,
    identity_like,
    parse_cycles,
)

from helpers import brute_cycle_count


def test_permutation_composition_is_left_to_right():
    # (a*b)(x) = b(a(x))
    a = Permutation([1, 0, 2])
    b = Permutation([0, 2, 1])
    ab = a * b
    for x in range(3):
        assert ab(x) == b(a(x))


def test_conjugation_convention():
    a = parse_cycles("(0 1 2)", 3)
    w = parse_cycles("(0 1)", 3)
    assert conj(a, w) == parse_cycles("(0 2 1)", 3)
    assert conj(a, identity_like(a)) == a


def test_sl2_conjugation_matches_independent_product():
    # w^-1 * a * w computed by an independent modular-arithmetic script
    a = MatrixGF((1, 0, 2, 1), 5)
    w = MatrixGF((1, 2, 0, 1), 5)
    assert conj(a, w) == MatrixGF((2, 2, 2, 0), 5)


def test_matrix_inverse_and_det():
    m = MatrixGF((2, 1, 3, 2), 5)
    assert (m * m.inverse()).is_identity()
    with pytest.raises(ValueError):
        MatrixGF((1, 1, 1, 1), 5)  # det 0


def test_mixed_variant_multiplication_raises():
    p = Permutation([1, 0])
    m = MatrixGF((1, 0, 0, 1), 5)
    with pytest.raises(TypeError):
        p * m
    with pytest.raises(TypeError):
        Permutation([1, 0]) * Permutation([1, 2, 0])
    with pytest.raises(TypeError):
        MatrixGF((1, 0, 0, 1), 5) * MatrixGF((1, 0, 0, 1), 7)
    with pytest.raises(TypeError):
        AbelianTuple((1,), (3,)) * AbelianTuple((1, 0), (3, 2))


def test_cycle_count_examples():
    assert cycle_count(Permutation(range(7))) == 7
    assert cycle_count(parse_cycles("(0 1 2 3 4)", 5)) == 1
    assert cycle_count(parse_cycles("(0 1)(2 3)", 5)) == 3
    with pytest.raises(TypeError):
        cycle_count(MatrixGF((1, 0, 0, 1), 5))


def test_cycle_count_against_brute_force():
    import itertools

    for images in itertools.permutations(range(5)):
        assert Permutation(images).cycle_count() == brute_cycle_count(images)


def test_inverse_antihomomorphism_sampled():
    import numpy as np

    rng = np.random.default_rng(3)
    for _ in range(100):
        a = Permutation(int(i) for i in rng.permutation(6))
        b = Permutation(int(i) for i in rng.permutation(6))
        assert (a * b).inverse() == b.inverse() * a.inverse()
        assert (a * a.inverse()).is_identity()


def test_conjugation_distributes_over_product():
    import numpy as np

    rng = np.random.default_rng(4)
    for _ in range(100):
        a, b, w = (Permutation(int(i) for i in rng.permutation(5)) for _ in range(3))
        assert conj(a * b, w) == conj(a, w) * conj(b, w)


def test_abelian_arithmetic():
    x = AbelianTuple((1, 3), (2, 4))
    y = AbelianTuple((1, 2), (2, 4))
    assert (x * y).residues == (0, 1)
    assert (x * x.inverse()).is_identity()
    assert x.conjugate_by(y) == x


def test_cycle_notation_round_trip():
    p = parse_cycles("(0 1)(2 3)", 6)
    assert p.images == (1, 0, 3, 2, 4, 5)
    # 1-based input means the same involution
    assert parse_cycles("(1 2)(3 4)", 6) == p
    # human-facing output is 1-based
    assert format_cycles(p) == "(1 2)(3 4)"
    assert format_cycles(Permutation(range(4))) == "()"
    assert parse_cycles("()", 4).is_identity()
    with pytest.raises(ValueError):
        parse_cycles("(0 1)(1 2)", 4)  # not disjoint


def test_json_round_trip():
    for el in (
        parse_cycles("(0 1 2)", 4),
        MatrixGF((1, 2, 0, 1), 7),
        AbelianTuple((1, 0), (2, 3)),
    ):
        assert element_from_json(el.to_json()) == el


def test_permutation_validation():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])
    with pytest.raises(ValueError):
        Permutation([0, 2])
