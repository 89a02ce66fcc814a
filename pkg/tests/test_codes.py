import random

import pytest

from ssecalc.codes import (
    BlockCode,
    bijection_code,
    compose,
    equal_codes,
    identity_code,
    is_alphabet_bijection,
    is_elementary,
    is_identity,
    normalize,
    shift_code,
    verify_inverse,
)
from ssecalc.errors import InvalidCodeError, MissingInverseError, ShiftMismatchError
from ssecalc.matrices import NonnegMatrix
from ssecalc.shifts import VertexShift, higher_block

GM = VertexShift(NonnegMatrix([[1, 1], [1, 0]]))
FULL2 = VertexShift(NonnegMatrix([[1, 1], [1, 1]]))
CYCLE2 = VertexShift(NonnegMatrix([[0, 1], [1, 0]]))


def test_table_must_be_total():
    with pytest.raises(InvalidCodeError):
        BlockCode(GM, GM, 0, 0, {(0,): 0})


def test_image_words_must_be_allowed():
    # constant-1 map is not allowed on the golden mean (no 22)
    with pytest.raises(InvalidCodeError):
        BlockCode(GM, GM, 0, 0, {(0,): 1, (1,): 1})


def test_forbidden_word_queries_raise():
    f = identity_code(GM)
    with pytest.raises(InvalidCodeError):
        f.apply_word((1, 1))  # 22 is forbidden


def test_compose_identity():
    sigma = shift_code(GM, 1)
    assert equal_codes(compose(identity_code(GM), sigma), sigma)
    assert equal_codes(compose(sigma, identity_code(GM)), sigma)


def test_compose_shift_inverse():
    sigma = shift_code(GM, 1)
    assert is_identity(compose(sigma, sigma.inverse))
    assert is_identity(compose(sigma.inverse, sigma))


def test_compose_windows_add():
    sigma = shift_code(GM, 1)
    ss = compose(sigma, sigma)
    assert ss.window == (2, 2)
    assert normalize(ss).window == (2, 2)  # golden mean is not deterministic


def test_compose_mismatch():
    with pytest.raises(ShiftMismatchError):
        compose(shift_code(GM, 1), shift_code(FULL2, 1))


def test_normalize_drops_padded_coordinates():
    sigma = shift_code(GM, 1)
    wide = BlockCode(GM, GM, -1, 1, sigma.table_at(-1, 1))
    n = normalize(wide)
    assert n.window == (1, 1)
    assert equal_codes(wide, sigma)


def test_normalize_idempotent():
    f = compose(shift_code(GM, 1), shift_code(GM, 1).inverse)
    n = normalize(f)
    assert normalize(n) == n


def test_normalize_slides_on_deterministic_shifts():
    # on the 2-cycle, sigma is the alphabet swap; sigma^2 is the identity
    sigma = shift_code(CYCLE2, 1)
    n = normalize(sigma)
    assert n.window == (0, 0) and n.table == {(0,): 1, (1,): 0}
    assert is_identity(compose(sigma, sigma))


def test_shift_code_table():
    tau = shift_code(GM, 1)
    assert tau.window == (1, 1)
    assert tau.table == {(0,): 0, (1,): 1}
    # values are untouched, the indexing shifts: y_i = x_{i+1}, so the image
    # of a word at positions [p, p+3] sits at positions [p-1, p+2]
    assert tau.apply_word((0, 0, 1, 0)) == (0, 0, 1, 0)
    assert tau.inverse.window == (-1, -1)


def test_verify_inverse():
    sigma = shift_code(GM, 1)
    assert verify_inverse(sigma, sigma.inverse)
    assert not verify_inverse(identity_code(GM), sigma)


def test_higher_block_inverse_roundtrip():
    _, f = higher_block(GM, 3)
    assert verify_inverse(f, f.inverse)
    assert is_identity(compose(f.inverse, f))


def test_elementarity():
    sigma = shift_code(GM, 1)
    assert is_elementary(sigma)          # window {1} in {0,1}, inverse {-1}
    assert is_elementary(identity_code(GM))
    assert not is_elementary(sigma.inverse)
    assert is_elementary(compose(sigma, sigma)) is False
    with pytest.raises(MissingInverseError):
        is_elementary(BlockCode(GM, GM, 0, 0, {(0,): 0, (1,): 1}))


def test_bijection_code():
    beta = bijection_code(FULL2, [1, 0])
    assert is_alphabet_bijection(beta)
    assert is_identity(compose(beta.inverse, beta))
    assert not is_alphabet_bijection(shift_code(FULL2, 1))


def test_stored_inverse_contract():
    rng = random.Random(0)
    for _ in range(20):
        _, f = higher_block(GM, rng.randint(1, 4))
        assert verify_inverse(f, f.inverse)
