import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ssecalc.errors import DimensionMismatchError, InvalidIndexSetError, InvalidMatrixError
from ssecalc.matrices import (
    IndexSet,
    NonnegMatrix,
    core_indices,
    e_s_matrix,
    identity_submatrix,
    is_nondegenerate,
    matrix_from_json,
    matrix_to_json,
    mul,
    submatrix,
)


def naive_mul(a, b):
    """Independent triple-loop oracle."""
    al, bl = a.to_lists(), b.to_lists()
    return NonnegMatrix(
        [
            [sum(al[i][k] * bl[k][j] for k in range(a.cols)) for j in range(b.cols)]
            for i in range(a.rows)
        ]
    )


def rand_bool(rng, n, m):
    return NonnegMatrix([[rng.randint(0, 1) for _ in range(m)] for _ in range(n)])


def test_mul_identity():
    a = NonnegMatrix([[1, 1], [1, 0]])
    assert mul(NonnegMatrix.identity(2), a) == a
    assert mul(a, NonnegMatrix.identity(2)) == a


def test_mul_hand_example():
    a = NonnegMatrix([[1, 1], [1, 0]])
    assert mul(a, a) == NonnegMatrix([[2, 1], [1, 1]])


def test_mul_against_naive_oracle():
    rng = random.Random(0)
    for _ in range(200):
        a = rand_bool(rng, 4, 4)
        b = rand_bool(rng, 4, 4)
        assert mul(a, b) == naive_mul(a, b)


def test_mul_nonboolean_entries():
    rng = random.Random(1)
    for _ in range(50):
        a = NonnegMatrix([[rng.randint(0, 5) for _ in range(3)] for _ in range(3)])
        b = NonnegMatrix([[rng.randint(0, 5) for _ in range(3)] for _ in range(3)])
        assert mul(a, b) == naive_mul(a, b)


def test_mul_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        mul(NonnegMatrix([[1]]), NonnegMatrix([[1, 0], [0, 1]]))


def test_entries_validated():
    with pytest.raises(InvalidMatrixError):
        NonnegMatrix([[1, -1]])
    with pytest.raises(InvalidMatrixError):
        NonnegMatrix([[1], [1, 2]])


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_mul_associative(data):
    dims = [data.draw(st.integers(1, 4), label=f"d{i}") for i in range(4)]
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    a = NonnegMatrix([[rng.randint(0, 2) for _ in range(dims[1])] for _ in range(dims[0])])
    b = NonnegMatrix([[rng.randint(0, 2) for _ in range(dims[2])] for _ in range(dims[1])])
    c = NonnegMatrix([[rng.randint(0, 2) for _ in range(dims[3])] for _ in range(dims[2])])
    assert mul(mul(a, b), c) == mul(a, mul(b, c))


def test_is_nondegenerate():
    assert is_nondegenerate(NonnegMatrix([[1, 1], [1, 0]]))
    assert not is_nondegenerate(NonnegMatrix([[1, 0], [1, 0]]))
    assert not is_nondegenerate(NonnegMatrix([[0]]))


def test_submatrix_basics():
    a = NonnegMatrix([[1, 2], [3, 4]])
    full = IndexSet.full(2)
    assert submatrix(a, full, full) == a
    assert submatrix(a, IndexSet(2, (1,)), IndexSet(2, (2,))) == NonnegMatrix([[2]])
    with pytest.raises(InvalidIndexSetError):
        submatrix(a, IndexSet(2, ()), full)
    with pytest.raises(InvalidIndexSetError):
        submatrix(a, IndexSet(3, (1,)), full)


def test_submatrix_identity_product():
    # (A_{KxN})(I_{NxK}) = A_{KxK}, checked by direct multiplication
    rng = random.Random(2)
    for _ in range(50):
        n = rng.randint(2, 5)
        a = NonnegMatrix([[rng.randint(0, 2) for _ in range(n)] for _ in range(n)])
        members = tuple(sorted(rng.sample(range(1, n + 1), rng.randint(1, n))))
        k = IndexSet(n, members)
        full = IndexSet.full(n)
        akn = submatrix(a, k, full)
        ink = identity_submatrix(full, k)
        assert mul(akn, ink) == submatrix(a, k, k)


def test_submatrix_composes():
    rng = random.Random(3)
    a = NonnegMatrix([[rng.randint(0, 3) for _ in range(5)] for _ in range(5)])
    k = IndexSet(5, (1, 3, 4))
    l = IndexSet(5, (2, 3, 5))
    k2 = IndexSet(3, (1, 3))
    l2 = IndexSet(3, (2,))
    once = submatrix(submatrix(a, k, l), k2, l2)
    twice = submatrix(a, k.compose(k2), l.compose(l2))
    assert once == twice


def test_e_s_matrix():
    s = NonnegMatrix([[0, 0], [1, 0]])
    assert e_s_matrix(s) == NonnegMatrix([[0, 0], [0, 1]])
    s2 = NonnegMatrix([[1, 0], [1, 1]])
    assert e_s_matrix(s2) == NonnegMatrix.identity(2)


def test_e_s_fixes_s_and_is_idempotent():
    rng = random.Random(4)
    for _ in range(50):
        n, m = rng.randint(1, 5), rng.randint(1, 5)
        s = NonnegMatrix([[rng.randint(0, 2) if rng.random() < 0.5 else 0 for _ in range(m)] for _ in range(n)])
        es = e_s_matrix(s)
        assert mul(es, s) == s
        assert mul(es, es) == es


def power_oracle_core(a):
    """i is in the core iff row i and column i of A^k are nonzero for all
    k up to the size (paths that long must close cycles)."""
    n = a.rows
    alive = set(range(1, n + 1))
    for k in range(1, n + 1):
        p = a.power(k)
        pt = p.transpose()
        alive &= {i for i in alive if p.row_mask(i - 1) and pt.row_mask(i - 1)}
    return tuple(sorted(alive))


def test_core_indices_examples():
    assert core_indices(NonnegMatrix([[1, 1], [1, 0]])).members == (1, 2)
    assert core_indices(NonnegMatrix([[0, 1], [0, 1]])).members == (2,)
    assert core_indices(NonnegMatrix([[0]])).members == ()


def test_core_indices_against_power_oracle():
    rng = random.Random(5)
    for _ in range(300):
        n = rng.randint(1, 5)
        a = rand_bool(rng, n, n)
        assert core_indices(a).members == power_oracle_core(a)


def test_core_is_fixed_point():
    rng = random.Random(6)
    for _ in range(100):
        n = rng.randint(1, 5)
        a = rand_bool(rng, n, n)
        j = core_indices(a)
        if not j.members:
            continue
        restricted = submatrix(a, j, j)
        assert core_indices(restricted).is_full


def test_json_roundtrip():
    a = NonnegMatrix([[0, 2], [3, 1]])
    assert matrix_from_json(matrix_to_json(a)) == a
    with pytest.raises(InvalidMatrixError):
        matrix_from_json({"rows": 1, "cols": 2, "entries": [[1]]})
