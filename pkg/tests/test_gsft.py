import random
from collections import Counter

import pytest

from ssecalc.errors import GStarOverflowError, InvalidEdgeError, InvalidMatrixError
from ssecalc.groups import FiniteGroup, cyclic_group, symmetric_group
from ssecalc.gsft import (
    GroupRingMatrix,
    GsftEdge,
    GsftTriangle,
    MarkedGGraph,
    bar,
    equivariant_triangle,
    gsft_matrix_from_json,
    gsft_matrix_to_json,
    hat,
    mark_and_relabel,
    mul_gstar,
    mul_zg,
    product_in_gstar,
)
from ssecalc.matrices import NonnegMatrix, mul
from ssecalc.elementary import SSEEdge, Triangle, check_triangle

Z3 = cyclic_group(3)
Z2 = cyclic_group(2)
S3 = symmetric_group(3)

# the running example: A = [[e+a, a], [a^2, a^2]] over Z/3Z
A_EXAMPLE = GroupRingMatrix(Z3, [[{0, 1}, {1}], [{2}, {2}]])

# bar(A) for the order (e, a, a^2); the block at symbols (2,2) carries the
# a^2-cycle (2,e)->(2,a^2)->(2,a)->(2,e), matching the defining formula and
# the graph the matrix describes
BAR_EXAMPLE = NonnegMatrix(
    [
        [1, 1, 0, 0, 1, 0],
        [0, 1, 1, 0, 0, 1],
        [1, 0, 1, 1, 0, 0],
        [0, 0, 1, 0, 0, 1],
        [1, 0, 0, 1, 0, 0],
        [0, 1, 0, 0, 1, 0],
    ]
)


def test_group_validation():
    with pytest.raises(Exception):
        FiniteGroup(["e", "x"], [[0, 1], [1, 1]])
    g = cyclic_group(4)
    assert g.op(1, 3) == 0 and g.inv(1) == 3


def test_bar_trivial_group():
    g1 = cyclic_group(1)
    a = GroupRingMatrix(g1, [[{0}, set()], [{0}, {0}]])
    assert bar(a) == NonnegMatrix([[1, 0], [1, 1]])


def test_bar_example_matrix():
    assert bar(A_EXAMPLE) == BAR_EXAMPLE


def test_hat_inverts_bar_on_example():
    assert hat(BAR_EXAMPLE, Z3, (2, 2)) == A_EXAMPLE


def test_hat_identity_blocks():
    ident = NonnegMatrix.identity(4)
    a = hat(ident, Z2, (2, 2))
    assert a.entries[0][0] == frozenset({0})
    assert a.entries[1][1] == frozenset({0})
    assert a.entries[0][1] == frozenset()


def test_hat_reports_invariance_violation():
    bad = NonnegMatrix([[1, 0], [0, 0]])
    with pytest.raises(InvalidMatrixError) as err:
        hat(bad, Z2, (1, 1))
    assert "G-invariant" in str(err.value)


def rand_gstar(rng, group, rows, cols, density=0.35):
    return GroupRingMatrix(
        group,
        [
            [
                {g for g in range(group.order) if rng.random() < density}
                for _ in range(cols)
            ]
            for _ in range(rows)
        ],
    )


def test_bar_hat_roundtrip_random():
    rng = random.Random(0)
    for group in (Z2, Z3, S3):
        for _ in range(20):
            a = rand_gstar(rng, group, rng.randint(1, 3), rng.randint(1, 3))
            assert hat(bar(a), group, (a.rows, a.cols)) == a


def test_bar_multiplicative_both_ways():
    rng = random.Random(1)
    in_gstar = 0
    overflow = 0
    for group in (Z2, Z3, S3):
        for _ in range(120):
            a = rand_gstar(rng, group, rng.randint(1, 3), rng.randint(1, 3))
            b = rand_gstar(rng, group, a.cols, rng.randint(1, 3))
            boolean_product = mul(bar(a), bar(b))
            if product_in_gstar(a, b):
                in_gstar += 1
                assert boolean_product == bar(mul_gstar(a, b))
            else:
                overflow += 1
                assert not boolean_product.is_boolean
    assert in_gstar > 20 and overflow > 20


def test_marked_graph_roundtrip():
    g = MarkedGGraph(Z3, 2, BAR_EXAMPLE, ((0, 0), (1, 0)))
    assert mark_and_relabel(g) == A_EXAMPLE


def test_marked_graph_nontrivial_marks():
    # picking marks away from the identity relabels but re-bars consistently
    g = MarkedGGraph(Z3, 2, BAR_EXAMPLE, ((0, 1), (1, 2)))
    a2 = mark_and_relabel(g)
    assert hat(bar(a2), Z3, (2, 2)) == a2


def test_marked_graph_validation():
    with pytest.raises(InvalidMatrixError):
        MarkedGGraph(Z3, 2, NonnegMatrix.identity(5), ((0, 0), (1, 0)))
    sinkful = NonnegMatrix(
        [[0, 1, 0, 0, 0, 0]] + [[1, 0, 0, 0, 0, 0]] * 5
    )
    with pytest.raises(InvalidMatrixError):
        MarkedGGraph(Z3, 2, sinkful, ((0, 0), (1, 0)))


def test_mul_gstar_overflow_reported():
    a = GroupRingMatrix(Z2, [[{0, 1}, {0, 1}]])
    b = GroupRingMatrix(Z2, [[{0, 1}], [{0, 1}]])
    with pytest.raises(GStarOverflowError):
        mul_gstar(a, b)
    counts = mul_zg(a, b)
    assert counts[0][0] == Counter({0: 4, 1: 4})


def _identity_gsft_edge(a: GroupRingMatrix) -> GsftEdge:
    n = a.rows
    ident = GroupRingMatrix(
        a.group, [[{0} if i == j else set() for j in range(n)] for i in range(n)]
    )
    return GsftEdge(a, a, ident, a)


def test_equivariant_triangle_identity():
    e = _identity_gsft_edge(A_EXAMPLE)
    assert equivariant_triangle(GsftTriangle(e, e, e))


def test_equivariant_triangle_matches_barred_verdict():
    e = _identity_gsft_edge(A_EXAMPLE)
    t = GsftTriangle(e, e, e)
    barred = Triangle(
        SSEEdge(bar(e.a), bar(e.b), bar(e.r), bar(e.s)),
        SSEEdge(bar(e.a), bar(e.b), bar(e.r), bar(e.s)),
        SSEEdge(bar(e.a), bar(e.b), bar(e.r), bar(e.s)),
    )
    assert equivariant_triangle(t) == check_triangle(barred)


def test_equivariant_triangle_perturbed():
    e = _identity_gsft_edge(A_EXAMPLE)
    # sigma-like edge: R = A, S = I
    n = e.a.rows
    ident = GroupRingMatrix(
        Z3, [[{0} if i == j else set() for j in range(n)] for i in range(n)]
    )
    e_sigma = GsftEdge(e.a, e.a, e.a, ident)
    t = GsftTriangle(e, e, e_sigma)
    assert not equivariant_triangle(t)
    barred = Triangle(
        SSEEdge(bar(e.a), bar(e.a), bar(e.r), bar(e.s)),
        SSEEdge(bar(e.a), bar(e.a), bar(e.r), bar(e.s)),
        SSEEdge(bar(e.a), bar(e.a), bar(e_sigma.r), bar(e_sigma.s)),
    )
    assert not check_triangle(barred)


def test_gsft_edge_validation():
    ident = GroupRingMatrix(Z3, [[{0}]])
    with pytest.raises(InvalidEdgeError):
        GsftEdge(A_EXAMPLE, A_EXAMPLE, ident, ident)


def test_json_roundtrip():
    obj = gsft_matrix_to_json(A_EXAMPLE)
    assert obj["entries"][0][0] == ["a", "e"]
    assert gsft_matrix_from_json(obj) == A_EXAMPLE


def test_one_orbit_of_loops():
    # |G| disjoint loops forming a single free orbit present the matrix [[e]]
    g = MarkedGGraph(Z3, 1, NonnegMatrix.identity(3), ((0, 0),))
    a = mark_and_relabel(g)
    assert a.entries == ((frozenset({0}),),)
