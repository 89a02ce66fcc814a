import random
from itertools import product

import pytest

from ssecalc.codes import compose, equal_codes, identity_code, is_elementary, normalize, shift_code
from ssecalc.elementary import (
    SSEEdge,
    Triangle,
    check_triangle,
    code_from_edge,
    edge_from_code,
    edge_from_json,
    edge_to_json,
)
from ssecalc.errors import InvalidEdgeError, NotElementaryError
from ssecalc.factorize import factorizations
from ssecalc.matrices import NonnegMatrix, is_nondegenerate, mul
from ssecalc.sampling import edge_pool, random_edge
from ssecalc.shifts import VertexShift, higher_block

GM = NonnegMatrix([[1, 1], [1, 0]])
I2 = NonnegMatrix.identity(2)


def test_edge_validation():
    with pytest.raises(InvalidEdgeError):
        SSEEdge(GM, GM, I2, I2)  # I·I != GM
    with pytest.raises(InvalidEdgeError):
        SSEEdge(GM, GM, NonnegMatrix([[1, 0], [1, 0]]), GM)


def test_identity_edge_gives_identity_code():
    e = SSEEdge(GM, GM, I2, GM)
    f = code_from_edge(e)
    assert equal_codes(f, identity_code(VertexShift(GM)))


def test_shift_edge_gives_sigma():
    e = SSEEdge(GM, GM, GM, I2)
    f = code_from_edge(e)
    assert equal_codes(f, shift_code(VertexShift(GM), 1))


def test_higher_block_edge_matches_higher_block_code():
    x = VertexShift(GM)
    y, hb = higher_block(x, 2)
    r = NonnegMatrix([[1, 1, 0], [0, 0, 1]])
    s = NonnegMatrix([[1, 0], [0, 1], [1, 0]])
    e = SSEEdge(GM, y.matrix, r, s)
    assert equal_codes(code_from_edge(e), hb)


def test_edge_from_identity_and_shift():
    x = VertexShift(GM)
    e_id = edge_from_code(identity_code(x))
    assert (e_id.r, e_id.s) == (I2, GM)
    e_sh = edge_from_code(shift_code(x, 1))
    assert (e_sh.r, e_sh.s) == (GM, I2)


def test_edge_from_code_rejects_wide_codes():
    x = VertexShift(GM)
    with pytest.raises(NotElementaryError):
        edge_from_code(compose(shift_code(x, 1), shift_code(x, 1)))


def brute_force_edges(a, inner):
    """All (R,S) by direct enumeration of every {0,1} pair."""
    n = a.rows
    out = []
    for rbits in product((0, 1), repeat=n * inner):
        r = NonnegMatrix([list(rbits[i * inner : (i + 1) * inner]) for i in range(n)])
        if not is_nondegenerate(r):
            continue
        for sbits in product((0, 1), repeat=inner * n):
            s = NonnegMatrix([list(sbits[i * n : (i + 1) * n]) for i in range(inner)])
            if not is_nondegenerate(s):
                continue
            if mul(r, s) != a:
                continue
            b = mul(s, r)
            if not b.is_boolean or not is_nondegenerate(b):
                continue
            out.append((r, s, b))
    return out


def test_factorizations_match_brute_force():
    rng = random.Random(0)
    mats = [GM, NonnegMatrix([[1, 1], [1, 1]]), NonnegMatrix([[1]])]
    for _ in range(10):
        n = rng.randint(1, 3)
        while True:
            m = NonnegMatrix([[rng.randint(0, 1) for _ in range(n)] for _ in range(n)])
            if is_nondegenerate(m):
                mats.append(m)
                break
    for a in mats:
        for inner in (1, 2, 3):
            got = {(r, s) for r, s, _b in factorizations(a, inner)}
            want = {(r, s) for r, s, _b in brute_force_edges(a, inner)}
            assert got == want, (a.to_lists(), inner)


def test_roundtrip_on_all_small_edges():
    for a in (GM, NonnegMatrix([[1, 1], [1, 1]])):
        for e in edge_pool(a, 3):
            f = code_from_edge(e, verify=True)
            assert is_elementary(f)
            assert edge_from_code(f) == e


def test_local_rules():
    rng = random.Random(1)
    for _ in range(30):
        n = rng.randint(2, 4)
        while True:
            a = NonnegMatrix([[rng.randint(0, 1) for _ in range(n)] for _ in range(n)])
            if is_nondegenerate(a) and edge_pool(a, n):
                break
        e = random_edge(rng, a, n)
        f = code_from_edge(e, verify=False)
        x, y = f.domain, f.codomain
        ftab = normalize(f).table_at(0, 1)
        for (s0, s1), b in ftab.items():
            assert e.r.entry(s0, b) * e.s.entry(b, s1) == 1
            others = [c for c in range(y.alphabet_size) if c != b]
            assert all(e.r.entry(s0, c) * e.s.entry(c, s1) == 0 for c in others)
        gtab = normalize(f.inverse).table_at(-1, 0)
        for (t0, t1), a_sym in gtab.items():
            assert e.s.entry(t0, a_sym) * e.r.entry(a_sym, t1) == 1


def test_check_triangle_identity():
    e = SSEEdge(GM, GM, I2, GM)
    assert check_triangle(Triangle(e, e, e))


def test_check_triangle_perturbed():
    e_id = SSEEdge(GM, GM, I2, GM)
    e_sh = SSEEdge(GM, GM, GM, I2)
    assert not check_triangle(Triangle(e_id, e_id, e_sh))


def _random_true_triangle(rng, max_tries=2000):
    """A triangle built from a composable pair whose composite is elementary."""
    for _ in range(max_tries):
        n = rng.randint(2, 4)
        a = NonnegMatrix([[rng.randint(0, 1) for _ in range(n)] for _ in range(n)])
        if not is_nondegenerate(a) or not edge_pool(a, 4):
            continue
        e1 = random_edge(rng, a, 4)
        if not edge_pool(e1.b, 4):
            continue
        e2 = random_edge(rng, e1.b, 4)
        f1 = code_from_edge(e1, verify=False)
        f2 = code_from_edge(e2, verify=False)
        comp = compose(f2, f1)
        if not is_elementary(comp):
            continue
        e3 = edge_from_code(comp)
        return Triangle(e1, e2, e3), f1, f2, comp
    raise AssertionError("could not sample a commuting triangle")


def test_triangle_equations_iff_commutation():
    rng = random.Random(2)
    for _ in range(25):
        t, f1, f2, comp = _random_true_triangle(rng)
        assert check_triangle(t)
        assert equal_codes(compose(code_from_edge(t.e2), code_from_edge(t.e1)), code_from_edge(t.e3))
        # replace e3 by a different valid edge: equations must fail
        others = [
            SSEEdge(t.e3.a, t.e3.b, r, s)
            for r, s, b in factorizations(t.e3.a, t.e3.b.rows, max_results=3000)
            if b == t.e3.b and (r, s) != (t.e3.r, t.e3.s)
        ]
        if others:
            bad = Triangle(t.e1, t.e2, rng.choice(others))
            assert not check_triangle(bad)
            assert not equal_codes(
                compose(code_from_edge(bad.e2), code_from_edge(bad.e1)),
                code_from_edge(bad.e3),
            )


def test_edge_json_roundtrip():
    e = SSEEdge(GM, GM, GM, I2)
    assert edge_from_json(edge_to_json(e)) == e
