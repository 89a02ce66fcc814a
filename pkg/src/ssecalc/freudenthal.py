"""Ordered simplicial complexes, integer chains, the signed Freudenthal
subdivision of the simplex, the chain maps F and rho with their exact
identities, and the subdivision operator on complexes of conjugacies.

Chains are finitely supported integer combinations of ordered vertex
tuples; any tuple with a repeated vertex is annihilated at insertion, so
cancellation in the subdivision identities is exact by construction.
Pair vertices (v,w) with v = w are identified with the plain vertex v.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Hashable, Iterable, Optional, Sequence

from .errors import SseError


class OracleUndefinedError(SseError):
    """The refinement oracle has no value on a required pair."""


class InvalidComplexError(SseError):
    pass


class InvalidChainError(SseError):
    pass


# -- lattice geometry of the subdivision --------------------------------


def theta(i: int, j: int, n: int) -> tuple[int, ...]:
    """The lattice point with i twos, then j-i ones, then zeros."""
    if not (0 <= i <= j <= n):
        raise ValueError(f"need 0 <= i <= j <= n, got ({i},{j},{n})")
    return tuple(2 if k <= i else (1 if k <= j else 0) for k in range(1, n + 1))


def theta_inverse(point: Sequence[int]) -> tuple[int, int]:
    """Recover (i, j) from a theta point: i twos and j nonzero entries."""
    i = sum(1 for x in point if x == 2)
    j = sum(1 for x in point if x >= 1)
    if theta(i, j, len(point)) != tuple(point):
        raise ValueError(f"{point!r} is not of the 2..21..10..0 form")
    return i, j


def in_standard_simplex(point: Sequence[int]) -> bool:
    """Membership in {2 >= x_1 >= ... >= x_n >= 0}."""
    prev = 2
    for x in point:
        if x > prev or x < 0:
            return False
        prev = x
    return True


@dataclass(frozen=True)
class FreudenthalSimplex:
    """One top cell: base corner, coordinate insertion order, and sign."""

    dimension: int
    base: tuple[int, ...]
    perm: tuple[int, ...]  # 1-based coordinate indices
    vertices: tuple[tuple[int, ...], ...]
    sign: int


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j] - 1
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _det(vectors: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    from fractions import Fraction

    n = len(vectors)
    m = [[Fraction(v) for v in row] for row in vectors]
    det = Fraction(1)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] / inv
            for c in range(col, n):
                m[r][c] -= factor * m[col][c]
    assert det.denominator == 1
    return int(det)


def simplex_det_sign(vertices: Sequence[tuple[int, ...]]) -> int:
    return _det([
        [vertices[k + 1][c] - vertices[k][c] for c in range(len(vertices[0]))]
        for k in range(len(vertices) - 1)
    ])


def _subdivision_cells(n: int) -> list[FreudenthalSimplex]:
    if n == 0:
        return [FreudenthalSimplex(0, (), (), ((),), 1)]
    cells = []
    for bits in range(1 << n):
        base = tuple((bits >> k) & 1 for k in range(n))
        for perm in permutations(range(1, n + 1)):
            verts = [base]
            ok = in_standard_simplex(base)
            for p in perm:
                if not ok:
                    break
                nxt = list(verts[-1])
                nxt[p - 1] += 1
                nxt = tuple(nxt)
                if not in_standard_simplex(nxt):
                    ok = False
                    break
                verts.append(nxt)
            if ok:
                cells.append(
                    FreudenthalSimplex(n, base, perm, tuple(verts), _perm_sign(perm))
                )
    cells.sort(key=lambda c: (c.base, c.perm))
    return cells


def enumerate_subdivision(n: int) -> list[FreudenthalSimplex]:
    """All 2^n signed top cells of the subdivided n-simplex."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    return _subdivision_cells(n)


def face_map(k: int, point: Sequence[int]) -> tuple[int, ...]:
    """The k-th face inclusion: prepend 2, double coordinate k, or append 0."""
    n = len(point)
    if k == 0:
        return (2,) + tuple(point)
    if k == n + 1:
        return tuple(point) + (0,)
    if not (1 <= k <= n):
        raise ValueError(f"face index {k} out of range 0..{n + 1}")
    return tuple(point[:k]) + (point[k - 1],) + tuple(point[k:])


# -- chains -------------------------------------------------------------


class Chain:
    """A finitely supported integer combination of ordered simplices."""

    __slots__ = ("coeffs", "complex")

    def __init__(self, coeffs: Optional[dict] = None, complex: Optional["OrderedComplex"] = None):
        self.coeffs: dict[tuple, int] = {}
        self.complex = complex
        if coeffs:
            for simplex, c in coeffs.items():
                self.add(tuple(simplex), c)

    def add(self, simplex: tuple, coeff: int) -> None:
        if coeff == 0 or len(set(simplex)) != len(simplex):
            return
        new = self.coeffs.get(simplex, 0) + coeff
        if new:
            self.coeffs[simplex] = new
        else:
            self.coeffs.pop(simplex, None)

    def __add__(self, other: "Chain") -> "Chain":
        out = Chain(dict(self.coeffs), self.complex)
        for s, c in other.coeffs.items():
            out.add(s, c)
        return out

    def __sub__(self, other: "Chain") -> "Chain":
        out = Chain(dict(self.coeffs), self.complex)
        for s, c in other.coeffs.items():
            out.add(s, -c)
        return out

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"Chain({self.coeffs!r})"


def boundary(c: Chain) -> Chain:
    out = Chain(complex=c.complex)
    for simplex, coeff in c.coeffs.items():
        if len(simplex) == 1:
            continue
        for k in range(len(simplex)):
            out.add(simplex[:k] + simplex[k + 1 :], coeff * (-1) ** k)
    return out


# -- pair vertices and the maps F, rho ----------------------------------


@dataclass(frozen=True)
class PairVertex:
    """An ordered pair vertex of the subdivided complex; (v,v) never
    occurs as a PairVertex, it collapses to the plain vertex v."""

    lo: Hashable
    hi: Hashable


def make_pair(v, w):
    return v if v == w else PairVertex(v, w)


def split_pair(x):
    if isinstance(x, PairVertex):
        return x.lo, x.hi
    return x, x


def chain_f(c: Chain) -> Chain:
    """The signed Freudenthal subdivision image of a chain."""
    out = Chain(complex=None)
    for simplex, coeff in c.coeffs.items():
        m = len(simplex) - 1
        for cell in _subdivision_cells(m):
            image = tuple(
                make_pair(simplex[i], simplex[j])
                for (i, j) in (theta_inverse(p) for p in cell.vertices)
            )
            out.add(image, coeff * cell.sign)
    return out


def chain_rho(c: Chain) -> Chain:
    """The alternating cone from subdivision simplices into the mixed
    complex; degenerate output terms vanish."""
    out = Chain(complex=None)
    for simplex, coeff in c.coeffs.items():
        pairs = [split_pair(x) for x in simplex]
        for k in range(len(pairs)):
            head = tuple(a for a, _b in pairs[: k + 1])
            tail = tuple(make_pair(a, b) for a, b in pairs[k:])
            out.add(head + tail, coeff * (-1) ** k)
    return out


def flatten_to_first(c: Chain) -> Chain:
    """Project pair vertices to their first components (kills degenerates)."""
    out = Chain(complex=None)
    for simplex, coeff in c.coeffs.items():
        out.add(tuple(split_pair(x)[0] for x in simplex), coeff)
    return out


# -- ordered complexes ---------------------------------------------------


class OrderedComplex:
    """Vertices with an acyclic arrow relation and a face-closed set of
    simplices, each strictly increasing along the relation."""

    __slots__ = ("vertices", "arrows", "simplices")

    def __init__(
        self,
        vertices: Iterable[Hashable],
        arrows: Iterable[tuple[Hashable, Hashable]],
        top_simplices: Iterable[tuple],
    ):
        self.vertices = tuple(vertices)
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise InvalidComplexError("duplicate vertices")
        self.arrows = frozenset((a, b) for a, b in arrows)
        for a, b in self.arrows:
            if a not in vset or b not in vset:
                raise InvalidComplexError("arrow endpoint not a vertex")
            if a == b:
                raise InvalidComplexError("self-arrows are not allowed")
            if (b, a) in self.arrows:
                raise InvalidComplexError("arrow relation has a 2-cycle")
        self._check_acyclic()
        simplices = set()
        for top in top_simplices:
            top = tuple(top)
            for x in top:
                if x not in vset:
                    raise InvalidComplexError(f"simplex vertex {x!r} unknown")
            for i in range(len(top)):
                for j in range(i + 1, len(top)):
                    if (top[i], top[j]) not in self.arrows:
                        raise InvalidComplexError(
                            f"simplex {top!r} not increasing along the relation"
                        )
            # face closure
            for mask in range(1, 1 << len(top)):
                face = tuple(top[i] for i in range(len(top)) if (mask >> i) & 1)
                simplices.add(face)
        self.simplices = frozenset(simplices)

    def _check_acyclic(self):
        succ: dict = {}
        for a, b in self.arrows:
            succ.setdefault(a, []).append(b)
        state: dict = {}

        def visit(v):
            state[v] = 1
            for u in succ.get(v, ()):
                if state.get(u) == 1:
                    raise InvalidComplexError("arrow relation has a cycle")
                if u not in state:
                    visit(u)
            state[v] = 2

        for v in self.vertices:
            if v not in state:
                visit(v)

    def has_simplex(self, simplex: tuple) -> bool:
        return tuple(simplex) in self.simplices

    def chain(self, coeffs: dict) -> Chain:
        c = Chain(coeffs, complex=self)
        for s in c.coeffs:
            if s not in self.simplices:
                raise InvalidChainError(f"simplex {s!r} outside the complex")
        return c


# -- the subdivision operator on complexes of conjugacies ----------------


def complex_to_json(k: OrderedComplex) -> dict:
    """Vertex list, arrow list and simplex list with vertices by index;
    only complexes whose vertices are JSON values serialize."""
    index = {v: i for i, v in enumerate(k.vertices)}
    return {
        "vertices": list(k.vertices),
        "arrows": sorted([index[a], index[b]] for a, b in k.arrows),
        "simplices": sorted(
            [index[v] for v in s] for s in k.simplices
        ),
    }


def complex_from_json(obj: dict) -> OrderedComplex:
    try:
        vertices = [tuple(v) if isinstance(v, list) else v for v in obj["vertices"]]
        arrows = [(vertices[a], vertices[b]) for a, b in obj["arrows"]]
        simplices = [tuple(vertices[i] for i in s) for s in obj["simplices"]]
    except (TypeError, KeyError, IndexError) as exc:
        raise InvalidComplexError(f"malformed complex object: {exc}") from exc
    return OrderedComplex(vertices, arrows, simplices)


def chain_to_json(c: Chain, k: OrderedComplex) -> dict:
    index = {v: i for i, v in enumerate(k.vertices)}
    return {
        "complex": complex_to_json(k),
        "coefficients": sorted(
            [[index[v] for v in s], coeff] for s, coeff in c.coeffs.items()
        ),
    }


def chain_from_json(obj: dict) -> Chain:
    k = complex_from_json(obj["complex"])
    try:
        coeffs = {
            tuple(k.vertices[i] for i in s): int(coeff)
            for s, coeff in obj["coefficients"]
        }
    except (TypeError, KeyError, IndexError, ValueError) as exc:
        raise InvalidChainError(f"malformed chain object: {exc}") from exc
    return k.chain(coeffs)


@dataclass
class SubdivisionReport:
    type_one: int = 0
    type_two: int = 0
    flagged_zero_ell: int = 0
    dropped_degenerate: int = 0


def subdivision_operator(
    c: Chain,
    refine: Callable[[Hashable, Hashable], Hashable],
) -> tuple[Chain, SubdivisionReport]:
    """Apply the subdivision followed by the refinement vertex map.

    refine(u, v) realizes the induced map on pair vertices; plain
    diagonal vertices also go through refine(v, v).  Every surviving
    output simplex is verified to be of type (I) (all strict pairs,
    indices nondecreasing) or type (II) (one diagonal at position l); the
    l = 0 case is accepted and counted separately.
    """
    report = SubdivisionReport()
    out = Chain(complex=None)
    cache: dict = {}

    def refined(u, v):
        key = (u, v)
        if key not in cache:
            val = refine(u, v)
            if val is None:
                raise OracleUndefinedError(f"refinement undefined on pair {key!r}")
            cache[key] = val
        return cache[key]

    for simplex, coeff in c.coeffs.items():
        m = len(simplex) - 1
        for cell in _subdivision_cells(m):
            ij = [theta_inverse(p) for p in cell.vertices]
            image = tuple(refined(simplex[i], simplex[j]) for (i, j) in ij)
            if len(set(image)) != len(image):
                report.dropped_degenerate += 1
                continue
            diag = [k for k, (i, j) in enumerate(ij) if i == j]
            if not diag:
                report.type_one += 1
            else:
                ell = ij[diag[0]][0]
                if len(diag) != 1:
                    raise InvalidChainError("more than one diagonal vertex in a cell")
                if ell == 0:
                    report.flagged_zero_ell += 1
                report.type_two += 1
            out.add(image, coeff * cell.sign)
    return out, report
