"""Group-ring matrices with {0,1} coefficients, the bar/hat transforms
between them and G-invariant boolean block matrices, marked G-graphs, and
equivariant triangle equations.

bar sends A over the {0,1}-coefficient part of ZG to the boolean matrix
indexed by (symbol, group element) pairs with bar(A)[(k,g),(l,h)] = 1 iff
g^{-1}h lies in A[k,l]; hat is its inverse on G-invariant matrices.  Both
are multiplicative, which reduces equivariant triangle equations to the
boolean ones.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    GStarOverflowError,
    InvalidEdgeError,
    InvalidMatrixError,
    VerificationError,
)
from .groups import FiniteGroup, group_from_json, group_to_json
from .matrices import NonnegMatrix, matrix_from_json, matrix_to_json


class GroupRingMatrix:
    """A matrix over ZG with all coefficients in {0,1} (entries as subsets of G)."""

    __slots__ = ("group", "rows", "cols", "entries", "_hash")

    def __init__(self, group: FiniteGroup, entries: Iterable[Iterable[Iterable[int]]]):
        self.group = group
        ent = tuple(tuple(frozenset(cell) for cell in row) for row in entries)
        if not ent or not ent[0]:
            raise InvalidMatrixError("matrix must have at least one row and column")
        cols = len(ent[0])
        for row in ent:
            if len(row) != cols:
                raise InvalidMatrixError("ragged rows")
            for cell in row:
                for g in cell:
                    if not (0 <= g < group.order):
                        raise InvalidMatrixError(f"element index {g} out of range")
        self.entries = ent
        self.rows = len(ent)
        self.cols = cols
        self._hash = hash((group, ent))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other):
        if not isinstance(other, GroupRingMatrix):
            return NotImplemented
        return self.group == other.group and self.entries == other.entries

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"GroupRingMatrix({self.rows}x{self.cols} over {self.group!r})"


def mul_zg(a: GroupRingMatrix, b: GroupRingMatrix) -> list[list[Counter]]:
    """Exact product over ZG as per-cell coefficient counters."""
    if a.group != b.group or a.cols != b.rows:
        raise InvalidMatrixError("group-ring product shape/group mismatch")
    op = a.group.op
    out = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            c: Counter = Counter()
            for k in range(a.cols):
                for g in a.entries[i][k]:
                    for h in b.entries[k][j]:
                        c[op(g, h)] += 1
            row.append(c)
        out.append(row)
    return out


def mul_gstar(a: GroupRingMatrix, b: GroupRingMatrix) -> GroupRingMatrix:
    """Product inside G*, raising GStarOverflowError on a coefficient >= 2."""
    prod = mul_zg(a, b)
    ent = []
    for i, row in enumerate(prod):
        out_row = []
        for j, c in enumerate(row):
            bad = [g for g, v in c.items() if v >= 2]
            if bad:
                raise GStarOverflowError(
                    f"coefficient >= 2 at cell ({i + 1},{j + 1}), elements "
                    f"{[a.group.names[g] for g in bad]}"
                )
            out_row.append(frozenset(c))
        ent.append(out_row)
    return GroupRingMatrix(a.group, ent)


def product_in_gstar(a: GroupRingMatrix, b: GroupRingMatrix) -> bool:
    prod = mul_zg(a, b)
    return all(v <= 1 for row in prod for c in row for v in c.values())


def bar(a: GroupRingMatrix) -> NonnegMatrix:
    """The boolean block matrix of a; blocks by symbol, order by the group."""
    g = a.group
    ng = g.order
    masks = []
    for k in range(a.rows):
        for gi in range(ng):
            m = 0
            for l in range(a.cols):
                base = l * ng
                for c in a.entries[k][l]:
                    m |= 1 << (base + g.op(gi, c))
            masks.append(m)
    return NonnegMatrix.from_bool_rows(a.cols * ng, masks)


def hat(e: NonnegMatrix, group: FiniteGroup, shape: tuple[int, int]) -> GroupRingMatrix:
    """Inverse of bar; input must be G-invariant, violations are reported."""
    m, n = shape
    ng = group.order
    if not e.is_boolean:
        raise InvalidMatrixError("hat needs a {0,1} matrix")
    if e.rows != m * ng or e.cols != n * ng:
        raise InvalidMatrixError(
            f"shape {e.rows}x{e.cols} does not match {m}x{n} blocks of size {ng}"
        )
    for k in range(m):
        for l in range(n):
            for g in range(ng):
                for h in range(ng):
                    if e.entry(k * ng, l * ng + h) != e.entry(
                        k * ng + g, l * ng + group.op(g, h)
                    ):
                        raise InvalidMatrixError(
                            "not G-invariant at symbols "
                            f"(k={k + 1}, l={l + 1}, g={group.names[g]}, h={group.names[h]})"
                        )
    ent = [
        [
            frozenset(
                h for h in range(ng) if e.entry(k * ng, l * ng + h)
            )
            for l in range(n)
        ]
        for k in range(m)
    ]
    return GroupRingMatrix(group, ent)


@dataclass(frozen=True)
class MarkedGGraph:
    """A graph on {1..n} x G with the free action g(k,h) = (k,gh), one
    marked vertex per orbit and a total order on the marks."""

    group: FiniteGroup
    n_orbits: int
    adjacency: NonnegMatrix  # indexed by k*|G| + g
    marks: tuple[tuple[int, int], ...]  # (orbit, group element) per orbit, ordered

    def __post_init__(self):
        ng = self.group.order
        n = self.n_orbits * ng
        if self.adjacency.rows != n or self.adjacency.cols != n:
            raise InvalidMatrixError("adjacency shape does not match orbits x |G|")
        if not self.adjacency.is_boolean:
            raise InvalidMatrixError("adjacency must be {0,1} (no parallel edges)")
        seen = set()
        for orbit, g in self.marks:
            if not (0 <= orbit < self.n_orbits and 0 <= g < ng):
                raise InvalidMatrixError("mark out of range")
            seen.add(orbit)
        if len(self.marks) != self.n_orbits or len(seen) != self.n_orbits:
            raise InvalidMatrixError("need exactly one mark per orbit")
        adj = self.adjacency
        op = self.group.op
        for k in range(self.n_orbits):
            for l in range(self.n_orbits):
                for g in range(ng):
                    for h in range(ng):
                        for f in range(ng):
                            if adj.entry(k * ng + g, l * ng + h) != adj.entry(
                                k * ng + op(f, g), l * ng + op(f, h)
                            ):
                                raise InvalidMatrixError(
                                    "adjacency is not G-invariant"
                                )
        cols = adj.transpose()
        for i in range(n):
            if not adj.row_mask(i) or not cols.row_mask(i):
                raise InvalidMatrixError("graph has a sink or a source")


def mark_and_relabel(d: MarkedGGraph) -> GroupRingMatrix:
    """The canonical matrix over G* of a marked G-graph.

    Vertex (k,h) is h·g_k^{-1} applied to the mark (k,g_k), so it is
    relabeled (rank of the mark, h·g_k^{-1}); the relabeled adjacency is
    G-invariant and hat produces the matrix.
    """
    g = d.group
    ng = g.order
    n = d.n_orbits
    relabeled = [[0] * (n * ng) for _ in range(n * ng)]
    # mark t is vertex (orbit_t, g_t); new index of (orbit_t's vertex (k,h))
    orbit_rank = {orbit: t for t, (orbit, _) in enumerate(d.marks)}
    mark_elem = {orbit: ge for (orbit, ge) in d.marks}
    for k in range(n):
        t = orbit_rank[k]
        gk_inv = g.inv(mark_elem[k])
        for h in range(ng):
            new = t * ng + g.op(h, gk_inv)
            old = k * ng + h
            for l in range(n):
                u = orbit_rank[l]
                gl_inv = g.inv(mark_elem[l])
                for h2 in range(ng):
                    relabeled[new][u * ng + g.op(h2, gl_inv)] = d.adjacency.entry(
                        old, l * ng + h2
                    )
    return hat(NonnegMatrix(relabeled), g, (n, n))


@dataclass(frozen=True)
class GsftEdge:
    """An elementary SSE over G*: a = r·s and b = s·r inside G*."""

    a: GroupRingMatrix
    b: GroupRingMatrix
    r: GroupRingMatrix
    s: GroupRingMatrix

    def __post_init__(self):
        if not (self.a.is_square and self.b.is_square):
            raise InvalidEdgeError("A and B must be square")
        if mul_gstar(self.r, self.s) != self.a:
            raise InvalidEdgeError("RS != A over ZG")
        if mul_gstar(self.s, self.r) != self.b:
            raise InvalidEdgeError("SR != B over ZG")


@dataclass(frozen=True)
class GsftTriangle:
    e1: GsftEdge
    e2: GsftEdge
    e3: GsftEdge

    def __post_init__(self):
        if self.e1.b != self.e2.a or self.e1.a != self.e3.a or self.e2.b != self.e3.b:
            raise InvalidEdgeError("triangle endpoints do not match")


def equivariant_triangle(t: GsftTriangle) -> bool:
    """The triangle equations over ZG; products leaving G* are reported
    (GStarOverflowError), distinctly from plain inequality.

    The verdict is cross-checked against the boolean triangle equations of
    the barred matrices, which must agree by multiplicativity."""
    from .elementary import check_triangle as _bool_check
    from .elementary import SSEEdge as _BoolEdge
    from .elementary import Triangle as _BoolTriangle

    verdict = (
        mul_gstar(t.e1.r, t.e2.r) == t.e3.r
        and mul_gstar(t.e2.r, t.e3.s) == t.e1.s
        and mul_gstar(t.e3.s, t.e1.r) == t.e2.s
    )
    barred = _BoolTriangle(
        _BoolEdge(bar(t.e1.a), bar(t.e1.b), bar(t.e1.r), bar(t.e1.s)),
        _BoolEdge(bar(t.e2.a), bar(t.e2.b), bar(t.e2.r), bar(t.e2.s)),
        _BoolEdge(bar(t.e3.a), bar(t.e3.b), bar(t.e3.r), bar(t.e3.s)),
    )
    if verdict != _bool_check(barred):
        raise VerificationError("group-ring and barred triangle verdicts differ")
    return verdict


# -- JSON format ------------------------------------------------------


def gsft_matrix_to_json(a: GroupRingMatrix) -> dict:
    return {
        "group": group_to_json(a.group),
        "rows": a.rows,
        "cols": a.cols,
        "entries": [
            [sorted(a.group.names[g] for g in cell) for cell in row]
            for row in a.entries
        ],
    }


def gsft_matrix_from_json(obj: dict) -> GroupRingMatrix:
    try:
        group = group_from_json(obj["group"])
        entries = [
            [[group.index(name) for name in cell] for cell in row]
            for row in obj["entries"]
        ]
    except (TypeError, KeyError) as exc:
        raise InvalidMatrixError(f"malformed group-ring matrix: {exc}") from exc
    m = GroupRingMatrix(group, entries)
    if m.rows != obj.get("rows", m.rows) or m.cols != obj.get("cols", m.cols):
        raise InvalidMatrixError("declared shape does not match entries")
    return m
