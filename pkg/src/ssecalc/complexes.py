"""Paths in the complex of strong shift equivalences and their calculus:
composition, homotopy decision, and bounded neighborhood exploration.

Two paths with the same endpoints are homotopic exactly when their signed
compositions agree as block codes, so homotopy is decided by composing
and comparing normal forms.  explore materializes the depth-bounded
2-skeleton around a matrix by exhaustive factorization search.
"""

from __future__ import annotations

from dataclasses import dataclass

from .codes import BlockCode, compose, identity_code, normalize
from .elementary import (
    SSEEdge,
    Triangle,
    check_triangle,
    code_from_edge,
    edge_from_json,
    edge_to_json,
)
from .errors import InvalidEdgeError, ResourceBoundError
from .factorize import factorizations, factorizations_general
from .matrices import NonnegMatrix, matrix_from_json, matrix_to_json
from .shifts import VertexShift


@dataclass(frozen=True)
class SSEPath:
    """A word of signed edges with chained endpoints, based at a matrix."""

    base: NonnegMatrix
    steps: tuple[tuple[SSEEdge, int], ...]

    def __post_init__(self):
        cur = self.base
        for i, (edge, sign) in enumerate(self.steps):
            if sign not in (1, -1):
                raise InvalidEdgeError(f"step {i}: sign must be +1 or -1")
            src = edge.a if sign == 1 else edge.b
            if src != cur:
                raise InvalidEdgeError(f"step {i}: source does not chain")
            cur = edge.b if sign == 1 else edge.a

    @property
    def end(self) -> NonnegMatrix:
        cur = self.base
        for edge, sign in self.steps:
            cur = edge.b if sign == 1 else edge.a
        return cur

    @property
    def is_loop(self) -> bool:
        return self.end == self.base

    def concat(self, other: "SSEPath") -> "SSEPath":
        if other.base != self.end:
            raise InvalidEdgeError("concatenation endpoints do not match")
        return SSEPath(self.base, self.steps + other.steps)

    def reversed(self) -> "SSEPath":
        return SSEPath(
            self.end, tuple((e, -s) for e, s in reversed(self.steps))
        )


def compose_path(p: SSEPath) -> BlockCode:
    """The conjugacy phi_n^{e_n} ∘ ... ∘ phi_1^{e_1} of the path, normalized."""
    cur = identity_code(VertexShift(p.base))
    for edge, sign in p.steps:
        c = code_from_edge(edge, verify=False)
        step_code = c if sign == 1 else c.inverse
        cur = normalize(compose(step_code, cur))
    return cur


def homotopic(p: SSEPath, q: SSEPath) -> bool:
    """Paths with equal endpoints are homotopic iff their compositions agree."""
    if p.base != q.base or p.end != q.end:
        raise InvalidEdgeError("homotopy needs equal endpoints")
    return compose_path(p) == compose_path(q)


def automorphism_from_loop(p: SSEPath) -> BlockCode:
    if not p.is_loop:
        raise InvalidEdgeError("path is not a loop")
    return compose_path(p)


@dataclass
class ComplexFragment:
    """A finite piece of the SSE complex around a base matrix."""

    vertices: list[NonnegMatrix]
    edges: list[SSEEdge]
    triangles: list[Triangle]
    depth: int
    max_inner: int


def explore(
    a: NonnegMatrix,
    max_inner: int,
    depth: int = 1,
    max_size: int = 6,
    max_edges: int = 20000,
    experimental_counts: bool = False,
) -> ComplexFragment:
    """All edges within depth rounds of factorization search from a.

    Every edge (R,S): V -> W found is recorded together with its reverse
    (S,R): W -> V; triangles are all triples of recorded edges passing the
    triangle equations.  Caps raise ResourceBoundError, they never
    silently truncate.

    experimental_counts switches to the much slower search over all
    nonnegative integer entries (matrices over Z>=0 instead of {0,1});
    the fragment then holds degenerate-flavoured edges and triangles.
    """
    if a.rows > max_size:
        raise ResourceBoundError(f"matrix size {a.rows} exceeds cap {max_size}")
    if experimental_counts:
        from .degenerate import DegSSEEdge, DegTriangle, check_deg_triangle

        def search(v, m):
            return factorizations_general(v, m, max_results=max_edges)

        make_edge, make_triangle, check = DegSSEEdge, DegTriangle, check_deg_triangle
    else:
        if not a.is_boolean:
            raise ResourceBoundError(
                "entries above 1 need the experimental_counts flag"
            )

        def search(v, m):
            return factorizations(v, m, max_results=max_edges)

        make_edge, make_triangle, check = SSEEdge, Triangle, check_triangle
    vertices: dict[NonnegMatrix, None] = {a: None}
    edges: dict[tuple, object] = {}
    frontier = [a]
    for _ in range(depth):
        next_frontier = []
        for v in frontier:
            if v.rows > max_size:
                continue
            for m in range(1, max_inner + 1):
                for r, s, b in search(v, m):
                    key = (v, b, r, s)
                    if key not in edges:
                        e = make_edge(v, b, r, s)
                        edges[key] = e
                        edges[(b, v, s, r)] = e.reversed()
                        if len(edges) > max_edges:
                            raise ResourceBoundError(
                                f"more than {max_edges} edges; tighten the bounds"
                            )
                    if b not in vertices:
                        vertices[b] = None
                        next_frontier.append(b)
        frontier = next_frontier
    edge_list = list(edges.values())
    by_source: dict[NonnegMatrix, list] = {}
    for e in edge_list:
        by_source.setdefault(e.a, []).append(e)
    triangles = []
    for e1 in edge_list:
        for e2 in by_source.get(e1.b, ()):
            for e3 in by_source.get(e1.a, ()):
                if e3.b != e2.b:
                    continue
                t = make_triangle(e1, e2, e3)
                if check(t):
                    triangles.append(t)
    return ComplexFragment(list(vertices), edge_list, triangles, depth, max_inner)


# -- JSON formats ------------------------------------------------------


def path_to_json(p: SSEPath) -> dict:
    return {
        "base": matrix_to_json(p.base),
        "steps": [{"edge": edge_to_json(e), "sign": s} for e, s in p.steps],
    }


def path_from_json(obj: dict) -> SSEPath:
    try:
        base = matrix_from_json(obj["base"])
        steps = tuple(
            (edge_from_json(st["edge"]), int(st["sign"])) for st in obj["steps"]
        )
    except (TypeError, KeyError, ValueError) as exc:
        raise InvalidEdgeError(f"malformed path object: {exc}") from exc
    return SSEPath(base, steps)


def fragment_to_json(f: ComplexFragment) -> dict:
    vindex = {v: i for i, v in enumerate(f.vertices)}
    edges = []
    eindex = {}
    for e in f.edges:
        eindex[(e.a, e.b, e.r, e.s)] = len(edges)
        edges.append(
            {
                "source": vindex[e.a],
                "target": vindex[e.b],
                "R": matrix_to_json(e.r),
                "S": matrix_to_json(e.s),
            }
        )
    triangles = [
        {
            "e1": eindex[(t.e1.a, t.e1.b, t.e1.r, t.e1.s)],
            "e2": eindex[(t.e2.a, t.e2.b, t.e2.r, t.e2.s)],
            "e3": eindex[(t.e3.a, t.e3.b, t.e3.r, t.e3.s)],
        }
        for t in f.triangles
    ]
    return {
        "vertices": [matrix_to_json(v) for v in f.vertices],
        "edges": edges,
        "triangles": triangles,
        "depth": f.depth,
        "max_inner": f.max_inner,
    }
