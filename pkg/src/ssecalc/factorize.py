"""Exhaustive factorization A = R·S of a {0,1} matrix into {0,1} pairs.

A factorization with inner dimension m is exactly an exact cover of the
support of A by m combinatorial rectangles (column t of R) x (row t of S):
every 1-entry covered once, no 0-entry touched.  The extra requirement
that B = S·R stays a {0,1} matrix says the rectangles pairwise share at
most one index between column sets and row sets.  The search branches on
the first uncovered 1-entry, which yields every unordered cover exactly
once; orderings of the rectangle list are emitted as separate (R, S)
pairs since they are distinct edges of the complex.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterator, Optional

from .errors import ResourceBoundError
from .matrices import NonnegMatrix, mul


def _subsets_containing(mask: int, forced: int) -> Iterator[int]:
    """All submasks of mask that contain the forced bits."""
    rest = mask & ~forced
    sub = rest
    while True:
        yield sub | forced
        if sub == 0:
            return
        sub = (sub - 1) & rest


def _covers(support: list[int], n: int, m: int, cap: Optional[int]) -> list[list[tuple[int, int]]]:
    """All unordered exact covers of the support by exactly m rectangles.

    Rectangles are (row_set_mask, col_set_mask) pairs, pairwise compatible
    in the sense |cols(t) ∩ rows(u)| <= 1 (ordered, both ways).
    """
    out: list[list[tuple[int, int]]] = []
    rect_stack: list[tuple[int, int]] = []

    def first_uncovered(rows: list[int]) -> tuple[int, int]:
        for i in range(n):
            if rows[i]:
                return i, (rows[i] & -rows[i]).bit_length() - 1
        return -1, -1

    def compatible(rho: int, gamma: int) -> bool:
        for rho2, gamma2 in rect_stack:
            if (gamma & rho2).bit_count() > 1 or (gamma2 & rho).bit_count() > 1:
                return False
        return (gamma & rho).bit_count() <= 1

    def rec(rows: list[int], used: int):
        i, j = first_uncovered(rows)
        if i < 0:
            if used == m:
                out.append(list(rect_stack))
                if cap is not None and len(out) > cap:
                    raise ResourceBoundError(
                        f"more than {cap} factorizations; raise the cap to enumerate"
                    )
            return
        if used == m:
            return
        for gamma in _subsets_containing(rows[i], 1 << j):
            rho_cand = 0
            for i2 in range(n):
                if gamma & ~rows[i2] == 0:
                    rho_cand |= 1 << i2
            for rho in _subsets_containing(rho_cand, 1 << i):
                if not compatible(rho, gamma):
                    continue
                new_rows = rows[:]
                r = rho
                while r:
                    k = (r & -r).bit_length() - 1
                    r &= r - 1
                    new_rows[k] &= ~gamma
                rect_stack.append((rho, gamma))
                rec(new_rows, used + 1)
                rect_stack.pop()

    rec(list(support), 0)
    return out


def factorizations_general(
    a: NonnegMatrix,
    inner: int,
    max_results: Optional[int] = None,
) -> list[tuple[NonnegMatrix, NonnegMatrix, NonnegMatrix]]:
    """Experimental: nondegenerate factorizations over the nonnegative
    integers, entries above 1 allowed.  Enumerates candidate R matrices
    entry by entry, then solves the columns of S exactly; exponential and
    meant for very small inputs only."""
    if not a.is_square:
        raise ValueError("factorization search needs a square matrix")
    n = a.rows
    row_caps = [max(a.row_list(i)) for i in range(n)]
    out: list[tuple[NonnegMatrix, NonnegMatrix, NonnegMatrix]] = []

    def r_candidates(i: int, row: list[int], rows: list[list[int]]):
        if i == n:
            for k in range(inner):
                if all(r[k] == 0 for r in rows):
                    return
            solve_s([list(r) for r in rows])
            return
        if len(row) == inner:
            rows.append(list(row))
            r_candidates(i + 1, [], rows)
            rows.pop()
            return
        for v in range(row_caps[i] + 1):
            row.append(v)
            r_candidates(i, row, rows)
            row.pop()

    def solve_s(r_rows: list[list[int]]):
        cols: list[list[int]] = []

        def fill(j: int, scol: list[int], remaining: list[int]):
            if len(scol) == inner:
                if all(v == 0 for v in remaining):
                    cols.append(list(scol))
                return
            k = len(scol)
            cap = min(
                (remaining[i] // r_rows[i][k] for i in range(n) if r_rows[i][k]),
                default=max(remaining, default=0),
            )
            for v in range(cap + 1):
                scol.append(v)
                fill(j, scol, [remaining[i] - v * r_rows[i][k] for i in range(n)])
                scol.pop()

        per_col: list[list[list[int]]] = []
        for j in range(n):
            cols = []
            fill(j, [], [a.entry(i, j) for i in range(n)])
            if not cols:
                return
            per_col.append(cols)

        def assemble(j: int, chosen: list[list[int]]):
            if j == n:
                s_entries = [
                    [chosen[jj][k] for jj in range(n)] for k in range(inner)
                ]
                if any(all(v == 0 for v in srow) for srow in s_entries):
                    return
                r = NonnegMatrix(r_rows)
                s = NonnegMatrix(s_entries)
                out.append((r, s, mul(s, r)))
                if max_results is not None and len(out) > max_results:
                    raise ResourceBoundError(
                        f"more than {max_results} general factorizations"
                    )
                return
            for c in per_col[j]:
                chosen.append(c)
                assemble(j + 1, chosen)
                chosen.pop()

        assemble(0, [])

    r_candidates(0, [], [])
    return out


def factorizations(
    a: NonnegMatrix,
    inner: int,
    ordered: bool = True,
    max_results: Optional[int] = None,
) -> list[tuple[NonnegMatrix, NonnegMatrix, NonnegMatrix]]:
    """All (R, S, B) with A = RS, B = SR, everything {0,1}.

    With ordered=True every ordering of the inner index set is emitted;
    max_results caps the output (ResourceBoundError when exceeded, no
    silent truncation).
    """
    if not a.is_boolean or not a.is_square:
        raise ValueError("factorization search needs a square {0,1} matrix")
    n = a.rows
    support = a.support_rows()
    covers = _covers(support, n, inner, max_results)
    out = []
    for cover in covers:
        seqs = permutations(cover) if ordered else (tuple(cover),)
        for seq in seqs:
            r_masks = [0] * n
            s_masks = []
            for t, (rho, gamma) in enumerate(seq):
                s_masks.append(gamma)
                rr = rho
                while rr:
                    k = (rr & -rr).bit_length() - 1
                    rr &= rr - 1
                    r_masks[k] |= 1 << t
            r = NonnegMatrix.from_bool_rows(inner, r_masks)
            s = NonnegMatrix.from_bool_rows(n, s_masks)
            b_masks = []
            for rho, gamma in seq:
                row = 0
                for u, (rho2, _g2) in enumerate(seq):
                    inter = gamma & rho2
                    if inter:
                        row |= 1 << u
                b_masks.append(row)
            b = NonnegMatrix.from_bool_rows(inner, b_masks)
            out.append((r, s, b))
            if max_results is not None and len(out) > max_results:
                raise ResourceBoundError(
                    f"more than {max_results} ordered factorizations"
                )
    return out
