"""Sliding block codes between vertex shifts.

A code is a local rule on an interval window [left, right]; the value at
coordinate i of the image depends on the coordinates i+left .. i+right of
the input.  Tables are stored only on allowed words; querying a forbidden
word raises.  Equality of codes as functions is decided on canonical
normal forms: shrink the window from both ends as far as possible, then
slide it toward the origin where the shift's structure permits (this is
what makes e.g. powers of the shift map on a cycle compare equal to the
alphabet permutation they are).
"""

from __future__ import annotations

from typing import Mapping, Optional, Sequence

from .errors import (
    InvalidCodeError,
    MissingInverseError,
    ShiftMismatchError,
)
from .matrices import NonnegMatrix, matrix_from_json, matrix_to_json
from .shifts import VertexShift


class BlockCode:
    """A sliding block map given by a total table on allowed window words."""

    __slots__ = ("domain", "codomain", "left", "right", "table", "_inverse", "_hash")

    def __init__(
        self,
        domain: VertexShift,
        codomain: VertexShift,
        left: int,
        right: int,
        table: Mapping[tuple[int, ...], int],
        inverse: Optional["BlockCode"] = None,
        unchecked: bool = False,
    ):
        if left > right:
            raise InvalidCodeError("window left must be <= right")
        self.domain = domain
        self.codomain = codomain
        self.left = left
        self.right = right
        self.table = dict(table)
        self._inverse = None
        self._hash = None
        if not unchecked:
            self._validate()
        if inverse is not None:
            link_inverses(self, inverse)

    def _validate(self):
        width = self.width
        words = self.domain.words(width)
        if set(self.table) != set(words):
            missing = set(words) - set(self.table)
            extra = set(self.table) - set(words)
            raise InvalidCodeError(
                f"table must be total on allowed {width}-words "
                f"(missing {len(missing)}, extra {len(extra)})"
            )
        n_out = self.codomain.alphabet_size
        for w, v in self.table.items():
            if not (0 <= v < n_out):
                raise InvalidCodeError(f"table value {v} outside codomain alphabet")
        # adjacent image symbols must be codomain-allowed; by induction this
        # makes image words of every length allowed
        for w in self.domain.words(width + 1):
            if not self.codomain.has_edge(self.table[w[:-1]], self.table[w[1:]]):
                raise InvalidCodeError(f"image of word {w} leaves the codomain shift")

    # -- basic queries --------------------------------------------------

    @property
    def width(self) -> int:
        return self.right - self.left + 1

    @property
    def window(self) -> tuple[int, int]:
        return (self.left, self.right)

    @property
    def inverse(self) -> "BlockCode":
        if self._inverse is None:
            raise MissingInverseError("code has no stored inverse")
        return self._inverse

    @property
    def has_inverse(self) -> bool:
        return self._inverse is not None

    def apply_word(self, word: Sequence[int]) -> tuple[int, ...]:
        """Image of a finite allowed word; shorter by width-1."""
        w = tuple(word)
        width = self.width
        if len(w) < width:
            raise InvalidCodeError("word shorter than the window")
        n = self.domain.alphabet_size
        if not all(0 <= a < n for a in w) or not all(
            self.domain.has_edge(w[i], w[i + 1]) for i in range(len(w) - 1)
        ):
            raise InvalidCodeError(f"forbidden word {w}")
        try:
            return tuple(self.table[w[i : i + width]] for i in range(len(w) - width + 1))
        except KeyError as exc:
            raise InvalidCodeError(f"forbidden word {exc.args[0]}") from exc

    def table_at(self, left: int, right: int) -> dict[tuple[int, ...], int]:
        """The same local rule expressed on a larger window."""
        if left > self.left or right < self.right:
            raise InvalidCodeError("can only widen the window")
        off = self.left - left
        width = self.width
        return {
            w: self.table[w[off : off + width]]
            for w in self.domain.words(right - left + 1)
        }

    def __eq__(self, other) -> bool:
        if not isinstance(other, BlockCode):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and self.left == other.left
            and self.right == other.right
            and self.table == other.table
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(
                (
                    self.domain,
                    self.codomain,
                    self.left,
                    self.right,
                    tuple(sorted(self.table.items())),
                )
            )
        return self._hash

    def __repr__(self) -> str:
        return (
            f"BlockCode({self.domain.alphabet_size}->{self.codomain.alphabet_size} "
            f"symbols, window [{self.left},{self.right}])"
        )


def link_inverses(f: BlockCode, g: BlockCode) -> None:
    """Pair two codes as mutual inverses (no verification here)."""
    if f.domain != g.codomain or f.codomain != g.domain:
        raise ShiftMismatchError("inverse endpoints do not match")
    f._inverse = g
    g._inverse = f


def identity_code(x: VertexShift) -> BlockCode:
    f = BlockCode(x, x, 0, 0, {(a,): a for a in range(x.alphabet_size)}, unchecked=True)
    f._inverse = f
    return f


def shift_code(x: VertexShift, g: int) -> BlockCode:
    """The shift map tau_g (value at i reads coordinate i+g) as a code."""
    if g not in (1, -1):
        raise InvalidCodeError("shift exponent must be +1 or -1")
    table = {(a,): a for a in range(x.alphabet_size)}
    fwd = BlockCode(x, x, g, g, table, unchecked=True)
    back = BlockCode(x, x, -g, -g, dict(table), unchecked=True)
    link_inverses(fwd, back)
    return fwd


def _compose_raw(g: BlockCode, f: BlockCode) -> BlockCode:
    if f.codomain != g.domain:
        raise ShiftMismatchError("compose: f.codomain != g.domain")
    width = f.width + g.width - 1
    ftab = f.table
    gtab = g.table
    fw = f.width
    gw = g.width
    table = {}
    for w in f.domain.words(width):
        mid = tuple(ftab[w[i : i + fw]] for i in range(gw))
        table[w] = gtab[mid]
    return BlockCode(
        f.domain, g.codomain, f.left + g.left, f.right + g.right, table, unchecked=True
    )


def compose(g: BlockCode, f: BlockCode) -> BlockCode:
    """The sliding block code g∘f; windows add componentwise."""
    out = _compose_raw(g, f)
    if f._inverse is not None and g._inverse is not None:
        inv = _compose_raw(f._inverse, g._inverse)
        link_inverses(out, inv)
    return out


def _try_drop_right(f: BlockCode):
    words = f.domain.words(f.width - 1)
    succ = f.domain.succ
    tab = f.table
    new = {}
    for u in words:
        it = iter(succ(u[-1]))
        v0 = tab[u + (next(it),)]
        for a in it:
            if tab[u + (a,)] != v0:
                return None
        new[u] = v0
    return new


def _try_drop_left(f: BlockCode):
    words = f.domain.words(f.width - 1)
    pred = f.domain.pred
    tab = f.table
    new = {}
    for u in words:
        it = iter(pred(u[0]))
        v0 = tab[(next(it),) + u]
        for a in it:
            if tab[(a,) + u] != v0:
                return None
        new[u] = v0
    return new


def _try_slide_left(f: BlockCode):
    # express the rule on the window shifted one step toward -infinity
    words = f.domain.words(f.width)
    succ = f.domain.succ
    tab = f.table
    new = {}
    for v in words:
        core = v[1:]
        it = iter(succ(v[-1]))
        v0 = tab[core + (next(it),)]
        for a in it:
            if tab[core + (a,)] != v0:
                return None
        new[v] = v0
    return new


def _try_slide_right(f: BlockCode):
    words = f.domain.words(f.width)
    pred = f.domain.pred
    tab = f.table
    new = {}
    for v in words:
        core = v[:-1]
        it = iter(pred(v[0]))
        v0 = tab[(next(it),) + core]
        for a in it:
            if tab[(a,) + core] != v0:
                return None
        new[v] = v0
    return new


def _normalize_data(f: BlockCode) -> BlockCode:
    cur = f
    while cur.width > 1:
        new = _try_drop_right(cur)
        if new is None:
            break
        cur = BlockCode(cur.domain, cur.codomain, cur.left, cur.right - 1, new, unchecked=True)
    while cur.width > 1:
        new = _try_drop_left(cur)
        if new is None:
            break
        cur = BlockCode(cur.domain, cur.codomain, cur.left + 1, cur.right, new, unchecked=True)
    while cur.left > 0:
        new = _try_slide_left(cur)
        if new is None:
            break
        cur = BlockCode(cur.domain, cur.codomain, cur.left - 1, cur.right - 1, new, unchecked=True)
    while cur.right < 0:
        new = _try_slide_right(cur)
        if new is None:
            break
        cur = BlockCode(cur.domain, cur.codomain, cur.left + 1, cur.right + 1, new, unchecked=True)
    return cur


def normalize(f: BlockCode) -> BlockCode:
    """Canonical minimal-window form; equality of normal forms is equality
    of the codes as functions."""
    out = _normalize_data(f)
    if f._inverse is None:
        return out
    inv = _normalize_data(f._inverse)
    if out is f and inv is f._inverse:
        return f
    # never relink the inputs; copy whichever side did not change
    if out is f:
        out = BlockCode(f.domain, f.codomain, f.left, f.right, f.table, unchecked=True)
    if inv is f._inverse:
        src = f._inverse
        inv = BlockCode(src.domain, src.codomain, src.left, src.right, src.table, unchecked=True)
    link_inverses(out, inv)
    return out


def is_identity(f: BlockCode) -> bool:
    g = normalize(f)
    return (
        g.domain == g.codomain
        and g.window == (0, 0)
        and all(g.table[(a,)] == a for a in range(g.domain.alphabet_size))
    )


def verify_inverse(f: BlockCode, g: BlockCode) -> bool:
    """True iff both compositions normalize to identity codes."""
    if f.domain != g.codomain or f.codomain != g.domain:
        return False
    return is_identity(_compose_raw(g, f)) and is_identity(_compose_raw(f, g))


def equal_codes(f: BlockCode, g: BlockCode) -> bool:
    return normalize(f) == normalize(g)


def is_alphabet_bijection(f: BlockCode) -> bool:
    g = normalize(f)
    if g.window != (0, 0):
        return False
    vals = set(g.table.values())
    return len(vals) == g.domain.alphabet_size == g.codomain.alphabet_size


def is_elementary(f: BlockCode) -> bool:
    """Membership in H: window inside {0,1}, inverse window inside {-1,0}."""
    if f._inverse is None:
        raise MissingInverseError("elementarity needs a stored inverse")
    fn = normalize(f)
    gn = normalize(f._inverse)
    return fn.left >= 0 and fn.right <= 1 and gn.left >= -1 and gn.right <= 0


def is_inverse_elementary(f: BlockCode) -> bool:
    """Membership in H^{-1}: window inside {-1,0}, inverse inside {0,1}."""
    if f._inverse is None:
        raise MissingInverseError("elementarity needs a stored inverse")
    fn = normalize(f)
    gn = normalize(f._inverse)
    return fn.left >= -1 and fn.right <= 0 and gn.left >= 0 and gn.right <= 1


def relabel_codomain(f: BlockCode, perm: Sequence[int]) -> BlockCode:
    """Compose f with the alphabet bijection old -> perm[old] of its codomain.

    Returns beta∘f onto the relabeled codomain shift.
    """
    n = f.codomain.alphabet_size
    if sorted(perm) != list(range(n)):
        raise InvalidCodeError("perm is not a bijection of the codomain alphabet")
    old = f.codomain.matrix
    masks = [0] * n
    for i in range(n):
        m = 0
        for j in range(n):
            if old.entry(i, j):
                m |= 1 << perm[j]
        masks[perm[i]] = m
    target = VertexShift(NonnegMatrix.from_bool_rows(n, masks))
    out = BlockCode(
        f.domain, target, f.left, f.right,
        {w: perm[v] for w, v in f.table.items()}, unchecked=True,
    )
    if f._inverse is not None:
        g = f._inverse
        inv = BlockCode(
            target, g.codomain, g.left, g.right,
            {tuple(perm[a] for a in w): v for w, v in g.table.items()},
            unchecked=True,
        )
        link_inverses(out, inv)
    return out


def bijection_code(x: VertexShift, perm: Sequence[int]) -> BlockCode:
    """The alphabet bijection a -> perm[a] from x onto the relabeled shift."""
    return relabel_codomain(identity_code(x), perm)


# -- JSON format ------------------------------------------------------


def code_to_json(f: BlockCode, include_inverse: bool = True) -> dict:
    out = {
        "domain": matrix_to_json(f.domain.matrix),
        "codomain": matrix_to_json(f.codomain.matrix),
        "window": [f.left, f.right],
        "table": [
            [[a + 1 for a in w], v + 1] for w, v in sorted(f.table.items())
        ],
    }
    if include_inverse and f._inverse is not None:
        out["inverse"] = code_to_json(f._inverse, include_inverse=False)
    return out


def code_from_json(obj: dict) -> BlockCode:
    try:
        domain = VertexShift(matrix_from_json(obj["domain"]))
        codomain = VertexShift(matrix_from_json(obj["codomain"]))
        left, right = obj["window"]
        table = {
            tuple(a - 1 for a in w): v - 1 for w, v in (tuple(e) for e in obj["table"])
        }
    except (TypeError, KeyError, ValueError) as exc:
        raise InvalidCodeError(f"malformed block code object: {exc}") from exc
    f = BlockCode(domain, codomain, left, right, table)
    if "inverse" in obj:
        g = code_from_json(obj["inverse"])
        link_inverses(f, g)
    return f
