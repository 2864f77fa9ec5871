"""d-dimensional 0-1 matrices, pattern containment and extremal functions.

``A`` contains ``B`` when there are strictly increasing maps, one per
dimension, sending every one of ``B`` to a one of ``A``. A matrix avoids a
pattern when it does not contain it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, partial
from typing import Iterable, Sequence

from .errors import BudgetExceeded, DimensionMismatch, NotSquare, ParseError, UnsupportedOrder
from .hypercore import _content_lines, _ints
from .records import ExtremalRecord, ResultCache
from .search import Problem, SearchLimits, branch_and_bound

Cell = tuple[int, ...]


@dataclass(frozen=True)
class Matrix01:
    dims: tuple[int, ...]
    ones: tuple[Cell, ...] = ()

    def __post_init__(self):
        dims = tuple(int(x) for x in self.dims)
        if not dims or any(x < 1 for x in dims):
            raise ValueError(f"side lengths must be positive, got {dims}")
        cells = sorted(tuple(int(c) for c in cell) for cell in self.ones)
        for cell in cells:
            if len(cell) != len(dims):
                raise DimensionMismatch(f"cell {cell} does not have {len(dims)} coordinates")
            if any(not 0 <= c < s for c, s in zip(cell, dims)):
                raise ValueError(f"cell {cell} outside dims {dims}")
        for a, b in zip(cells, cells[1:]):
            if a == b:
                raise ValueError(f"cell {a} listed twice")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "ones", tuple(cells))

    @property
    def d(self) -> int:
        return len(self.dims)

    @cached_property
    def one_set(self) -> frozenset[Cell]:
        return frozenset(self.ones)

    def __getitem__(self, cell: Sequence[int]) -> int:
        return int(tuple(cell) in self.one_set)

    def to_text(self) -> str:
        return format_matrix(self)

    def to_record(self) -> dict:
        return {"dims": list(self.dims), "ones": [list(c) for c in self.ones]}

    @classmethod
    def from_record(cls, rec: dict) -> Matrix01:
        return cls(tuple(rec["dims"]), tuple(tuple(c) for c in rec["ones"]))

    def grid(self) -> str:
        """0/1 rows for a two-dimensional matrix."""
        if self.d != 2:
            raise DimensionMismatch("grid rendering is for 2-dimensional matrices")
        rows, cols = self.dims
        return "\n".join("".join(str(self[i, j]) for j in range(cols)) for i in range(rows))


def from_rows(rows: Iterable[Iterable[int]]) -> Matrix01:
    rows = [list(r) for r in rows]
    ones = [(i, j) for i, r in enumerate(rows) for j, x in enumerate(r) if x]
    return Matrix01((len(rows), len(rows[0])), tuple(ones))


def all_ones(*dims: int) -> Matrix01:
    return Matrix01(tuple(dims), tuple(itertools.product(*(range(s) for s in dims))))


def identity(n: int) -> Matrix01:
    return Matrix01((n, n), tuple((i, i) for i in range(n)))


def format_matrix(M: Matrix01) -> str:
    lines = [str(M.d), " ".join(map(str, M.dims))]
    lines.extend(" ".join(map(str, c)) for c in M.ones)
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> Matrix01:
    lines = _content_lines(text)
    if len(lines) < 2:
        raise ParseError("matrix input needs a dimension line and a side-length line")
    head = _ints(lines[0], "dimension line")
    dims = _ints(lines[1], "side lengths")
    if len(head) != 1 or head[0] != len(dims):
        raise ParseError(f"dimension {lines[0]!r} does not match side lengths {lines[1]!r}")
    cells = [tuple(_ints(line, "cell line")) for line in lines[2:]]
    try:
        return Matrix01(tuple(dims), tuple(cells))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


# ---------------------------------------------------------------------------
# containment
# ---------------------------------------------------------------------------


def _search(A_ones, A_dims, B: Matrix01, pre=None) -> bool:
    """Backtrack over the ones of B, keeping one partial increasing map per
    dimension. A tentative value for an unmapped index must leave room for
    every index between it and its mapped neighbours."""
    d = B.d
    maps: list[dict[int, int]] = [dict() for _ in range(d)]
    if pre is not None:
        b, c = pre
        for i in range(d):
            if not b[i] <= c[i] <= A_dims[i] - (B.dims[i] - b[i]):
                return False
            maps[i][b[i]] = c[i]
    bones = B.ones

    def window(i, j):
        lo, hi = j, A_dims[i] - (B.dims[i] - j)
        for jj, v in maps[i].items():
            if jj < j:
                lo = max(lo, v + (j - jj))
            else:
                hi = min(hi, v - (jj - j))
        return lo, hi

    def step(p):
        if p == len(bones):
            return True
        b = bones[p]
        fixed = [maps[i].get(b[i]) for i in range(d)]
        wins = [None if fixed[i] is not None else window(i, b[i]) for i in range(d)]
        if any(w is not None and w[0] > w[1] for w in wins):
            return False
        if all(f is not None for f in fixed):
            return tuple(fixed) in A_ones and step(p + 1)
        for a in A_ones:
            ok = True
            for i in range(d):
                f = fixed[i]
                if f is not None:
                    if a[i] != f:
                        ok = False
                        break
                elif not wins[i][0] <= a[i] <= wins[i][1]:
                    ok = False
                    break
            if not ok:
                continue
            added = [i for i in range(d) if fixed[i] is None]
            for i in added:
                maps[i][b[i]] = a[i]
            if step(p + 1):
                return True
            for i in added:
                del maps[i][b[i]]
        return False

    return step(0)


def mat_contains(A: Matrix01, B: Matrix01) -> bool:
    if A.d != B.d:
        raise DimensionMismatch(f"{A.d}-dimensional matrix vs {B.d}-dimensional pattern")
    if any(b > a for a, b in zip(A.dims, B.dims)) or len(B.ones) > len(A.ones):
        return False
    return _search(A.one_set, A.dims, B)


def mat_avoids(A: Matrix01, B: Matrix01) -> bool:
    return not mat_contains(A, B)


def _contains_through(A_ones, A_dims, B: Matrix01, cell: Cell) -> bool:
    """Does A (given by its ones) contain B with some one of B mapped to cell?"""
    if any(b > a for a, b in zip(A_dims, B.dims)):
        return False
    return any(_search(A_ones, A_dims, B, pre=(b, cell)) for b in B.ones)


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def stack(P: Matrix01, t: int) -> Matrix01:
    """t copies of P stacked along a new trailing dimension."""
    if t < 1:
        raise ValueError("t must be >= 1")
    return Matrix01(P.dims + (t,), tuple(c + (j,) for c in P.ones for j in range(t)))


def lift(P: Matrix01) -> Matrix01:
    """P with a trailing singleton dimension."""
    return stack(P, 1)


# GF(4) = {0, 1, w, w+1} encoded as 0..3 with bit 1 = coefficient of w
_GF4_MUL = (
    (0, 0, 0, 0),
    (0, 1, 2, 3),
    (0, 2, 3, 1),
    (0, 3, 1, 2),
)


def _field(q: int):
    if q in (2, 3, 5):
        return (lambda a, b: (a + b) % q), (lambda a, b: (a * b) % q)
    if q == 4:
        return (lambda a, b: a ^ b), (lambda a, b: _GF4_MUL[a][b])
    raise UnsupportedOrder(f"polarity construction supports q in (2, 3, 4, 5), got {q}")


def projective_points(q: int) -> list[tuple[int, int, int]]:
    """Points of the projective plane over GF(q), first nonzero coordinate 1."""
    _field(q)
    pts = [(1, y, z) for y in range(q) for z in range(q)]
    pts += [(0, 1, z) for z in range(q)]
    pts.append((0, 0, 1))
    return pts


def polarity_construction(q: int) -> Matrix01:
    """n x n matrix, n = q^2+q+1, with a one at (x, y) iff x . y = 0.

    Two distinct points have exactly one common orthogonal point, so the
    matrix avoids the 2 x 2 all-ones pattern; each row has q+1 ones.
    """
    add, mul = _field(q)
    pts = projective_points(q)
    ones = []
    for i, x in enumerate(pts):
        for j, y in enumerate(pts):
            s = 0
            for a, b in zip(x, y):
                s = add(s, mul(a, b))
            if s == 0:
                ones.append((i, j))
    n = len(pts)
    return Matrix01((n, n), tuple(ones))


def inflate(M: Matrix01, d: int, n: int | None = None, axis: int = 0) -> Matrix01:
    """Replicate a square 2-D matrix M into a (d+1)-dimensional cube of side n.

    The cell (i_1, ..., i_{d+1}) is a one iff M has a one at
    (i_{axis+1}, i_{d+1}); every other coordinate is free. The default
    ``axis=0`` puts M's rows in the first dimension.
    """
    if M.d != 2 or M.dims[0] != M.dims[1]:
        raise NotSquare(f"inflate needs a square 2-D matrix, got dims {M.dims}")
    if d < 2:
        raise ValueError("target needs d >= 2")
    side = M.dims[0]
    if n is not None and n != side:
        raise NotSquare(f"side {n} does not match the matrix side {side}")
    if not 0 <= axis < d:
        raise ValueError(f"axis must be in 0..{d - 1}")
    ones = []
    for (i, j) in M.ones:
        for free in itertools.product(range(side), repeat=d - 1):
            cell = list(free[:axis]) + [i] + list(free[axis:])
            ones.append(tuple(cell) + (j,))
    return Matrix01((side,) * (d + 1), tuple(ones))


# ---------------------------------------------------------------------------
# extremal function
# ---------------------------------------------------------------------------


class _MatProblem(Problem):
    """Cells of the box ``rows x side^(d-1)`` in lexicographic order.

    ``tail[s]`` must bound the ones in any avoiding box with ``s`` slices;
    it is filled with exact values for fewer slices before this search runs.
    """

    def __init__(self, rows: int, side: int, d: int, Q: Matrix01, tail: list[int]):
        self.dims = (rows,) + (side,) * (d - 1)
        self.items = list(itertools.product(*(range(s) for s in self.dims)))
        self.size = len(self.items)
        self.per_slice = self.size // rows
        self.Q = Q
        self.tail = tail
        self.ones: set[Cell] = set()
        self.stack: list[int] = []
        self.in_slice = [0] * rows

    def try_add(self, i):
        c = self.items[i]
        self.ones.add(c)
        if _contains_through(self.ones, self.dims, self.Q, c):
            self.ones.discard(c)
            return False
        self.stack.append(i)
        self.in_slice[c[0]] += 1
        return True

    def remove(self, i):
        self.stack.pop()
        c = self.items[i]
        self.ones.discard(c)
        self.in_slice[c[0]] -= 1

    def bound(self, i):
        if i >= self.size:
            return len(self.stack)
        s = i // self.per_slice
        left_in_slice = (s + 1) * self.per_slice - i
        rest = self.dims[0] - s - 1
        placed = len(self.stack)
        # slices s.. form an avoiding box of rows-s slices
        before = placed - self.in_slice[s]
        b = placed + left_in_slice + self.tail[rest]
        if rest + 1 < len(self.tail):
            b = min(b, before + self.tail[rest + 1])
        return b

    def value(self):
        return len(self.stack)

    def chosen(self):
        return tuple(sorted(self.stack))


def mat_ex_exact(n: int, Q: Matrix01, d: int | None = None, limits: SearchLimits | None = None,
                 cache: ResultCache | None = None, strict: bool = False) -> ExtremalRecord:
    """Maximum number of ones in a Q-avoiding d-dimensional matrix of side n.

    Boxes with 1, 2, ..., n slices along the first dimension are solved in
    turn; the exact value for fewer slices bounds the still-undecided slices.
    """
    d = Q.d if d is None else d
    if not Q.ones:
        raise ValueError("pattern needs at least one one")
    if d != Q.d:
        raise DimensionMismatch(f"pattern is {Q.d}-dimensional, search asked for d={d}")
    if cache is not None:
        hit = cache.load("ex_matrix", n, d, None, Q)
        if hit is not None and hit.exact:
            return hit
    tail = [0]
    exact = True
    nodes = 0
    seconds = 0.0
    res = None
    for rows in range(1, n + 1):
        factory = partial(_MatProblem, rows, n, d, Q, list(tail))
        res = branch_and_bound(factory, limits)
        nodes += res.nodes
        seconds += res.seconds
        if not res.exact:
            # a lower bound cannot serve as an upper bound for later slices
            exact = False
            tail.append(res.value)
            for more in range(rows + 1, n + 1):
                tail.append(more * (n ** (d - 1)))
            break
        tail.append(res.value)
    items = list(itertools.product(*(range(s) for s in (rows,) + (n,) * (d - 1))))
    cells = tuple(items[i] for i in res.chosen)
    witness = Matrix01((n,) * d, cells)
    rec = ExtremalRecord("ex_matrix", n, d, None, Q, len(cells), witness, exact, nodes, seconds)
    if cache is not None and rec.exact:
        cache.store(rec)
    if strict and not exact:
        raise BudgetExceeded(f"matrix search for n={n} exceeded its budget", rec)
    return rec
