"""Smith normal form of integer matrices by gcd elimination.

The pivot at each stage is the entry of smallest absolute value in the
remaining block.  Transforms are tracked so that ``left @ A @ right`` is the
diagonal form exactly; the inverse of ``left`` is kept too, since its columns
are cokernel generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InputError

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


@dataclass(frozen=True)
class SmithForm:
    """Result of :func:`smith_normal_form` for an ``m x n`` matrix ``A``.

    ``left @ A @ right == diag(invariants)`` (padded with zeros), the
    invariant factors are positive and ``invariants[i] | invariants[i+1]``.
    The cokernel ``Z^m / A Z^n`` is ``Z^free_rank`` plus the cyclic groups
    listed in ``torsion``.
    """

    shape: tuple[int, int]
    invariants: tuple[int, ...]
    left: tuple[tuple[int, ...], ...]
    left_inverse: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.invariants)

    @property
    def free_rank(self) -> int:
        return self.shape[0] - self.rank

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariants if d > 1)

    def diagonal(self) -> Matrix:
        m, n = self.shape
        d = [[0] * n for _ in range(m)]
        for i, x in enumerate(self.invariants):
            d[i][i] = x
        return d

    def kernel_basis(self) -> list[list[int]]:
        """Columns of ``right`` spanning the integer kernel of ``A``."""
        n = self.shape[1]
        return [[self.right[i][j] for i in range(n)] for j in range(self.rank, n)]

    def cokernel_coordinates(self, v: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Image of ``v`` in the cokernel: (torsion residues, free coordinates)."""
        y = matvec(self.left, v)
        tors = tuple(y[i] % d for i, d in enumerate(self.invariants) if d > 1)
        return tors, tuple(y[self.rank :])

    def in_image(self, v: Sequence[int]) -> bool:
        """Whether ``v`` lies in the column span of ``A``."""
        y = matvec(self.left, v)
        if any(y[self.rank :]):
            return False
        return all(y[i] % d == 0 for i, d in enumerate(self.invariants))

    def free_generators(self) -> list[list[int]]:
        """Vectors whose classes form a basis of the free part of the cokernel."""
        m = self.shape[0]
        return [[self.left_inverse[i][j] for i in range(m)] for j in range(self.rank, m)]

    def same_cokernel(self, other: "SmithForm") -> bool:
        return self.free_rank == other.free_rank and self.torsion == other.torsion


def smith_normal_form(a: Sequence[Sequence[int]], ncols: int | None = None) -> SmithForm:
    """Smith normal form with transforms.

    ``ncols`` is only needed for matrices with zero rows.
    """
    m = len(a)
    n = len(a[0]) if m else (ncols or 0)
    if any(len(row) != n for row in a):
        raise InputError("ragged matrix")
    for row in a:
        for x in row:
            if not isinstance(x, int) or isinstance(x, bool):
                raise InputError(f"integer matrix expected, found {x!r}")
    d = [list(row) for row in a]
    left = identity(m)
    left_inv = identity(m)
    right = identity(n)

    def swap_rows(i, j):
        if i != j:
            d[i], d[j] = d[j], d[i]
            left[i], left[j] = left[j], left[i]
            for row in left_inv:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        if i != j:
            for row in d:
                row[i], row[j] = row[j], row[i]
            for row in right:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        if c:
            rd, rs = d[dst], d[src]
            for k in range(n):
                if rs[k]:
                    rd[k] += c * rs[k]
            ld, ls = left[dst], left[src]
            for k in range(m):
                if ls[k]:
                    ld[k] += c * ls[k]
            for row in left_inv:
                if row[dst]:
                    row[src] -= c * row[dst]

    def add_col(dst, src, c):
        if c:
            for row in d:
                if row[src]:
                    row[dst] += c * row[src]
            for row in right:
                if row[src]:
                    row[dst] += c * row[src]

    invariants = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = d[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = d[t][t]
            clean = True
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // p))
                    if d[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // p))
                    if d[t][j]:
                        clean = False
            if not clean:
                # move the smallest leftover in row/column t into the pivot
                cand = [(abs(d[i][t]), i, t) for i in range(t + 1, m) if d[i][t]]
                cand += [(abs(d[t][j]), t, j) for j in range(t + 1, n) if d[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if d[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            left[t] = [-x for x in left[t]]
            for row in left_inv:
                row[t] = -row[t]
        invariants.append(d[t][t])
        t += 1
    return SmithForm(
        shape=(m, n),
        invariants=tuple(invariants),
        left=tuple(map(tuple, left)),
        left_inverse=tuple(map(tuple, left_inv)),
        right=tuple(map(tuple, right)),
    )


def integer_kernel(a: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of ``{x in Z^ncols : A x = 0}``."""
    if not a:
        return identity(ncols)
    return smith_normal_form(a).kernel_basis()
