"""Affine root data, the fundamental alcove, folding and parabolic subsets.

Conventions
-----------
The Cartan matrix entry ``a[i][j]`` is ``<alpha_i^vee, alpha_j>``, so the
simple root ``alpha_j`` has weight coordinates given by column ``j``.

A point ``h + d`` of the alcove picture is stored by its root coordinates
``x_i = alpha_i(h)``.  The closed alcove is ``x_i >= 0`` for ``i >= 1`` and
``theta(h) <= 1`` where ``theta`` is the highest root.  Wall ``i >= 1`` is
``x_i = 0`` and wall ``0`` is ``theta(h) = 1``.

On weights the affine reflections act at level ``b`` (the exponent of the
central variable ``z``)::

    s_i(lam, b) = (lam - lam_i * alpha_i, b)                       i >= 1
    s_0(lam, b) = (lam - (<theta^vee, lam> + b) * theta, b)

which for SU(2) is ``u^a z^b -> u^(-a) z^b`` and ``u^a z^b -> u^(-a-2b) z^b``.
The map ``(lam, b) -> x = -lam / b`` intertwines this with the alcove action.
"""

from __future__ import annotations

import itertools
import json
import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .errors import FoldingLimitError, InputError

MAX_RANK = 4
DEFAULT_MAX_ITER = 100_000


def _det(m: list[list[Fraction]]) -> Fraction:
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            for k in range(c, n):
                m[r][k] -= f * m[c][k]
    return det


def _symmetrizer(a: Sequence[Sequence[int]]) -> list[Fraction] | None:
    """Positive ``eps`` with ``eps_i a_ij == eps_j a_ji``; ``None`` if not symmetrizable."""
    n = len(a)
    eps: list[Fraction | None] = [None] * n
    eps[0] = Fraction(1)
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in range(n):
            if i != j and a[i][j]:
                val = eps[i] * a[i][j] / a[j][i]
                if eps[j] is None:
                    eps[j] = val
                    queue.append(j)
                elif eps[j] != val:
                    return None
    if any(e is None for e in eps):
        return None
    return eps


def cartan_matrix(kind: str) -> list[list[int]]:
    """Cartan matrix for a type label such as ``"A2"``, ``"G2"`` or an alias ``"su3"``."""
    kind = kind.strip()
    if kind.lower().startswith("su"):
        n = int(kind[2:]) - 1
        kind = f"A{n}"
    letter, n = kind[0].upper(), int(kind[1:])
    if n < 1 or n > MAX_RANK:
        raise InputError(f"rank {n} outside the supported range 1..{MAX_RANK}")
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        a[i][i + 1] = a[i + 1][i] = -1
    if letter == "A":
        return a
    if letter == "B" and n >= 2:
        a[n - 1][n - 2] = -2
        return a
    if letter == "C" and n >= 2:
        a[n - 2][n - 1] = -2
        return a
    if letter == "D" and n == 4:
        a = [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]]
        return a
    if letter == "G" and n == 2:
        return [[2, -1], [-3, 2]]
    if letter == "F" and n == 4:
        a[1][2] = -2
        return a
    raise InputError(f"unsupported type {kind!r}")


@dataclass(frozen=True)
class RootDatum:
    """Finite root system data for a simply connected group of rank ``n``.

    Roots are stored both in simple-root coordinates (``positive_roots``) and
    in weight coordinates (``positive_roots_weights``).  Fundamental weights
    are the standard basis of weight coordinates and ``rho`` is all ones.
    """

    cartan: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[Fraction, ...]
    positive_roots: tuple[tuple[int, ...], ...] = field(repr=False)
    marks: tuple[int, ...]
    comarks: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def dual_coxeter(self) -> int:
        return 1 + sum(self.comarks)

    @property
    def coxeter(self) -> int:
        return 1 + sum(self.marks)

    @property
    def highest_root(self) -> tuple[int, ...]:
        """Highest root ``alpha_0`` in simple-root coordinates (the marks)."""
        return self.marks

    def to_weight(self, simple_coords: Sequence[int]) -> tuple[int, ...]:
        n = self.rank
        return tuple(sum(self.cartan[i][j] * simple_coords[j] for j in range(n)) for i in range(n))

    @cached_property
    def simple_roots(self) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        return tuple(tuple(self.cartan[i][j] for i in range(n)) for j in range(n))

    @cached_property
    def highest_root_weight(self) -> tuple[int, ...]:
        return self.to_weight(self.marks)

    @cached_property
    def positive_roots_weights(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.to_weight(r) for r in self.positive_roots)

    @property
    def fundamental_weights(self) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

    @property
    def rho(self) -> tuple[int, ...]:
        return (1,) * self.rank

    def theta_coroot_pairing(self, lam: Sequence[int]) -> int:
        """``<theta^vee, lam>`` for a weight in weight coordinates."""
        return sum(c * x for c, x in zip(self.comarks, lam))

    @cached_property
    def theta_coroot_root_coords(self) -> tuple[int, ...]:
        """``alpha_j(theta^vee)`` for each simple root ``j``."""
        n = self.rank
        return tuple(sum(self.comarks[k] * self.cartan[k][j] for k in range(n)) for j in range(n))

    def to_json(self) -> str:
        return json.dumps({"cartan": [list(r) for r in self.cartan]})


def build_root_datum(cartan: Sequence[Sequence[int]]) -> RootDatum:
    """Validate a finite-type Cartan matrix and compute its root data."""
    try:
        a = [[int(x) for x in row] for row in cartan]
    except (TypeError, ValueError) as exc:
        raise InputError(f"Cartan matrix must contain integers: {exc}") from None
    n = len(a)
    if n == 0 or any(len(row) != n for row in a):
        raise InputError("Cartan matrix must be square and nonempty")
    if n > MAX_RANK:
        raise InputError(f"rank {n} exceeds the supported maximum {MAX_RANK}")
    for i in range(n):
        if a[i][i] != 2:
            raise InputError("Cartan matrix needs 2 on the diagonal")
        for j in range(n):
            if i != j:
                if a[i][j] > 0:
                    raise InputError("off-diagonal Cartan entries must be non-positive")
                if (a[i][j] == 0) != (a[j][i] == 0):
                    raise InputError("a_ij == 0 must imply a_ji == 0")
    eps = _symmetrizer(a)
    if eps is None:
        raise InputError("Cartan matrix is not symmetrizable or not irreducible")
    sym = [[eps[i] * a[i][j] for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        if _det([row[:k] for row in sym[:k]]) <= 0:
            raise InputError("Cartan matrix is not of finite type")
    roots = _positive_roots(a)
    heights = [sum(r) for r in roots]
    top = max(heights)
    tops = [r for r, h in zip(roots, heights) if h == top]
    if len(tops) != 1:
        raise InputError("highest root is not unique")
    marks = tops[0]
    if any(m <= 0 for m in marks):
        raise InputError("highest root must involve every simple root")
    # theta^vee = sum marks_k * eps_k / eps_theta * alpha_k^vee
    eps_theta = sum(marks[i] * marks[j] * sym[i][j] for i in range(n) for j in range(n)) / 2
    comarks = []
    for k in range(n):
        c = marks[k] * eps[k] / eps_theta
        if c.denominator != 1:
            raise InputError("non-integral comark")
        comarks.append(int(c))
    return RootDatum(
        cartan=tuple(map(tuple, a)),
        symmetrizer=tuple(eps),
        positive_roots=tuple(roots),
        marks=tuple(marks),
        comarks=tuple(comarks),
    )


def root_datum(kind: str | Sequence[Sequence[int]]) -> RootDatum:
    """Root datum from a type label (``"su2"``, ``"A2"``, ...) or a Cartan matrix."""
    if isinstance(kind, str):
        return _cached_datum(tuple(map(tuple, cartan_matrix(kind))))
    return _cached_datum(tuple(map(tuple, kind)))


@lru_cache(maxsize=None)
def _cached_datum(cartan) -> RootDatum:
    return build_root_datum(cartan)


def root_datum_from_json(text: str) -> RootDatum:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed root datum JSON: {exc}") from None
    if not isinstance(payload, dict) or "cartan" not in payload:
        raise InputError('root datum JSON must look like {"cartan": [[...]]}')
    return root_datum(payload["cartan"])


def _positive_roots(a: list[list[int]]) -> list[tuple[int, ...]]:
    """Positive roots in simple-root coordinates via root strings."""
    n = len(a)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                pairing = sum(a[i][j] * beta[j] for j in range(n))
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        p += 1
                    else:
                        break
                if p - pairing > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
        if len(roots) > 200:
            raise InputError("root system too large")
    return sorted(roots, key=lambda r: (sum(r), r))


# parabolic index sets -------------------------------------------------------


@dataclass(frozen=True, order=True)
class ParabolicIndex:
    """A proper subset ``I`` of the affine nodes ``{0, ..., rank}``."""

    indices: tuple[int, ...]
    rank: int

    def __init__(self, indices: Iterable[int], rank: int):
        idx = tuple(sorted(set(int(i) for i in indices)))
        if any(i < 0 or i > rank for i in idx):
            raise InputError(f"index out of range 0..{rank}: {idx}")
        if len(idx) == rank + 1:
            raise InputError("parabolic index sets must be proper subsets")
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "rank", rank)

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, i) -> bool:
        return i in self.indices

    def __len__(self) -> int:
        return len(self.indices)

    def issubset(self, other: "ParabolicIndex") -> bool:
        return set(self.indices) <= set(other.indices)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.indices)) + "}"

    @classmethod
    def parse(cls, text: str, rank: int) -> "ParabolicIndex":
        text = text.strip().strip("{}")
        if not text:
            return cls((), rank)
        try:
            return cls((int(t) for t in text.split(",")), rank)
        except ValueError:
            raise InputError(f"cannot parse parabolic index {text!r}") from None


@dataclass(frozen=True)
class PosetC:
    """Proper subsets of ``{0..n}`` ordered by inclusion."""

    rank: int
    elements: tuple[ParabolicIndex, ...]
    covers: tuple[tuple[ParabolicIndex, ParabolicIndex], ...]

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def relations(self) -> tuple[tuple[ParabolicIndex, ParabolicIndex], ...]:
        """All strict inclusions ``a < b``."""
        return tuple(
            (a, b) for a in self.elements for b in self.elements if a != b and a.issubset(b)
        )

    def leq(self, a: ParabolicIndex, b: ParabolicIndex) -> bool:
        return a.issubset(b)

    def meet(self, a: ParabolicIndex, b: ParabolicIndex) -> ParabolicIndex:
        return ParabolicIndex(set(a.indices) & set(b.indices), self.rank)


def parabolic_poset(rd: RootDatum) -> PosetC:
    n = rd.rank
    nodes = range(n + 1)
    elements = [
        ParabolicIndex(c, n) for k in range(n + 1) for c in itertools.combinations(nodes, k)
    ]
    covers = []
    for a in elements:
        for i in nodes:
            if i not in a and len(a) + 1 <= n:
                covers.append((a, ParabolicIndex(a.indices + (i,), n)))
    return PosetC(n, tuple(elements), tuple(covers))


# alcove geometry ----------------------------------------------------------


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise InputError("use exact input (int, Fraction or decimal string), not float")
    try:
        return Fraction(x)
    except (TypeError, ValueError):
        raise InputError(f"cannot read {x!r} as an exact rational") from None


@dataclass(frozen=True)
class AlcovePoint:
    """Point ``h + d`` stored by its root coordinates ``alpha_i(h)``."""

    coords: tuple[Fraction, ...]

    def __init__(self, coords: Iterable):
        object.__setattr__(self, "coords", tuple(_frac(x) for x in coords))

    def __len__(self) -> int:
        return len(self.coords)

    def theta(self, rd: RootDatum) -> Fraction:
        """``alpha_0(h) = theta(h)``."""
        return sum((m * x for m, x in zip(rd.marks, self.coords)), Fraction(0))


def reflect_point(i: int, p: AlcovePoint, rd: RootDatum) -> AlcovePoint:
    """Apply the affine simple reflection ``s_i``."""
    x = p.coords
    n = rd.rank
    if len(x) != n:
        raise InputError(f"point has {len(x)} coordinates, expected {n}")
    if i == 0:
        c = p.theta(rd) - 1
        tc = rd.theta_coroot_root_coords
        return AlcovePoint(x[j] - c * tc[j] for j in range(n))
    if not 1 <= i <= n:
        raise InputError(f"no reflection s_{i} in rank {n}")
    xi = x[i - 1]
    return AlcovePoint(x[j] - xi * rd.cartan[i - 1][j] for j in range(n))


def apply_word(word: Sequence[int], p: AlcovePoint, rd: RootDatum) -> AlcovePoint:
    """Apply ``s_{w[0]} s_{w[1]} ... s_{w[-1]}`` (rightmost first)."""
    for i in reversed(word):
        p = reflect_point(i, p, rd)
    return p


def in_alcove(p: AlcovePoint, rd: RootDatum) -> bool:
    return all(x >= 0 for x in p.coords) and p.theta(rd) <= 1


def alcove_face(p: AlcovePoint, rd: RootDatum) -> ParabolicIndex | None:
    """Index set of walls containing ``p``; ``None`` when ``p`` is outside the alcove."""
    if len(p) != rd.rank:
        raise InputError(f"point has {len(p)} coordinates, expected {rd.rank}")
    if not in_alcove(p, rd):
        return None
    idx = [i + 1 for i, x in enumerate(p.coords) if x == 0]
    if p.theta(rd) == 1:
        idx.append(0)
    return ParabolicIndex(idx, rd.rank)


def _max_iter() -> int:
    raw = os.environ.get("LOOPK_MAX_ITER")
    if raw is None:
        return DEFAULT_MAX_ITER
    try:
        val = int(raw)
    except ValueError:
        raise InputError(f"LOOPK_MAX_ITER must be an integer, got {raw!r}") from None
    if val < 1:
        raise InputError("LOOPK_MAX_ITER must be positive")
    return val


def affine_fold(p: AlcovePoint, rd: RootDatum, max_iter: int | None = None) -> tuple[AlcovePoint, list[int]]:
    """Fold ``p`` into the closed alcove.

    Returns ``(q, word)`` with ``q`` in the alcove and ``apply_word(word, q) == p``.
    Each step reflects across a wall separating the point from the alcove,
    which lowers the number of separating affine hyperplanes by one.
    """
    cap = _max_iter() if max_iter is None else max_iter
    if len(p) != rd.rank:
        raise InputError(f"point has {len(p)} coordinates, expected {rd.rank}")
    word: list[int] = []
    for _ in range(cap):
        bad = next((i + 1 for i, x in enumerate(p.coords) if x < 0), None)
        if bad is None and p.theta(rd) > 1:
            bad = 0
        if bad is None:
            return p, word
        p = reflect_point(bad, p, rd)
        word.append(bad)
    raise FoldingLimitError(f"folding did not finish within {cap} reflections")


# finite Weyl groups of parabolics -----------------------------------------


@dataclass(frozen=True)
class WeylElement:
    """Affine map ``(lam, b) -> (matrix @ lam + b * translation, b)`` on weights."""

    matrix: tuple[tuple[int, ...], ...]
    translation: tuple[int, ...]
    length: int
    word: tuple[int, ...]

    def act(self, lam: Sequence[int], level: int = 0) -> tuple[int, ...]:
        return tuple(
            sum(r * x for r, x in zip(row, lam)) + level * t
            for row, t in zip(self.matrix, self.translation)
        )

    @property
    def det(self) -> int:
        return (-1) ** self.length


def reflection_map(i: int, rd: RootDatum) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """Matrix and level-translation of ``s_i`` on weight coordinates."""
    n = rd.rank
    if i == 0:
        th = rd.highest_root_weight
        mat = tuple(
            tuple(int(r == c) - th[r] * rd.comarks[c] for c in range(n)) for r in range(n)
        )
        return mat, tuple(-t for t in th)
    col = rd.simple_roots[i - 1]
    mat = tuple(tuple(int(r == c) - col[r] * int(c == i - 1) for c in range(n)) for r in range(n))
    return mat, (0,) * n


def _compose(a, b):
    """``a o b`` for pairs (matrix, translation)."""
    (ma, ta), (mb, tb) = a, b
    n = len(ma)
    m = tuple(tuple(sum(ma[r][k] * mb[k][c] for k in range(n)) for c in range(n)) for r in range(n))
    t = tuple(sum(ma[r][k] * tb[k] for k in range(n)) + ta[r] for r in range(n))
    return m, t


def weyl_group(index: ParabolicIndex | Iterable[int], rd: RootDatum, limit: int = 100_000) -> list[WeylElement]:
    """Elements of the finite Weyl group ``W_I`` with their lengths, by breadth-first search."""
    if not isinstance(index, ParabolicIndex):
        index = ParabolicIndex(index, rd.rank)
    return list(_weyl_group(index, rd, limit))


@lru_cache(maxsize=None)
def _weyl_group(index: ParabolicIndex, rd: RootDatum, limit: int) -> tuple[WeylElement, ...]:
    n = rd.rank
    ident = (tuple(tuple(int(r == c) for c in range(n)) for r in range(n)), (0,) * n)
    gens = [(i, reflection_map(i, rd)) for i in index]
    seen = {ident: ()}
    order = [ident]
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for i, s in gens:
            h = _compose(g, s)
            if h not in seen:
                seen[h] = seen[g] + (i,)
                order.append(h)
                queue.append(h)
                if len(seen) > limit:
                    raise InputError(f"Weyl group of {index} exceeds {limit} elements")
    return tuple(WeylElement(m, t, len(seen[(m, t)]), seen[(m, t)]) for m, t in order)
