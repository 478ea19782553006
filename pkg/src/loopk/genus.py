"""Genera of stably almost complex manifolds from their Chern numbers.

A genus is given by a density ``d(x)``, a power series in ``x`` whose
coefficients are ``q``-series with rational coefficients.  The value on ``M``
is the degree-``n`` part of ``prod_i d(x_i)`` over the Chern roots, paired
with the Chern numbers.  The product is computed as ``exp(sum_j l_j p_j)``
where ``log d = sum_j l_j x^j`` and the power sums ``p_j`` are rewritten in
Chern classes by Newton's identities.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Mapping, Sequence

from .errors import InputError
from .laurent import LaurentPoly
from .qseries import QLaurentSeries

Partition = tuple[int, ...]


def partitions(n: int, largest: int | None = None) -> list[Partition]:
    """Partitions of ``n`` as non-increasing tuples."""
    largest = n if largest is None else largest
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return out


def partition_key(p: Partition) -> str:
    """Canonical text key: ``"c1^2"``, ``"c1*c2"``, ``"c2"``; ``"1"`` for the empty partition."""
    if not p:
        return "1"
    counts: dict[int, int] = {}
    for part in p:
        counts[part] = counts.get(part, 0) + 1
    return "*".join(f"c{i}" if e == 1 else f"c{i}^{e}" for i, e in sorted(counts.items()))


_FACTOR = re.compile(r"^c(\d+)(?:\^(\d+))?$")


def parse_partition_key(key: str) -> Partition:
    key = key.replace(" ", "")
    if key == "1":
        return ()
    parts: list[int] = []
    for factor in key.split("*"):
        m = _FACTOR.match(factor)
        if not m:
            raise InputError(f"cannot read Chern monomial {key!r}")
        i, e = int(m.group(1)), int(m.group(2) or 1)
        if i < 1 or e < 1:
            raise InputError(f"bad Chern monomial {key!r}")
        parts += [i] * e
    return tuple(sorted(parts, reverse=True))


@dataclass(frozen=True)
class ChernData:
    """Complex dimension and the Chern number of every partition of it."""

    dim: int
    numbers: tuple[tuple[Partition, int], ...]

    def __init__(self, dim: int, numbers: Mapping):
        if not isinstance(dim, int) or dim < 0:
            raise InputError("dimension must be a non-negative integer")
        clean: dict[Partition, int] = {}
        for k, v in numbers.items():
            p = parse_partition_key(k) if isinstance(k, str) else tuple(sorted(k, reverse=True))
            if sum(p) != dim:
                raise InputError(f"Chern monomial {partition_key(p)} has degree {sum(p)}, expected {dim}")
            if isinstance(v, bool) or not isinstance(v, int):
                raise InputError(f"Chern number {partition_key(p)} must be an integer")
            if p in clean:
                raise InputError(f"Chern monomial {partition_key(p)} given twice")
            clean[p] = v
        missing = [partition_key(p) for p in partitions(dim) if p not in clean]
        if missing:
            raise InputError(f"missing Chern numbers: {', '.join(missing)}")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "numbers", tuple(sorted(clean.items())))

    def number(self, p: Partition) -> int:
        return dict(self.numbers)[tuple(p)]

    def as_json(self) -> dict:
        return {"dim": self.dim, "chern": {partition_key(p): v for p, v in self.numbers}}

    def __add__(self, other: "ChernData") -> "ChernData":
        """Disjoint union."""
        if self.dim != other.dim:
            raise InputError("disjoint union needs equal dimensions")
        a, b = dict(self.numbers), dict(other.numbers)
        return ChernData(self.dim, {p: a[p] + b[p] for p in a})

    @classmethod
    def point(cls) -> "ChernData":
        return cls(0, {"1": 1})

    @classmethod
    def from_json(cls, payload) -> "ChernData":
        if isinstance(payload, str):
            try:
                payload = json.loads(payload)
            except json.JSONDecodeError as exc:
                raise InputError(f"malformed manifold JSON: {exc}") from None
        if not isinstance(payload, dict) or "dim" not in payload:
            raise InputError('manifold JSON must look like {"dim": n, "chern": {...}}')
        chern = payload.get("chern", {})
        if payload["dim"] == 0 and not chern:
            chern = {"1": 1}
        if not isinstance(chern, dict):
            raise InputError('"chern" must be an object')
        return cls(payload["dim"], chern)


def projective_space(n: int) -> ChernData:
    """``CP^n``: total Chern class ``(1 + h)^(n+1)``, ``h^n = 1``."""
    from math import comb

    return ChernData(
        n, {p: _prod(comb(n + 1, part) for part in p) for p in partitions(n)}
    )


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


K3 = ChernData(2, {"c1^2": 0, "c2": 24})
TORUS4 = ChernData(2, {"c1^2": 0, "c2": 0})


# bivariate series in x and q ------------------------------------------------


Table = list[list[Fraction]]  # table[i][d]: coefficient of x^i q^d


def _zeros(xo: int, qo: int) -> Table:
    return [[Fraction(0)] * (qo + 1) for _ in range(xo + 1)]


def _qmul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = len(a)
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        if x:
            for j in range(n - i):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


def _tmul(a: Table, b: Table) -> Table:
    xo, qo = len(a) - 1, len(a[0]) - 1
    out = _zeros(xo, qo)
    for i in range(xo + 1):
        for j in range(xo + 1 - i):
            if any(a[i]) and any(b[j]):
                p = _qmul(a[i], b[j])
                row = out[i + j]
                for d in range(qo + 1):
                    row[d] += p[d]
    return out


def _qinv(a: list[Fraction]) -> list[Fraction]:
    if a[0] == 0:
        raise InputError("q-series with zero constant term is not invertible here")
    n = len(a)
    out = [Fraction(0)] * n
    out[0] = 1 / a[0]
    for d in range(1, n):
        out[d] = -sum(a[j] * out[d - j] for j in range(1, d + 1)) / a[0]
    return out


def _tinv(a: Table) -> Table:
    """Inverse of a table whose ``x^0`` coefficient is an invertible q-series."""
    xo, qo = len(a) - 1, len(a[0]) - 1
    c0 = _qinv(a[0])
    out = _zeros(xo, qo)
    out[0] = c0
    for i in range(1, xo + 1):
        acc = [Fraction(0)] * (qo + 1)
        for j in range(1, i + 1):
            p = _qmul(a[j], out[i - j])
            acc = [x + y for x, y in zip(acc, p)]
        out[i] = [-x for x in _qmul(c0, acc)]
    return out


def _tlog(a: Table) -> Table:
    """``log`` of a table with ``x^0`` coefficient exactly 1."""
    xo, qo = len(a) - 1, len(a[0]) - 1
    if a[0] != [Fraction(1)] + [Fraction(0)] * qo:
        raise InputError("density must have constant term 1")
    u = [row[:] for row in a]
    u[0] = [Fraction(0)] * (qo + 1)
    out = _zeros(xo, qo)
    power = None
    for k in range(1, xo + 1):
        power = u if power is None else _tmul(power, u)
        sign = Fraction((-1) ** (k + 1), k)
        for i in range(xo + 1):
            for d in range(qo + 1):
                out[i][d] += sign * power[i][d]
    return out


def _even_x_series(coeff, xo: int, qo: int) -> Table:
    """Table of ``sum_j coeff(j) x^(2j)`` with constant q-coefficients."""
    t = _zeros(xo, qo)
    for j in range(xo // 2 + 1):
        t[2 * j][0] = coeff(j)
    return t


@dataclass(frozen=True)
class DensitySeries:
    """``d(x) = sum_i x^i d_i(q)`` with ``d_i`` known through ``q^q_order``."""

    kind: str
    x_order: int
    q_order: int
    table: tuple[tuple[Fraction, ...], ...]

    def coefficient(self, i: int) -> QLaurentSeries:
        return _q_series(self.table[i], self.q_order)

    def q_slice(self, d: int) -> list[Fraction]:
        """Coefficients of ``q^d`` as a power series in ``x``."""
        return [row[d] for row in self.table]

    def is_even(self) -> bool:
        return all(not any(self.table[i]) for i in range(1, self.x_order + 1, 2))


def _q_series(row: Sequence[Fraction], order: int) -> QLaurentSeries:
    return QLaurentSeries((), order, {d: c for d, c in enumerate(row) if c})


def _freeze(kind: str, t: Table) -> DensitySeries:
    return DensitySeries(kind, len(t) - 1, len(t[0]) - 1, tuple(tuple(r) for r in t))


def _sinh_ratio(xo: int, qo: int) -> Table:
    # 2 sinh(x/2) / x = sum_j (x^2/4)^j / (2j+1)!
    return _even_x_series(lambda j: Fraction(1, 4 ** j * factorial(2 * j + 1)), xo, qo)


def _cosh_defect(xo: int, qo: int) -> Table:
    # 2 cosh x - 2 = sum_{j>=1} 2 x^(2j) / (2j)!
    return _even_x_series(lambda j: Fraction(2, factorial(2 * j)) if j else Fraction(0), xo, qo)


def _epsilon_table(xo: int, qo: int) -> Table:
    """``eps(e^x) = prod_{k>=1} (1 - C(x) q^k / (1 - q^k)^2)`` with ``C = 2 cosh x - 2``."""
    c = _cosh_defect(xo, qo)
    out = _zeros(xo, qo)
    out[0][0] = Fraction(1)
    for k in range(1, qo + 1):
        # q^k / (1 - q^k)^2 = sum_{r>=1} r q^(rk)
        weight = [Fraction(0)] * (qo + 1)
        for r in range(1, qo // k + 1):
            weight[r * k] = Fraction(r)
        factor = _zeros(xo, qo)
        factor[0][0] = Fraction(1)
        for i in range(xo + 1):
            if any(c[i]):
                p = _qmul(c[i], weight)
                for d in range(qo + 1):
                    factor[i][d] -= p[d]
        out = _tmul(out, factor)
    return out


def density_from_orientation(kind: str, x_order: int, q_order: int, genus: int = 0) -> DensitySeries:
    """Genus densities.

    ``abs``: ``x / (2 sinh(x/2))``.  ``sigma``: ``x / sigma(e^x, q)``.
    ``tft``: ``x / sigma(e^x, q) * eps(e^x)^genus``.
    """
    if x_order < 0 or q_order < 0:
        raise InputError("orders must be non-negative")
    xo, qo = x_order, q_order
    if kind == "abs":
        return _freeze(kind, _tinv(_sinh_ratio(xo, qo)))
    if kind == "sigma":
        return _freeze(kind, _tinv(_tmul(_sinh_ratio(xo, qo), _epsilon_table(xo, qo))))
    if kind == "tft":
        if genus < 0:
            raise InputError("genus must be non-negative")
        base = _tinv(_sinh_ratio(xo, qo))
        eps = _epsilon_table(xo, qo)
        step = eps if genus >= 1 else _tinv(eps)
        for _ in range(abs(genus - 1)):
            base = _tmul(base, step)
        return _freeze(f"tft{genus}", base)
    raise InputError(f"unknown density {kind!r}; use abs, sigma or tft")


# Chern-class polynomials ---------------------------------------------------


@lru_cache(maxsize=None)
def power_sums_in_chern(n: int) -> tuple[dict[Partition, int], ...]:
    """``p_1..p_n`` as integer polynomials in ``c_1..c_n`` (keys are partitions).

    Newton: ``p_j = (-1)^(j-1) j c_j + sum_{i=1}^{j-1} (-1)^(i-1) c_i p_(j-i)``.
    """
    ps: list[dict[Partition, int]] = [{}]
    for j in range(1, n + 1):
        pj: dict[Partition, int] = {(j,): (-1) ** (j - 1) * j}
        for i in range(1, j):
            for part, c in ps[j - i].items():
                key = tuple(sorted(part + (i,), reverse=True))
                pj[key] = pj.get(key, 0) + (-1) ** (i - 1) * c
        ps.append({k: v for k, v in pj.items() if v})
    return tuple(ps)


def _cmul(a: dict, b: dict, n: int, qo: int) -> dict:
    out: dict = {}
    for pa, ca in a.items():
        for pb, cb in b.items():
            if sum(pa) + sum(pb) > n:
                continue
            key = tuple(sorted(pa + pb, reverse=True))
            prod = _qmul(ca, cb)
            if key in out:
                out[key] = [x + y for x, y in zip(out[key], prod)]
            else:
                out[key] = prod
    return out


def characteristic_number(d: DensitySeries, M: ChernData) -> QLaurentSeries:
    """Pair the degree-``n`` part of ``prod_i d(x_i)`` with the Chern numbers of ``M``."""
    n = M.dim
    qo = d.q_order
    if d.x_order < n:
        raise InputError(f"density known through x^{d.x_order}, need x^{n}")
    if n == 0:
        return _q_series([Fraction(M.number(()))] + [Fraction(0)] * qo, qo)
    table = [list(r[: qo + 1]) for r in d.table[: n + 1]]
    logs = _tlog(table)
    ps = power_sums_in_chern(n)
    # A = sum_j l_j p_j, graded by Chern degree
    A: dict[Partition, list[Fraction]] = {}
    for j in range(1, n + 1):
        if not any(logs[j]):
            continue
        for part, c in ps[j].items():
            row = [c * x for x in logs[j]]
            A[part] = [x + y for x, y in zip(A.get(part, [Fraction(0)] * (qo + 1)), row)]
    total: dict[Partition, list[Fraction]] = {(): [Fraction(1)] + [Fraction(0)] * qo}
    power: dict = {(): [Fraction(1)] + [Fraction(0)] * qo}
    for k in range(1, n + 1):
        power = _cmul(power, A, n, qo)
        scale = Fraction(1, factorial(k))
        for key, row in power.items():
            prev = total.get(key, [Fraction(0)] * (qo + 1))
            total[key] = [x + scale * y for x, y in zip(prev, row)]
    value = [Fraction(0)] * (qo + 1)
    for part, row in total.items():
        if sum(part) == n:
            c = M.number(part)
            if c:
                value = [x + c * y for x, y in zip(value, row)]
    return _q_series(value, qo)


def witten_genus(M: ChernData, q_order: int) -> QLaurentSeries:
    if q_order < 0:
        raise InputError("q-order must be non-negative")
    return characteristic_number(density_from_orientation("sigma", max(M.dim, 1), q_order), M)


def a_hat_genus(M: ChernData) -> Fraction:
    value = characteristic_number(density_from_orientation("abs", max(M.dim, 1), 0), M)
    return Fraction(value.coefficient(0).constant_term())


def tft_invariant(M: ChernData, g: int, q_order: int) -> QLaurentSeries:
    """Pushforward of ``eps(TM)^g`` with the sigma orientation."""
    if not isinstance(g, int) or g < 0:
        raise InputError("genus must be a non-negative integer")
    if q_order < 0:
        raise InputError("q-order must be non-negative")
    return characteristic_number(density_from_orientation("tft", max(M.dim, 1), q_order, g), M)


def euler_characteristic(M: ChernData) -> int:
    """The top Chern number ``c_n[M]``."""
    if M.dim == 0:
        return M.number(())
    return M.number((M.dim,))


def series_as_fractions(s: QLaurentSeries) -> list[Fraction]:
    """Coefficients ``[a_0, ..., a_N]`` of a scalar q-series with no negative powers."""
    if s.valuation is not None and s.valuation < 0:
        raise InputError("series has negative powers of q")
    return [Fraction(s.coefficient(d).constant_term()) for d in range(s.order + 1)]
