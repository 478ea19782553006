"""Truncated Laurent series in ``q`` with Laurent-polynomial coefficients.

A :class:`QLaurentSeries` stores the coefficients of ``q**d`` for
``valuation <= d <= order``; everything of degree above ``order`` is unknown
(an implicit ``O(q**(order+1))``).  Arithmetic never claims more precision
than its inputs carry.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .errors import InputError, NotAUnitError
from .laurent import LaurentPoly, _is_scalar, normalize_coefficient


class QLaurentSeries:
    """Element of ``R((q))`` known through ``q**order``, with ``R`` a Laurent ring.

    ``variables`` names the coefficient ring; ``var`` names the series variable.
    """

    __slots__ = ("variables", "order", "var", "_coeffs")

    def __init__(
        self,
        variables: Sequence[str],
        order: int,
        coeffs: Mapping[int, object] | None = None,
        var: str = "q",
    ):
        variables = tuple(variables)
        if var in variables:
            raise InputError(f"series variable {var!r} clashes with coefficient variables")
        clean: dict[int, LaurentPoly] = {}
        for d, c in (coeffs or {}).items():
            d = int(d)
            if d > order:
                continue
            if not isinstance(c, LaurentPoly):
                c = LaurentPoly.constant(variables, c)
            elif c.variables != variables:
                raise InputError(f"coefficient variables {c.variables} != {variables}")
            if c:
                clean[d] = c
        self.variables = variables
        self.order = int(order)
        self.var = var
        self._coeffs = clean

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str], order: int, var: str = "q") -> "QLaurentSeries":
        return cls(variables, order, {}, var)

    @classmethod
    def one(cls, variables: Sequence[str], order: int, var: str = "q") -> "QLaurentSeries":
        return cls(variables, order, {0: 1}, var)

    @classmethod
    def monomial(cls, variables, order: int, degree: int, coeff=1, var: str = "q"):
        return cls(variables, order, {degree: coeff}, var)

    @classmethod
    def from_poly(cls, poly: LaurentPoly, var: str, order: int) -> "QLaurentSeries":
        """Split a Laurent polynomial containing ``var`` into a series in ``var``."""
        i = poly.variables.index(var)
        rest = poly.variables[:i] + poly.variables[i + 1 :]
        buckets: dict[int, dict] = {}
        for e, c in poly.items():
            buckets.setdefault(e[i], {})[e[:i] + e[i + 1 :]] = c
        return cls(rest, order, {d: LaurentPoly(rest, t) for d, t in buckets.items()}, var)

    @classmethod
    def geometric(cls, variables, order: int, step: int = 1, var: str = "q"):
        """``sum_{k>=0} q**(step*k)`` through ``order``."""
        if step <= 0:
            raise InputError("geometric series needs a positive step")
        return cls(variables, order, {d: 1 for d in range(0, order + 1, step)}, var)

    # inspection -----------------------------------------------------------

    def coefficient(self, d: int) -> LaurentPoly:
        if d > self.order:
            raise InputError(f"coefficient of {self.var}^{d} is beyond the truncation order {self.order}")
        return self._coeffs.get(d, LaurentPoly.zero(self.variables))

    def __getitem__(self, d: int) -> LaurentPoly:
        return self.coefficient(d)

    def degrees(self) -> list[int]:
        return sorted(self._coeffs)

    def terms(self) -> Iterator[tuple[int, LaurentPoly]]:
        for d in sorted(self._coeffs):
            yield d, self._coeffs[d]

    @property
    def valuation(self) -> int | None:
        """Lowest degree with a nonzero coefficient, or ``None`` for the zero series."""
        return min(self._coeffs) if self._coeffs else None

    def _val(self) -> int:
        # a zero series known through ``order`` has valuation above ``order``
        return min(self._coeffs) if self._coeffs else self.order + 1

    def lowest_coefficient(self) -> LaurentPoly:
        if not self._coeffs:
            raise InputError("zero series has no lowest coefficient")
        return self._coeffs[min(self._coeffs)]

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def is_unit(self) -> bool:
        """Declared unit: the lowest coefficient is ``±1`` times a monomial."""
        return bool(self._coeffs) and self.lowest_coefficient().is_unit()

    def __eq__(self, other) -> bool:
        if isinstance(other, QLaurentSeries):
            return (
                self.variables == other.variables
                and self.order == other.order
                and self.var == other.var
                and self._coeffs == other._coeffs
            )
        if _is_scalar(other) or isinstance(other, LaurentPoly):
            return self.agrees(self._lift(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, self.order, self.var, frozenset(self._coeffs.items())))

    def agrees(self, other: "QLaurentSeries", through: int | None = None) -> bool:
        """Coefficientwise equality through ``through`` (default: the common order)."""
        top = min(self.order, other.order)
        if through is not None:
            if through > top:
                raise InputError(f"cannot compare through {through}; known only through {top}")
            top = through
        if self.variables != other.variables or self.var != other.var:
            return False
        degs = {d for d in self._coeffs if d <= top} | {d for d in other._coeffs if d <= top}
        return all(self.coefficient(d) == other.coefficient(d) for d in degs)

    def __repr__(self) -> str:
        return f"QLaurentSeries({str(self)!r}, order={self.order})"

    def __str__(self) -> str:
        from .render import render_series

        return render_series(self)

    # arithmetic -----------------------------------------------------------

    def _lift(self, other) -> "QLaurentSeries":
        if isinstance(other, QLaurentSeries):
            if other.variables != self.variables or other.var != self.var:
                raise InputError("series over different rings")
            return other
        if isinstance(other, LaurentPoly):
            if other.variables != self.variables:
                raise InputError(f"coefficient variables differ: {other.variables}")
            return QLaurentSeries(self.variables, self.order, {0: other}, self.var)
        if _is_scalar(other):
            return QLaurentSeries(self.variables, self.order, {0: other}, self.var)
        raise TypeError(f"cannot combine series with {type(other).__name__}")

    def truncate(self, order: int) -> "QLaurentSeries":
        if order > self.order:
            raise InputError(f"cannot raise precision from {self.order} to {order}")
        return QLaurentSeries(self.variables, order, self._coeffs, self.var)

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        order = min(self.order, other.order)
        out = {d: c for d, c in self._coeffs.items() if d <= order}
        for d, c in other._coeffs.items():
            if d <= order:
                out[d] = out[d] + c if d in out else c
        return QLaurentSeries(self.variables, order, out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return QLaurentSeries(self.variables, self.order, {d: -c for d, c in self._coeffs.items()}, self.var)

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other) or isinstance(other, LaurentPoly):
            if isinstance(other, LaurentPoly) and other.variables != self.variables:
                raise InputError("coefficient variables differ")
            return QLaurentSeries(
                self.variables, self.order, {d: c * other for d, c in self._coeffs.items()}, self.var
            )
        if not isinstance(other, QLaurentSeries):
            return NotImplemented
        other = self._lift(other)
        va, vb = self._val(), other._val()
        order = min(self.order + vb, other.order + va)
        out: dict[int, LaurentPoly] = {}
        for d1, c1 in self._coeffs.items():
            if d1 + vb > order:
                continue
            for d2, c2 in other._coeffs.items():
                d = d1 + d2
                if d > order:
                    continue
                p = c1 * c2
                out[d] = out[d] + p if d in out else p
        return QLaurentSeries(self.variables, order, out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return qs_invert(self) ** (-k)
        result = QLaurentSeries.one(self.variables, self.order, self.var)
        for _ in range(k):
            result = result * self
        return result

    def shift(self, k: int) -> "QLaurentSeries":
        """Multiply by ``q**k`` (exact; the order shifts with it)."""
        return QLaurentSeries(
            self.variables, self.order + k, {d + k: c for d, c in self._coeffs.items()}, self.var
        )

    def map_coefficients(self, fn, variables=None) -> "QLaurentSeries":
        variables = self.variables if variables is None else tuple(variables)
        return QLaurentSeries(variables, self.order, {d: fn(c) for d, c in self._coeffs.items()}, self.var)

    def to_poly(self) -> LaurentPoly:
        """The known part as a Laurent polynomial in ``variables + (var,)``."""
        variables = self.variables + (self.var,)
        terms = {}
        for d, c in self._coeffs.items():
            for e, a in c.items():
                terms[e + (d,)] = a
        return LaurentPoly(variables, terms)


def qs_mul(a: QLaurentSeries, b: QLaurentSeries) -> QLaurentSeries:
    return a * b


def qs_invert(a: QLaurentSeries, rational: bool = False) -> QLaurentSeries:
    """Multiplicative inverse of a unit series.

    With valuation ``v`` and order ``N`` the inverse has valuation ``-v`` and
    order ``N - 2v``, which is exactly the precision the input determines.
    ``rational=True`` also accepts a lowest coefficient ``c * monomial`` with
    any nonzero rational ``c``.
    """
    if a.is_zero():
        raise NotAUnitError("the zero series is not invertible")
    v = a.valuation
    c0 = a.lowest_coefficient()
    if not c0.is_unit():
        if not (rational and c0.is_monomial()):
            raise NotAUnitError(f"lowest coefficient {c0} is not a unit")
    c0_inv = c0.inverse()
    rel = a.order - v  # relative precision
    r = [a.coefficient(v + j) * c0_inv for j in range(rel + 1)]
    b = [LaurentPoly.one(a.variables)]
    for d in range(1, rel + 1):
        acc = LaurentPoly.zero(a.variables)
        for j in range(1, d + 1):
            if r[j] and b[d - j]:
                acc = acc + r[j] * b[d - j]
        b.append(-acc)
    coeffs = {d - v: bd * c0_inv for d, bd in enumerate(b) if bd}
    return QLaurentSeries(a.variables, a.order - 2 * v, coeffs, a.var)


def unit_certificate(a: QLaurentSeries) -> tuple[QLaurentSeries, QLaurentSeries]:
    """Return ``(b, a*b)`` so callers can check ``a*b == 1`` through the window."""
    b = qs_invert(a)
    return b, a * b
