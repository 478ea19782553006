"""Exact multivariate Laurent polynomials.

A :class:`LaurentPoly` is an immutable map from integer exponent vectors to
nonzero exact coefficients (``int`` or :class:`fractions.Fraction`), together
with an ordered tuple of variable names.  Everything is exact; floats are
rejected at construction.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import InputError, NotAUnitError, NotDivisibleError

Exponent = tuple[int, ...]


def normalize_coefficient(c):
    """Return ``c`` as an ``int`` when integral, else a reduced ``Fraction``."""
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        c = Fraction(c.numerator, c.denominator)
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction)) or (isinstance(x, Rational) and not isinstance(x, bool))


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def _sub_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


class LaurentPoly:
    """Exact Laurent polynomial in an ordered list of variables.

    >>> u, z = LaurentPoly.gens(("u", "z"))
    >>> (u + u**-1) * (u + u**-1)
    LaurentPoly('u^2 + 2 + u^-2', variables=('u', 'z'))
    """

    __slots__ = ("variables", "_terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, object] | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise InputError(f"repeated variable names in {variables}")
        n = len(variables)
        clean: dict[Exponent, object] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n:
                raise InputError(f"exponent {e} does not match arity {n} of {variables}")
            c = normalize_coefficient(c)
            if c:
                clean[e] = c
        self.variables = variables
        self._terms = clean
        self._hash = None

    # construction helpers -------------------------------------------------

    @classmethod
    def _raw(cls, variables: tuple[str, ...], terms: dict) -> "LaurentPoly":
        # trusted path: exponents valid, coefficients normalized and nonzero
        obj = cls.__new__(cls)
        obj.variables = variables
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "LaurentPoly":
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, variables: Sequence[str], c=1) -> "LaurentPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def one(cls, variables: Sequence[str]) -> "LaurentPoly":
        return cls.constant(variables, 1)

    @classmethod
    def monomial(cls, variables: Sequence[str], exponent: Sequence[int], c=1) -> "LaurentPoly":
        return cls(variables, {tuple(exponent): c})

    @classmethod
    def gen(cls, variables: Sequence[str], name: str) -> "LaurentPoly":
        variables = tuple(variables)
        i = variables.index(name)
        e = [0] * len(variables)
        e[i] = 1
        return cls(variables, {tuple(e): 1})

    @classmethod
    def gens(cls, variables: Sequence[str]) -> tuple["LaurentPoly", ...]:
        return tuple(cls.gen(variables, v) for v in variables)

    # basic protocol -------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def terms(self) -> Iterator[tuple[Exponent, object]]:
        """Terms in canonical order: exponent vectors lexicographically descending."""
        for e in sorted(self._terms, reverse=True):
            yield e, self._terms[e]

    def items(self):
        return self._terms.items()

    def support(self) -> list[Exponent]:
        return sorted(self._terms, reverse=True)

    def coefficient(self, exponent: Sequence[int]):
        return self._terms.get(tuple(exponent), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {(0,) * self.nvars}

    def constant_term(self):
        return self._terms.get((0,) * self.nvars, 0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_unit(self) -> bool:
        """True for ``±1`` times a monomial, the units of the integral Laurent ring."""
        if len(self._terms) != 1:
            return False
        (c,) = self._terms.values()
        return c == 1 or c == -1

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.variables == other.variables and self._terms == other._terms
        if _is_scalar(other):
            c = normalize_coefficient(other)
            if c == 0:
                return not self._terms
            return self._terms == {(0,) * self.nvars: c}
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r}, variables={self.variables!r})"

    def __str__(self) -> str:
        from .render import render_poly

        return render_poly(self)

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.variables != self.variables:
                raise InputError(f"variable lists differ: {self.variables} vs {other.variables}")
            return other
        if _is_scalar(other):
            return LaurentPoly.constant(self.variables, other)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = normalize_coefficient(s)
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            c = normalize_coefficient(other)
            if c == 0:
                return LaurentPoly.zero(self.variables)
            return LaurentPoly._raw(
                self.variables, {e: normalize_coefficient(a * c) for e, a in self._terms.items()}
            )
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[Exponent, object] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = _add_exp(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._raw(
            self.variables, {e: normalize_coefficient(c) for e, c in out.items() if c}
        )

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = LaurentPoly.one(self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if _is_scalar(other):
            return self * (1 / Fraction(normalize_coefficient(other)))
        if isinstance(other, LaurentPoly):
            return self.exact_divide(other)
        return NotImplemented

    def inverse(self) -> "LaurentPoly":
        """Inverse of a monomial; integral coefficients must be ``±1``."""
        if len(self._terms) != 1:
            raise NotAUnitError(f"{self} is not a monomial")
        ((e, c),) = self._terms.items()
        if isinstance(c, int) and c not in (1, -1):
            raise NotAUnitError(f"{self} has non-unit integer coefficient")
        return LaurentPoly._raw(
            self.variables, {tuple(-x for x in e): normalize_coefficient(Fraction(1) / c)}
        )

    def scale_exponents(self, factor: int) -> "LaurentPoly":
        """Adams-type substitution ``x_i -> x_i**factor`` for every variable."""
        return self.map_exponents(lambda e: tuple(factor * x for x in e))

    def map_exponents(self, fn: Callable[[Exponent], Sequence[int]], variables=None) -> "LaurentPoly":
        """Apply ``fn`` to every exponent vector, collecting like terms."""
        variables = self.variables if variables is None else tuple(variables)
        out: dict[Exponent, object] = {}
        for e, c in self._terms.items():
            f = tuple(fn(e))
            out[f] = out.get(f, 0) + c
        return LaurentPoly(variables, out)

    def map_coefficients(self, fn: Callable) -> "LaurentPoly":
        return LaurentPoly(self.variables, {e: fn(c) for e, c in self._terms.items()})

    def with_variables(self, variables: Sequence[str]) -> "LaurentPoly":
        """Re-express over another variable list (missing variables get exponent 0)."""
        variables = tuple(variables)
        index = {v: i for i, v in enumerate(self.variables)}
        for v in self.variables:
            if v not in variables and any(e[index[v]] for e in self._terms):
                raise InputError(f"variable {v!r} occurs but is dropped")
        pick = [index.get(v) for v in variables]
        return LaurentPoly._raw(
            variables,
            {tuple(0 if i is None else e[i] for i in pick): c for e, c in self._terms.items()},
        )

    def substitute(self, values: Mapping[str, object]) -> "LaurentPoly":
        """Substitute exact scalars for some variables; they stay in the variable list."""
        idx = {self.variables.index(v): normalize_coefficient(x) for v, x in values.items()}
        out: dict[Exponent, object] = {}
        for e, c in self._terms.items():
            val = c
            for i, x in idx.items():
                if e[i] < 0:
                    val = val * Fraction(1) / Fraction(x) ** (-e[i])
                else:
                    val = val * x ** e[i]
            f = tuple(0 if i in idx else x for i, x in enumerate(e))
            out[f] = out.get(f, 0) + val
        return LaurentPoly(self.variables, out)

    def degree_bounds(self) -> tuple[Exponent, Exponent]:
        """Coordinatewise minimum and maximum exponents (nonzero polynomials only)."""
        if not self._terms:
            raise InputError("zero polynomial has no degree bounds")
        es = list(self._terms)
        lo = tuple(min(e[i] for e in es) for i in range(self.nvars))
        hi = tuple(max(e[i] for e in es) for i in range(self.nvars))
        return lo, hi

    def leading_term(self) -> tuple[Exponent, object]:
        e = max(self._terms)
        return e, self._terms[e]

    def exact_divide(self, den: "LaurentPoly") -> "LaurentPoly":
        """Quotient ``q`` with ``q * den == self``; raises :class:`NotDivisibleError` otherwise.

        Greedy lex-leading-term division.  Exponents of an exact quotient are
        confined to the box ``[lo(num) - lo(den), hi(num) - hi(den)]``, which
        bounds the loop and yields a remainder witness when division fails.
        """
        den = self._coerce(den)
        if not den:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._terms:
            return LaurentPoly.zero(self.variables)
        lo_n, hi_n = self.degree_bounds()
        lo_d, hi_d = den.degree_bounds()
        qlo = _sub_exp(lo_n, lo_d)
        qhi = _sub_exp(hi_n, hi_d)
        lead_e, lead_c = den.leading_term()
        den_terms = list(den._terms.items())
        rem = dict(self._terms)
        quotient: dict[Exponent, object] = {}
        while rem:
            e = max(rem)
            c = rem[e]
            qe = _sub_exp(e, lead_e)
            if any(a < l or a > h for a, l, h in zip(qe, qlo, qhi)):
                break
            if isinstance(c, int) and isinstance(lead_c, int):
                if c % lead_c:
                    break
                qc = c // lead_c
            else:
                qc = normalize_coefficient(Fraction(c) / Fraction(lead_c))
            quotient[qe] = qc
            for de, dc in den_terms:
                f = _add_exp(qe, de)
                s = rem.get(f, 0) - qc * dc
                if s:
                    rem[f] = normalize_coefficient(s)
                else:
                    rem.pop(f, None)
        if rem:
            r = LaurentPoly._raw(self.variables, rem)
            raise NotDivisibleError(
                f"{self} is not divisible by {den}; remainder {r}",
                remainder=r,
                quotient=LaurentPoly._raw(self.variables, quotient),
            )
        return LaurentPoly._raw(self.variables, quotient)


def lp_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    """``a + b`` or ``a * b``; the variable lists must agree."""
    if a.variables != b.variables:
        raise InputError(f"variable lists differ: {a.variables} vs {b.variables}")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise InputError(f"unknown operation {op!r}")


def lp_exact_divide(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    return num.exact_divide(den)


def lp_sum(polys: Iterable[LaurentPoly], variables: Sequence[str]) -> LaurentPoly:
    total = LaurentPoly.zero(variables)
    for p in polys:
        total = total + p
    return total
