"""Formal group laws, Euler classes of the loop normal bundle, and the sigma class.

Euler classes of line bundles follow the K-theory convention ``e(L) = 1 - L``
so that the multiplicative law ``F(x, y) = x + y - xy`` gives
``F(e(L), e(q^k)) = 1 - q^k L``.

Square roots of ``L`` are handled by a :class:`LineVariable`: coefficients are
Laurent polynomials in ``s`` with ``L = s^2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .errors import ComputationError, InputError, WindowError
from .laurent import LaurentPoly, normalize_coefficient
from .qseries import QLaurentSeries, qs_invert

Operand = Union[LaurentPoly, QLaurentSeries]


@dataclass(frozen=True)
class FormalGroupLaw:
    """``F(x, y) = sum c[i, j] x^i y^j`` known through total degree ``degree``.

    ``exact`` marks a polynomial law whose listed terms are all of ``F``.
    """

    kind: str
    coefficients: tuple[tuple[tuple[int, int], object], ...]
    degree: int
    exact: bool

    @property
    def coefficient_map(self) -> dict[tuple[int, int], object]:
        return dict(self.coefficients)

    def __call__(self, a: Operand, b: Operand) -> Operand:
        return fgl_sum(self, a, b)


def _law(kind, coeffs: Mapping[tuple[int, int], object], degree: int, exact: bool) -> FormalGroupLaw:
    clean = tuple(sorted((k, normalize_coefficient(v)) for k, v in coeffs.items() if v))
    return FormalGroupLaw(kind, clean, degree, exact)


def additive_fgl(degree: int = 8) -> FormalGroupLaw:
    return _law("additive", {(1, 0): 1, (0, 1): 1}, degree, True)


def multiplicative_fgl(degree: int = 8) -> FormalGroupLaw:
    return _law("multiplicative", {(1, 0): 1, (0, 1): 1, (1, 1): -1}, degree, True)


def custom_fgl(coefficients: Mapping[tuple[int, int], object], degree: int, exact: bool = False) -> FormalGroupLaw:
    """A law given by its coefficients through ``degree``, validated on construction."""
    coeffs = {}
    for (i, j), c in coefficients.items():
        if i < 0 or j < 0:
            raise InputError("exponents of a formal group law are non-negative")
        if i + j <= degree:
            coeffs[(int(i), int(j))] = c
    if exact and any(i + j > degree for i, j in coefficients):
        raise InputError("an exact law must fit in the stated degree")
    law = _law("custom", coeffs, degree, exact)
    problems = check_axioms(law)
    if problems:
        raise InputError("not a formal group law: " + "; ".join(problems))
    return law


def fgl_from_name(name: str, degree: int = 8) -> FormalGroupLaw:
    key = name.strip().lower()
    if key in ("add", "additive"):
        return additive_fgl(degree)
    if key in ("mult", "multiplicative"):
        return multiplicative_fgl(degree)
    raise InputError(f"unknown formal group law {name!r}; use add or mult")


def fgl_from_json(payload: Mapping) -> FormalGroupLaw:
    """``{"degree": D, "exact": bool, "terms": {"i,j": c}}`` with rational strings allowed."""
    try:
        degree = int(payload["degree"])
        terms = {}
        for key, val in payload["terms"].items():
            i, j = (int(t) for t in key.split(","))
            terms[(i, j)] = Fraction(str(val))
    except (KeyError, ValueError, TypeError, AttributeError) as exc:
        raise InputError(f"malformed formal group law: {exc}") from None
    return custom_fgl(terms, degree, bool(payload.get("exact", False)))


# bivariate truncated polynomials for axiom checks ------------------------


def _bi_mul(a: dict, b: dict, deg: int) -> dict:
    out: dict = {}
    for (i1, j1, k1), c1 in a.items():
        for (i2, j2, k2), c2 in b.items():
            key = (i1 + i2, j1 + j2, k1 + k2)
            if sum(key) <= deg:
                out[key] = out.get(key, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _bi_compose(law: FormalGroupLaw, a: dict, b: dict, deg: int) -> dict:
    """``F(a, b)`` for trivariate truncated polynomials ``a``, ``b`` without constant term."""
    apow = [{(0, 0, 0): 1}]
    bpow = [{(0, 0, 0): 1}]
    for _ in range(deg):
        apow.append(_bi_mul(apow[-1], a, deg))
        bpow.append(_bi_mul(bpow[-1], b, deg))
    out: dict = {}
    for (i, j), c in law.coefficients:
        if i + j > deg:
            continue
        for k, v in _bi_mul(apow[i], bpow[j], deg).items():
            out[k] = out.get(k, 0) + c * v
    return {k: v for k, v in out.items() if v}


def check_axioms(law: FormalGroupLaw) -> list[str]:
    """Unit, commutativity and associativity through the law's degree."""
    c = law.coefficient_map
    D = law.degree
    problems = []
    if c.get((1, 0)) != 1 or c.get((0, 1)) != 1:
        problems.append("linear term must be x + y")
    if c.get((0, 0)):
        problems.append("constant term must vanish")
    if any(i == 0 and j > 1 or j == 0 and i > 1 for (i, j) in c):
        problems.append("F(x, 0) must equal x")
    if any(c.get((j, i), 0) != v for (i, j), v in c.items()):
        problems.append("F must be symmetric")
    x, y, w = {(1, 0, 0): 1}, {(0, 1, 0): 1}, {(0, 0, 1): 1}
    left = _bi_compose(law, x, _bi_compose(law, y, w, D), D)
    right = _bi_compose(law, _bi_compose(law, x, y, D), w, D)
    if left != right:
        problems.append(f"associativity fails through degree {D}")
    return problems


# evaluation on classes ----------------------------------------------------


def _one_like(a: Operand) -> Operand:
    if isinstance(a, QLaurentSeries):
        return QLaurentSeries.one(a.variables, a.order, a.var)
    return LaurentPoly.one(a.variables)


def _valuation(a: Operand) -> int:
    if isinstance(a, QLaurentSeries):
        return a._val()
    raise InputError("a truncated formal group law needs series inputs with positive q-valuation")


def fgl_sum(law: FormalGroupLaw, a: Operand, b: Operand) -> Operand:
    """``F(a, b)``; exact for polynomial laws, otherwise truncated by precision."""
    if not law.exact:
        v = min(_valuation(a), _valuation(b))
        if v < 1:
            raise InputError("inputs to a truncated law need positive q-valuation")
        order = (law.degree + 1) * v - 1
        a = a.truncate(min(order, a.order))
        b = b.truncate(min(order, b.order))
    apow = [_one_like(a)]
    bpow = [_one_like(b)]
    top = max((max(i, j) for (i, j), _ in law.coefficients), default=1)
    for _ in range(top):
        apow.append(apow[-1] * a)
        bpow.append(bpow[-1] * b)
    out = None
    for (i, j), c in law.coefficients:
        term = apow[i] * bpow[j] * c
        out = term if out is None else out + term
    if out is None:
        raise ComputationError("empty formal group law")
    return out


def fgl_inverse(law: FormalGroupLaw, a: Operand) -> Operand:
    """Formal inverse ``i(a)`` with ``F(a, i(a)) = 0``."""
    if law.kind == "additive":
        return -a
    if law.kind == "multiplicative":
        den = 1 - a
        if isinstance(den, QLaurentSeries):
            return -a * qs_invert(den)
        if den.is_unit():
            return -a * den.inverse()
        raise ComputationError(f"1 - ({a}) is not a unit, so the inverse class is not a Laurent polynomial")
    # solve F(x, i) = 0 degree by degree: i = -x + ...
    D = law.degree
    v = _valuation(a)
    if v < 1:
        raise InputError("inputs to a truncated law need positive q-valuation")
    a = a.truncate(min(a.order, (D + 1) * v - 1))
    inv = {1: Fraction(-1)}
    c = law.coefficient_map
    for n in range(2, D + 1):
        # coefficient of x^n in F(x, i(x)) with i truncated below n, then fix
        trial = dict(inv)
        trial[n] = Fraction(0)
        val = _univariate_compose(c, trial, D)[n]
        inv[n] = -val
    series = None
    power = _one_like(a)
    for n in range(1, D + 1):
        power = power * a
        term = power * inv[n]
        series = term if series is None else series + term
    return series


def _univariate_compose(c: Mapping, inv: Mapping[int, Fraction], D: int) -> dict[int, Fraction]:
    """Coefficients of ``F(x, i(x))`` through ``x^D``."""

    def mul(p, q):
        out = {}
        for a, x in p.items():
            for b, y in q.items():
                if a + b <= D:
                    out[a + b] = out.get(a + b, 0) + x * y
        return out

    ipow = [{0: Fraction(1)}]
    for _ in range(D):
        ipow.append(mul(ipow[-1], inv))
    out = {n: Fraction(0) for n in range(D + 1)}
    for (i, j), v in c.items():
        for d, w in ipow[j].items():
            if i + d <= D:
                out[i + d] += v * w
    return out


def fgl_k_series(law: FormalGroupLaw, e: Operand, k: int) -> Operand:
    """``[k](e)``: the ``k``-fold formal sum, with ``[0] = 0`` and ``[-k] = i([k])``."""
    if k == 0:
        return e * 0
    if k < 0:
        return fgl_inverse(law, fgl_k_series(law, e, -k))
    acc = e
    for _ in range(k - 1):
        acc = fgl_sum(law, acc, e)
    return acc


# line variables -----------------------------------------------------------


@dataclass(frozen=True)
class LineVariable:
    """A line bundle class ``L`` carried by a square root ``s`` with ``L = s^2``."""

    name: str = "L"
    root: str = "s"

    @property
    def variables(self) -> tuple[str, ...]:
        return (self.root,)

    def s(self) -> LaurentPoly:
        return LaurentPoly.gen(self.variables, self.root)

    def L(self, power: int = 1) -> LaurentPoly:
        return LaurentPoly.monomial(self.variables, (2 * power,))

    def to_L(self, p: LaurentPoly) -> LaurentPoly:
        """Rewrite an ``s``-polynomial with even exponents in ``L``."""
        if any(e[0] % 2 for e in p.support()):
            raise InputError(f"{p} involves odd powers of {self.root}, not a polynomial in {self.name}")
        return p.map_exponents(lambda e: (e[0] // 2,), (self.name,))

    def from_L(self, p: LaurentPoly) -> LaurentPoly:
        return p.map_exponents(lambda e: (2 * e[0],), self.variables)

    def series_to_L(self, s: QLaurentSeries) -> QLaurentSeries:
        return s.map_coefficients(self.to_L, (self.name,))

    def invert_line(self, p: LaurentPoly) -> LaurentPoly:
        """Substitute ``L -> L^-1`` (``s -> s^-1``)."""
        return p.map_exponents(lambda e: (-e[0],))


def epsilon_unit(line: LineVariable, N: int) -> QLaurentSeries:
    """``prod_{k>=1} (1 - q^k L)(1 - q^k L^-1) / (1 - q^k)^2`` through ``q^N``.

    The numerator and the denominator are multiplied out separately and the
    denominator is inverted once.
    """
    if N < 1:
        raise InputError("q-order must be at least 1")
    vs = line.variables
    L, Linv = line.L(), line.L(-1)
    num = QLaurentSeries.one(vs, N)
    den = QLaurentSeries.one(vs, N)
    for k in range(1, N + 1):
        num = num * QLaurentSeries(vs, N, {0: 1, k: -L}) * QLaurentSeries(vs, N, {0: 1, k: -Linv})
        den = den * QLaurentSeries(vs, N, {0: 1, k: -1}) ** 2
    return num * qs_invert(den)


def sigma_class(line: LineVariable, N: int) -> QLaurentSeries:
    """``(s - s^-1) prod_k (L + L^-1 - q^k - q^-k) / (2 - q^k - q^-k)`` through ``q^N``.

    Each factor is a ratio of symmetric Laurent polynomials in ``q``; it is
    expanded on its own as a series before the factors are multiplied.
    """
    if N < 0:
        raise InputError("q-order must be non-negative")
    vs = line.variables
    s = line.s()
    w = line.L() + line.L(-1)
    out = QLaurentSeries(vs, N, {0: s - s ** -1})
    for k in range(1, N + 1):
        # exact Laurent ratio; shift both by q^k so the denominator starts at q^0
        order = N + k
        num = QLaurentSeries(vs, order, {0: -1, k: w, 2 * k: -1}).shift(-k)
        den = QLaurentSeries(vs, order, {0: -1, k: 2, 2 * k: -1}).shift(-k)
        factor = num * qs_invert(den)
        out = out * factor.truncate(N)
    return out


# loop normal bundle --------------------------------------------------------


@dataclass(frozen=True)
class LoopNormalModel:
    """``TM (x) (C[q, q^-1] / C)`` kept to Fourier modes ``0 < |k| <= cutoff``.

    ``roots`` names the Chern-root line variables; ``q_window`` is the highest
    q-degree reported.
    """

    roots: tuple[str, ...]
    cutoff: int
    q_window: int

    def __init__(self, roots: Sequence[str], cutoff: int, q_window: int | None = None):
        roots = tuple(roots)
        if cutoff < 1:
            raise InputError("Fourier cutoff must be at least 1")
        if len(set(roots)) != len(roots) or any(r in ("q", "t") for r in roots):
            raise InputError("root names must be distinct and differ from q and t")
        bad = [r for r in roots if not r.isidentifier()]
        if bad:
            raise InputError(f"root names must be identifiers, got {bad}")
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "cutoff", int(cutoff))
        need = len(roots) * max(cutoff * (cutoff + 1) // 2, 2 * cutoff)
        object.__setattr__(self, "q_window", need if q_window is None else int(q_window))

    @property
    def span(self) -> int:
        """Largest ``|q|``-degree in the raw product."""
        return len(self.roots) * self.cutoff * (self.cutoff + 1) // 2


def euler_normal_product(
    model: LoopNormalModel,
    law: FormalGroupLaw,
    normalized: bool = False,
) -> QLaurentSeries:
    """``prod_{i, 0 < |k| <= m} F(e(L_i), [k](e(q)))`` as an exact Laurent series.

    Multiplicative: factors ``1 - q^k L_i`` in the variable ``q``.  Additive:
    factors ``x_i + k t`` in the rotation class ``t``.  ``normalized`` divides
    each multiplicative factor by its lowest q-term, turning the ``k < 0``
    factors into ``1 - q^|k| L^-1`` so that truncations stabilize.
    """
    m = model.cutoff
    if law.kind == "multiplicative":
        var = "q"
    elif law.kind == "additive":
        var = "t"
    else:
        raise InputError("euler_normal_product supports the additive and multiplicative laws")
    if normalized and law.kind != "multiplicative":
        raise InputError("normalization is defined for the multiplicative law only")
    span = model.cutoff * (model.cutoff + 1) // 2 * len(model.roots)
    top = span if law.kind == "multiplicative" and not normalized else None
    if law.kind == "additive":
        top = 2 * m * len(model.roots)
    if normalized:
        top = span
    if model.q_window < top:
        raise WindowError(f"q-window {model.q_window} is below the product's top degree {top}")
    vs = model.roots + (var,)
    gens = LaurentPoly.gens(vs)
    rot = gens[-1]
    product = LaurentPoly.one(vs)
    for i, root in enumerate(model.roots):
        x = gens[i]
        for k in range(1, m + 1):
            if law.kind == "multiplicative":
                e_root = 1 - x
                pos = fgl_sum(law, e_root, fgl_k_series(law, 1 - rot, k))
                if normalized:
                    neg = 1 - rot ** k * x ** -1
                else:
                    neg = fgl_sum(law, e_root, fgl_k_series(law, 1 - rot, -k))
            else:
                pos = fgl_sum(law, x, fgl_k_series(law, rot, k))
                neg = fgl_sum(law, x, fgl_k_series(law, rot, -k))
            product = product * pos * neg
    return QLaurentSeries.from_poly(product, var, model.q_window)


# symmetric loop representations -------------------------------------------


@dataclass(frozen=True)
class SymmetricLoopRep:
    """``V = V^T + sum_{k != 0} V_k q^k`` with ``V_-k = V_k``.

    ``fixed`` lists the weights of ``V^T``; ``modes[k - 1]`` lists those of ``V_k``.
    Weights are any hashable labels (strings or exponent tuples).
    """

    fixed: tuple = ()
    modes: tuple[tuple, ...] = field(default=())

    def mode(self, k: int) -> tuple:
        k = abs(k)
        if k == 0:
            return self.fixed
        return self.modes[k - 1] if k <= len(self.modes) else ()


def loop_truncate(V: SymmetricLoopRep, m: int) -> list[tuple[object, int]]:
    """``V(m)`` as a list of ``(weight, q-degree)`` pairs."""
    if m < 0:
        raise InputError("truncation level must be non-negative")
    out = [(w, 0) for w in V.fixed]
    for k in range(1, m + 1):
        for w in V.mode(k):
            out.append((w, k))
            out.append((w, -k))
    return out


def spin_pairable(weights: Sequence[LaurentPoly], k: int) -> dict:
    """Pair the weights of ``W (x) (q^k + q^-k)`` as ``(w q^k, w q^-k)``.

    The determinant is then ``prod w^2`` with q-exponent zero, the square of
    ``prod w``.  Weights are monomials in a common variable list.
    """
    if k == 0:
        raise InputError("k must be nonzero")
    weights = list(weights)
    for w in weights:
        if not w.is_monomial():
            raise InputError(f"weight {w} is not a monomial")
    if weights:
        vs = weights[0].variables
        if any(w.variables != vs for w in weights):
            raise InputError("weights must share a variable list")
    else:
        vs = ()
    pairs = []
    det_q = 0
    det = LaurentPoly.one(vs)
    root = LaurentPoly.one(vs)
    for w in weights:
        pairs.append(((w, k), (w, -k)))
        det_q += k + (-k)
        det = det * w * w
        root = root * w
    return {
        "pairs": pairs,
        "det_q_exponent": det_q,
        "determinant": det,
        "square_root": root,
        "verified": root * root == det and det_q == 0,
    }
