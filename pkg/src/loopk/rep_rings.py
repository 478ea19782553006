"""Characters of the torus and of parabolic subgroups.

A torus character is a :class:`LaurentPoly` in ``u`` (rank 1) or ``u1..un``
followed by the central variable ``z``.  The exponent vector of a monomial is
``(lam, b)``: a weight in fundamental-weight coordinates and a level.  Affine
Weyl elements act on monomials as described in :mod:`loopk.affine_weyl`.

The pushforward ``induction(I, c)`` is holomorphic induction from the torus to
the parabolic ``H_I``, computed by the Weyl character formula::

    sum_w det(w) * e^(w(rho_I) - rho_I) * w(c)  /  prod_{alpha > 0 in I} (1 - e^-alpha)

where ``rho_I`` is half the sum of the positive roots of ``H_I``.  Those are
generated by the simple roots ``beta_j``, ``j`` in ``I``: ``alpha_j`` for
``j >= 1`` and ``beta_0 = ±theta`` (see :func:`zero_root_sign`).  For SU(2)
both parabolics have the positive root ``u^2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .affine_weyl import (
    ParabolicIndex,
    RootDatum,
    WeylElement,
    reflection_map,
    weyl_group,
)
from .errors import InputError, NotDivisibleError, ComputationError
from .laurent import LaurentPoly

MAX_WEYL_ORDER = 1024


def rep_variables(rank: int) -> tuple[str, ...]:
    if rank == 1:
        return ("u", "z")
    return tuple(f"u{i}" for i in range(1, rank + 1)) + ("z",)


def _index(I, rd: RootDatum) -> ParabolicIndex:
    return I if isinstance(I, ParabolicIndex) else ParabolicIndex(I, rd.rank)


def _check_vars(c: LaurentPoly, rd: RootDatum) -> None:
    if c.variables != rep_variables(rd.rank):
        raise InputError(f"character must be over {rep_variables(rd.rank)}, got {c.variables}")


def sym_power(c: LaurentPoly, k: int) -> LaurentPoly:
    """Character of ``Sym^k``; zero for ``k < 0``.

    Uses ``k h_k = sum_{i=1..k} p_i h_{k-i}`` with the Adams operations
    ``p_i = psi^i(c)``.
    """
    if k < 0:
        return LaurentPoly.zero(c.variables)
    h = [LaurentPoly.one(c.variables)]
    adams = [None] + [c.scale_exponents(i) for i in range(1, k + 1)]
    for n in range(1, k + 1):
        acc = LaurentPoly.zero(c.variables)
        for i in range(1, n + 1):
            acc = acc + adams[i] * h[n - i]
        h.append(acc * Fraction(1, n))
    return h[k]


def chebyshev_sym(s: LaurentPoly, k: int) -> LaurentPoly:
    """``Sym^k`` of a two-dimensional character ``s`` via ``U_{k+1} = s U_k - U_{k-1}``.

    For ``s = u + u^-1`` this agrees with :func:`sym_power`; it is the form
    used for polynomials in an abstract generator.
    """
    if k < 0:
        return LaurentPoly.zero(s.variables)
    prev, cur = LaurentPoly.zero(s.variables), LaurentPoly.one(s.variables)
    for _ in range(k):
        prev, cur = cur, s * cur - prev
    return cur


def weyl_act_element(w: WeylElement, c: LaurentPoly) -> LaurentPoly:
    n = len(w.matrix)
    return c.map_exponents(lambda e: w.act(e[:n], e[n]) + (e[n],))


def weyl_act(word: Sequence[int], c: LaurentPoly, rd: RootDatum) -> LaurentPoly:
    """Apply ``s_{w[0]} ... s_{w[-1]}`` (rightmost first) monomial-wise."""
    _check_vars(c, rd)
    n = rd.rank
    for i in reversed(list(word)):
        if not 0 <= i <= n:
            raise InputError(f"no reflection s_{i} in rank {n}")
        mat, tr = reflection_map(i, rd)

        def fn(e, mat=mat, tr=tr):
            lam, b = e[:n], e[n]
            return tuple(sum(r * x for r, x in zip(row, lam)) + b * t for row, t in zip(mat, tr)) + (b,)

        c = c.map_exponents(fn)
    return c


def _linear(w: WeylElement, v: Sequence[int]) -> tuple[int, ...]:
    return w.act(v, 0)


@dataclass(frozen=True)
class _InductionData:
    group: tuple[WeylElement, ...]
    positive_roots: tuple[tuple[int, ...], ...]
    two_rho: tuple[int, ...]


def zero_root_sign(rd: RootDatum) -> int:
    """Sign of ``theta`` in the simple root ``beta_0`` attached to ``alpha_0``.

    In rank 1 no proper parabolic contains both reflections and ``beta_0 =
    +theta`` gives the usual tables.  From rank 2 on the simple roots of every
    ``H_I`` must come from one affine simple system, which forces ``-theta``;
    with ``+theta`` induction in stages fails.
    """
    return 1 if rd.rank == 1 else -1


def simple_roots_of(I, rd: RootDatum) -> tuple[tuple[int, ...], ...]:
    I = _index(I, rd)
    sign = zero_root_sign(rd)
    out = []
    for i in I:
        if i == 0:
            out.append(tuple(sign * x for x in rd.highest_root_weight))
        else:
            out.append(rd.simple_roots[i - 1])
    return tuple(out)


@lru_cache(maxsize=None)
def _induction_data(I: ParabolicIndex, rd: RootDatum) -> _InductionData:
    group = weyl_group(I, rd, limit=MAX_WEYL_ORDER)
    n = rd.rank
    simple = simple_roots_of(I, rd)
    roots = set()
    for w in group:
        for g in simple:
            roots.add(_linear(w, g))
    # positive roots: closure of the simple ones under adding simple roots
    pos = set(simple)
    frontier = list(simple)
    while frontier:
        r = frontier.pop()
        for b in simple:
            t = tuple(x + y for x, y in zip(r, b))
            if t in roots and t not in pos:
                pos.add(t)
                frontier.append(t)
    if 2 * len(pos) != len(roots):
        raise ComputationError("root subsystem does not split into positive and negative halves")
    pos = tuple(sorted(pos))
    two_rho = tuple(sum(r[j] for r in pos) for j in range(n))
    return _InductionData(tuple(group), pos, two_rho)


def weyl_denominator(I, rd: RootDatum) -> LaurentPoly:
    """``prod_{alpha in Phi_I^+} (1 - e^-alpha)``."""
    I = _index(I, rd)
    data = _induction_data(I, rd)
    vs = rep_variables(rd.rank)
    out = LaurentPoly.one(vs)
    for r in data.positive_roots:
        out = out * (1 - LaurentPoly.monomial(vs, tuple(-x for x in r) + (0,)))
    return out


def induction(I, c: LaurentPoly, rd: RootDatum) -> LaurentPoly:
    """Holomorphic induction ``phi_I`` from the torus to ``H_I``."""
    I = _index(I, rd)
    _check_vars(c, rd)
    data = _induction_data(I, rd)
    vs = c.variables
    n = rd.rank
    num = LaurentPoly.zero(vs)
    for w in data.group:
        w_two_rho = _linear(w, data.two_rho)
        shift = []
        for a, b in zip(w_two_rho, data.two_rho):
            if (a - b) % 2:
                raise ComputationError("rho shift is not integral")
            shift.append((a - b) // 2)
        twist = LaurentPoly.monomial(vs, tuple(shift) + (0,), w.det)
        num = num + twist * weyl_act_element(w, c)
    den = weyl_denominator(I, rd)
    try:
        return num.exact_divide(den)
    except NotDivisibleError as exc:
        raise ComputationError(f"Weyl numerator not divisible by the denominator for I={I}") from exc


def invariance_check(I, c: LaurentPoly, rd: RootDatum) -> bool:
    """True iff every element of ``W_I`` fixes ``c``."""
    I = _index(I, rd)
    _check_vars(c, rd)
    # generators suffice
    return all(weyl_act([i], c, rd) == c for i in I)


def restrict(I, c: LaurentPoly, rd: RootDatum) -> LaurentPoly:
    """Restriction ``K_{H_I} -> K_T``; rejects elements that are not ``W_I``-invariant."""
    if not invariance_check(I, c, rd):
        raise InputError(f"{c} is not invariant under W_{_index(I, rd)}")
    return c


@dataclass(frozen=True)
class ParabolicRing:
    """Invariant subring ``K_{H_I}`` of the torus ring, with named generators."""

    index: ParabolicIndex
    datum: RootDatum

    @property
    def variables(self) -> tuple[str, ...]:
        return rep_variables(self.datum.rank)

    def generators(self) -> dict[str, LaurentPoly]:
        """Distinguished generators: a central unit and the fundamental characters.

        The central unit is ``z`` twisted so that ``W_I`` fixes it (``z/u``
        for SU(2) with ``I = {0}``); the other generators are orbit sums of
        the fundamental weights, which generate the invariants over the
        central unit for SU(2).
        """
        rd, I = self.datum, self.index
        vs = self.variables
        n = rd.rank
        out = {"central": central_unit(I, rd)}
        for j in range(n):
            lam = tuple(int(i == j) for i in range(n))
            out[f"omega{j + 1}"] = orbit_sum(I, lam + (0,), rd)
        return out

    def contains(self, c: LaurentPoly) -> bool:
        return invariance_check(self.index, c, self.datum)


def orbit_sum(I, exponent: Sequence[int], rd: RootDatum) -> LaurentPoly:
    """Sum of the distinct monomials in the ``W_I``-orbit of ``exponent``."""
    I = _index(I, rd)
    vs = rep_variables(rd.rank)
    n = rd.rank
    e = tuple(exponent)
    orbit = {w.act(e[:n], e[n]) + (e[n],) for w in weyl_group(I, rd)}
    return LaurentPoly(vs, {o: 1 for o in orbit})


def central_unit(I, rd: RootDatum) -> LaurentPoly:
    """A ``W_I``-invariant monomial of level 1: ``z * e^lam`` with ``lam`` fixed by ``W_I``.

    Exists when ``0`` is not in ``I`` (take ``z``) or when the rank-one
    system makes the fixed-point equation solvable; raises otherwise.
    """
    I = _index(I, rd)
    n = rd.rank
    vs = rep_variables(n)
    if 0 not in I:
        return LaurentPoly.gen(vs, "z")
    # s_i fixes (lam, 1) iff lam_i = 0 for i >= 1 and <theta^vee, lam> = -1
    free = [j for j in range(n) if (j + 1) not in I]
    for j in free:
        if rd.comarks[j] == 1:
            lam = [0] * n
            lam[j] = -1
            return LaurentPoly.monomial(vs, tuple(lam) + (1,))
    raise InputError(f"no invariant level-one monomial for I={I}")


def z_degrees(c: LaurentPoly) -> list[int]:
    return sorted({e[-1] for e in c.support()})


def z_component(c: LaurentPoly, m: int) -> LaurentPoly:
    return LaurentPoly(c.variables, {e: a for e, a in c.items() if e[-1] == m})


def render_factored(I, c: LaurentPoly, rd: RootDatum) -> str:
    """Render as ``(unit)^m·(rest)`` per z-degree, e.g. ``(z/u)^3·(u^3+u+u^-1+u^-3)``.

    The unit is ``z`` for ``0 not in I`` and ``z/u`` otherwise (rank one);
    negative degrees use the inverse unit ``(u/z)`` or ``z^-1``.
    """
    from .render import render_compact

    I = _index(I, rd)
    if c.is_zero():
        return "0"
    n = rd.rank
    vs = c.variables
    try:
        unit = central_unit(I, rd)
    except InputError:
        unit = LaurentPoly.gen(vs, "z")
    (ue, _), = unit.items()
    pieces = []
    for m in sorted(z_degrees(c), reverse=True):
        piece = z_component(c, m)
        rest = piece.map_exponents(lambda e: tuple(x - m * y for x, y in zip(e, ue)))
        pieces.append(_unit_power(ue, m, vs) + ("·(" + render_compact(rest) + ")" if rest != 1 else ""))
    return " + ".join(pieces)


def _unit_power(ue, m, vs) -> str:
    from .render import render_compact

    if m == 0:
        return "1"
    base_poly = LaurentPoly.monomial(vs, ue) if m > 0 else LaurentPoly.monomial(vs, tuple(-x for x in ue))
    k = abs(m)
    text = render_compact(base_poly)
    # name the twisted unit as a quotient, e.g. z*u^-1 -> z/u
    nums = [v if e == 1 else f"{v}^{e}" for v, e in zip(vs, base_poly.support()[0]) if e > 0]
    dens = [v if e == -1 else f"{v}^{-e}" for v, e in zip(vs, base_poly.support()[0]) if e < 0]
    if dens:
        text = f"({'*'.join(nums) or '1'}/{'*'.join(dens)})"
    return text if k == 1 else f"{text}^{k}"


def sym_u(k: int, variables: Sequence[str] = ("u", "z")) -> LaurentPoly:
    """``Sym^k(u + u^-1) = u^k + u^(k-2) + ... + u^-k`` over ``variables``."""
    u = LaurentPoly.gen(variables, variables[0])
    return sym_power(u + u ** -1, k)


def closed_form_su2(family: str, k: int) -> LaurentPoly:
    """Closed forms of the SU(2) pushforwards for ``k > 0``.

    ``family`` is one of ``"phi1(z^k)"``, ``"phi1(z^k/u)"``, ``"phi0(z^k)"``,
    ``"phi0(z^k/u)"``, ``"phi0(z^-k)"``, ``"phi0(z^-k/u)"``.
    """
    vs = ("u", "z")
    u, z = LaurentPoly.gens(vs)
    if family == "phi1(z^k)":
        return z ** k
    if family == "phi1(z^k/u)":
        return LaurentPoly.zero(vs)
    if family == "phi0(z^k)":
        return (z / u) ** k * sym_u(k)
    if family == "phi0(z^k/u)":
        return (z / u) ** k * sym_u(k - 1)
    if family == "phi0(z^-k)":
        return -((u / z) ** k) * sym_u(k - 2)
    if family == "phi0(z^-k/u)":
        return -((u / z) ** k) * sym_u(k - 1)
    raise InputError(f"unknown family {family!r}")


def family_input(family: str, k: int) -> LaurentPoly:
    """The torus monomial each closed-form family is the pushforward of."""
    vs = ("u", "z")
    u, z = LaurentPoly.gens(vs)
    sign = -1 if "z^-k" in family else 1
    c = z ** (sign * k)
    return c * u ** -1 if "/u" in family else c


FAMILIES = ("phi1(z^k)", "phi1(z^k/u)", "phi0(z^k)", "phi0(z^k/u)", "phi0(z^-k)", "phi0(z^-k/u)")


def family_parabolic(family: str) -> tuple[int, ...]:
    return (1,) if family.startswith("phi1") else (0,)


def parse_character(text: str, rd: RootDatum) -> LaurentPoly:
    from .render import parse_poly

    return parse_poly(text, rep_variables(rd.rank))


def weyl_character(I, lam: Iterable[int], rd: RootDatum) -> LaurentPoly:
    """``phi_I(e^lam)`` at level 0, the character of the ``H_I``-module with extremal weight ``lam``."""
    lam = tuple(lam)
    return induction(I, LaurentPoly.monomial(rep_variables(rd.rank), lam + (0,)), rd)
