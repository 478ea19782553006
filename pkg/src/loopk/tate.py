"""Base change of finitely presented ``Z[q, q^-1]``-modules to ``Z((q))``.

A module is given by ``generators`` and a list of relations; relation ``j``
is the column ``relations[j]`` of Laurent polynomials in ``q``.  A Laurent
polynomial is a unit in ``Z((q))`` exactly when its lowest coefficient is
``1`` or ``-1``, which drives the elimination below.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import InputError
from .laurent import LaurentPoly
from .qseries import QLaurentSeries, qs_invert

QVARS = ("q",)


def q_poly(text_or_poly) -> LaurentPoly:
    from .render import parse_poly

    if isinstance(text_or_poly, LaurentPoly):
        p = text_or_poly
    elif isinstance(text_or_poly, int):
        p = LaurentPoly.constant(QVARS, text_or_poly)
    else:
        p = parse_poly(str(text_or_poly), QVARS)
    if p.variables != QVARS:
        raise InputError(f"relations must be Laurent polynomials in q, got {p.variables}")
    if not p.is_integral():
        raise InputError("relations must have integer coefficients")
    return p


def _as_series(p: LaurentPoly, order: int) -> QLaurentSeries:
    return QLaurentSeries.from_poly(p, "q", order)


def is_tate_unit(p: LaurentPoly) -> bool:
    """Units of ``Z((q))`` among Laurent polynomials: lowest coefficient ``±1``."""
    if p.is_zero():
        return False
    low = min(p.support())
    return abs(p.coefficient(low)) == 1


@dataclass(frozen=True)
class TateModule:
    """A presentation over ``Z[q^±]`` with its verdict after base change to ``Z((q))``.

    ``verdict`` is ``"zero"``, ``"free"`` or ``"undecided"``.  A zero verdict
    carries an annihilator ``relation`` and a series ``inverse`` with
    ``relation * inverse = product``, a unit constant.
    """

    generators: int
    relations: tuple[tuple[LaurentPoly, ...], ...] = field(repr=False)
    q_order: int
    verdict: str
    rank: int | None
    certificate: dict = field(default_factory=dict, repr=False)
    basis: tuple[int, ...] = ()
    diagnostic: str = ""

    def report(self) -> dict:
        from .render import render_compact, render_series

        cert = {}
        for k, v in self.certificate.items():
            if isinstance(v, LaurentPoly):
                cert[k] = render_compact(v)
            elif isinstance(v, QLaurentSeries):
                cert[k] = render_series(v, show_order=True)
            else:
                cert[k] = v
        out = {
            "generators": self.generators,
            "relations": [[render_compact(p) for p in col] for col in self.relations],
            "q_order": self.q_order,
            "verdict": self.verdict,
            "rank": self.rank,
            "certificate": cert,
            "basis": list(self.basis),
        }
        if self.diagnostic:
            out["diagnostic"] = self.diagnostic
        return out


def khat_orbit(n_orbit: int, q_order: int) -> TateModule:
    """``K_T(T/C)`` after base change, for ``C`` of order ``n`` (``n = 0``: ``C`` trivial).

    For ``n >= 1`` the module is ``Z[q]/(q^n - 1)`` and the certificate is
    ``g = sum_k q^(nk)`` with ``(q^n - 1) g = -1``.  For the free orbit the
    module is ``Z[q^±]/(q - 1)`` with the same kind of certificate.
    """
    if not isinstance(n_orbit, int) or n_orbit < 0:
        raise InputError("orbit size must be a non-negative integer")
    if q_order < 0:
        raise InputError("q-order must be non-negative")
    step = n_orbit if n_orbit else 1
    q = LaurentPoly.gen(QVARS, "q")
    relation = q ** step - 1
    g = QLaurentSeries.geometric((), q_order, step)
    g_rel = g * _scalar_series(relation, q_order)
    minus_one = QLaurentSeries((), q_order, {0: -1})
    return TateModule(
        generators=1,
        relations=((relation,),),
        q_order=q_order,
        verdict="zero",
        rank=0,
        certificate={
            "relation": relation,
            "inverse": g,
            "product": -1,
            "verified": g_rel == minus_one,
        },
    )


def _scalar_series(p: LaurentPoly, order: int) -> QLaurentSeries:
    return QLaurentSeries((), order, {e[0]: c for e, c in p.items()})


def tate_base_change(generators: int, relations: Sequence[Sequence], q_order: int) -> TateModule:
    """Decide ``M (x) Z((q))`` for a presentation by unit-pivot elimination.

    Pivots are entries that are units in ``Z((q))``; clearing is fraction-free
    (rows are scaled by the unit pivot).  If nothing but zeros remains the
    result is free on the untouched generators, zero when there are none.
    Otherwise the verdict is ``"undecided"``.
    """
    if not isinstance(generators, int) or generators < 0:
        raise InputError("generator count must be a non-negative integer")
    if q_order < 0:
        raise InputError("q-order must be non-negative")
    cols = []
    for j, col in enumerate(relations):
        if len(col) != generators:
            raise InputError(f"relation {j} has {len(col)} entries, expected {generators}")
        cols.append([q_poly(x) for x in col])
    frozen = tuple(tuple(c) for c in cols)
    # matrix a[i][j]: generator i, relation j
    a = [[cols[j][i] for j in range(len(cols))] for i in range(generators)]
    live_rows = list(range(generators))
    live_cols = list(range(len(cols)))
    det = LaurentPoly.one(QVARS)
    pivots = []
    while True:
        pick = next(
            ((i, j) for i in live_rows for j in live_cols if is_tate_unit(a[i][j])),
            None,
        )
        if pick is None:
            break
        pi, pj = pick
        p = a[pi][pj]
        det = det * p
        pivots.append([pi, pj])
        for i in live_rows:
            if i == pi:
                continue
            f = a[i][pj]
            for j in live_cols:
                a[i][j] = p * a[i][j] - f * a[pi][j]
        live_rows.remove(pi)
        live_cols.remove(pj)
    rest = [(i, j) for i in live_rows for j in live_cols if not a[i][j].is_zero()]
    inverse = qs_invert(_scalar_series(det, q_order)) if pivots else None
    certificate = {"pivots": pivots}
    if pivots:
        certificate.update(
            {
                "unit_pivot_product": det,
                "inverse": inverse,
                "verified": (inverse * _scalar_series(det, q_order)).agrees(QLaurentSeries.one((), q_order)),
            }
        )
    if rest:
        return TateModule(
            generators,
            frozen,
            q_order,
            "undecided",
            None,
            certificate,
            diagnostic=(
                "1 nonzero entry without a unit pivot remains"
                if len(rest) == 1
                else f"{len(rest)} nonzero entries without a unit pivot remain"
            ),
        )
    rank = len(live_rows)
    return TateModule(
        generators,
        frozen,
        q_order,
        "zero" if rank == 0 else "free",
        rank,
        certificate,
        basis=tuple(live_rows),
    )


def presentation_from_json(payload) -> tuple[int, list[list]]:
    """``{"generators": r, "relations": [[...], ...]}`` with entries as text in ``q``."""
    if not isinstance(payload, dict) or "generators" not in payload:
        raise InputError('presentation JSON must look like {"generators": r, "relations": [...]}')
    rels = payload.get("relations", [])
    if not isinstance(rels, list) or not all(isinstance(c, list) for c in rels):
        raise InputError('"relations" must be a list of lists')
    return payload["generators"], rels
