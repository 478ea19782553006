"""Acceptance criteria 1-10.

Each test records a single pass/fail line, shown in the terminal summary
(and printed directly with ``-s``).
"""

import random
import time
from fractions import Fraction

import sympy

from conftest import ACCEPTANCE_LINES
from oracles import sigma_density_oracle
from loopk import (
    AlcovePoint,
    LaurentPoly,
    LineVariable,
    affine_fold,
    alcove_face,
    apply_word,
    colimit_cokernel,
    conjecture_check,
    directed_colimit_mult,
    epsilon_unit,
    fgl_sum,
    induction,
    multiplicative_fgl,
    root_datum,
    sigma_class,
    stabilize,
    sym_power,
)
from loopk.affine_weyl import reflect_point
from loopk.genus import (
    ChernData,
    a_hat_genus,
    euler_characteristic,
    projective_space,
    series_as_fractions,
    tft_invariant,
    witten_genus,
)
from loopk.rep_rings import rep_variables
from loopk.tate import khat_orbit
from loopk.verlinde import s_relation_check

SU2 = root_datum("su2")


def record(n, ok, detail):
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[n] = line
    print(line)
    assert ok, line


# 1 ----------------------------------------------------------------------------


def test_criterion_01_pushforward_tables():
    u, z = LaurentPoly.gens(rep_variables(SU2.rank))
    s = lambda k: sym_power(u + u ** -1, k)
    cases = []
    for k in range(1, 9):
        cases += [
            ([1], z ** k, z ** k),
            ([1], z ** k * u ** -1, LaurentPoly.zero(u.variables)),
            ([0], z ** k, (z / u) ** k * s(k)),
            ([0], z ** k * u ** -1, (z / u) ** k * s(k - 1)),
            ([0], z ** -k, -((u / z) ** k) * s(k - 2)),
            ([0], z ** -k * u ** -1, -((u / z) ** k) * s(k - 1)),
        ]
    start = time.perf_counter()
    bad = [(I, x) for I, x, want in cases if induction(I, x, SU2) != want]
    elapsed = time.perf_counter() - start
    record(1, not bad and elapsed < 1.0, f"{len(cases) - len(bad)}/{len(cases)} table entries, {elapsed:.3f}s (< 1s)")


# 2 ----------------------------------------------------------------------------


def test_criterion_02_colimit_pieces():
    degrees = [m for m in range(-8, 9) if abs(m) >= 2]
    start = time.perf_counter()
    bad = []
    for m in degrees:
        pres = stabilize(SU2, m, abs(m) + 8)
        rel = s_relation_check(m)
        ok = (
            pres.stabilized
            and pres.rank == abs(m) - 1
            and pres.torsion == ()
            and rel["annihilated"]
            and rel["charpoly_matches"]
        )
        if not ok:
            bad.append(m)
    elapsed = time.perf_counter() - start
    record(2, not bad and elapsed < 10.0, f"free of rank |m|-1 with Sym relation for {len(degrees) - len(bad)}/{len(degrees)} degrees, {elapsed:.2f}s (< 10s)")


# 3 ----------------------------------------------------------------------------


def test_criterion_03_rank_check():
    rep = conjecture_check(6)
    ranks = {row["degree"]: row["rank"] for row in rep["degrees"]}
    expected = {m: (abs(m) - 1 if abs(m) >= 2 else 0) for m in range(-8, 9) if m}
    ok = rep["pass"] and all(ranks.get(m) == r for m, r in expected.items())
    ok = ok and all(colimit_cokernel(SU2, m, 4).rank == 0 for m in (1, -1))
    record(3, ok, "rank at degree n is |n|-1 for 2 <= |n| <= 8 and 0 at |n| = 1")


# 4 ----------------------------------------------------------------------------


def test_criterion_04_sigma_identity():
    line = LineVariable()
    sig = sigma_class(line, 20)
    rhs = epsilon_unit(line, 20) * (line.s() - line.s() ** -1)
    in_window = all(abs(e[0]) <= 2 * 20 + 1 for d in range(21) for e in sig.coefficient(d).support())
    equal = all(sig.coefficient(d) == rhs.coefficient(d) for d in range(21))
    record(4, equal and in_window, "sigma = (s - s^-1) eps through q^20, L-exponents within +-20")


# 5 ----------------------------------------------------------------------------


def test_criterion_05_todd_identity():
    L, q = LaurentPoly.gens(("L", "q"))
    law = multiplicative_fgl()
    bad = [k for k in range(1, 11) if fgl_sum(law, 1 - L, 1 - q ** k) != 1 - q ** k * L]
    record(5, not bad, "F(1 - L, 1 - q^k) = 1 - q^k L for k = 1..10")


# 6 ----------------------------------------------------------------------------


def test_criterion_06_localization():
    bad = []
    for n in range(0, 11):
        mod = khat_orbit(n, 100)
        g = mod.certificate["inverse"]
        rel = mod.certificate["relation"]
        rows = {e[0]: c for e, c in rel.items()}
        # (q^n - 1) g = -1, coefficientwise through q^100
        prod = [sum(rows.get(i, 0) * g.coefficient(d - i).constant_term() for i in rows if 0 <= d - i) for d in range(101)]
        if mod.verdict != "zero" or prod != [-1] + [0] * 100:
            bad.append(n)
    record(6, not bad, "khat orbits n = 1..10 and the free orbit vanish, (q^n - 1) g = -1 through q^100")


# 7 ----------------------------------------------------------------------------


def a_hat_oracle_projective(n):
    x = sympy.Symbol("x")
    expr = sympy.series((x / 2 / sympy.sinh(x / 2)) ** (n + 1), x, 0, n + 1).removeO()
    return Fraction(str(sympy.expand(expr).coeff(x, n)))


def test_criterion_07_genus_cross_checks():
    k3 = ChernData(2, {"c1^2": 0, "c2": 24})
    oracle = {
        "CP1": (projective_space(1), a_hat_oracle_projective(1)),
        "CP2": (projective_space(2), a_hat_oracle_projective(2)),
        # first multiplicative-sequence term: -p1/24 with p1 = c1^2 - 2 c2
        "K3": (k3, Fraction(-(0 - 2 * 24), 24)),
    }
    ok = all(series_as_fractions(witten_genus(M, 0))[0] == want for M, want in oracle.values())
    ok = ok and [a for a in (a_hat_genus(M) for M, _ in oracle.values())] == [0, Fraction(-1, 8), 2]
    # K3 has p2 = sum x_i^2 = -48; the even density contributes d_2 p2 in degree 2
    d2 = sigma_density_oracle(2, 4)[2]
    k3_series = series_as_fractions(witten_genus(k3, 4))
    ok = ok and k3_series == [-48 * c for c in d2]
    record(7, ok, f"A-hat on CP1, CP2, K3 = 0, -1/8, 2; K3 series {[str(c) for c in k3_series]} matches product oracle")


# 8 ----------------------------------------------------------------------------


MANIFOLDS = {
    "point": ChernData.point(),
    "CP1": projective_space(1),
    "CP2": projective_space(2),
    "K3": ChernData(2, {"c1^2": 0, "c2": 24}),
    "T4": ChernData(2, {"c1^2": 0, "c2": 0}),
    "CP3": projective_space(3),
    "CP4": projective_space(4),
}


def test_criterion_08_tft():
    ok = True
    notes = []
    for name, M in MANIFOLDS.items():
        ok = ok and tft_invariant(M, 0, 10) == witten_genus(M, 10)
        g1 = series_as_fractions(tft_invariant(M, 1, 10))
        ok = ok and all(c == 0 for c in g1[1:])
        notes.append(f"{name} {g1[0]} vs chi {euler_characteristic(M)}")
    record(8, ok, "g=0 is the Witten genus, g=1 is q-independent; g=1 vs chi (reported): " + ", ".join(notes))


# 9 ----------------------------------------------------------------------------


def brute_force_face(p, rd, max_len=12):
    seen, frontier = {p}, [p]
    found = [p] if alcove_face(p, rd) is not None else []
    for _ in range(max_len):
        if found:
            break
        nxt = []
        for x in frontier:
            for i in range(rd.rank + 1):
                y = reflect_point(i, x, rd)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if alcove_face(y, rd) is not None:
                        found.append(y)
        frontier = nxt
    return found


def test_criterion_09_folding():
    rng = random.Random(20261015)
    data = [root_datum(k) for k in ("su2", "su3", "B2", "G2")]
    failures, checked = 0, 0
    for _ in range(1000):
        rd = rng.choice(data)
        p = AlcovePoint([Fraction(rng.randint(-24, 24), rng.randint(1, 12)) for _ in range(rd.rank)])
        q, word = affine_fold(p, rd)
        face = alcove_face(q, rd)
        good = face is not None and apply_word(word, q, rd) == p and affine_fold(q, rd) == (q, [])
        fixed = tuple(i for i in range(rd.rank + 1) if reflect_point(i, q, rd) == q)
        good = good and face.indices == fixed
        if good and len(word) <= 12:
            # the orbit search reaches the alcove only within its depth
            reps = brute_force_face(p, rd)
            good = len(set(reps)) == 1 and reps[0] == q
            checked += 1
        failures += not good
    record(
        9,
        failures == 0,
        f"1000 points fold, words verify, idempotent, faces match their stabilizers; "
        f"{checked} within 12 reflections also matched by orbit search",
    )


# 10 ---------------------------------------------------------------------------


def test_criterion_10_directed_colimit():
    t = lambda k: LaurentPoly.monomial(("t",), (k,))
    bad = [k for k in range(0, 6) if directed_colimit_mult(t(1), t(-k)) != {"member": True, "stage": k, "representative": t(0)}]
    record(10, not bad, "t^-k lies in the colimit under t with stage k for k <= 5")
