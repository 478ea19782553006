import itertools

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from loopk import (
    InputError,
    LaurentPoly,
    StabilizationError,
    WindowError,
    colimit_class,
    colimit_cokernel,
    conjecture_check,
    directed_colimit_mult,
    fusion_ring_su2,
    induction,
    poset_colimit,
    rank_report,
    root_datum,
    stabilize,
    verlinde_rank,
)
from loopk.rep_rings import rep_variables
from loopk.verlinde import certify_kernel_relations, dot_reflect, s_relation_check

from strategies import laurent

SU2 = root_datum("su2")
SU3 = root_datum("su3")


# the SU(2) cokernel


def test_degree_two_rank_one():
    pres = colimit_cokernel(SU2, 2, 4)
    assert pres.rank == 1 and pres.torsion == ()


def test_degree_minus_three_rank_two():
    assert colimit_cokernel(SU2, -3, 5).rank == 2


def test_degree_one_vanishes():
    pres = colimit_cokernel(SU2, 1, 3)
    assert pres.rank == 0 and pres.torsion == ()


def test_preconditions():
    with pytest.raises(InputError):
        colimit_cokernel(SU2, 0, 4)
    with pytest.raises(WindowError):
        colimit_cokernel(SU2, 3, 4)
    with pytest.raises(InputError):
        stabilize(SU2, 2, 2)
    with pytest.raises(InputError):
        colimit_cokernel(SU3, 2, 4)


def test_stabilize_examples():
    pres = stabilize(SU2, 2, 10)
    assert pres.stabilized and pres.rank == 1
    assert stabilize(SU2, 5, 12).rank == 4


@pytest.mark.parametrize("m", [m for m in range(-8, 9) if m])
def test_ranks_and_torsion(m):
    pres = stabilize(SU2, m, abs(m) + 6)
    assert pres.rank == max(abs(m) - 1, 0)
    assert pres.torsion == ()


@pytest.mark.parametrize("m", range(2, 9))
def test_degree_symmetry(m):
    assert stabilize(SU2, m, m + 6).isomorphic(stabilize(SU2, -m, m + 6))


@pytest.mark.parametrize("m", [2, -3, 4, -6])
def test_sign_independence(m):
    J = abs(m) + 3
    assert colimit_cokernel(SU2, m, J).isomorphic(colimit_cokernel(SU2, m, J, sign=-1))


def chebyshev_coeffs(r):
    """Coefficients (low to high) of Sym^r as a polynomial in s = u + 1/u."""
    s = sympy.Symbol("s")
    poly = sympy.Poly(sympy.expand(sympy.chebyshevu(r, s / 2)), s)
    return [int(c) for c in reversed(poly.all_coeffs())]


@pytest.mark.parametrize("m", [m for m in range(-8, 9) if abs(m) >= 2])
def test_s_action_relation(m):
    rep = s_relation_check(m)
    assert rep["integral"] and rep["annihilated"] and rep["charpoly_matches"]
    assert rep["charpoly"] == chebyshev_coeffs(abs(m) - 1)


# fusion rings


def test_fusion_examples():
    assert fusion_ring_su2(1).multiply(1, 1) == {0: 1}
    assert fusion_ring_su2(2).multiply(1, 1) == {0: 1, 2: 1}
    for k in range(5):
        ring = fusion_ring_su2(k)
        for j in range(k + 1):
            assert ring.multiply(0, j) == {j: 1}
    with pytest.raises(InputError):
        fusion_ring_su2(-1)


@pytest.mark.parametrize("k", range(0, 7))
def test_fusion_ring_axioms(k):
    ring = fusion_ring_su2(k)
    basis = [[int(i == j) for i in range(k + 1)] for j in range(k + 1)]
    for a, b, c in itertools.product(basis, repeat=3):
        assert ring.product(ring.product(a, b), c) == ring.product(a, ring.product(b, c))
    for a, b in itertools.product(basis, repeat=2):
        assert ring.product(a, b) == ring.product(b, a)
    assert all(c in (0, 1) for row in ring.coefficients for col in row for c in col)


@pytest.mark.parametrize("k", range(0, 7))
def test_fusion_ring_is_quotient_by_sym(k):
    # V_j -> Sym^j(s) identifies the fusion ring with Z[s] / Sym^(k+1)
    s = sympy.Symbol("s")
    U = [sympy.expand(sympy.chebyshevu(j, s / 2)) for j in range(2 * k + 2)]
    ring = fusion_ring_su2(k)
    for i, j in itertools.product(range(k + 1), repeat=2):
        rhs = sum(c * U[l] for l, c in ring.multiply(i, j).items())
        diff = sympy.expand(U[i] * U[j] - rhs)
        assert sympy.rem(diff, U[k + 1], s) == 0


@pytest.mark.parametrize("k", range(0, 7))
def test_fusion_rank_is_colimit_rank(k):
    assert fusion_ring_su2(k).rank == stabilize(SU2, k + 2, k + 8).rank


def test_conjecture_check_examples():
    rep = conjecture_check(0)
    ranks = {row["degree"]: row["rank"] for row in rep["degrees"]}
    assert ranks == {1: 0, -1: 0, 2: 1, -2: 1}
    rep = conjecture_check(4)
    assert rep["pass"]
    assert [next(r["rank"] for r in rep["degrees"] if r["degree"] == m) for m in range(2, 7)] == [1, 2, 3, 4, 5]
    assert all(r["torsion"] == [] for r in rep["degrees"])


# directed colimit under multiplication


def t(k):
    return LaurentPoly.monomial(("t",), (k,))


def test_directed_colimit_examples():
    out = directed_colimit_mult(t(1), t(-5))
    assert out == {"member": True, "stage": 5, "representative": t(0)}
    assert directed_colimit_mult(t(1), t(3))["stage"] == 0
    out = directed_colimit_mult(t(2), t(-3))
    assert out["stage"] == 2 and out["representative"] == t(1)


def test_non_integral_probe_is_not_a_member():
    from fractions import Fraction

    probe = LaurentPoly(("t",), {(-1,): Fraction(1, 2)})
    assert directed_colimit_mult(t(1), probe)["member"] is False
    assert directed_colimit_mult(LaurentPoly.constant(("t",), 1), t(-1))["member"] is False
    with pytest.raises(InputError):
        directed_colimit_mult(t(1) + 1, t(-1))


@given(laurent(("t",), 4, -8, 8), st.integers(1, 3), st.sampled_from([1, -1]))
def test_stage_is_minimal(probe, d, sign):
    f = LaurentPoly.monomial(("t",), (d,), sign)
    out = directed_colimit_mult(f, probe)
    s = out["stage"]
    assert out["member"]
    assert out["representative"] == probe * f ** s
    assert all(e[0] >= 0 for e in out["representative"].support())
    if s > 0:
        assert any(e[0] < 0 for e in (probe * f ** (s - 1)).support())


# general poset colimit


@pytest.mark.parametrize("m", [m for m in range(-6, 7) if m])
def test_poset_colimit_agrees_with_cokernel(m):
    sl = poset_colimit(SU2, m)
    assert sl.certified
    assert sl.rank == stabilize(SU2, m, abs(m) + 6).rank


def level_weights(rd, k):
    return sorted(
        lam for lam in itertools.product(range(k + 1), repeat=rd.rank)
        if sum(c * x for c, x in zip(rd.comarks, lam)) <= k
    )


@pytest.mark.parametrize("k", range(1, 5))
def test_su3_slices_are_level_weights(k):
    sl = poset_colimit(SU3, -k)
    assert sl.certified and sl.torsion == ()
    assert list(sl.representatives) == level_weights(SU3, k)


@pytest.mark.parametrize("k", range(0, 4))
def test_su3_mirror_slices(k):
    # across the centre h the representatives are -(lam + 2 rho)
    sl = poset_colimit(SU3, 2 * SU3.dual_coxeter + k)
    assert sl.certified
    assert list(sl.representatives) == sorted((-a - 2, -b - 2) for a, b in level_weights(SU3, k))


def test_verlinde_rank_oracle():
    assert [verlinde_rank(SU2, k) for k in range(6)] == [1, 2, 3, 4, 5, 6]
    assert [verlinde_rank(SU3, k) for k in range(6)] == [(k + 1) * (k + 2) // 2 for k in range(6)]
    g2 = root_datum("G2")
    assert [verlinde_rank(g2, k) for k in range(6)] == [len(level_weights(g2, k)) for k in range(6)]
    assert verlinde_rank(SU3, -1) == 0


@pytest.mark.parametrize("kind", ["su3", "B2", "G2"])
def test_rank_report_higher_rank(kind):
    rd = root_datum(kind)
    rep = rank_report(rd, [-3, -2, -1, 1, 2, rd.dual_coxeter * 2, rd.dual_coxeter * 2 + 1])
    assert rep["centre"] == rd.dual_coxeter
    assert rep["all_pass"]


def test_su2_centre_is_zero():
    assert rank_report(SU2, [2, -2])["centre"] == 0


@settings(max_examples=60)
@given(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), st.sampled_from([-3, -2, -1, 4, 7]), st.integers(0, 2))
def test_class_changes_sign_across_walls(lam, m, j):
    a = colimit_class(SU3, lam, m)
    b = colimit_class(SU3, dot_reflect(j, lam, m, SU3), m)
    assert a.rep == b.rep
    if a.rep is not None:
        assert a.sign == -b.sign


@settings(max_examples=30)
@given(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), st.sampled_from([-2, -1, 1, 2, 5]))
def test_kernel_relations_hold(lam, m):
    assert certify_kernel_relations(SU3, lam, m)


def test_vanishing_classes_push_to_zero_somewhere():
    vs = rep_variables(2)
    for lam in itertools.product(range(-3, 4), repeat=2):
        cls = colimit_class(SU3, lam, -1)
        if cls.vanishes:
            continue
        x = LaurentPoly.monomial(vs, lam + (-1,))
        assert not induction([1, 2], x, SU3).is_zero()


def test_degree_zero_excluded():
    with pytest.raises(InputError):
        poset_colimit(SU3, 0)
