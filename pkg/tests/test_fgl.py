from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from loopk import (
    InputError,
    LaurentPoly,
    LineVariable,
    LoopNormalModel,
    QLaurentSeries,
    SymmetricLoopRep,
    WindowError,
    additive_fgl,
    custom_fgl,
    epsilon_unit,
    euler_normal_product,
    fgl_k_series,
    fgl_sum,
    loop_truncate,
    multiplicative_fgl,
    parse_poly,
    qs_invert,
    render_series,
    sigma_class,
    spin_pairable,
)
from loopk.fgl import check_axioms, fgl_from_json, fgl_inverse

from strategies import laurent

MULT = multiplicative_fgl()
ADD = additive_fgl()
LINE = LineVariable()


def tanh_law(D=7):
    # (x + y) / (1 + x y) expanded through total degree D
    coeffs = {}
    for n in range(0, D):
        sign = (-1) ** n
        if 2 * n + 1 > D:
            break
        coeffs[(n + 1, n)] = coeffs.get((n + 1, n), 0) + sign
        coeffs[(n, n + 1)] = coeffs.get((n, n + 1), 0) + sign
    return custom_fgl(coeffs, D)


def q_series(text, vs=(), order=12):
    return QLaurentSeries.from_poly(parse_poly(text, tuple(vs) + ("q",)), "q", order)


# laws and sums


def test_todd_identity():
    vs = ("L", "q")
    L, q = LaurentPoly.gens(vs)
    for k in range(1, 11):
        assert fgl_sum(MULT, 1 - L, 1 - q ** k) == 1 - q ** k * L


def test_additive_sum():
    x, y = LaurentPoly.gens(("x", "y"))
    assert fgl_sum(ADD, x, y) == x + y


@given(laurent(("a", "b", "c")), laurent(("a", "b", "c")), laurent(("a", "b", "c")))
def test_multiplicative_associative(a, b, c):
    assert fgl_sum(MULT, a, fgl_sum(MULT, b, c)) == fgl_sum(MULT, fgl_sum(MULT, a, b), c)


@pytest.mark.parametrize("law", [MULT, ADD, tanh_law()])
def test_axioms_hold(law):
    assert check_axioms(law) == []


def test_truncated_law_associative_on_series():
    law = tanh_law()
    a = q_series("q + 2*q^2", order=6)
    b = q_series("3*q - q^3", order=6)
    c = q_series("q^2", order=6)
    left = fgl_sum(law, a, fgl_sum(law, b, c))
    right = fgl_sum(law, fgl_sum(law, a, b), c)
    n = min(left.order, right.order)
    assert left.truncate(n) == right.truncate(n)


def test_bad_custom_law_rejected():
    with pytest.raises(InputError):
        custom_fgl({(1, 0): 1, (0, 1): 1, (2, 1): 1}, 4)
    with pytest.raises(InputError):
        custom_fgl({(1, 0): 1, (0, 1): 2}, 4)


def test_law_from_json():
    law = fgl_from_json({"degree": 3, "exact": True, "terms": {"1,0": 1, "0,1": 1, "1,1": -1}})
    assert law.coefficient_map == MULT.coefficient_map


def test_k_series_examples():
    q = LaurentPoly.gen(("q",), "q")
    assert fgl_k_series(MULT, 1 - q, 3) == 1 - q ** 3
    x = LaurentPoly.gen(("x",), "x")
    for k in range(0, 6):
        assert fgl_k_series(ADD, x, k) == k * x
    assert fgl_k_series(MULT, 1 - q, 0).is_zero()


def test_negative_k_series_is_inverse():
    a = q_series("1 - (1 - q)", order=10)
    for k in range(1, 5):
        pos = fgl_k_series(MULT, a, k)
        neg = fgl_k_series(MULT, a, -k)
        assert fgl_sum(MULT, pos, neg).is_zero()


def test_tanh_k_series_against_sympy():
    x = sympy.Symbol("x")
    law = tanh_law(9)
    a = q_series("q", order=9)
    for k in (2, 3):
        got = fgl_k_series(law, a, k)
        expect = sympy.series(sympy.tanh(k * sympy.atanh(x)), x, 0, 10).removeO()
        poly = sympy.Poly(expect, x)
        for (d,), c in poly.terms():
            assert got[d].constant_term() == Fraction(int(c.p), int(c.q))


def test_tanh_inverse():
    law = tanh_law()
    a = q_series("q + q^2", order=7)
    inv = fgl_inverse(law, a)
    total = fgl_sum(law, a, inv)
    assert all(total[d].is_zero() for d in range(0, total.order + 1))


# Euler products


def test_one_root_multiplicative():
    model = LoopNormalModel(["L"], 1)
    out = euler_normal_product(model, MULT)
    assert render_series(out) == "(-L)*q^-1 + (L^2 + 1) + (-L)*q"
    expected = q_series("(1 - q*L)*(1 - q^-1*L)", ("L",), order=out.order)
    assert out == expected


def test_empty_product():
    out = euler_normal_product(LoopNormalModel([], 2, 4), MULT)
    assert out == QLaurentSeries.one((), 4)


def test_one_root_additive():
    out = euler_normal_product(LoopNormalModel(["x"], 1), ADD)
    assert render_series(out) == "x^2 + (-1)*t^2"


def test_window_too_small():
    with pytest.raises(WindowError):
        euler_normal_product(LoopNormalModel(["L"], 3, 2), MULT)


def test_bad_root_names():
    with pytest.raises(InputError):
        LoopNormalModel(["1"], 2)
    with pytest.raises(InputError):
        LoopNormalModel(["L", "L"], 2)


@pytest.mark.parametrize("m", range(1, 6))
def test_normalized_products_stabilize(m):
    roots = ["L1", "L2"]
    a = euler_normal_product(LoopNormalModel(roots, m, 60), MULT, normalized=True)
    b = euler_normal_product(LoopNormalModel(roots, m + 1, 60), MULT, normalized=True)
    assert all(a[d] == b[d] for d in range(0, m + 1))
    assert a[m + 1] != b[m + 1]


def test_normalized_is_raw_over_prefactors():
    raw = euler_normal_product(LoopNormalModel(["L"], 3), MULT)
    norm = euler_normal_product(LoopNormalModel(["L"], 3), MULT, normalized=True)
    L = LaurentPoly.gen(("L",), "L")
    # each k < 0 factor 1 - q^-k L equals (-q^-k L)(1 - q^k L^-1)
    pref = QLaurentSeries(("L",), 20, {-6: -(L ** 3)})
    assert (norm * pref).agrees(raw)


# epsilon and sigma


def sympy_epsilon(N):
    q, L = sympy.symbols("q L")

    def trunc(expr):
        poly = sympy.Poly(sympy.expand(expr * L ** N), q)
        return sum(c * q ** d for (d,), c in poly.terms() if d <= N)

    expr = sympy.Integer(1)
    for k in range(1, N + 1):
        # 1 / (1 - q^k)^2 = sum (n + 1) q^(kn)
        inv_sq = sum((n + 1) * q ** (k * n) for n in range(N // k + 1))
        expr = trunc(expr * (1 - q ** k * L) * (1 - q ** k / L) * inv_sq) / L ** N
    expr = sympy.expand(expr)
    return {d: expr.coeff(q, d) for d in range(N + 1)}, L


def test_epsilon_against_sympy():
    N = 5
    expect, Lsym = sympy_epsilon(N)
    eps = LINE.series_to_L(epsilon_unit(LINE, N))
    for d in range(N + 1):
        coeff = eps[d]
        expr = sum(c * Lsym ** e[0] for e, c in coeff.items())
        assert sympy.expand(expr - expect[d]) == 0


def test_epsilon_examples():
    eps = epsilon_unit(LINE, 8)
    assert eps[0] == 1
    assert LINE.to_L(eps[1]) == parse_poly("2 - L - L^-1", ("L",))
    at_one = eps.map_coefficients(lambda p: LaurentPoly.constant((), sum(c for _, c in p.items())), ())
    assert at_one == QLaurentSeries.one((), 8)


def test_epsilon_is_unit():
    eps = epsilon_unit(LINE, 12)
    assert (eps * qs_invert(eps)) == QLaurentSeries.one(LINE.variables, 12)


def test_sigma_identity_to_order_twenty():
    N = 20
    sig = sigma_class(LINE, N)
    eps = epsilon_unit(LINE, N)
    s = LINE.s()
    rhs = eps * (s - s ** -1)
    for d in range(N + 1):
        assert sig[d] == rhs[d]
        assert all(abs(e[0]) <= 2 * 20 + 1 for e in sig[d].support())


def test_sigma_examples():
    sig = sigma_class(LINE, 6)
    s = LINE.s()
    assert sig[0] == s - s ** -1
    flipped = sig.map_coefficients(LINE.invert_line)
    assert flipped == -sig


def test_line_variable_parity():
    with pytest.raises(InputError):
        LINE.to_L(LINE.s())
    assert LINE.to_L(LINE.L(3)) == LaurentPoly.monomial(("L",), (3,))


# spin pairing and truncation


def test_spin_pairing_example():
    vs = ("u",)
    u = LaurentPoly.gen(vs, "u")
    cert = spin_pairable([u, u ** -1], 1)
    assert cert["pairs"] == [((u, 1), (u, -1)), ((u ** -1, 1), (u ** -1, -1))]
    assert cert["det_q_exponent"] == 0 and cert["verified"]


@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), max_size=6), st.integers(1, 5))
def test_spin_pairing_always_succeeds(exps, k):
    ws = [LaurentPoly.monomial(("a", "b"), e) for e in exps]
    cert = spin_pairable(ws, k)
    assert cert["verified"]
    assert cert["square_root"] ** 2 == cert["determinant"]
    cert = spin_pairable(ws, -k)
    assert cert["verified"]


def test_spin_pairing_needs_nonzero_k():
    with pytest.raises(InputError):
        spin_pairable([LaurentPoly.gen(("u",), "u")], 0)


def test_loop_truncate_examples():
    V = SymmetricLoopRep(("a", "b"), (("c",), ("d",), ("e",), ("f",)))
    assert loop_truncate(V, 0) == [("a", 0), ("b", 0)]
    assert len(loop_truncate(V, 3)) == 2 + 6
    assert sorted({d for _, d in loop_truncate(V, 3)}) == [-3, -2, -1, 0, 1, 2, 3]
    with pytest.raises(InputError):
        loop_truncate(V, -1)


@given(st.lists(st.integers(0, 3), max_size=5), st.integers(0, 6))
def test_loop_truncate_size(mode_sizes, m):
    V = SymmetricLoopRep(("x",), tuple(tuple(range(n)) for n in mode_sizes))
    out = loop_truncate(V, m)
    assert len(out) == 1 + 2 * sum(mode_sizes[:m])
    pos = sorted((w, d) for w, d in out if d > 0)
    neg = sorted((w, -d) for w, d in out if d < 0)
    assert pos == neg
