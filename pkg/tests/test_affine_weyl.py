import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from loopk import (
    AlcovePoint,
    FoldingLimitError,
    InputError,
    ParabolicIndex,
    affine_fold,
    alcove_face,
    apply_word,
    build_root_datum,
    parabolic_poset,
    root_datum,
    weyl_group,
)
from loopk.affine_weyl import cartan_matrix, reflect_point, root_datum_from_json

SU2 = root_datum("su2")
SU3 = root_datum("su3")


# root data


def test_su2_datum():
    rd = build_root_datum([[2]])
    assert rd.rank == 1 and rd.dual_coxeter == 2
    assert rd.highest_root == (1,)


def test_su3_datum():
    assert SU3.dual_coxeter == 3
    assert SU3.highest_root == (1, 1)


def test_indefinite_matrix_rejected():
    with pytest.raises(InputError):
        build_root_datum([[2, -3], [-3, 2]])


@pytest.mark.parametrize(
    "bad",
    [[[2, 1], [1, 2]], [[2, -1], [0, 2]], [[3]], [[2, -1, 0], [-1, 2]], [[2] * 5 for _ in range(5)]],
)
def test_malformed_matrices_rejected(bad):
    with pytest.raises(InputError):
        build_root_datum(bad)


@pytest.mark.parametrize(
    "kind,h,npos",
    [("A1", 2, 1), ("A2", 3, 3), ("A3", 4, 6), ("A4", 5, 10), ("B2", 3, 4), ("B3", 5, 9),
     ("C3", 4, 9), ("D4", 6, 12), ("G2", 4, 6), ("F4", 9, 24)],
)
def test_dual_coxeter_and_root_counts(kind, h, npos):
    rd = root_datum(kind)
    assert rd.dual_coxeter == h
    assert len(rd.positive_roots) == npos
    # the highest root is the unique root of maximal height
    heights = [sum(r) for r in rd.positive_roots]
    assert heights.count(max(heights)) == 1
    assert all(m > 0 for m in rd.marks)


def test_json_round_trip():
    rd = root_datum("G2")
    assert root_datum_from_json(rd.to_json()) == rd
    assert root_datum_from_json('{"cartan": [[2, -1], [-1, 2]]}') == SU3


# parabolic subsets and the poset


def test_improper_index_rejected():
    with pytest.raises(InputError):
        ParabolicIndex([0, 1], 1)
    with pytest.raises(InputError):
        ParabolicIndex([3], 2)


def test_su2_poset():
    poset = parabolic_poset(SU2)
    assert [p.indices for p in poset.elements] == [(), (0,), (1,)]
    assert len(poset.covers) == 2


def test_su3_poset():
    poset = parabolic_poset(SU3)
    assert len(poset) == 7
    # Hasse covers are single insertions; all strict inclusions number 12
    assert len(poset.covers) == 9
    assert len(poset.relations) == 12


def test_rank_three_poset_size():
    assert len(parabolic_poset(root_datum("A3"))) == 15


@pytest.mark.parametrize("kind", ["su2", "su3", "B2", "G2"])
def test_poset_closed_under_meet(kind):
    poset = parabolic_poset(root_datum(kind))
    elems = set(p.indices for p in poset.elements)
    for a, b in itertools.product(poset.elements, repeat=2):
        m = poset.meet(a, b)
        assert m.indices in elems
        assert poset.leq(m, a) and poset.leq(m, b)


# finite Weyl groups


def test_weyl_group_examples():
    assert len(weyl_group([1], SU2)) == 2
    assert len(weyl_group([1, 2], SU3)) == 6
    for kind in ("su2", "su3", "G2"):
        assert len(weyl_group([], root_datum(kind))) == 1


@pytest.mark.parametrize("kind,order", [("B2", 8), ("G2", 12), ("A3", 24), ("B3", 48)])
def test_finite_weyl_orders(kind, order):
    rd = root_datum(kind)
    assert len(weyl_group(range(1, rd.rank + 1), rd)) == order


@pytest.mark.parametrize("kind", ["su3", "B2", "G2", "A3"])
def test_orders_divide_along_inclusions(kind):
    rd = root_datum(kind)
    poset = parabolic_poset(rd)
    size = {p.indices: len(weyl_group(p, rd)) for p in poset.elements}
    for a, b in poset.relations:
        assert size[b.indices] % size[a.indices] == 0


def test_improper_weyl_group_rejected():
    with pytest.raises(InputError):
        weyl_group([0, 1], SU2)


def test_weyl_group_closed_and_lengths():
    group = weyl_group([0, 1], SU3)
    mats = {(w.matrix, w.translation) for w in group}
    for a in group:
        for b in group:
            lam = (1, 2)
            composed = a.act(b.act(lam, 3), 3)
            assert any(w.act(lam, 3) == composed for w in group)
    assert {w.length for w in group} == {0, 1, 2, 3}
    assert len(mats) == 6


# faces


def test_face_examples():
    assert alcove_face(AlcovePoint([Fraction(1, 2)]), SU2).indices == ()
    assert alcove_face(AlcovePoint([0]), SU2).indices == (1,)
    assert alcove_face(AlcovePoint([1]), SU2).indices == (0,)
    assert alcove_face(AlcovePoint([2]), SU2) is None


def test_su3_vertices():
    assert alcove_face(AlcovePoint([0, 0]), SU3).indices == (1, 2)
    assert alcove_face(AlcovePoint([1, 0]), SU3).indices == (0, 2)
    assert alcove_face(AlcovePoint([Fraction(1, 3), Fraction(1, 3)]), SU3).indices == ()


# folding


def test_fold_examples():
    p, word = affine_fold(AlcovePoint(["1.7"]), SU2)
    assert p.coords == (Fraction(3, 10),) and word == [0]
    p, word = affine_fold(AlcovePoint(["-0.3"]), SU2)
    assert p.coords == (Fraction(3, 10),) and word == [1]
    inside = AlcovePoint([Fraction(1, 4)])
    assert affine_fold(inside, SU2) == (inside, [])


def test_float_rejected():
    with pytest.raises(InputError):
        AlcovePoint([1.7])


def test_iteration_cap(monkeypatch):
    monkeypatch.setenv("LOOPK_MAX_ITER", "3")
    with pytest.raises(FoldingLimitError):
        affine_fold(AlcovePoint([40]), SU2)
    monkeypatch.setenv("LOOPK_MAX_ITER", "zero")
    with pytest.raises(InputError):
        affine_fold(AlcovePoint([4]), SU2)


def images_up_to(p, rd, length):
    """All affine Weyl images of ``p`` reachable by words of length ``<= length``."""
    seen = {p}
    frontier = [p]
    for _ in range(length):
        nxt = []
        for x in frontier:
            for i in range(rd.rank + 1):
                y = reflect_point(i, x, rd)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def brute_force_face(p, rd, length=12):
    reps = [x for x in images_up_to(p, rd, length) if all(c >= 0 for c in x.coords) and x.theta(rd) <= 1]
    assert len(reps) == 1
    q = reps[0]
    fixed = tuple(sorted(i for i in range(rd.rank + 1) if reflect_point(i, q, rd) == q))
    return q, fixed


fractions_small = st.fractions(min_value=-2, max_value=2, max_denominator=6)


@st.composite
def points(draw):
    rd = draw(st.sampled_from([SU2, SU3, root_datum("B2"), root_datum("G2")]))
    return rd, AlcovePoint(draw(st.lists(fractions_small, min_size=rd.rank, max_size=rd.rank)))


@settings(max_examples=300)
@given(points())
def test_fold_lands_in_alcove_and_word_recovers(data):
    rd, p = data
    q, word = affine_fold(p, rd)
    assert alcove_face(q, rd) is not None
    assert apply_word(word, q, rd) == p
    assert affine_fold(q, rd) == (q, [])


@settings(max_examples=100)
@given(points())
def test_fold_matches_brute_force(data):
    rd, p = data
    q, word = affine_fold(p, rd)
    assume(len(word) <= 8)
    rep, fixed = brute_force_face(p, rd)
    assert rep == q
    assert alcove_face(q, rd).indices == fixed


@settings(max_examples=100)
@given(points())
def test_face_stable_under_its_stabilizer(data):
    rd, p = data
    q, _ = affine_fold(p, rd)
    face = alcove_face(q, rd)
    for w in itertools.product(face.indices, repeat=3):
        assert apply_word(w, q, rd) == q


def test_reflections_are_involutions():
    for rd in (SU2, SU3, root_datum("G2")):
        p = AlcovePoint([Fraction(k + 1, 7) for k in range(rd.rank)])
        for i in range(rd.rank + 1):
            assert reflect_point(i, reflect_point(i, p, rd), rd) == p


def test_cartan_matrix_labels():
    assert cartan_matrix("su3") == cartan_matrix("A2")
    with pytest.raises(InputError):
        cartan_matrix("E8")
