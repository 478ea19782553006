"""Slices of the colimit over the parabolic poset, next to Verlinde dimensions.

For SU(2) the degree-m slice should have rank |m| - 1 and carry the action of
u + 1/u with the truncated Chebyshev relation.  In higher rank the slices are
free on regular orbits of the shifted affine Weyl action; the script prints
where they sit relative to the level-k weights.

Run:  python3 demos/colimit_slices.py
"""

from loopk import fusion_ring_su2, rank_report, root_datum, stabilize
from loopk.verlinde import s_relation_check

SU2 = root_datum("su2")


def su2_slices() -> None:
    print("SU(2): degree, rank, torsion, fusion rank at level |m|-2")
    for m in (-5, -3, -2, 1, 2, 3, 5):
        pres = stabilize(SU2, m, abs(m) + 8)
        level = abs(m) - 2
        fusion = fusion_ring_su2(level).rank if level >= 0 else 0
        print(f"  {m:>3}  {pres.rank}  {list(pres.torsion)}  {fusion}")
    rel = s_relation_check(4)
    print(f"  u + 1/u on the degree-4 slice has characteristic polynomial {rel['charpoly']}")
    print()


def higher_rank() -> None:
    for label, degrees in (("su3", [-1, -2, -3, 7, 8]), ("B2", [-1, -2, 9]), ("G2", [-1, -2, -3])):
        rd = root_datum(label)
        rep = rank_report(rd, degrees)
        print(f"{label}: slices symmetric about degree {rep['centre']}, dual Coxeter number {rep['dual_coxeter']}")
        for row in rep["rows"]:
            flag = "ok" if row["pass"] else "MISMATCH"
            print(f"  degree {row['degree']:>3}: rank {row['rank']:>2}, level-{row['level']} weights {row['expected']:>2}  {flag}")
    print()


if __name__ == "__main__":
    su2_slices()
    higher_rank()
