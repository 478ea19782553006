"""Holomorphic induction for SU(2), printed as the four families of tables.

Run:  python3 demos/pushforward_tables.py
"""

from loopk import induction, root_datum
from loopk.rep_rings import FAMILIES, family_input, family_parabolic, render_factored

SU2 = root_datum("su2")


def main(k_max: int = 5) -> None:
    for family in FAMILIES:
        I = family_parabolic(family)
        print(family)
        for k in range(1, k_max + 1):
            x = family_input(family, k)
            print(f"  k={k}:  {render_factored(I, induction(I, x, SU2), SU2)}")
        print()


if __name__ == "__main__":
    main()
