"""Witten genera from Chern numbers, surface invariants, and Tate vanishing.

Run:  python3 demos/genera_and_localization.py
"""

from loopk import render_series
from loopk.genus import ChernData, a_hat_genus, euler_characteristic, projective_space, tft_invariant, witten_genus
from loopk.tate import khat_orbit, tate_base_change

K3 = ChernData(2, {"c1^2": 0, "c2": 24})


def genera() -> None:
    for name, M in (("CP2", projective_space(2)), ("K3", K3), ("CP4", projective_space(4))):
        print(f"{name}: A-hat {a_hat_genus(M)}, Witten genus {render_series(witten_genus(M, 4))}")
    print()
    print("surface invariants on K3:")
    for g in range(3):
        print(f"  g={g}: {render_series(tft_invariant(K3, g, 4))}")
    # the genus-one value is q-independent; it is not the Euler characteristic
    print(f"  Euler characteristic for comparison: {euler_characteristic(K3)}")
    print()


def localization() -> None:
    for n in (0, 1, 2, 5):
        mod = khat_orbit(n, 10)
        cert = mod.report()["certificate"]
        print(f"orbit {n}: {mod.verdict}; ({cert['relation']}) * ({cert['inverse']}) = -1")
    print("free module over Z((q)):", tate_base_change(1, [], 10).verdict)
    print("relation 2:", tate_base_change(1, [["2"]], 10).diagnostic)


if __name__ == "__main__":
    genera()
    localization()
