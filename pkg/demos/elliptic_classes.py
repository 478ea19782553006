"""The sigma class, the unit eps, and Euler classes of truncated loop bundles.

Run:  python3 demos/elliptic_classes.py
"""

from loopk import (
    LaurentPoly,
    LineVariable,
    LoopNormalModel,
    epsilon_unit,
    euler_normal_product,
    fgl_sum,
    multiplicative_fgl,
    render_series,
    sigma_class,
)

MULT = multiplicative_fgl()


def main() -> None:
    line = LineVariable()
    print("eps(L)  =", render_series(line.series_to_L(epsilon_unit(line, 3))))
    print("sigma   =", render_series(sigma_class(line, 2)))

    # adding q^k to L in the multiplicative law is multiplication by q^k
    L, q = LaurentPoly.gens(("L", "q"))
    for k in (1, 2, 3):
        print(f"F(1 - L, 1 - q^{k}) =", fgl_sum(MULT, 1 - L, 1 - q ** k))

    print()
    print("Fourier-truncated Euler classes, raw then normalized:")
    for m in (1, 2, 3):
        model = LoopNormalModel(["L"], m)
        print(f"  m={m}", render_series(euler_normal_product(model, MULT)))
    for m in (1, 2, 3):
        model = LoopNormalModel(["L"], m)
        print(f"  m={m}", render_series(euler_normal_product(model, MULT, normalized=True).truncate(m)))


if __name__ == "__main__":
    main()
