"""Print the n = 8 certificates: Gram matrix, Pell data, generators, verdict."""

from k3lat import intmat
from k3lat.family import verify_main_theorem
from k3lat.isometry import shifted_inverse_product


def fmt(rows):
    return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in rows) + "]"


def main():
    rep = verify_main_theorem(8)
    inst = rep.instance
    print(f"Gram {fmt(inst.gram.matrix)}  r = {inst.r}")
    print(f"x^2 - {inst.r} y^2 = -8 solvable: {rep.pell_hypothesis.solvable}")
    for name in ("sigma", "tau", "g_star", "h"):
        print(f"{name:7s}{fmt(getattr(inst, name).matrix)}")
    print(f"h^2 == g_star: {intmat.mul(inst.h.matrix, inst.h.matrix) == inst.g_star.matrix}")
    for label, iso, eps in (("sigma+I", inst.sigma, -1), ("g*-I", inst.g_star, 1),
                            ("h-I", inst.h, 1), ("h+I", inst.h, -1)):
        P = shifted_inverse_product(iso, eps)
        print(f"({label}) Q^-1 = {fmt(P)}  integral: {intmat.is_integral(P)}")
    for c in rep.clauses:
        print(f"  {'ok ' if c.passed else 'BAD'} {c.name}: {c.detail}")
    print(f"status: {rep.status}")


if __name__ == "__main__":
    main()
