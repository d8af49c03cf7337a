"""Build the generators a, b, c, check their identities, and push them through the torsion sum."""

from tjfcalc.jacobi import gen_a, gen_b, gen_c, numeric_covariance_check, restrict_z0, scale_z, torsion_restrict, torsion_sum
from tjfcalc.modular import mf_generator


def main():
    c4, c6, delta = (mf_generator(n, 50) for n in ("c4", "c6", "delta"))
    rel = (c4**3 - c6**2 - delta * 1728).series
    print("c4^3 - c6^2 - 1728 delta vanishes below q^50:", rel.is_zero())

    a, b, c = gen_a(30), gen_b(30), gen_c(30)
    print("q^0 row of b:", b.series.y_coefficient(0))
    print("a*c equals a(2z) below q^30:", (a * c).series == scale_z(a, 2).series)
    print("restrictions to z = 0:", restrict_z0(a).series, restrict_z0(b).series, restrict_z0(c).series)

    for name, phi in (("a", gen_a(40)), ("b", gen_b(40)), ("c", gen_c(40))):
        res = numeric_covariance_check(phi, (0, -1, 1, 0), (0, 0), (2j, 0.1 + 0.05j))
        print(f"S-covariance of {name}: residual {res.residual:.1e}, passed {res.passed}")

    a, b, c = gen_a(12), gen_b(12), gen_c(12)
    for name, phi in (("a^4", a**4), ("a^2 b", a * a * b), ("b^2", b * b), ("a c", a * c)):
        r = torsion_restrict(phi, 2)
        s = torsion_sum(r, 2)
        coords = {k: str(v) for k, v in s.membership.rational_coordinates().items() if v}
        print(f"{name}: degree {r.degree}, fiberwise sum {s.total}, coordinates {coords or 0}")


if __name__ == "__main__":
    main()
