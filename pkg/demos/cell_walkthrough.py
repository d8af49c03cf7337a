"""Catalog complexes, their drawings, and homotopy groups read off the bundled tables."""

from tjfcalc.catalog import catalog, complex_c, p_complex, tjf_m_3local, tmf_c2_nlambda
from tjfcalc.cells import diagram_compare, dual, localize, shift, simplify
from tjfcalc.les import hom_groups, homotopy_groups
from tjfcalc.render import render_ascii
from tjfcalc.tables import default_tables


def main():
    print(render_ascii(complex_c()))
    print(render_ascii(catalog("tmf_c3_3local")))

    print("TJF_-3 at 3 splits as", [p.degrees() for p in simplify(localize(catalog("tjf_-3"), 3))])
    for n in range(1, 8):
        print(f"dual of twist {n} is twist {-n % 8}:", bool(diagram_compare(dual(tmf_c2_nlambda(n)), tmf_c2_nlambda(-n))))
    print("shift(dual(C), -8) vs twist 7:", diagram_compare(shift(dual(complex_c()), -8), tmf_c2_nlambda(7)).mismatch)

    integral = default_tables(None)
    for k in (2, 3):
        top = max(p_complex(k).degrees())
        for r in homotopy_groups(p_complex(k), integral, range(top, 9)):
            print(f"TJF_{k} ", r)

    r = hom_groups(shift(catalog("tjf_-3"), 5), shift(tjf_m_3local(6), -11), default_tables(3), 0)
    print("[TJF_-3[5], TJF_6[-11]] =", r.describe())


if __name__ == "__main__":
    main()
