"""Cell structures of the spectra studied here, built from their recipes."""

from __future__ import annotations

import json
from typing import Callable, Dict, List, Optional, Tuple

from .cells import (
    AttachLabel,
    CellComplex,
    OutOfCatalog,
    cofiber,
    diagram_compare,
    direct_sum,
    dual,
    localize,
    shift,
    simplify,
    sphere,
)
from .tables import data_dir

NU, ETA, TWO, TWO_NU, ALPHA = (
    AttachLabel.NU,
    AttachLabel.ETA,
    AttachLabel.TWO,
    AttachLabel.TWO_NU,
    AttachLabel.ALPHA,
)


def p_complex(k: int) -> CellComplex:
    """The finite complex P_k with TJF_k = TMF (x) P_k, for 0 <= k <= 4."""
    if k == 0:
        x = direct_sum(sphere(0), sphere(1))
    elif k == 1:
        x = sphere(0)
    elif k == 2:
        x = cofiber(3, sphere(0), [(NU, "e0")])
    elif k == 3:
        x = cofiber(5, p_complex(2), [(ETA, "e4")])
    elif k == 4:
        x = cofiber(7, p_complex(3), [(TWO_NU, "e4")])
    else:
        raise OutOfCatalog(f"P_{k} is only catalogued for 0 <= k <= 4")
    return x.renamed(f"P{k}")


def tjf(k: int) -> CellComplex:
    """TJF_k for -4 <= k <= 4, using TJF_k = D(P_{-k})[1] for negative k."""
    if not -4 <= k <= 4:
        raise OutOfCatalog(f"tjf_{k} is only catalogued for -4 <= k <= 4")
    x = p_complex(k) if k >= 0 else shift(dual(p_complex(-k)), 1)
    return x.renamed(f"tjf_{k}")


def tejf(k: int) -> CellComplex:
    """TEJF_{k} for k in {0, 2, 4}: a quaternionic projective space up to shift."""
    if k == 0:
        x = sphere(0)
    elif k == 2:
        x = p_complex(2)
    elif k == 4:
        x = cofiber(7, p_complex(2), [(TWO_NU, "e4")])
    else:
        raise OutOfCatalog(f"tejf_{k} is only catalogued for k in 0, 2, 4")
    return x.renamed(f"tejf_{k}")


def cofib_c() -> CellComplex:
    # c maps to 2 on the top cell of P_3
    return cofiber(6, p_complex(3), [(TWO, "e6")]).renamed("cofib_c")


def complex_c() -> CellComplex:
    # cofiber of S^-2 -> P_3[-8] -> P_4[-8], hitting the degree -2 cell with 2
    return cofiber(-2, shift(p_complex(4), -8), [(TWO, "e6")]).renamed("C")


def tmf_c2() -> CellComplex:
    return direct_sum(sphere(0, "unit"), complex_c()).renamed("tmf_c2")


def tmf_c2_nlambda(n: int) -> CellComplex:
    """The n-th twist in the Z/8 family, placed with cells in degrees [-n, 8 - n]."""
    n %= 8
    if n == 0:
        x = tmf_c2()
    elif n == 1:
        x = shift(dual(complex_c()), -1)
    elif n == 2:
        x = shift(dual(tjf(4)), 6)
    elif n == 3:
        x = shift(dual(tejf(4)), 5)
    elif n == 4:
        # the tensor square of TEJF_2 splits as two copies of S/nu
        x = direct_sum(shift(tejf(2), -4), tejf(2))
    elif n == 5:
        x = shift(tejf(4), -5)
    elif n == 6:
        x = shift(tjf(4), -6)
    else:
        x = shift(complex_c(), 1)
    return x.renamed(f"tmf_c2_nlambda_{n}")


def tmf12_3local() -> CellComplex:
    x = cofiber(7, cofiber(3, sphere(0), [(ALPHA, "e0")]), [(ALPHA, "e4")])
    return x.renamed("tmf12_3local")


def tjf_m_3local(m: int) -> CellComplex:
    """TJF_m with 2 inverted, for m >= 1, by the recursion m -> m - 3m'."""
    if m < 1:
        raise OutOfCatalog("tjf_m_3local needs m >= 1")
    if m <= 3:
        x = direct_sum(*simplify(localize(p_complex(m), 3)))
    else:
        mp = (m - 1) // 3
        parts = [shift(tjf_m_3local(m - 3 * mp), 6 * mp)]
        parts += [shift(tmf12_3local(), 6 * i) for i in range(mp)]
        x = direct_sum(*parts)
    return x.renamed(f"tjf_{m}_3local")


def tmf_c3_3local() -> CellComplex:
    """TJF_6[-12] + TJF_{-3}[5], with the TMF_1(2) summand moved by its 8-periodicity."""
    raw = direct_sum(shift(tjf_m_3local(6), -12), shift(localize(tjf(-3), 3), 5))
    model = tmf12_3local()
    parts = []
    for part in simplify(raw):
        bottom = min(part.degrees())
        if len(part) == 3 and diagram_compare(part, shift(model, bottom)) and (bottom + 4) % 8 == 0:
            part = shift(part, -4 - bottom)
        parts.append(part)
    return direct_sum(*parts).renamed("tmf_c3_3local")


_ENTRIES: Dict[str, Callable[..., CellComplex]] = {
    "cofib_c": cofib_c,
    "C": complex_c,
    "tmf_c2": tmf_c2,
    "tmf12_3local": tmf12_3local,
    "tmf_c3_3local": tmf_c3_3local,
}


def catalog_names() -> List[str]:
    names = [f"p_{k}" for k in range(5)] + [f"tjf_{k}" for k in range(-4, 5)]
    names += [f"tejf_{k}" for k in (0, 2, 4)] + list(_ENTRIES)
    names += [f"tmf_c2_nlambda_{n}" for n in range(8)]
    return names


def catalog(name: str, n: Optional[int] = None) -> CellComplex:
    """Look up a catalog complex by name; ``n`` parametrizes the families."""
    if name in _ENTRIES:
        return _ENTRIES[name]()
    if name == "tmf_c2_nlambda":
        if n is None:
            raise OutOfCatalog("tmf_c2_nlambda needs n")
        return tmf_c2_nlambda(n)
    if name == "tjf_m_3local":
        if n is None:
            raise OutOfCatalog("tjf_m_3local needs m")
        return tjf_m_3local(n)
    for prefix, fn in (("tjf_m_3local_", tjf_m_3local), ("tmf_c2_nlambda_", tmf_c2_nlambda),
                       ("tjf_", tjf), ("tejf_", tejf), ("p_", p_complex)):
        if name.startswith(prefix):
            try:
                k = int(name[len(prefix):])
            except ValueError:
                break
            return fn(k)
    raise OutOfCatalog(f"unknown catalog entry {name!r}")


GOLDENS: Dict[str, Tuple[str, Optional[int]]] = {
    **{f"tjf_{k}": (f"tjf_{k}", None) for k in range(5)},
    "cofib_c": ("cofib_c", None),
    "C": ("C", None),
    **{f"tmf_c2_nlambda_{n}": ("tmf_c2_nlambda", n) for n in range(8)},
    "tmf_c3_3local": ("tmf_c3_3local", None),
}


def load_golden(name: str, directory: Optional[str] = None) -> CellComplex:
    path = data_dir(directory) / "golden" / f"{name}.json"
    with open(path) as fh:
        return CellComplex.from_json_obj(json.load(fh))


def golden_suite(directory: Optional[str] = None) -> List[Tuple[str, CellComplex, CellComplex]]:
    """(golden name, catalog-built complex, stored diagram) for every stored golden."""
    return [(g, catalog(name, n), load_golden(g, directory)) for g, (name, n) in GOLDENS.items()]
