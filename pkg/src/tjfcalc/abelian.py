"""Finitely generated abelian groups via integer lattices.

A group is presented as Z^n modulo a relation lattice; everything reduces to
Hermite and Smith normal forms over Z.  Matrices are lists of integer rows and
lattices are given by generating row vectors.
"""

from __future__ import annotations

from math import gcd
from typing import List, Optional, Sequence, Tuple

Vec = List[int]


def row_hnf(vectors: Sequence[Sequence[int]], n: int) -> List[Vec]:
    """Echelon basis (nonzero rows, positive pivots) of the lattice spanned by ``vectors``."""
    rows = [list(v) for v in vectors if any(v)]
    basis: List[Vec] = []
    col = 0
    while rows and col < n:
        nz = [r for r in rows if r[col]]
        if not nz:
            col += 1
            continue
        rest = [r for r in rows if not r[col]]
        # Euclid on the column until a single row carries it
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            nxt = [piv]
            for r in nz[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            nz = nxt
        piv = nz[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        basis.append(piv)
        rows = rest
        col += 1
    # reduce entries above pivots
    for i, b in enumerate(basis):
        c = _pivot(b)
        for j in range(i):
            q = basis[j][c] // b[c]
            if q:
                basis[j] = [x - q * y for x, y in zip(basis[j], b)]
    return basis


def _pivot(v: Sequence[int]) -> int:
    return next(i for i, x in enumerate(v) if x)


def coordinates(basis: Sequence[Sequence[int]], v: Sequence[int]) -> Optional[Vec]:
    """Integer coordinates of v in an echelon basis, or None if v is outside the lattice."""
    v = list(v)
    out = []
    for b in basis:
        c = _pivot(b)
        if v[c] % b[c]:
            return None
        q = v[c] // b[c]
        out.append(q)
        if q:
            v = [x - q * y for x, y in zip(v, b)]
    return out if not any(v) else None


def kernel(matrix: Sequence[Sequence[int]], ncols: int) -> List[Vec]:
    """Basis of {x in Z^ncols : matrix x = 0}."""
    m = len(matrix)
    # row-reduce the augmented [A^T | I]; rows whose A^T part vanishes span the kernel
    aug = [[matrix[i][j] for i in range(m)] + [int(j == k) for k in range(ncols)] for j in range(ncols)]
    reduced = row_hnf(aug, m + ncols)
    return [r[m:] for r in reduced if not any(r[:m])]


def smith_diagonal(matrix: Sequence[Sequence[int]]) -> List[int]:
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix."""
    a = [list(r) for r in matrix if any(r)]
    if not a:
        return []
    rows, cols = len(a), len(a[0])
    diag: List[int] = []
    t = 0
    while t < min(rows, cols):
        entries = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        a[t], a[i] = a[i], a[t]
        for r in a:
            r[t], r[j] = r[j], r[t]
        while True:
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for r in a:
                        r[j] -= q * r[t]
                    if a[t][j]:
                        for r in a:
                            r[t], r[j] = r[j], r[t]
                        done = False
            if done:
                bad = next(
                    ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % a[t][t]), None
                )
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def lattice_quotient(big: Sequence[Sequence[int]], small: Sequence[Sequence[int]], n: int) -> List[int]:
    """Invariant factors of big/small (small must lie inside big); 0 marks a free summand."""
    basis = row_hnf(big, n)
    coords = []
    for v in small:
        c = coordinates(basis, v)
        if c is None:
            raise ValueError("sublattice is not contained in the lattice")
        coords.append(c)
    factors = smith_diagonal(coords) if basis else []
    free = len(basis) - len(factors)
    return normalize_orders([d for d in factors if d != 1] + [0] * free)


def intersect_coordinate(lattice: Sequence[Sequence[int]], keep: Sequence[int], n: int) -> List[Vec]:
    """Sublattice of vectors whose coordinates outside ``keep`` vanish."""
    basis = row_hnf(lattice, n)
    if not basis:
        return []
    drop = [i for i in range(n) if i not in set(keep)]
    if not drop:
        return basis
    # combinations c with sum c_k basis_k vanishing on ``drop``
    mat = [[b[i] for b in basis] for i in drop]
    combos = kernel(mat, len(basis))
    return [[sum(c * b[i] for c, b in zip(combo, basis)) for i in range(n)] for combo in combos]


def normalize_orders(orders: Sequence[int]) -> List[int]:
    """Invariant-factor form: finite factors in divisibility chain, then zeros for Z."""
    finite = [o for o in orders if o not in (0, 1)]
    free = sum(1 for o in orders if o == 0)
    # split into prime powers and regroup
    powers: dict = {}
    for o in finite:
        for p, e in _factor(o):
            powers.setdefault(p, []).append(p**e)
    chains = []
    depth = max((len(v) for v in powers.values()), default=0)
    for v in powers.values():
        v.sort()
        chains.append([1] * (depth - len(v)) + v)
    factors = []
    for k in range(depth):
        d = 1
        for ch in chains:
            d *= ch[k]
        factors.append(d)
    return factors + [0] * free


def _factor(n: int) -> List[Tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def group_order(orders: Sequence[int]) -> int:
    """Order of the group, 0 when infinite."""
    total = 1
    for o in orders:
        if o == 0:
            return 0
        total *= o
    return total


def format_group(orders: Sequence[int]) -> str:
    if not orders:
        return "0"
    return " + ".join("Z" if o == 0 else f"Z/{o}" for o in orders)


def coprime(a: Sequence[int], b: Sequence[int]) -> bool:
    """Both groups finite with coprime orders."""
    oa, ob = group_order(a), group_order(b)
    return oa != 0 and ob != 0 and gcd(oa, ob) == 1
