"""Homotopy and mapping groups of cell complexes over a coefficient table.

For a complex X with cells e_c of degree d_c, the cellular filtration gives
groups pi_{t - d_c} in total degree t, and every attachment acts by its label.
The engine computes the homology of that linear model at one degree, splits it
into filtration pieces, and reports a group only when the pieces determine it.
Two situations are never guessed and leave the answer undetermined: missing
table data, and a composite of two or more attachments that could act between
nonzero pieces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from . import abelian
from .cells import AttachLabel, CellComplex, LocalityMismatch, diagram_compare, dual, localize, shift, simplify, tensor
from .tables import CoefficientTable, TableRangeExceeded, TableSet

DETERMINED = "determined"
AMBIGUOUS = "ambiguous-extension"
UNDETERMINED = "undetermined"


class AmbiguousInput(Exception):
    pass


class _Unknown(Exception):
    pass


@dataclass
class GradedGroupResult:
    degree: int
    status: str
    orders: Optional[List[int]] = None
    pieces: List[Tuple[str, List[int]]] = field(default_factory=list)
    sub: Optional[List[int]] = None
    quotient: Optional[List[int]] = None
    site: Optional[str] = None
    reason: Optional[str] = None

    @property
    def determined(self) -> bool:
        return self.status == DETERMINED

    def describe(self) -> str:
        if self.status == DETERMINED:
            return abelian.format_group(self.orders)
        if self.status == AMBIGUOUS:
            return (
                f"extension of {abelian.format_group(self.quotient)} by {abelian.format_group(self.sub)}"
                f" at cell {self.site} (ambiguous)"
            )
        return f"undetermined ({self.reason})"

    def __str__(self) -> str:
        return f"{self.degree}: {self.describe()}"

    def to_json_obj(self) -> dict:
        return {
            "degree": self.degree,
            "status": self.status,
            "orders": self.orders,
            "pieces": [[c, o] for c, o in self.pieces],
            "sub": self.sub,
            "quotient": self.quotient,
            "site": self.site,
            "reason": self.reason,
        }


def _prepare(x: CellComplex, table: CoefficientTable) -> CellComplex:
    labels = {lab for _, _, lab in x.attachments}
    p = table.prime
    if p:
        return localize(x, p)
    local = labels & {AttachLabel.ALPHA, AttachLabel.TWO_ALPHA, AttachLabel.BETA}
    if local:
        raise LocalityMismatch(f"{sorted(l.value for l in local)} need a 3-local table")
    return x


def _paths_of_length_two_or_more(x: CellComplex) -> List[Tuple[str, str]]:
    out_edges: Dict[str, List[str]] = {}
    for s, t, lab in x.attachments:
        if lab is not AttachLabel.ZERO:
            out_edges.setdefault(s, []).append(t)
    pairs = set()
    for start in x.ids():
        frontier = set(out_edges.get(start, []))
        seen: set = set()
        while frontier:
            nxt = set()
            for c in frontier:
                for t in out_edges.get(c, []):
                    if (start, t) not in pairs:
                        pairs.add((start, t))
                        nxt.add(t)
            seen |= frontier
            frontier = nxt - seen
    return sorted(pairs)


def _degree_result(x: CellComplex, table: CoefficientTable, t: int) -> GradedGroupResult:
    try:
        return _compute(x, table, t)
    except _Unknown as exc:
        return GradedGroupResult(t, UNDETERMINED, reason=str(exc))


def _compute(x: CellComplex, table: CoefficientTable, t: int) -> GradedGroupResult:
    deg = dict(x.cells)
    order = sorted(x.ids(), key=lambda c: (deg[c], c))
    pos = {c: i for i, c in enumerate(order)}
    edges = [(s, u, lab) for s, u, lab in x.attachments if lab is not AttachLabel.ZERO]

    def full(c: str, total: int):
        g = table.group(total - deg[c])
        if g is None:
            raise _Unknown(f"pi_{total - deg[c]} of {table.name} is not tabulated (cell {c})")
        return g

    # degree t: every cell contributes
    ct = {c: full(c, t) for c in order}
    gens = [(c, k, o) for c in order for k, (o, _) in enumerate(ct[c])]
    index = {(c, k): i for i, (c, k, _) in enumerate(gens)}
    n = len(gens)
    if n == 0:
        return GradedGroupResult(t, DETERMINED, orders=[], pieces=[])

    def matrix(lab, src_c, src_g, src_total, tgt_g):
        d = src_total - deg[src_c]
        m = table.action(lab, d, src_g, tgt_g)
        if m is None:
            raise _Unknown(f"{lab.value} action on pi_{d} of {table.name} is not tabulated")
        return m

    # outgoing differential into degree t - 1, restricted to targets hit from nonzero cells
    tgt_gens: List[Tuple[str, int, int]] = []
    tgt_index: Dict[Tuple[str, int], int] = {}
    blocks = []
    for s, u, lab in edges:
        if not ct[s]:
            continue
        g = table.subgroup(t - 1 - deg[u])
        if g is None:
            raise _Unknown(f"pi_{t - 1 - deg[u]} of {table.name} is not tabulated (cell {u})")
        if not g:
            continue
        for k, (o, _) in enumerate(g):
            if (u, k) not in tgt_index:
                tgt_index[(u, k)] = len(tgt_gens)
                tgt_gens.append((u, k, o))
        blocks.append((s, u, matrix(lab, s, ct[s], t, g)))
    dout = [[0] * n for _ in tgt_gens]
    for s, u, m in blocks:
        for i, row in enumerate(m):
            for j, v in enumerate(row):
                dout[tgt_index[(u, i)]][index[(s, j)]] += v
    relations_tgt = [o for _, _, o in tgt_gens]
    if tgt_gens:
        fin = [i for i, o in enumerate(relations_tgt) if o]
        aug = [row + [-(relations_tgt[i] if i == r else 0) for r in fin] for i, row in enumerate(dout)]
        kernel = [v[:n] for v in abelian.kernel(aug, n + len(fin))]
    else:
        kernel = [[int(i == j) for j in range(n)] for i in range(n)]

    # incoming differential from degree t + 1, only from cells hitting nonzero groups
    boundary = [[o * int(i == j) for j in range(n)] for i, (_, _, o) in enumerate(gens) if o]
    images: Dict[Tuple[str, int], List[int]] = {}
    for s, u, lab in edges:
        if not ct[u]:
            continue
        g = full(s, t + 1)
        if not g:
            continue
        m = matrix(lab, s, g, t + 1, ct[u])
        for j in range(len(g)):
            vec = images.setdefault((s, j), [0] * n)
            for i in range(len(ct[u])):
                vec[index[(u, i)]] += m[i][j]
    boundary += [v for v in images.values() if any(v)]

    try:
        total = abelian.lattice_quotient(kernel, boundary, n)
    except ValueError:
        raise ValueError(f"{table.name}: label actions do not compose to zero around degree {t}") from None

    pieces: List[Tuple[str, List[int]]] = []
    lower = list(boundary)
    for c in order:
        if not ct[c]:
            continue
        keep = [index[(cc, k)] for cc in order if pos[cc] <= pos[c] for k in range(len(ct[cc]))]
        layer = abelian.intersect_coordinate(kernel, keep, n) + list(boundary)
        piece = abelian.lattice_quotient(layer, lower, n)
        lower = layer
        if piece:
            pieces.append((c, piece))

    live = {c for c, _ in pieces}
    for a, b in _paths_of_length_two_or_more(x):
        if a in live:
            g = table.group(t - 1 - deg[b])
            if g is None or g:
                raise _Unknown(f"a composite attachment from {a} to {b} may act on a nonzero class")
        if b in live:
            g = table.group(t + 1 - deg[a])
            if g is None or g:
                raise _Unknown(f"a composite attachment from {a} to {b} may hit a nonzero class")

    return _resolve(t, pieces, total)


def _resolve(t: int, pieces: List[Tuple[str, List[int]]], total: List[int]) -> GradedGroupResult:
    if len(pieces) <= 1:
        return GradedGroupResult(t, DETERMINED, orders=total, pieces=pieces)
    acc = list(pieces[0][1])
    for cell, quot in pieces[1:]:
        if abelian.coprime(acc, quot) or all(o == 0 for o in quot):
            acc = abelian.normalize_orders(acc + quot)
            continue
        return GradedGroupResult(t, AMBIGUOUS, pieces=pieces, sub=acc, quotient=list(quot), site=cell)
    return GradedGroupResult(t, DETERMINED, orders=acc, pieces=pieces)


def homotopy_groups(
    x: CellComplex, table: Union[CoefficientTable, TableSet], degrees: Iterable[int]
) -> List[GradedGroupResult]:
    """pi_t of TMF-module (x) X for each t, with the table as coefficients."""
    if isinstance(table, TableSet):
        table = table.base
    x = _prepare(x, table)
    return [_degree_result(x, table, t) for t in degrees]


def _match_module(part: CellComplex, tables: TableSet) -> Optional[Tuple[CoefficientTable, int]]:
    for tab in [tables.base] + list(tables.modules):
        model = tab.module
        if model is None:
            if tab is tables.base:
                model = CellComplex((("e0", 0),))
            else:
                continue
        if len(model) != len(part):
            continue
        k = min(part.degrees()) - min(model.degrees())
        if diagram_compare(part, shift(model, k)):
            return tab, k
    return None


def hom_groups(
    x: CellComplex, y: CellComplex, tables: Union[CoefficientTable, TableSet], shift_degree: int = 0
) -> GradedGroupResult:
    """The group [X, Y[shift]] of module maps, as pi_{-shift} of D(X) (x) Y.

    Each summand of Y that matches a module table is read from that table;
    other summands are handled cell by cell over the base table.
    """
    if isinstance(tables, CoefficientTable):
        tables = TableSet(tables)
    x = _prepare(x, tables.base)
    y = _prepare(y, tables.base)
    dx = dual(x)
    t = -shift_degree
    results = []
    for part in simplify(y):
        found = _match_module(part, tables)
        if found is not None:
            tab, k = found
            res = _degree_result(dx, tab, t - k)
        else:
            res = _degree_result(tensor(dx, part), tables.base, t)
        if res.status == UNDETERMINED:
            raise AmbiguousInput(f"summand with cells {part.degrees()}: {res.reason}")
        results.append(res)
    ambiguous = [r for r in results if r.status == AMBIGUOUS]
    pieces = [p for r in results for p in r.pieces]
    if ambiguous:
        first = ambiguous[0]
        return GradedGroupResult(
            shift_degree, AMBIGUOUS, pieces=pieces, sub=first.sub, quotient=first.quotient, site=first.site
        )
    orders = abelian.normalize_orders([o for r in results for o in r.orders])
    return GradedGroupResult(shift_degree, DETERMINED, orders=orders, pieces=pieces)
