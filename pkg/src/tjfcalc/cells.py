"""Finite cell complexes with labeled stable attaching maps.

A complex is a list of cells ``(id, degree)`` and attachments
``(source id, target id, label)``.  An attachment from a cell of degree s to a
cell of degree t carries a label of stem degree s - t - 1.  Labels are
recorded up to a unit, so attachment signs are never tracked.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple


class CellError(Exception):
    pass


class DegreeMismatch(CellError):
    pass


class LocalityMismatch(CellError):
    pass


class OutOfCatalog(CellError, KeyError):
    pass


class AttachLabel(str, Enum):
    TWO = "two"
    ETA = "eta"
    NU = "nu"
    TWO_NU = "two_nu"
    ALPHA = "alpha"
    TWO_ALPHA = "two_alpha"
    BETA = "beta"
    ZERO = "zero"

    @property
    def stem(self) -> Optional[int]:
        """Stem degree; None for zero, which fits any degree."""
        return _STEMS[self]

    @property
    def locality(self) -> Optional[frozenset]:
        """Primes at which the label is nonzero; None means every prime."""
        return _LOCALITY[self]

    def fits(self, gap: int) -> bool:
        return self.stem is None or self.stem == gap

    @classmethod
    def parse(cls, name) -> "AttachLabel":
        if isinstance(name, cls):
            return name
        try:
            return cls(name)
        except ValueError:
            raise CellError(f"unknown attaching label {name!r}") from None


_STEMS = {
    AttachLabel.TWO: 0,
    AttachLabel.ETA: 1,
    AttachLabel.NU: 3,
    AttachLabel.TWO_NU: 3,
    AttachLabel.ALPHA: 3,
    AttachLabel.TWO_ALPHA: 3,
    AttachLabel.BETA: 10,
    AttachLabel.ZERO: None,
}

_LOCALITY = {
    AttachLabel.TWO: None,
    AttachLabel.ETA: frozenset({2}),
    AttachLabel.NU: frozenset({2, 3}),
    AttachLabel.TWO_NU: frozenset({2, 3}),
    AttachLabel.ALPHA: frozenset({3}),
    AttachLabel.TWO_ALPHA: frozenset({3}),
    AttachLabel.BETA: frozenset({3}),
    AttachLabel.ZERO: frozenset(),
}

Cell = Tuple[str, int]
Attachment = Tuple[str, str, AttachLabel]


@dataclass(frozen=True)
class CellComplex:
    cells: Tuple[Cell, ...]
    attachments: Tuple[Attachment, ...] = ()
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        cells = tuple((str(i), int(d)) for i, d in self.cells)
        atts = tuple((str(s), str(t), AttachLabel.parse(lab)) for s, t, lab in self.attachments)
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "attachments", atts)
        ids = [i for i, _ in cells]
        if len(set(ids)) != len(ids):
            raise CellError("cell ids must be unique")
        deg = dict(cells)
        for s, t, lab in atts:
            if s not in deg or t not in deg:
                raise CellError(f"attachment {s}->{t} references a missing cell")
            if deg[t] >= deg[s]:
                raise DegreeMismatch(f"attachment {s}->{t} must go to a strictly lower degree")
            if not lab.fits(deg[s] - deg[t] - 1):
                raise DegreeMismatch(
                    f"{lab.value} has stem {lab.stem} but {s}->{t} spans degrees {deg[s]}->{deg[t]}"
                )

    # -- inspection ----------------------------------------------------------

    def degree(self, cell_id: str) -> int:
        return dict(self.cells)[cell_id]

    def degrees(self) -> List[int]:
        return sorted(d for _, d in self.cells)

    def ids(self) -> List[str]:
        return [i for i, _ in self.cells]

    def __len__(self) -> int:
        return len(self.cells)

    def renamed(self, name: Optional[str]) -> "CellComplex":
        return CellComplex(self.cells, self.attachments, name)

    def edge_signatures(self) -> Counter:
        deg = dict(self.cells)
        return Counter((deg[s], deg[t], lab.value) for s, t, lab in self.attachments)

    # -- serialization -------------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "name": self.name,
            "cells": [[i, d] for i, d in self.cells],
            "attachments": [[s, t, lab.value] for s, t, lab in self.attachments],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json_obj(cls, obj: dict) -> "CellComplex":
        return cls(
            tuple(tuple(c) for c in obj["cells"]),
            tuple(tuple(a) for a in obj.get("attachments", [])),
            obj.get("name"),
        )

    @classmethod
    def from_json(cls, text: str) -> "CellComplex":
        return cls.from_json_obj(json.loads(text))


def sphere(degree: int = 0, cell_id: Optional[str] = None) -> CellComplex:
    return CellComplex(((cell_id or f"e{degree}", degree),), (), f"S{degree}")


# -- constructions -------------------------------------------------------------


def shift(x: CellComplex, k: int) -> CellComplex:
    return CellComplex(tuple((i, d + k) for i, d in x.cells), x.attachments)


def _fresh(base: str, taken: set) -> str:
    if base not in taken:
        return base
    n = 1
    while f"{base}.{n}" in taken:
        n += 1
    return f"{base}.{n}"


def direct_sum(*parts: CellComplex) -> CellComplex:
    cells: List[Cell] = []
    atts: List[Attachment] = []
    taken: set = set()
    for x in parts:
        rename = {}
        for i, d in x.cells:
            new = _fresh(i, taken)
            taken.add(new)
            rename[i] = new
            cells.append((new, d))
        atts.extend((rename[s], rename[t], lab) for s, t, lab in x.attachments)
    return CellComplex(tuple(cells), tuple(atts))


def dual(x: CellComplex) -> CellComplex:
    """Spanier-Whitehead dual: negate degrees and reverse every attachment."""
    return CellComplex(
        tuple((i, -d) for i, d in x.cells),
        tuple((t, s, lab) for s, t, lab in x.attachments),
    )


def cofiber(
    degree: int,
    target: CellComplex,
    components: Iterable[Tuple[object, str]],
    cell_id: Optional[str] = None,
) -> CellComplex:
    """Attach one new cell of dimension degree + 1 along the given components."""
    deg = dict(target.cells)
    new = cell_id or _fresh(f"e{degree + 1}", set(deg))
    if new in deg:
        raise CellError(f"cell id {new!r} already present")
    atts = list(target.attachments)
    for lab, cid in components:
        lab = AttachLabel.parse(lab)
        if cid not in deg:
            raise CellError(f"no cell {cid!r} in the target")
        if not lab.fits(degree - deg[cid]):
            raise DegreeMismatch(
                f"{lab.value} has stem {lab.stem}, but the map S^{degree} -> cell {cid} of degree "
                f"{deg[cid]} needs stem {degree - deg[cid]}"
            )
        atts.append((new, cid, lab))
    return CellComplex(target.cells + ((new, degree + 1),), tuple(atts))


def tensor(x: CellComplex, y: CellComplex) -> CellComplex:
    """Cells are pairs; attachments act on one factor at a time."""
    cells = tuple((f"{i}*{j}", d + e) for i, d in x.cells for j, e in y.cells)
    atts = [(f"{s}*{j}", f"{t}*{j}", lab) for s, t, lab in x.attachments for j, _ in y.cells]
    atts += [(f"{i}*{s}", f"{i}*{t}", lab) for i, _ in x.cells for s, t, lab in y.attachments]
    return CellComplex(cells, tuple(atts))


_AT3 = {
    AttachLabel.NU: AttachLabel.ALPHA,
    AttachLabel.TWO_NU: AttachLabel.TWO_ALPHA,
    AttachLabel.ETA: AttachLabel.ZERO,
}


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def localize(x: CellComplex, p: int) -> CellComplex:
    """Relabel attachments after localizing at the prime p.

    At 3, nu becomes alpha and eta dies; at primes >= 5 all of eta, nu, 2nu die.
    The 3-primary labels alpha, 2alpha and beta are only meaningful at 3.
    The degree-zero label ``two`` is kept at every prime.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not a prime")
    atts = []
    for s, t, lab in x.attachments:
        if lab in (AttachLabel.ALPHA, AttachLabel.TWO_ALPHA, AttachLabel.BETA) and p != 3:
            raise LocalityMismatch(f"{lab.value} is a 3-local class and cannot be localized at {p}")
        if p == 3:
            lab = _AT3.get(lab, lab)
        elif p > 3 and lab in (AttachLabel.ETA, AttachLabel.NU, AttachLabel.TWO_NU):
            lab = AttachLabel.ZERO
        atts.append((s, t, lab))
    name = f"{x.name}_({p})" if x.name else None
    return CellComplex(x.cells, tuple(atts), name)


def simplify(x: CellComplex) -> List[CellComplex]:
    """Drop zero attachments and split into connected summands."""
    live = [a for a in x.attachments if a[2] is not AttachLabel.ZERO]
    parent = {i: i for i in x.ids()}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for s, t, _ in live:
        parent[find(s)] = find(t)
    groups: Dict[str, List[Cell]] = {}
    for i, d in x.cells:
        groups.setdefault(find(i), []).append((i, d))
    parts = []
    for members in groups.values():
        ids = {i for i, _ in members}
        parts.append(CellComplex(tuple(members), tuple(a for a in live if a[0] in ids)))
    parts.sort(key=lambda c: (min(c.degrees()), len(c), c.degrees(), c.ids()))
    return parts


# -- comparison ----------------------------------------------------------------


@dataclass
class Comparison:
    iso: bool
    mapping: Optional[Dict[str, str]] = None
    mismatch: Optional[str] = None

    def __bool__(self) -> bool:
        return self.iso


def diagram_compare(x: CellComplex, y: CellComplex) -> Comparison:
    """Isomorphism of labeled diagrams preserving degrees; else the first difference."""
    dx, dy = Counter(d for _, d in x.cells), Counter(d for _, d in y.cells)
    if dx != dy:
        d = min(k for k in set(dx) | set(dy) if dx[k] != dy[k])
        return Comparison(False, mismatch=f"cells at degree {d}: {dx[d]} vs {dy[d]}")
    ex, ey = x.edge_signatures(), y.edge_signatures()
    if ex != ey:
        sig = min(k for k in set(ex) | set(ey) if ex[k] != ey[k])
        return Comparison(
            False, mismatch=f"{sig[2]} edges from degree {sig[0]} to {sig[1]}: {ex[sig]} vs {ey[sig]}"
        )
    mapping = _match(x, y)
    if mapping is None:
        return Comparison(False, mismatch="same cells and edge counts but the diagrams are not isomorphic")
    return Comparison(True, mapping=mapping)


def _match(x: CellComplex, y: CellComplex) -> Optional[Dict[str, str]]:
    degx, degy = dict(x.cells), dict(y.cells)
    edges_y = Counter((s, t, lab) for s, t, lab in y.attachments)
    edges_x = list(x.attachments)
    order = sorted(x.ids(), key=lambda i: (degx[i], i))
    candidates = {i: [j for j in y.ids() if degy[j] == degx[i]] for i in order}
    mapping: Dict[str, str] = {}
    used: set = set()

    def consistent() -> bool:
        image = Counter()
        for s, t, lab in edges_x:
            if s in mapping and t in mapping:
                image[(mapping[s], mapping[t], lab)] += 1
        return all(edges_y[k] >= v for k, v in image.items())

    def search(k: int) -> bool:
        if k == len(order):
            return Counter((mapping[s], mapping[t], lab) for s, t, lab in edges_x) == edges_y
        i = order[k]
        for j in candidates[i]:
            if j in used:
                continue
            mapping[i] = j
            used.add(j)
            if consistent() and search(k + 1):
                return True
            del mapping[i]
            used.discard(j)
        return False

    return dict(mapping) if search(0) else None
