"""Coefficient tables: homotopy groups of a ring or module with label actions."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .cells import AttachLabel, CellComplex

DATA_ENV = "TJFCALC_DATA_DIR"

Group = List[Tuple[int, str]]


class TableError(Exception):
    pass


class ProvenanceMissing(TableError):
    pass


class TableRangeExceeded(TableError):
    pass


def data_dir(override: Optional[str] = None) -> Path:
    """Directory holding tables and goldens: argument, then environment, then the bundled copy."""
    if override:
        return Path(override)
    env = os.environ.get(DATA_ENV)
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "data"


@dataclass
class CoefficientTable:
    """Groups pi_d as cyclic orders (0 for Z) and label actions as integer matrices.

    Degrees inside ``range`` without an entry are unknown.  Degrees listed in
    ``partial`` give independent nonzero classes spanning a subgroup only.
    An action matrix for a label at degree d maps pi_d to pi_{d + stem}: one row
    per target generator, one column per source generator.
    """

    name: str
    prime: Optional[int]
    range: Tuple[int, int]
    groups: Dict[int, Group]
    actions: Dict[str, Dict[int, List[List[int]]]]
    provenance: str
    partial: Tuple[int, ...] = ()
    module: Optional[CellComplex] = None
    path: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if not isinstance(self.provenance, str) or not self.provenance.strip():
            raise ProvenanceMissing(f"table {self.name!r} has no provenance notes")
        lo, hi = self.range
        for d in self.groups:
            if not lo <= d <= hi:
                raise TableError(f"{self.name}: group at degree {d} lies outside the range")
        for lab, per_degree in self.actions.items():
            label = AttachLabel.parse(lab)
            if label.stem is None or label in (AttachLabel.TWO, AttachLabel.TWO_NU, AttachLabel.TWO_ALPHA):
                raise TableError(f"{self.name}: the action of {lab} is derived, not tabulated")
            for d, mat in per_degree.items():
                self._check_action(label, d, mat)

    def _check_action(self, label: AttachLabel, d: int, mat) -> None:
        src, tgt = self.groups.get(d), self.groups.get(d + label.stem)
        if src is None or tgt is None:
            raise TableError(f"{self.name}: {label.value} action at {d} needs both groups tabulated")
        if len(mat) != len(tgt) or any(len(row) != len(src) for row in mat):
            raise TableError(f"{self.name}: {label.value} action at {d} has the wrong shape")
        for i, (ot, _) in enumerate(tgt):
            for j, (os_, _) in enumerate(src):
                if os_ and (ot == 0 and mat[i][j] or ot and (os_ * mat[i][j]) % ot):
                    raise TableError(
                        f"{self.name}: {label.value} action at {d} is not well defined on generator {j}"
                    )

    # -- access ----------------------------------------------------------------

    def covers(self, d: int) -> bool:
        return self.range[0] <= d <= self.range[1]

    def group(self, d: int) -> Optional[Group]:
        """The full group at d, or None when it is unknown or only partially known."""
        if not self.covers(d):
            raise TableRangeExceeded(f"{self.name} covers degrees {self.range[0]}..{self.range[1]}, not {d}")
        if d in self.partial:
            return None
        return self.groups.get(d)

    def subgroup(self, d: int) -> Optional[Group]:
        """Known classes at d: the whole group, or the listed subgroup when partial."""
        if not self.covers(d):
            raise TableRangeExceeded(f"{self.name} covers degrees {self.range[0]}..{self.range[1]}, not {d}")
        return self.groups.get(d)

    def action(self, label: AttachLabel, d: int, src: Group, tgt: Group) -> Optional[List[List[int]]]:
        """Matrix of the label from degree d, derived where possible; None when unknown."""
        zero = [[0] * len(src) for _ in tgt]
        if label is AttachLabel.ZERO or not src or not tgt:
            return zero
        if label is AttachLabel.TWO:
            return [[2 * int(i == j) for j in range(len(src))] for i in range(len(tgt))]
        if label in (AttachLabel.TWO_NU, AttachLabel.TWO_ALPHA):
            base = AttachLabel.NU if label is AttachLabel.TWO_NU else AttachLabel.ALPHA
            m = self.action(base, d, src, tgt)
            return None if m is None else [[2 * x for x in row] for row in m]
        m = self.actions.get(label.value, {}).get(d)
        return None if m is None else [list(r) for r in m]

    # -- io --------------------------------------------------------------------

    @classmethod
    def from_json_obj(cls, obj: dict, path: Optional[str] = None) -> "CoefficientTable":
        if not str(obj.get("provenance", "")).strip():
            raise ProvenanceMissing(f"table {obj.get('name', path)!r} has no provenance notes")
        groups = {int(d): [(int(o), str(g)) for o, g in gens] for d, gens in obj.get("groups", {}).items()}
        actions = {
            lab: {int(d): [list(map(int, r)) for r in m] for d, m in per.items()}
            for lab, per in obj.get("actions", {}).items()
        }
        module = obj.get("module")
        return cls(
            name=obj["name"],
            prime=obj.get("prime"),
            range=(int(obj["range"][0]), int(obj["range"][1])),
            groups=groups,
            actions=actions,
            provenance=obj["provenance"],
            partial=tuple(int(d) for d in obj.get("partial", [])),
            module=CellComplex.from_json_obj(module) if module else None,
            path=path,
        )

    @classmethod
    def load(cls, path) -> "CoefficientTable":
        path = Path(path)
        with open(path) as fh:
            return cls.from_json_obj(json.load(fh), str(path))


@dataclass
class TableSet:
    """A base coefficient table plus module tables recognized by their cell diagrams."""

    base: CoefficientTable
    modules: List[CoefficientTable] = field(default_factory=list)

    @property
    def prime(self) -> Optional[int]:
        return self.base.prime


BUNDLED = {None: ("tmf.json", []), 3: ("tmf_3local.json", ["tmf_mod_alpha_3local.json", "tmf1_2_3local.json"])}


def load_table(name: str, directory: Optional[str] = None) -> CoefficientTable:
    """Load a table by file name (``.json`` optional) from the data directory, or by path."""
    p = Path(name)
    if not p.exists():
        fname = name if name.endswith(".json") else f"{name}.json"
        p = data_dir(directory) / "tables" / fname
    return CoefficientTable.load(p)


def default_tables(prime: Optional[int] = None, directory: Optional[str] = None) -> TableSet:
    if prime == 0:
        prime = None
    if prime not in BUNDLED:
        raise TableError(f"no bundled tables at prime {prime}")
    base, mods = BUNDLED[prime]
    return TableSet(load_table(base, directory), [load_table(m, directory) for m in mods])
