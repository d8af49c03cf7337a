"""Exact q-series kernel for integral Jacobi forms and a cell calculus for TMF-modules."""

from .cyclotomic import CycScalar
from .series import QYSeries, YLaurent, series_add, series_mul, series_div_exact, substitute_y
from .modular import ModularForm, mf_generator, mf_membership
from .jacobi import JacobiForm, gen_a, gen_b, gen_c, restrict_z0, scale_z, torsion_restrict, torsion_sum
from .cells import AttachLabel, CellComplex, cofiber, diagram_compare, direct_sum, dual, localize, shift, simplify, sphere
from .catalog import catalog
from .les import GradedGroupResult, hom_groups, homotopy_groups
from .tables import CoefficientTable, default_tables

__version__ = "0.1.0"

__all__ = [
    "CycScalar",
    "QYSeries",
    "YLaurent",
    "series_add",
    "series_mul",
    "series_div_exact",
    "substitute_y",
    "ModularForm",
    "mf_generator",
    "mf_membership",
    "JacobiForm",
    "gen_a",
    "gen_b",
    "gen_c",
    "restrict_z0",
    "scale_z",
    "torsion_restrict",
    "torsion_sum",
    "AttachLabel",
    "CellComplex",
    "cofiber",
    "diagram_compare",
    "direct_sum",
    "dual",
    "localize",
    "shift",
    "simplify",
    "sphere",
    "catalog",
    "GradedGroupResult",
    "hom_groups",
    "homotopy_groups",
    "CoefficientTable",
    "default_tables",
]
