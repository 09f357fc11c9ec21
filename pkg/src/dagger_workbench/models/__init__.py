"""
Concrete models of the axioms.
"""

from dagger_workbench.category import register_model
from dagger_workbench.models.fdhilb import FdHilb, GroundField
from dagger_workbench.models.finrel import FINREL_MODEL, FinRel

FDHILB_R = register_model(FdHilb(GroundField.REAL))
FDHILB_C = register_model(FdHilb(GroundField.COMPLEX))
FINREL = register_model(FINREL_MODEL)

__all__ = ["FDHILB_C", "FDHILB_R", "FINREL", "FdHilb", "FinRel", "GroundField"]
