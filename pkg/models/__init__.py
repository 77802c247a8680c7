from models.field import QuadraticField, build_field
from models.incidence import IncidenceStructure
from models.permutation import ActionHomomorphism, PermGroup, Permutation

__all__ = [
    "ActionHomomorphism",
    "IncidenceStructure",
    "PermGroup",
    "Permutation",
    "QuadraticField",
    "build_field",
]
