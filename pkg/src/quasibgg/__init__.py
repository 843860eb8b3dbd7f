"""Exact computations with BGG-type complexes, twisting functors and quasi-Verma modules
over Q, F_p and Z[v, v^-1], on truncated weight windows."""

from .bgg import (
    ComplexOfModules,
    assemble_bgg,
    assemble_cousin,
    assign_signs,
    flip_sign,
    induced_differential_sl2_to_g,
    perturb_entry,
    sl2_exact_sequence,
    twisted_differential,
    verify_complex,
)
from .charring import FormalCharacter, euler_characteristic, verma_character, weyl_character, weyl_dimension
from .linalg import GF, QQ
from .modules import coweyl_module, submodule_lattice, verma, weyl_module
from .quantum import LaurentScalar, compare_specialization, quantum_binomial, quantum_integer, quantum_verma, quasi_bgg_rank1
from .rootdata import RootDatum, build_root_datum, dot_action
from .truncated import ModuleMap, TruncatedModule, contragredient
from .twisting import hom_from_semiregular, quasi_verma, twist_module
from .weyl import BruhatPoset, WeylElement, enumerate_weyl

__version__ = "0.1.0"

__all__ = [
    "ComplexOfModules",
    "assemble_bgg",
    "assemble_cousin",
    "assign_signs",
    "flip_sign",
    "induced_differential_sl2_to_g",
    "perturb_entry",
    "sl2_exact_sequence",
    "twisted_differential",
    "verify_complex",
    "FormalCharacter",
    "euler_characteristic",
    "verma_character",
    "weyl_character",
    "weyl_dimension",
    "GF",
    "QQ",
    "coweyl_module",
    "submodule_lattice",
    "verma",
    "weyl_module",
    "LaurentScalar",
    "compare_specialization",
    "quantum_binomial",
    "quantum_integer",
    "quantum_verma",
    "quasi_bgg_rank1",
    "RootDatum",
    "build_root_datum",
    "dot_action",
    "ModuleMap",
    "TruncatedModule",
    "contragredient",
    "hom_from_semiregular",
    "quasi_verma",
    "twist_module",
    "BruhatPoset",
    "WeylElement",
    "enumerate_weyl",
]
