"""Exact-arithmetic Clifford-hierarchy analysis toolkit."""

from .phase import DyadicPhase, NonDyadicAngleError, parse_phase
from .pauli import PauliString, StabilizerTableau, common_stabilizer, encode_to_z
from .clifford import CliffordTableau, from_circuit, is_clifford_monomial, normalizes
from .monomial import MonomialGate
from .diagonal import (
    DiagonalGate,
    ch_level_diag,
    generators_Dk,
    in_Diag_l,
    in_Dk,
    order_Dk,
    z_rotation_coeffs,
)
from .hierarchy import HierarchyEngine, LevelVerdict, conjugation_closure, level, perm_level
from .circuits import Circuit, Gate

__version__ = "0.1.0"
