"""Quench dynamics of a quantum particle released from a half-line linear trap."""

from .backend import BACKEND
from .eigen import (Eigenstate, PhysicalParams, SpectralCoefficients, eigenstate_value,
                    eigenstate_values, expand_packet, inner_product, make_eigenstate,
                    sample_cutoff_state, source_cutoff, turning_point)
from .errors import (AiryquenchError, DomainError, GridCoverageError, InvalidConfigError,
                     NumericalValidityError, RangeError, ResolutionError, ShapeError,
                     TruncationError)
from .fields import RealField, SpaceGrid, WaveField
from .observables import (StructureReport, bose_map_check, continuity_residual, current,
                          density, fermion_density, structure_report, symmetry_decomposition)
from .propagate import (EvolutionMethod, ScenarioTag, eigenstate_source, evolve_direct,
                        evolve_eigenstate, evolve_erfc, evolve_superposition, kernel_halfspace,
                        kernel_linear, suggested_grid)
from .specfun import AiryValue, AiryZero, airy_ai, airy_ai_values, airy_zero, erfc_complex

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "__version__",
    "PhysicalParams", "Eigenstate", "SpectralCoefficients",
    "SpaceGrid", "WaveField", "RealField",
    "AiryValue", "AiryZero", "airy_ai", "airy_ai_values", "airy_zero", "erfc_complex",
    "make_eigenstate", "eigenstate_value", "eigenstate_values", "sample_cutoff_state",
    "inner_product", "expand_packet", "turning_point", "source_cutoff",
    "ScenarioTag", "EvolutionMethod", "kernel_linear", "kernel_halfspace",
    "eigenstate_source", "evolve_direct", "evolve_erfc", "evolve_eigenstate",
    "evolve_superposition", "suggested_grid",
    "density", "current", "continuity_residual", "structure_report", "StructureReport",
    "symmetry_decomposition", "fermion_density", "bose_map_check",
    "AiryquenchError", "RangeError", "DomainError", "ShapeError", "InvalidConfigError",
    "GridCoverageError", "NumericalValidityError", "ResolutionError", "TruncationError",
]
