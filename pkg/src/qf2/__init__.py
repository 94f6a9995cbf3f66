"""Exact computation of the quantum module structure on the Hirzebruch
surface of type 2 and its identification with the Batyrev module.

The pipeline: a smooth complete fan yields divisor classes and quantum
Stanley-Reisner data (``qf2.fan``); torus localization over chain-graph fixed
loci produces the complete table of 2-pointed invariants (``qf2.localization``,
``qf2.losev_manin``, ``qf2.invariants``); the invariants assemble into the
action of the two deformation generators on cohomology (``qf2.quantum_module``);
and that module is matched against multiplication in the Batyrev ring
(``qf2.batyrev``).  All arithmetic is exact.
"""

from .algebra import Rational, TruncSeries2, VFraction, VPoly, binom, binom_rational, f_series
from .fan import Fan, class_matrix, f2_fan, primitive_collections, validate_fan
from .invariants import InvariantKey, action_invariant, closed_invariant
from .localization import (
    FAMILY_D2DD4,
    FAMILY_DD4,
    ChainGraph,
    enumerate_necessary_loci,
    invariant_by_localization,
    locus_contribution,
)
from .losev_manin import LMClass, lm_integrate, lm_multiply, psi_integral
from .quantum_module import star_matrix

__version__ = "1.0.0"

__all__ = [
    "Rational",
    "TruncSeries2",
    "VFraction",
    "VPoly",
    "binom",
    "binom_rational",
    "f_series",
    "Fan",
    "class_matrix",
    "f2_fan",
    "primitive_collections",
    "validate_fan",
    "InvariantKey",
    "action_invariant",
    "closed_invariant",
    "FAMILY_D2DD4",
    "FAMILY_DD4",
    "ChainGraph",
    "enumerate_necessary_loci",
    "invariant_by_localization",
    "locus_contribution",
    "LMClass",
    "lm_integrate",
    "lm_multiply",
    "psi_integral",
    "star_matrix",
    "__version__",
]
