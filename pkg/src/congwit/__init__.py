"""Finite-level congruence quotient pairs with explicit twist isomorphisms.

The library builds pairs of congruence subgroups of SL_n (over Z or over a
real quadratic ring) whose finite congruence quotients are isomorphic via
an explicit, invertible twist map, verifies that isomorphism exactly or by
seeded sampling, and emits the recomputable certificates (central presence,
fixed projective lines, ring-conjugation orbits) that obstruct any
isomorphism of the subgroups themselves.
"""

from .errors import InputError
from .matrices import SLMat, central_scalar, elementary, minus_identity, sl_order
from .parabolics import (
    ParabolicSpec,
    RootSubset,
    fixed_lines,
    graph_automorphism,
    parabolic_order,
    root_subset,
)
from .presets import (
    ObstructionReport,
    WitnessBundle,
    method_a_pair,
    method_b_pair,
    method_c_pair,
    obstruction_report,
    s16_pair,
)
from .quotients import (
    CentralElementSpec,
    FiniteQuotientGroup,
    LocalCondition,
    SubgroupSpec,
    central_presence,
    central_principal,
    full_condition,
    member,
    order_of,
    parabolic_pullback,
    principal,
    quotient_of,
    sample,
    subgroup_spec,
)
from .rings import (
    PrimePlace,
    QuadInt,
    ResidueRing,
    conj_place,
    crt_join,
    crt_split,
    find_split_primes,
    galois_conj,
    hensel_lift_sqrt,
    residue_map,
    roots_of_unity_order,
    splitting_type,
)
from .twists import IsoReport, QuotientIso, child_seed, verify_iso

__version__ = "0.1.0"

__all__ = [
    "InputError",
    "SLMat",
    "central_scalar",
    "elementary",
    "minus_identity",
    "sl_order",
    "ParabolicSpec",
    "RootSubset",
    "fixed_lines",
    "graph_automorphism",
    "parabolic_order",
    "root_subset",
    "ObstructionReport",
    "WitnessBundle",
    "method_a_pair",
    "method_b_pair",
    "method_c_pair",
    "obstruction_report",
    "s16_pair",
    "CentralElementSpec",
    "FiniteQuotientGroup",
    "LocalCondition",
    "SubgroupSpec",
    "central_presence",
    "central_principal",
    "full_condition",
    "member",
    "order_of",
    "parabolic_pullback",
    "principal",
    "quotient_of",
    "sample",
    "subgroup_spec",
    "PrimePlace",
    "QuadInt",
    "ResidueRing",
    "conj_place",
    "crt_join",
    "crt_split",
    "find_split_primes",
    "galois_conj",
    "hensel_lift_sqrt",
    "residue_map",
    "roots_of_unity_order",
    "splitting_type",
    "IsoReport",
    "QuotientIso",
    "child_seed",
    "verify_iso",
]
