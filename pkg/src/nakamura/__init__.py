"""Exact invariants of split Nakamura solvmanifolds.

A split Nakamura manifold is a compact quotient of ``C^n x| C`` determined
by weights ``lambda_1 .. lambda_n`` summing to zero, a structure parameter
``tau`` that is either Generic or pinned to a rational fiber
``Special(c, h, k)``, and optionally the integer lattice matrix behind the
weights.  Everything computed from a spec - Hodge tables, Betti numbers,
degeneration and del-delbar verdicts, deformation dimensions, Albanese and
p-Kahler status, automorphism lifts - is exact: rational vectors, integer
matrices, and polynomial coefficients, never floating point.

The one deliberate exception is :mod:`nakamura.construct`, which may fall
back to certified floating-point root checks for characteristic-polynomial
factors of degree three or more and says so in its report.
"""

from .automorphisms import (
    AutCandidate,
    CandidateCheck,
    CosetGroup,
    EMode,
    GroupElement,
    commutant_search,
    compose_candidates,
    deck_candidate,
    deck_conjugate,
    e_mode_space,
    h_coset_group,
    invert_candidate,
    verify_candidate,
)
from .cohomology import (
    AlbaneseReport,
    AlbaneseVerdict,
    CharacterClass,
    CharacterSetReport,
    DeformationReport,
    DegenerationReport,
    GeneratorDescriptor,
    HodgeTable,
    PKahlerReport,
    PKahlerStatus,
    admissible_character_set,
    albanese_verdict,
    betti_numbers,
    ce_betti_oracle,
    character_of,
    ddbar_lemma,
    deformation_dimension,
    dolbeault_generators,
    frolicher_degenerates,
    generator_form,
    hodge_table,
    is_admissible,
    pkahler_status,
)
from .construct import (
    EigenReport,
    Exactness,
    FactorReport,
    analyze_integer_matrix,
    build_spec,
    specs_isomorphic,
    verify_lattice_preserved,
)
from .forms import (
    InvariantForm,
    balanced_omega,
    canonical_psi,
    character_function,
    conjugate,
    d,
    dbar,
    del_,
    form_power,
    phi,
    phibar,
    wedge,
)
from .model import (
    KernelKind,
    LatticeSpec,
    ManifoldSpec,
    SpecError,
    TauSpec,
    ValidationReport,
    kodaira_dimension,
    require_valid,
    rho_kernel,
    validate_spec,
)
from .scalars import (
    IntMatrix,
    Poly,
    RationalVector,
    U,
    qvec_proportionality,
    qvector_poly,
    smith_normal_form,
)
from .tau import (
    RatioReport,
    canonical_triple,
    same_fiber,
    tau_from_triple,
    tau_ratio_invariants,
    tau_to_float,
)

__all__ = [
    "AlbaneseReport",
    "AlbaneseVerdict",
    "AutCandidate",
    "CandidateCheck",
    "CharacterClass",
    "CharacterSetReport",
    "CosetGroup",
    "DeformationReport",
    "DegenerationReport",
    "EMode",
    "EigenReport",
    "Exactness",
    "FactorReport",
    "GeneratorDescriptor",
    "GroupElement",
    "HodgeTable",
    "IntMatrix",
    "InvariantForm",
    "KernelKind",
    "LatticeSpec",
    "ManifoldSpec",
    "PKahlerReport",
    "PKahlerStatus",
    "Poly",
    "RatioReport",
    "RationalVector",
    "SpecError",
    "TauSpec",
    "U",
    "ValidationReport",
    "admissible_character_set",
    "albanese_verdict",
    "analyze_integer_matrix",
    "balanced_omega",
    "betti_numbers",
    "build_spec",
    "canonical_psi",
    "canonical_triple",
    "ce_betti_oracle",
    "character_function",
    "character_of",
    "commutant_search",
    "compose_candidates",
    "conjugate",
    "d",
    "dbar",
    "ddbar_lemma",
    "deck_candidate",
    "deck_conjugate",
    "deformation_dimension",
    "del_",
    "dolbeault_generators",
    "e_mode_space",
    "form_power",
    "frolicher_degenerates",
    "generator_form",
    "h_coset_group",
    "hodge_table",
    "invert_candidate",
    "is_admissible",
    "kodaira_dimension",
    "phi",
    "phibar",
    "pkahler_status",
    "qvec_proportionality",
    "qvector_poly",
    "require_valid",
    "rho_kernel",
    "same_fiber",
    "smith_normal_form",
    "specs_isomorphic",
    "tau_from_triple",
    "tau_ratio_invariants",
    "tau_to_float",
    "validate_spec",
    "verify_candidate",
    "verify_lattice_preserved",
    "wedge",
]
