"""Geometric entanglement of permutation-symmetric qubit states.

A symmetric n-qubit state is encoded by n points on the Bloch sphere;
its overlap with product states is a function on the sphere whose zeros
sit antipodal to those points and whose global maxima (the closest
product points) determine the geometric measure of entanglement.  The
package provides the bidirectional state/point map, a deterministic
multistart solver for the maxima, closed forms and bounds, structure
checks for positive states, outer searches for maximally entangled
states, classical point-configuration baselines, and resource criteria
for measurement-based quantum computation, all behind a CLI (`majent`).
"""
from importlib import metadata

from .analysis import (
    BoundsReport,
    DualityReport,
    MomentReport,
    dicke_cpp,
    dicke_entanglement,
    duality_report,
    entanglement_bounds,
    hausdorff_angle,
    moment_report,
)
from .cpp_solver import (
    CPPSet,
    EntanglementValue,
    SolverConfig,
    SolverError,
    StructureReport,
    detect_ring,
    find_cpps,
    geometric_entanglement,
    verify_cpp_structure,
)
from .majorana import (
    MajoranaPoints,
    MajoranaPolynomial,
    amplitude,
    amplitude_grid,
    integrate_amplitude_sq,
    majorana_polynomial,
    normalization_K,
    overlap_product,
    points_to_state,
    state_to_points,
)
from .maxsearch import (
    ClassicalConfig,
    SearchConfig,
    SearchResult,
    classical_points,
    evaluate_candidate,
    platonic_state,
    search_max,
    support_masks,
)
from .mbqc import MbqcReport, dicke_family_asymptotic, eta_threshold, universality_condition
from .states import (
    BlochPoint,
    StateClassification,
    SymmetricState,
    classify,
    inner,
    make_dicke,
    normalize,
    rotate_state,
)

try:
    __version__ = metadata.version("majent")
except metadata.PackageNotFoundError:  # pragma: no cover - source tree use
    __version__ = "0+unknown"

__all__ = [
    "BlochPoint",
    "BoundsReport",
    "CPPSet",
    "ClassicalConfig",
    "DualityReport",
    "EntanglementValue",
    "MajoranaPoints",
    "MajoranaPolynomial",
    "MbqcReport",
    "MomentReport",
    "SearchConfig",
    "SearchResult",
    "SolverConfig",
    "SolverError",
    "StateClassification",
    "StructureReport",
    "SymmetricState",
    "amplitude",
    "amplitude_grid",
    "classical_points",
    "classify",
    "detect_ring",
    "dicke_cpp",
    "dicke_entanglement",
    "dicke_family_asymptotic",
    "duality_report",
    "entanglement_bounds",
    "eta_threshold",
    "evaluate_candidate",
    "find_cpps",
    "geometric_entanglement",
    "hausdorff_angle",
    "inner",
    "integrate_amplitude_sq",
    "majorana_polynomial",
    "make_dicke",
    "moment_report",
    "normalization_K",
    "normalize",
    "overlap_product",
    "platonic_state",
    "points_to_state",
    "rotate_state",
    "search_max",
    "state_to_points",
    "support_masks",
    "universality_condition",
    "verify_cpp_structure",
]
