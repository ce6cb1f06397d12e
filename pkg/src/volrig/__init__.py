"""Signed d-volume rigidity of simplicial complexes.

Rigidity-matroid ranks by random prime-field evaluation, the coboundary /
Plucker route, ACT-free orientations for d <= 2, exterior algebraic
shifting, face-number bounds and a one-sided global-rigidity certifier.
"""

import json
from importlib import resources

from .bounds import BoundReport, audit_f_vector, face_lower_bound
from .complex import (
    FVector,
    SimplicialComplex,
    complete_complex,
    dominance_leq,
    f_vector,
    from_facets,
    from_json,
    is_pure,
    is_shifted,
    lgrc,
    link,
    rigidity_target,
    star,
)
from .global_rigidity import (
    GlobalCertificate,
    certify_globally_rigid,
    detect_lgrc_spanning,
    implied_simplex_closure,
    replay_certificate,
    solve_equivalent,
)
from .grassmann import (
    coboundary_matrix,
    cross_check_independence,
    phi_column_basis,
    phi_matrix,
)
from .homology import betti, boundary_matrix
from .linalg import DEFAULT_PRIME, DEFAULT_SEED, DEFAULT_TRIALS, FieldMatrix, PrimeField
from .orientations import (
    ACTWitness,
    Orientation,
    exists_acyclic_act_free,
    find_act,
    is_acyclic,
    is_rigid_combinatorial,
)
from .rigidity import (
    Configuration,
    Framework,
    RigidityVerdict,
    are_congruent,
    are_equivalent,
    generic_rank,
    is_basis,
    is_locally_rigid,
    matroid_is_independent,
    matroid_rank,
    pin_configuration,
    rigidity_matrix,
    trivial_flex_dim,
    volume_measurement,
)
from .shifting import (
    LinearExtension,
    ShiftedComplex,
    compound_matrix,
    exterior_shift,
    shift_rigidity_test,
    verify_shift_properties,
)


def load_example(name: str) -> SimplicialComplex:
    """One of the bundled example complexes, e.g. ``load_example("bipyramid")``."""
    text = resources.files(__package__).joinpath("data", f"{name}.json").read_text()
    return from_json(json.loads(text))


def example_names() -> list[str]:
    return sorted(p.name[:-5] for p in resources.files(__package__).joinpath("data").iterdir() if p.name.endswith(".json"))
