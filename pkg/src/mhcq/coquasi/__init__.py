"""Galois-kernel structures, the antipode, and their verification suite."""

from .antipode import Antipode, AntipodeError, build_antipode
from .structure import (
    CoquasiStructure,
    StructureError,
    build_cop,
    function_algebra_structure,
    group_algebra_structure,
    loop_times_integers,
    solve_counit,
    structure_from_coproduct,
    structure_from_kernels,
    with_counit,
)
from .checks import (
    check_almost_colinearity,
    check_anticomultiplicativity,
    check_antimultiplicativity,
    check_antipode_build,
    check_antipode_identities,
    check_coassociativity,
    check_coherence,
    check_counit,
    check_counit_homomorphism,
    check_eps_S,
    check_galois,
    check_nondegeneracy,
    check_regularity,
    check_star,
    check_unital_collapse,
    unit_probe,
)
from .suite import SuiteResult, run_suite, verdict_of
