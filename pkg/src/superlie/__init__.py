"""Exact computer algebra for finite-dimensional Lie superalgebras.

Structure constants over the rationals for Poisson, hamiltonian, general
linear, special linear, and queer-type families; invariant bilinear forms;
universal enveloping algebras with ordered straightening; quadratic and cubic
Casimir elements in normal form; loop extensions with exact central-term
checks; Shapovalov-type determinants factored over candidate linear forms;
and a command line around all of it.
"""

from .errors import (
    DegenerateForm,
    FormParityMismatch,
    GradingIncompatible,
    InfinitePartitions,
    NonDiagonalAction,
    NonScalarA,
    NotAWeight,
    OddCartan,
    OutOfCone,
    SuperLieError,
    UnsupportedDegree,
    ZeroOnRoot,
)
from .rat import Rat, rat
from .scalars import (
    CartanPoly,
    FactorizationReport,
    det_bareiss,
    factor_over_candidates,
    linear_form,
    monic,
    trial_divide,
)
from .liesuper import (
    SuperAlgebra,
    direct_sum,
    gl,
    hamiltonian,
    hamiltonian_prime,
    po,
    pq,
    psq,
    q,
    sl,
    sq,
)
from .uea import UEA, CliffordElement, FiniteContext
from .casimir import (
    a_map,
    ad_commutes_with_A,
    b_identity_violations,
    c3,
    omega0,
)
from .loop_km import LoopContext, km_bracket, omega_km, verify_km_centrality
from .shapovalov import (
    FormulaData,
    ShapovalovGram,
    bsh_det,
    bsh_gram,
    conjecture_harness,
    find_singular_vectors,
    formula_data_from_algebra,
    gram_matrix,
    kk_formula,
    partition_count,
    reports_match,
    shapovalov_det,
)

__version__ = "0.1.0"
