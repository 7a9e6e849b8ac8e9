"""Elliptic-sine traveling waves for Fokas-Lenells, cubic NLS and DSW.

The pipeline is reduce -> solve the quartic -> build the envelope ->
verify against the ODE and the PDE with independent oracles.
"""

from .constructor import (
    Construction,
    EllipticSolution,
    Regime,
    SolitaryWave,
    WaveFrame,
    build_solution,
    construct_dsw,
    construct_fl,
    construct_nls,
    dsw_pair_evaluator,
    evaluate_dsw_pair,
    evaluate_envelope,
    evaluate_field_fl,
    evaluate_field_nls,
    solitary_limit,
)
from .elliptic import (
    JacobiTriple,
    complete_K,
    jacobi_sn,
    jacobi_sn_general,
    sn_derivative,
    sn_period,
)
from .errors import (
    ComplexRootsError,
    ConstructionError,
    EllipticDomainError,
    ParameterError,
    PoleError,
)
from .quartic import (
    BiquadraticRoots,
    DepressedQuartic,
    RootClass,
    RootQuadruple,
    biquadratic_roots,
    order_roots,
    quartic_roots,
)
from .reductions import (
    DswParams,
    FokasLenellsParams,
    NlsParams,
    ReducedOde,
    dsw_recover_u,
    dsw_reduce,
    fl_reduce,
    nls_reduce,
)
from .verify import GridSpec, ResidualReport

__version__ = "0.1.0"
