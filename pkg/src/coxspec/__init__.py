"""coxspec: separating functions rho_r, spectra and indexes of graphs,
Coxeter reflection dynamics, and the star-shaped-graph index identity,
with every identity wired up as a machine-checkable cross-validation.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .coxeter import (
    CharacterResult,
    RootClassification,
    RootEnumeration,
    StandardVectors,
    TransportReport,
    classify_root,
    coxeter_t,
    enumerate_real_roots,
    partial_coxeter,
    reflect,
    simple_root,
    standard_character,
    standard_vectors,
    verify_transport,
)
from .errors import (
    BracketError,
    CapacityError,
    ConvergenceError,
    DomainError,
    InternalConsistencyError,
    NotBipartiteError,
    NotStarShapedError,
    ParityMismatchError,
    PoleError,
    RegularVectorError,
)
from .graphs import (
    Bipartition,
    Graph,
    SmithClass,
    SpectralResult,
    ade_names,
    bipartition,
    dynkin,
    full_spectrum,
    index_and_principal,
    make_cycle,
    make_path,
    make_star,
    parse_graph,
    smith_classify,
    star_branches,
)
from .rho import (
    DYNKIN,
    EXTENDED_DYNKIN,
    HYPERBOLIC,
    INFINITE,
    BranchClass,
    Infinite,
    RecurrenceSequence,
    RhoSolveResult,
    canonical_branches,
    classify_branch_vector,
    phi_sequence,
    rho,
    rho_closed_form,
    rho_prefix,
    rho_vector,
    solve_rho_equation,
    u_sequence,
    v_sequence,
)
from .sigma import (
    SigmaDescription,
    band_edges,
    phi_plus,
    phi_plus_recurrent,
    sigma_description,
    sigma_membership,
)
from .star import (
    StarIndexReport,
    analytic_star_eigenvector,
    branch_vectors,
    solve_star_index,
    verify_star_theorem,
)

__version__ = "0.1.0"
