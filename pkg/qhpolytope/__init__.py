"""qhpolytope: momentum polytopes of products of conjugacy classes in SU(n)

Alcove cells, group-valued momentum maps, the involution whose fixed points
realize the whole polytope, Takagi factorizations and numerical fiber
solvers, with a small lab for sampling and checking polytopes.
"""

from .alcove import (
    AlcovePoint,
    CellSignature,
    RootIndex,
    alcove_project,
    classify,
    orbit_dim,
    positive_roots,
    stabilizer_dim,
)
from .config import Config
from .exceptions import (
    AmbiguousCellError,
    ConfigurationError,
    DataMismatchError,
    EigenFailureError,
    GenusUnsupportedError,
    InconsistentToleranceError,
    NonIntegralSumError,
    NotBetaFixedError,
    NotInFiberError,
    NotSymmetricError,
    NoWitnessError,
    QHPolytopeError,
    ValidationError,
)
from .lab import (
    AlcoveCloud,
    IntervalResult,
    dominant_cell,
    sample_polytope,
    sample_real_polytope,
    su2_interval,
    verify_convexity,
    verify_real_equality,
)
from .logger import (
    configure_for_development,
    configure_for_testing,
    configure_from_env,
    get_logger,
    setup_logging,
)
from .qham import (
    Configuration,
    SurfaceGroupData,
    beta,
    beta_residual,
    conjugate_configuration,
    decompose_witness,
    moment,
    twist_witness,
)
from .solver import (
    FeasibilityReport,
    SolveOptions,
    decomposable_representation,
    gradient_check,
    solve_fiber,
    solve_fiber_symmetric,
    symmetric_factorization,
    transfer_from_symmetric,
    transfer_to_symmetric,
)
from .spec import ProblemSpec
from .types import CloudKind, SolveStatus, TransferDirection
from .unitary import (
    ConjClassSpec,
    centralizer_dim,
    haar_su,
    sample_class,
    spectrum_to_alcove,
    sqrt_symmetric,
    takagi,
    tau,
    tau_minus,
)

__all__ = [
    # Alcove
    "AlcovePoint",
    "CellSignature",
    "RootIndex",
    "alcove_project",
    "classify",
    "orbit_dim",
    "positive_roots",
    "stabilizer_dim",
    # Unitary core
    "ConjClassSpec",
    "centralizer_dim",
    "haar_su",
    "sample_class",
    "spectrum_to_alcove",
    "sqrt_symmetric",
    "takagi",
    "tau",
    "tau_minus",
    # Momentum map and involution
    "SurfaceGroupData",
    "Configuration",
    "moment",
    "beta",
    "beta_residual",
    "conjugate_configuration",
    "twist_witness",
    "decompose_witness",
    # Solvers
    "SolveOptions",
    "FeasibilityReport",
    "solve_fiber",
    "solve_fiber_symmetric",
    "decomposable_representation",
    "symmetric_factorization",
    "transfer_from_symmetric",
    "transfer_to_symmetric",
    "gradient_check",
    # Lab
    "AlcoveCloud",
    "IntervalResult",
    "sample_polytope",
    "sample_real_polytope",
    "su2_interval",
    "verify_convexity",
    "verify_real_equality",
    "dominant_cell",
    # Specs, config and enums
    "ProblemSpec",
    "Config",
    "SolveStatus",
    "CloudKind",
    "TransferDirection",
    # Exceptions
    "QHPolytopeError",
    "ValidationError",
    "ConfigurationError",
    "InconsistentToleranceError",
    "NonIntegralSumError",
    "EigenFailureError",
    "NotSymmetricError",
    "GenusUnsupportedError",
    "NoWitnessError",
    "NotInFiberError",
    "NotBetaFixedError",
    "DataMismatchError",
    "AmbiguousCellError",
    # Logging
    "setup_logging",
    "configure_for_development",
    "configure_for_testing",
    "configure_from_env",
    "get_logger",
]

# Import version dynamically from pyproject.toml
try:
    import importlib.metadata

    __version__ = importlib.metadata.version("qhpolytope")
except (importlib.metadata.PackageNotFoundError, ImportError):
    # Fallback for editable installs
    try:
        import tomllib
        from pathlib import Path

        pyproject_path = Path(__file__).parent.parent / "pyproject.toml"
        if pyproject_path.exists():
            with open(pyproject_path, "rb") as f:
                __version__ = tomllib.load(f)["project"]["version"]
        else:
            __version__ = "0.1.0-dev"
    except Exception:
        __version__ = "0.1.0-dev"
