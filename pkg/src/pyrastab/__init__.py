"""Spectral obstructions to delayed difference feedback.

Tools for deciding when the feedback term K [x(t) - x(t - T)] cannot
stabilize an equilibrium or a periodic linear system: characteristic
roots with certified counts, Floquet multipliers computed two
independent ways, exclusion verdicts with full hypothesis trails, and a
method-of-steps integrator to corroborate the spectra in the time
domain.
"""

from .tolerances import DEFAULT, Tolerances
from .errors import (
    ContinuationError,
    CrossCheckError,
    InconclusiveMultiplicityError,
    InputError,
    NumericalError,
    PyrastabError,
    RootCountError,
    SingularMonodromyError,
)
from .fields import (
    ConstantCoefficient,
    ExpressionField,
    LinearField,
    MatrixField,
    TrigCoefficient,
    parse_field,
)
from .problems import (
    DelayFeedback,
    EquilibriumProblem,
    PeriodicLinearProblem,
    validate_equilibrium,
)
from .verdicts import EXCLUDED, NOT_EXCLUDED, Hypothesis, Verdict
from .equilibria import (
    CharacteristicMatrix,
    GainPath,
    HomotopyTrace,
    HopfBranch,
    HopfCurveFamily,
    LocusResult,
    Region,
    ResonanceInvariance,
    Root,
    SpectrumReport,
    characteristic_matrix,
    check_resonance_invariance,
    commuting_gain_verdict,
    commuting_real_spectrum_verdict,
    count_roots,
    critical_gain,
    default_region,
    eigenvalue_locus,
    equilibrium_verdicts,
    find_roots,
    homotopy_trace,
    hopf_curves,
    odd_number_verdict,
    resonating_center,
    scalar_characteristic,
    unstable_count_for_gain,
)
from .periodic import (
    DeterminingInvariance,
    FloquetDecomposition,
    MonodromyDDE,
    MonodromyODE,
    MultiplierEntry,
    MultiplierReport,
    check_determining_invariance,
    common_eigenpair,
    commuting_check,
    dde_monodromy,
    floquet_decompose,
    homotopy_multipliers,
    multipliers,
    ode_monodromy,
    periodic_verdicts,
    scalar_reduction_verdict,
)
from .simulate import (
    HistorySegment,
    Trajectory,
    growth_rate,
    integrate,
    perturbed_history,
)
from .benchmarks import CATALOG, CatalogCase, ExpectedFact, case_names, get_case
from .problemio import (
    ProblemDocument,
    build_problem,
    describe_problem,
    document_digest,
    load_problem,
    parse_document,
    read_problem_file,
)
from .reports import TOOL_VERSION as __version__

__all__ = [
    "DEFAULT",
    "Tolerances",
    "PyrastabError",
    "InputError",
    "NumericalError",
    "RootCountError",
    "ContinuationError",
    "SingularMonodromyError",
    "InconclusiveMultiplicityError",
    "CrossCheckError",
    "parse_field",
    "ExpressionField",
    "LinearField",
    "MatrixField",
    "ConstantCoefficient",
    "TrigCoefficient",
    "DelayFeedback",
    "EquilibriumProblem",
    "PeriodicLinearProblem",
    "validate_equilibrium",
    "Hypothesis",
    "Verdict",
    "EXCLUDED",
    "NOT_EXCLUDED",
    "CharacteristicMatrix",
    "characteristic_matrix",
    "scalar_characteristic",
    "Region",
    "default_region",
    "Root",
    "SpectrumReport",
    "find_roots",
    "count_roots",
    "resonating_center",
    "ResonanceInvariance",
    "check_resonance_invariance",
    "HomotopyTrace",
    "homotopy_trace",
    "odd_number_verdict",
    "commuting_real_spectrum_verdict",
    "commuting_gain_verdict",
    "equilibrium_verdicts",
    "critical_gain",
    "HopfBranch",
    "HopfCurveFamily",
    "hopf_curves",
    "unstable_count_for_gain",
    "GainPath",
    "LocusResult",
    "eigenvalue_locus",
    "MonodromyODE",
    "ode_monodromy",
    "FloquetDecomposition",
    "floquet_decompose",
    "MultiplierEntry",
    "MultiplierReport",
    "multipliers",
    "MonodromyDDE",
    "dde_monodromy",
    "DeterminingInvariance",
    "check_determining_invariance",
    "homotopy_multipliers",
    "commuting_check",
    "common_eigenpair",
    "scalar_reduction_verdict",
    "periodic_verdicts",
    "HistorySegment",
    "Trajectory",
    "integrate",
    "growth_rate",
    "perturbed_history",
    "CATALOG",
    "CatalogCase",
    "ExpectedFact",
    "get_case",
    "case_names",
    "ProblemDocument",
    "parse_document",
    "build_problem",
    "load_problem",
    "read_problem_file",
    "describe_problem",
    "document_digest",
    "__version__",
]
