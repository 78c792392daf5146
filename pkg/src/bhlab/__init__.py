"""Black-hats online guessing games.

Simulation of the BH/IBH online minimization problems: quantum, randomized,
and deterministic online streaming algorithms (with and without advice),
expected costs by closed form, exact branch enumeration, and Monte Carlo,
advice lower-bound reference curves, and brute-force witness searches.
"""

from .errors import (
    BHLabError,
    BranchLimitExceeded,
    DimensionMismatch,
    DomainError,
    Infeasible,
    IndexOutOfRange,
    MalformedInput,
    MalformedTable,
    NotBasisState,
    OutputCountMismatch,
    PromiseViolation,
    SpaceTooLarge,
)
from .functions import (
    AndOracle,
    FunctionOracle,
    NoisyOracle,
    PartialModSpec,
    XorOracle,
    gen_partial_mod_input,
    noisy_eval,
    partial_mod_eval,
    total_oracle,
)
from .problem import (
    CostParams,
    GuardianOutputs,
    InputWord,
    ParsedInput,
    ProblemSpec,
    cost,
    encode_input,
    opt_cost,
    parse_input,
    suffix_parities,
)
from .qsim import (
    MeasurementBranch,
    QRegister,
    init_basis,
    init_plus,
    measure,
    measure_branches,
    reset_all,
    rotate,
    xor_flip,
)
from .algorithms import (
    OnlineAlgorithm,
    RunTrace,
    TableAlgorithm,
    advice_g1,
    ibh_alg,
    qalg_a,
    qalg_b,
    ralg_a,
    run_online,
    table_algorithm,
)
from .analysis import (
    AdviceBoundParams,
    ExpectationResult,
    closed_form_expected_cost,
    competitive_ratio,
    det_advice_bound,
    exact_expected_cost,
    monte_carlo_cost,
    parity_confidence,
    rand_advice_bound,
)
from .bruteforce import (
    best_advice_ratio,
    best_deterministic_ratio,
    count_subfunctions,
    enumerate_inputs,
)

__version__ = "0.1.0"
