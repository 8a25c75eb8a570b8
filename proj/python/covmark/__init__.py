"""Geodesic Markov coding, spectral analysis and non-commutative ergodic
averages for finitely generated group actions on matrix algebras."""

from ._core import (
    ActionAssignment,
    AlgebraState,
    Automorphism,
    ConvergenceError,
    CoveringOperator,
    GeneratorTable,
    GroupOracle,
    InputError,
    IoError,
    MarkovAutomaton,
    ResourceError,
    build_free_abelian_automaton,
    build_free_group_automaton,
    build_free_product_automaton,
    cesaro_average,
    check_state_invariance,
    convergence_diagnostics,
    count_paths,
    growth_constants,
    growth_rate,
    load_action,
    load_automaton,
    load_observable,
    majorant_bound,
    normalized_spherical,
    operator_order_leq,
    perron_data,
    random_state_preserving_unitary,
    save_action,
    save_automaton,
    save_observable,
    spherical_sum,
    sphere_sum_bruteforce,
    squares_check,
    state_functional_check,
    verify_strong_markov,
)

__all__ = [
    "ActionAssignment",
    "AlgebraState",
    "Automorphism",
    "ConvergenceError",
    "CoveringOperator",
    "GeneratorTable",
    "GroupOracle",
    "InputError",
    "IoError",
    "MarkovAutomaton",
    "ResourceError",
    "build_free_abelian_automaton",
    "build_free_group_automaton",
    "build_free_product_automaton",
    "cesaro_average",
    "check_state_invariance",
    "convergence_diagnostics",
    "count_paths",
    "growth_constants",
    "growth_rate",
    "load_action",
    "load_automaton",
    "load_observable",
    "majorant_bound",
    "normalized_spherical",
    "operator_order_leq",
    "perron_data",
    "random_state_preserving_unitary",
    "save_action",
    "save_automaton",
    "save_observable",
    "spherical_sum",
    "sphere_sum_bruteforce",
    "squares_check",
    "state_functional_check",
    "verify_strong_markov",
]
