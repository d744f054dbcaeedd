"""
Exit codes and command vocabularies for the CLI.
"""

# Exit codes: pass / fail / input error
EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT_ERROR = 2

# Predicate name -> number of element files it takes
PREDICATE_ARITY = {
    "is-tripotent": 1,
    "is-orthogonal": 2,
    "leq": 2,
    "classify": 1,
    "is-quadrangle": 4,
    "is-trangle": 3,
}

# Axis names accepted by `demo lorentz`
AXIS_NAMES = {"x": 1, "y": 2, "z": 3, "1": 1, "2": 2, "3": 3}

# Suites in run order; the order also fixes their spawned seeds
SUITE_NAMES = (
    "norm_axiom",
    "peirce",
    "spin_model",
    "lorentz",
    "reconstruction",
    "atomic",
    "preservation",
    "phase_laws",
    "grids",
)
