from ._pynaqi import (
    Measure,
    bell_mixture_state,
    bound,
    exclusion_line,
    exclusion_surface,
    imaginarity,
    naqi,
    parse_measure,
    scan,
    three_qubit_state,
    threshold,
    werner_state,
)

__all__ = [
    "Measure",
    "bell_mixture_state",
    "bound",
    "exclusion_line",
    "exclusion_surface",
    "imaginarity",
    "naqi",
    "parse_measure",
    "scan",
    "three_qubit_state",
    "threshold",
    "werner_state",
]
