"""Least common multiples of consecutive arithmetic-progression terms."""

from .constants import (
    AsymptoticConstant,
    cap_K,
    corollary1_constant,
    corollary2_constant,
    residue_constant,
    theorem_constant,
)
from .lcm_engine import (
    PrimePowerMap,
    ResourceError,
    WindowInstance,
    factor_window_sieve,
    lcm_fold,
    log_lcm,
    squarefull_split,
    window,
    window_terms,
)
from .ntk import (
    ProgressionSpec,
    Rational,
    SpecError,
    companion_residue,
    euler_phi,
    gcd,
    normalize,
    residue_set,
)
from .report import ExperimentReport, converge
from .residue_decomp import (
    IntervalFamily,
    build_family,
    estimate_log_lcm,
    finite_form_valid,
    member,
    residue_log_sum,
    theta,
)

__version__ = "0.1.0"
