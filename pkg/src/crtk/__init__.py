"""crtk: reduced Collatz dynamics, dyadic residue classes, and verification tools."""

from .arith import classic_step, parse_nat, step_I, step_Iprime, step_O
from .dynamics import (
    RD_ONE_CONVENTION, StepCoefficient, Trajectory, apply, apply_primed,
    cnt_i, cnt_o, coefficient, dynam, format_dynstring, get_s, is_matched,
    parse_dynstring, reduced_dynamics, replace,
)
from .enumeration import coverage, enumerate_forms, verify_enumeration
from .errors import *  # noqa: F401,F403
from .form import ceil_lambda, is_reduced_form, prefix_status
from .graph import build_graph, export_dot, export_json
from .residue import (
    ResidueClass, d2r, forking_point, partition_split, r2d,
    verify_subset_classification,
)
from .verify import verify_range, verify_to_one

__version__ = "0.1.0"
