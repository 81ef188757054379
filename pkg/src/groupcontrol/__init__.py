"""Group identification under consent and procedural rules, and its control problems."""

from .errors import (
    GroupControlError,
    InputError,
    ParseError,
    ResourceLimitError,
    StrategyError,
)
from .instances import (
    GcaiInstance,
    GcdiInstance,
    GcpiInstance,
    Outcome,
    Problem,
    Verdict,
    verify,
)
from .kernels import BACKEND
from .rules import Profile, RuleSpec, evaluate, mask, members
from .solvers import Strategy, solve

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "GcaiInstance",
    "GcdiInstance",
    "GcpiInstance",
    "GroupControlError",
    "InputError",
    "Outcome",
    "ParseError",
    "Problem",
    "Profile",
    "ResourceLimitError",
    "RuleSpec",
    "Strategy",
    "StrategyError",
    "Verdict",
    "evaluate",
    "mask",
    "members",
    "solve",
    "verify",
]
