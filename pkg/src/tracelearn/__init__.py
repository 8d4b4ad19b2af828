"""tracelearn: learn STRIPS models of game mechanics from play traces.

The toolkit parses a typed STRIPS subset of PDDL, executes ground actions
against a ground-truth domain to record trajectories (including failed
attempts), learns an action model from those trajectories, and scores the
learned model per mechanic against the ground truth.
"""

from .errors import (
    PddlSyntaxError,
    SimulationError,
    TracelearnError,
    UnsupportedConstructError,
    ValidationError,
)
from .evaluation import ConfusionCounts, ProficiencyReport, compare_action, f1, report
from .learner import CandidateModel, learn, step1_successful, step2_failed, step3_invariants
from .pddl import (
    ActionSchema,
    Atom,
    Domain,
    GroundAction,
    Predicate,
    Problem,
    TypeHierarchy,
    generalize,
    ground,
    parse_domain,
    parse_problem,
    print_domain,
    print_problem,
)
from .simulator import ExecutionResult, parse_plan, run_plan, step
from .sokoban import SokobanLevel, compile_level, parse_level, resolve_intent
from .trace import (
    Trajectory,
    Transition,
    parse_fama_trace,
    parse_trace,
    strip_failures,
    validate_trajectory,
    write_fama_trace,
    write_trace,
)

__version__ = "0.1.0"
