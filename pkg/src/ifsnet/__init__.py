"""Net intervals, neighbour sets and finite-type checks for self-similar sets on the line."""
from .exact import RadicandError, Scalar, parse_scalar, scalar
from .ifs import IDENTITY, IFS, Affine, Word, attractor_is_interval, event_ladder, lambda_alpha, normalize_hull
from .net import NetInterval, endpoints, meets_attractor, net_intervals
from .neighbour import NeighbourSet, neighbour_set
from .explore import Budget, StateGraph, Verdict, child_step, e_direct, e_from_graph, n_of_gamma, saturate, wsc_bound
from .constants import (
    SeparationConstants,
    c_constants,
    check_bsp,
    compute_constants,
    construct_phi,
    delta,
    e_delta,
    epsilon_constants,
    gamma_equi,
    wsc_ball_count,
)
from .specfile import SpecError, SpecFile, load_corpus, parse_spec, parse_specfile

__version__ = "0.1.0"
