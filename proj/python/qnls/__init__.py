"""Python access to the qnls radial solvers.

Functions ending in ``_json`` in the extension return the same documents the
command-line tool writes; the wrappers here decode them into dicts.
"""

import json

from ._qnls import (  # noqa: F401
    BracketError,
    Grid,
    GridSpec,
    ProblemParams,
    RadialField,
    ResolutionError,
    ShootingError,
    __version__,
    cutoff_bubble,
    dilate,
    energy,
    f_landscape,
    f_max,
    fiber_max,
    gn_constant_classic,
    gn_constant_quasi,
    gn_extremal_profile,
    gn_ratio,
    mass,
    mass_project,
    multiplier_identity,
    multiplier_weak,
    nonexistence_rhs,
    pohozaev,
    random_corpus,
    scalar_path_max,
    sobolev_constant,
)
from . import _qnls


def _encode(config):
    return "" if config is None else json.dumps(config)


def thresholds(params):
    return json.loads(_qnls.thresholds_json(params))


def estimate_suite(kind, eps, dim=3):
    return json.loads(_qnls.estimate_suite_json(kind, list(eps), dim))


def local_minimize(params, grid, config=None):
    return json.loads(_qnls.local_minimize_json(params, grid, _encode(config)))


def ground_state_level(params, grid, config=None):
    return json.loads(_qnls.ground_state_level_json(params, grid, _encode(config)))


def path_energy_bound(params, eps=1e-4):
    return json.loads(_qnls.path_energy_bound_json(params, eps))


def verify(report):
    """Runs the verification battery on a report dict from a solver."""
    return json.loads(_qnls.verify_report_json(json.dumps(report)))


def linf_decay(field):
    return json.loads(_qnls.linf_decay_json(field))
