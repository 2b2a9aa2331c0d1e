"""Additive dilatively stable processes: simulation, transforms and scaling checks."""

import json

from . import _core
from ._core import *  # noqa: F401,F403


def check_scaling(ensemble, law, points, r_steps=16, z_threshold=3.0):
    """Scaling report as a dict (see the CLI verify command for the schema)."""
    return json.loads(_core.check_scaling(ensemble, law, points, r_steps, z_threshold))
