"""Overdetermined Grad-Shafranov equilibria and the compactly supported Euler flows built from them."""

import json

from . import _core
from ._core import GsodError

__all__ = ["GsodError", "Solution", "constants", "run_claim", "scorecard", "solve", "solve_dirichlet"]


def _config(config=None, **overrides):
    cfg = dict(config or {})
    cfg.update({k: v for k, v in overrides.items() if v is not None})
    return json.dumps(cfg)


def constants(profile="fixture-a", R=None, eps=0.01):
    return _core.constants(_config(profile=profile, R=R, eps=eps))


def solve_dirichlet(profile="fixture-a", R=None, eps=0.01, shape=None, config=None):
    """Solve on the domain rho < 1 + eps*B(theta), B = sum of shape[n] cos(n theta)."""
    return _core.solve_dirichlet(_config(config, profile=profile, R=R, eps=eps), shape or {})


class Solution(_core.Solution):
    def __init__(self, profile="fixture-a", R=None, eps=0.01, config=None):
        super().__init__(_config(config, profile=profile, R=R, eps=eps))


def solve(profile="fixture-a", R=None, eps=0.01, config=None):
    return Solution(profile=profile, R=R, eps=eps, config=config)


def run_claim(claim, fixture="fixture-a", eps=(0.04, 0.02, 0.01)):
    return json.loads(_core.run_claim(claim, fixture, list(eps)))


def scorecard(fixture="fixture-a", eps=(0.04, 0.02, 0.01)):
    return json.loads(_core.scorecard(fixture, list(eps)))
