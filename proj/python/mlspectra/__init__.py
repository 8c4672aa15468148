"""Maximum likelihood degrees, reciprocal varieties and PSD badness of
linear spaces of symmetric matrices.

Subspaces are given as a builtin name, a path to a JSON file, or a dict
``{"n": int, "field": "rational" | "real", "basis": [...]}``. Results are
returned as plain dicts mirroring the CLI's JSON output.
"""

import json
import os

from . import _core
from ._core import DEFAULT_SEED, LoadError, SolverError

__all__ = [
    "DEFAULT_SEED",
    "LoadError",
    "SolverError",
    "adjugate",
    "annihilator",
    "bad",
    "blowup",
    "builtin",
    "builtin_names",
    "ckn",
    "ml_degree",
    "reciprocal_degree",
    "repro",
    "report",
    "sample",
    "tangency",
]


def _subspace_text(subspace):
    if isinstance(subspace, dict):
        return json.dumps(subspace)
    if isinstance(subspace, str):
        if subspace in _core.builtin_names():
            return _core.builtin(subspace)
        if os.path.exists(subspace):
            with open(subspace, encoding="utf-8") as fh:
                return fh.read()
        raise LoadError(f"{subspace!r} is neither a builtin name nor a file")
    raise TypeError("subspace must be a dict, a builtin name or a path")


def builtin_names():
    return _core.builtin_names()


def builtin(name):
    return json.loads(_core.builtin(name))


def sample(n, k, seed=DEFAULT_SEED):
    return json.loads(_core.sample(n, k, seed))


def annihilator(subspace):
    return json.loads(_core.annihilator(_subspace_text(subspace)))


def report(subspace, seed=DEFAULT_SEED, residual_tol=1e-9, rank_tol=1e-8):
    return json.loads(_core.report(_subspace_text(subspace), seed, residual_tol, rank_tol))


def ml_degree(subspace, seed=DEFAULT_SEED):
    return json.loads(_core.ml_degree(_subspace_text(subspace), seed))


def reciprocal_degree(subspace, seed=DEFAULT_SEED):
    return json.loads(_core.reciprocal_degree(_subspace_text(subspace), seed))


def tangency(subspace, seed=DEFAULT_SEED):
    return json.loads(_core.tangency(_subspace_text(subspace), seed))


def ckn(subspace, seed=DEFAULT_SEED):
    return json.loads(_core.ckn(_subspace_text(subspace), seed))


def bad(subspace, seed=DEFAULT_SEED):
    return json.loads(_core.bad(_subspace_text(subspace), seed))


def blowup(subspace, perturbation=None, params=None, eps_name="e"):
    """Leading eps term of adj(X + eps * sum b_i B_i), where X is the first
    basis element and B_i are the others."""
    text = _subspace_text(subspace)
    k = len(json.loads(text)["basis"])
    params = list(params) if params else [f"t{i}" for i in range(1, k)]
    perturbation = list(perturbation) if perturbation else params
    return json.loads(_core.blowup(text, perturbation, params, eps_name))


def adjugate(matrix):
    """Exact adjugate of a symmetric matrix given as nested rows of ints or
    "p/q" strings; entries come back as strings."""
    n = len(matrix)
    flat = _core.adjugate([str(v) for row in matrix for v in row], n)
    return [flat[i * n:(i + 1) * n] for i in range(n)]


def repro(only=(), seed=DEFAULT_SEED):
    return json.loads(_core.repro(list(only), seed))
