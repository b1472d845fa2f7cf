"""Schrödinger operators on weighted trees: spectra, nodal domains and theorem checks."""

import json

from ._treenodal import (
    Spectrum,
    TreeNodalError,
    WeightedTree,
    charpoly_oracle,
    decompose,
    generate,
    operator_matrix,
    parse_json,
    run_cli,
)
from . import _treenodal


def nodal_domains(tree, u, eps_z=1e-9):
    """Nodal decomposition of the vertex function u as a dict."""
    return json.loads(_treenodal.nodal_json(tree, list(u), eps_z))


def verify(tree, potential=None, eps_z=1e-9):
    """All checks on one instance, as a list of {"check", "verdict", "details"} dicts."""
    return json.loads(_treenodal.verify_json(tree, potential, eps_z))


__all__ = [
    "Spectrum",
    "TreeNodalError",
    "WeightedTree",
    "charpoly_oracle",
    "decompose",
    "generate",
    "nodal_domains",
    "operator_matrix",
    "parse_json",
    "run_cli",
    "verify",
]
