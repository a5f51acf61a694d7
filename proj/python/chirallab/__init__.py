"""Verification toolbox: exact conformal-character identities, a truncated
fermionic mode algebra, inner-function unitaries, and the two-particle
S-matrix sector with its particle-production detector.

The heavy lifting happens in the compiled extension; report functions return
JSON strings which the helpers below parse into dictionaries.
"""

import json as _json

from chirallab._core import (  # noqa: F401
    PhiParseError,
    QuadratureError,
    UsageError,
    basis_size,
    eval_phi,
    lw_invariance_residual,
    partition_numbers,
    phi_prime,
    phi_tilde,
)
from chirallab import _core


def character_report(order=40):
    """Jacobi identity and charge-zero checks at the given doubled order."""
    return _json.loads(_core.character_report(order))


def fock_report(emax=12):
    """Exact mode-algebra bundle at the given doubled energy cutoff."""
    return _json.loads(_core.fock_report(emax))


def inner_report(phi):
    """Unitarity, diagonalization, causality and functional-equation checks."""
    return _json.loads(_core.inner_report(phi))


def production_report(phi, s_min=0.1, s_max=10.0, n=50, tol=1e-7):
    """phi_tilde curve over a log-uniform grid with the production flag."""
    return _json.loads(_core.production_report(phi, s_min, s_max, n, tol))


def report_all():
    """The full verification suite with the built-in function catalog."""
    return _json.loads(_core.report_all())


__all__ = [
    "PhiParseError",
    "QuadratureError",
    "UsageError",
    "basis_size",
    "character_report",
    "eval_phi",
    "fock_report",
    "inner_report",
    "lw_invariance_residual",
    "partition_numbers",
    "phi_prime",
    "phi_tilde",
    "production_report",
    "report_all",
]
