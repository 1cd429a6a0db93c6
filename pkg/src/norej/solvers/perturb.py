"""Deterministic tie-breaking perturbation for the canonical solvers.

Per-step guarantees in the random-arrival analysis assume the locally
optimal matching is selected by a rule that does not depend on arrival
order, and behave as if weights were in generic position.  Structured tie
rules (lexicographic, rank-based) provably satisfy the first condition but
empirically violate the per-step success bounds on degenerate instances:
they funnel tied partners into the same vertices step after step.

The canonical solvers therefore optimize ``w + TIE_EPS * hash(ids)`` with a
fixed id-keyed hash: still a pure function of the participating ids and
weights, but generic.  The reported matching weight is always recomputed
from the true weights.  TIE_EPS is far below every decision threshold used
in tests (1e-9) yet above float granularity for the zero entries where ties
actually live.
"""

from __future__ import annotations

import numpy as np

TIE_EPS = 1e-13

_M1 = np.uint64(0x9E3779B97F4A7C15)
_M2 = np.uint64(0xC2B2AE3D27D4EB4F)
_M3 = np.uint64(0xD6E8FEB86659FD93)


def _mix(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint64)
    x ^= x >> np.uint64(32)
    x *= _M3
    x ^= x >> np.uint64(29)
    x *= _M1
    x ^= x >> np.uint64(32)
    return x


def hash_unit(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Hash of an id pair into [0, 1); vectorized, order-sensitive."""
    z = _mix(np.asarray(a, dtype=np.uint64) * _M1 + np.asarray(b, dtype=np.uint64) * _M2)
    return (z >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))


def perturb_bipartite(profit: np.ndarray, offline_ids: np.ndarray,
                      online_ids: np.ndarray) -> np.ndarray:
    """profit + TIE_EPS * hash keyed by (offline id, online id)."""
    hu = hash_unit(np.repeat(offline_ids, len(online_ids)),
                   np.tile(online_ids, len(offline_ids)))
    return profit + TIE_EPS * hu.reshape(len(offline_ids), len(online_ids))


def perturb_general(sub: np.ndarray, ids: np.ndarray) -> np.ndarray:
    """Symmetric perturbation keyed by the unordered original-id pair."""
    a = np.minimum.outer(ids, ids)
    b = np.maximum.outer(ids, ids)
    h = hash_unit(a.ravel(), b.ravel()).reshape(len(ids), len(ids))
    out = sub + TIE_EPS * h
    np.fill_diagonal(out, 0.0)
    return out
