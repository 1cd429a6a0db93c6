"""Seedable instance families spanning benign and adversarial weights.

Weight values are rounded to 12 decimal digits to avoid pathological
near-ties.  Generation is a pure function of the family spec: the same spec
always produces byte-identical matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BadParams, KindMismatch
from .instances import Instance, validate_instance
from .rng import RandomStream

# substream tag reserved for instance generation, distinct from trial streams
_GEN_SUBSTREAM = 2**63

FAMILIES = (
    "uniform",
    "single-heavy-edge",
    "rank-decay",
    "bimodal",
    "zero",
    "roommate-uniform",
    "roommate-rv-only",
    "roommate-mu-only",
)

KINDS = ("bipartite1", "bipartite2", "general", "roommate")

_BIMODAL_EPS = 1e-6


@dataclass(frozen=True)
class FamilySpec:
    family: str
    kind: str
    n: int
    seed: int
    params: dict = field(default_factory=dict)

    def validate(self) -> "FamilySpec":
        if self.family not in FAMILIES:
            raise BadParams(f"unknown family {self.family!r}")
        if self.kind not in KINDS:
            raise BadParams(f"unknown kind {self.kind!r}")
        if self.family.startswith("roommate") and self.kind != "roommate":
            raise KindMismatch(f"{self.family} requires kind 'roommate'")
        if self.kind != "roommate" and self.family.startswith("roommate"):
            raise KindMismatch(f"{self.family} requires kind 'roommate'")
        if self.n < 1:
            raise BadParams("n must be >= 1")
        if self.kind in ("bipartite2", "general", "roommate") and self.n % 2 == 1:
            raise KindMismatch(f"kind {self.kind} needs even n, got {self.n}")
        rho = self.params.get("rho", 0.5)
        if not 0.0 < rho < 1.0:
            raise BadParams("rank-decay rho must be in (0, 1)")
        heavy = self.params.get("heavy", 1.0)
        if heavy <= 0:
            raise BadParams("heavy weight must be positive")
        return self


def _uniform(stream: RandomStream, shape: tuple[int, ...]) -> np.ndarray:
    words = stream.take(int(np.prod(shape)))
    vals = (words >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))
    return np.round(vals.reshape(shape), 12)


def _fill_symmetric(n: int, flat_upper: np.ndarray) -> np.ndarray:
    """Weights for a complete graph from upper-triangle values in (i<j) row-major order."""
    w = np.zeros((n, n))
    iu = np.triu_indices(n, k=1)
    w[iu] = flat_upper
    w[(iu[1], iu[0])] = flat_upper
    return w


def _edge_weights(spec: FamilySpec, stream: RandomStream, n_edges: int) -> np.ndarray:
    """Flat weight vector for one family over a fixed edge enumeration."""
    fam = spec.family
    if fam in ("uniform", "roommate-uniform"):
        return _uniform(stream, (n_edges,))
    if fam == "zero":
        return np.zeros(n_edges)
    if fam == "single-heavy-edge":
        w = np.zeros(n_edges)
        w[stream.index(n_edges)] = spec.params.get("heavy", 1.0)
        return w
    if fam == "rank-decay":
        rho = spec.params.get("rho", 0.5)
        ranks = np.empty(n_edges, dtype=np.int64)
        perm = stream.permutation(n_edges)      # edge -> rank, seed-driven
        ranks[:] = perm
        return np.round(rho ** ranks.astype(np.float64), 12)
    if fam == "bimodal":
        heavy_prob = spec.params.get("heavy_prob", 0.5)
        if not 0.0 <= heavy_prob <= 1.0:
            raise BadParams("bimodal heavy_prob must be in [0, 1]")
        u = _uniform(stream, (n_edges,))
        return np.where(u < heavy_prob, 1.0, _BIMODAL_EPS)
    raise BadParams(f"family {fam!r} not valid for kind {spec.kind!r}")


def gen_instance(spec: FamilySpec) -> Instance:
    """Deterministic instance for a family spec; always passes validation."""
    spec = spec.validate()
    stream = RandomStream(spec.seed, _GEN_SUBSTREAM)
    n = spec.n

    if spec.kind in ("bipartite1", "bipartite2"):
        cap = 1 if spec.kind == "bipartite1" else 2
        n_off = n if cap == 1 else n // 2
        flat = _edge_weights(spec, stream, n_off * n)
        raw = {
            "kind": "bipartite",
            "n": n,
            "capacities": [cap] * n_off,
            "weights": flat.reshape(n_off, n),
        }
        return validate_instance(raw)

    if spec.kind == "general":
        flat = _edge_weights(spec, stream, n * (n - 1) // 2)
        return validate_instance({
            "kind": "general",
            "n": n,
            "weights": _fill_symmetric(n, flat),
        })

    # roommate: room valuations first, then mutual utilities
    m = n // 2
    fam = spec.family
    if fam == "roommate-rv-only":
        rv = _uniform(stream, (n, m))
        mu = np.zeros((n, n))
    elif fam == "roommate-mu-only":
        rv = np.zeros((n, m))
        mu = _fill_symmetric(n, _uniform(stream, (n * (n - 1) // 2,)))
    elif fam in ("roommate-uniform", "uniform"):
        rv = _uniform(stream, (n, m))
        mu = _fill_symmetric(n, _uniform(stream, (n * (n - 1) // 2,)))
    elif fam == "zero":
        rv = np.zeros((n, m))
        mu = np.zeros((n, n))
    elif fam == "single-heavy-edge":
        rv = np.zeros((n, m))
        mu = _fill_symmetric(
            n, _edge_weights(spec, stream, n * (n - 1) // 2))
    else:
        raise KindMismatch(f"family {fam!r} not defined for roommate instances")
    return validate_instance({
        "kind": "roommate",
        "n": n,
        "room_valuations": rv,
        "mutual_utilities": mu,
    })
