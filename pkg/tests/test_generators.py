"""Instance family generation: determinism, validity, family shapes."""

import numpy as np
import pytest

from norej.errors import BadParams, KindMismatch
from norej.generators import FAMILIES, FamilySpec, gen_instance
from norej.instances import BipartiteInstance, GeneralInstance, RoommateInstance


def test_seed_determinism_byte_identical():
    a = gen_instance(FamilySpec(family="uniform", kind="bipartite1", n=8, seed=7))
    b = gen_instance(FamilySpec(family="uniform", kind="bipartite1", n=8, seed=7))
    assert a.weights.tobytes() == b.weights.tobytes()
    c = gen_instance(FamilySpec(family="uniform", kind="bipartite1", n=8, seed=8))
    assert a.weights.tobytes() != c.weights.tobytes()


def test_single_heavy_edge_general():
    inst = gen_instance(FamilySpec(family="single-heavy-edge", kind="general",
                                   n=4, seed=1))
    w = inst.weights
    assert np.count_nonzero(np.triu(w, 1)) == 1
    assert np.max(w) == 1.0


def test_rank_decay_weights_are_powers():
    inst = gen_instance(FamilySpec(family="rank-decay", kind="general", n=6,
                                   seed=2, params={"rho": 0.5}))
    vals = sorted(np.triu(inst.weights, 1).ravel(), reverse=True)
    n_edges = 15
    assert vals[0] == 0.5
    expected = sorted((np.round(0.5 ** r, 12) for r in range(1, n_edges + 1)),
                      reverse=True)
    assert vals[:n_edges] == expected


def test_bimodal_values():
    inst = gen_instance(FamilySpec(family="bimodal", kind="bipartite2", n=8, seed=3))
    assert set(np.unique(inst.weights)) <= {1e-6, 1.0}


def test_roommate_families():
    rv_only = gen_instance(FamilySpec(family="roommate-rv-only", kind="roommate",
                                      n=6, seed=4))
    assert not rv_only.mutual_utilities.any()
    assert rv_only.room_valuations.any()
    mu_only = gen_instance(FamilySpec(family="roommate-mu-only", kind="roommate",
                                      n=6, seed=4))
    assert not mu_only.room_valuations.any()
    assert mu_only.mutual_utilities.any()


def test_all_families_validate():
    for fam in FAMILIES:
        if fam.startswith("roommate"):
            kinds = ["roommate"]
        elif fam == "zero":
            kinds = ["bipartite1", "bipartite2", "general", "roommate"]
        else:
            kinds = ["bipartite1", "bipartite2", "general"]
        for kind in kinds:
            inst = gen_instance(FamilySpec(family=fam, kind=kind, n=8, seed=11))
            assert isinstance(inst, (BipartiteInstance, GeneralInstance,
                                     RoommateInstance))


def test_weights_are_rounded_to_12_decimals():
    inst = gen_instance(FamilySpec(family="uniform", kind="general", n=10, seed=9))
    w = inst.weights
    assert np.allclose(w, np.round(w, 12), atol=0, rtol=0)


def test_bad_params():
    with pytest.raises(BadParams):
        FamilySpec(family="rank-decay", kind="general", n=4, seed=0,
                   params={"rho": 1.5}).validate()
    with pytest.raises(BadParams):
        FamilySpec(family="nope", kind="general", n=4, seed=0).validate()
    with pytest.raises(KindMismatch):
        FamilySpec(family="uniform", kind="general", n=5, seed=0).validate()
    with pytest.raises(KindMismatch):
        FamilySpec(family="roommate-rv-only", kind="general", n=4, seed=0).validate()
