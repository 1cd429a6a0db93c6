"""Instance validation, arrival orders, and the roommate decomposition."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from norej.errors import (
    AsymmetricWeights,
    CapacityMismatch,
    DimensionMismatch,
    NegativeWeight,
    OddN,
    SchemaError,
    UnsupportedCapacity,
)
from norej.instances import (
    decompose_roommate,
    sample_arrival_order,
    validate_instance,
)
from norej.rng import trial_stream


def test_degenerate_zero_bipartite_is_valid():
    inst = validate_instance({
        "kind": "bipartite", "n": 2, "capacities": [1, 1],
        "weights": [[0.0, 0.0], [0.0, 0.0]]})
    assert inst.n_offline == 2 and inst.n_online == 2


def test_capacity_mismatch():
    with pytest.raises(CapacityMismatch):
        validate_instance({"kind": "bipartite", "n": 3, "capacities": [2, 2],
                           "weights": [[0, 0, 0], [0, 0, 0]]})


def test_unsupported_capacity():
    with pytest.raises(UnsupportedCapacity):
        validate_instance({"kind": "bipartite", "n": 3, "capacities": [3],
                           "weights": [[0, 0, 0]]})


def test_odd_general_rejected_without_odd_mode():
    w = np.zeros((3, 3))
    with pytest.raises(OddN):
        validate_instance({"kind": "general", "n": 3, "weights": w})
    inst = validate_instance({"kind": "general", "n": 3, "weights": w,
                              "odd_mode": True})
    assert inst.allow_odd


def test_negative_and_nonfinite_weights():
    with pytest.raises(NegativeWeight):
        validate_instance({"kind": "bipartite", "n": 1, "capacities": [1],
                           "weights": [[-0.5]]})
    with pytest.raises(NegativeWeight):
        validate_instance({"kind": "general", "n": 2,
                           "weights": [[0, np.inf], [np.inf, 0]]})


def test_asymmetric_weights():
    with pytest.raises(AsymmetricWeights):
        validate_instance({"kind": "general", "n": 2, "weights": [[0, 1], [2, 0]]})


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        validate_instance({"kind": "bipartite", "n": 2, "capacities": [1, 1],
                           "weights": [[1.0, 2.0]]})


def test_unknown_kind():
    with pytest.raises(SchemaError):
        validate_instance({"kind": "hypergraph", "n": 2})


def test_arrival_order_simplest():
    assert sample_arrival_order(1, trial_stream(0, 0)).order.tolist() == [1]


def test_decompose_roommate_smallest():
    inst = validate_instance({
        "kind": "roommate", "n": 2,
        "room_valuations": [[1.5], [2.5]],
        "mutual_utilities": [[0.0, 4.0], [4.0, 0.0]]})
    bip, gen = decompose_roommate(inst)
    assert bip.capacities.tolist() == [2]
    assert bip.weights.tolist() == [[1.5, 2.5]]
    assert gen.weights[0, 1] == 4.0


def test_decompose_preserves_entries_bitwise():
    rng = np.random.default_rng(3)
    m = 3
    rv = np.round(rng.random((2 * m, m)), 12)
    mu = np.round(rng.random((2 * m, 2 * m)), 12)
    mu = np.triu(mu, 1)
    mu = mu + mu.T
    inst = validate_instance({"kind": "roommate", "n": 2 * m,
                              "room_valuations": rv, "mutual_utilities": mu})
    bip, gen = decompose_roommate(inst)
    assert np.array_equal(bip.weights, rv.T)
    assert np.array_equal(gen.weights, mu)


def test_decompose_zero_mutual_utilities():
    inst = validate_instance({
        "kind": "roommate", "n": 4,
        "room_valuations": np.ones((4, 2)),
        "mutual_utilities": np.zeros((4, 4))})
    _bip, gen = decompose_roommate(inst)
    assert not gen.weights.any()


@given(st.integers(min_value=1, max_value=40), st.integers(min_value=0, max_value=2**32))
@settings(max_examples=60, deadline=None)
def test_arrival_order_is_bijection(n, seed):
    order = sample_arrival_order(n, trial_stream(seed, 0))
    order.validate()
    assert sorted(order.order.tolist()) == list(range(1, n + 1))


def test_instances_are_immutable(gen_small):
    with pytest.raises(ValueError):
        gen_small.weights[0, 1] = 5.0


@given(st.integers(min_value=1, max_value=6), st.integers(min_value=0, max_value=10**6))
@settings(max_examples=40, deadline=None)
def test_validate_serialize_validate_idempotent(m, seed):
    from norej.generators import FamilySpec, gen_instance
    from norej.io import parse_instance_file, serialize_instance
    import json, tempfile, os
    inst = gen_instance(FamilySpec(family="roommate-uniform", kind="roommate",
                                   n=2 * m, seed=seed))
    raw = serialize_instance(inst)
    inst2 = validate_instance(raw)
    assert serialize_instance(inst2) == raw
    fd, path = tempfile.mkstemp(suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(raw, fh)
        inst3 = validate_instance(parse_instance_file(path))
        assert np.array_equal(inst3.mutual_utilities, inst.mutual_utilities)
        assert np.array_equal(inst3.room_valuations, inst.room_valuations)
    finally:
        os.unlink(path)
