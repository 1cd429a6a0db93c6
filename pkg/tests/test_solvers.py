"""Offline solver correctness against independent brute-force oracles."""

import numpy as np
import pytest

from norej.errors import OddSubset, SizeLimitExceeded, SubsetTooLarge
from norej.instances import validate_instance
from norej.solvers import (
    brute_force_matching,
    opt_bipartite_capacitated,
    opt_general_perfect,
    opt_roommate_bruteforce,
)
from norej.solvers.bruteforce import opt_roommate_upper_bound


def _bip(caps, weights):
    return validate_instance({"kind": "bipartite", "n": int(np.sum(caps)),
                              "capacities": caps, "weights": weights})


def _gen(weights, odd=False):
    w = np.asarray(weights, dtype=float)
    return validate_instance({"kind": "general", "n": len(w), "weights": w,
                              "odd_mode": odd})


def test_bipartite_single_edge():
    inst = _bip([1], [[5.0]])
    m = opt_bipartite_capacitated(inst, [1])
    assert m.edges == ((1, 1),) and m.weight == 5.0


def test_bipartite_2x2_example():
    inst = _bip([1, 1], [[3.0, 1.0], [2.0, 4.0]])
    m = opt_bipartite_capacitated(inst, [1, 2])
    assert m.edges == ((1, 1), (2, 2))
    assert m.weight == pytest.approx(7.0, abs=1e-12)
    assert brute_force_matching(inst, [1, 2]) == pytest.approx(7.0, abs=1e-12)


def test_bipartite_zero_weights_all_matched():
    inst = _bip([1, 1, 1], np.zeros((3, 3)))
    m = opt_bipartite_capacitated(inst, [1, 2, 3])
    assert m.weight == 0.0 and len(m.edges) == 3


def test_bipartite_subset_too_large():
    inst = _bip([1], [[1.0]])
    with pytest.raises(SubsetTooLarge):
        opt_bipartite_capacitated(inst, [1, 2])


def test_general_forced_pair():
    inst = _gen([[0, 7], [7, 0]])
    m = opt_general_perfect(inst, [1, 2])
    assert m.edges == ((1, 2),) and m.weight == 7.0


def test_general_n4_example():
    w = np.zeros((4, 4))
    w[0, 1] = w[1, 0] = 5.0
    w[2, 3] = w[3, 2] = 5.0
    w[0, 2] = w[2, 0] = 4.0
    w[1, 3] = w[3, 1] = 4.0
    inst = _gen(w)
    m = opt_general_perfect(inst, [1, 2, 3, 4])
    assert m.weight == pytest.approx(10.0, abs=1e-12)
    assert m.edges == ((1, 2), (3, 4))
    assert brute_force_matching(inst, [1, 2, 3, 4]) == pytest.approx(10.0)


def test_general_zero_weights_perfect():
    inst = _gen(np.zeros((4, 4)))
    m = opt_general_perfect(inst, [1, 2, 3, 4])
    assert m.weight == 0.0 and len(m.edges) == 2


def test_general_odd_subset():
    inst = _gen(np.zeros((4, 4)))
    with pytest.raises(OddSubset):
        opt_general_perfect(inst, [1, 2, 3])


def test_roommate_single_room():
    inst = validate_instance({"kind": "roommate", "n": 2,
                              "room_valuations": [[1.0], [2.0]],
                              "mutual_utilities": [[0, 3], [3, 0]]})
    alloc = opt_roommate_bruteforce(inst)
    assert alloc.tuples == ((1, 1, 2),)
    assert alloc.utility == pytest.approx(6.0)


def test_roommate_cross_checks_vs_matching_solvers():
    rng = np.random.default_rng(12)
    mu = np.round(rng.random((4, 4)), 6)
    mu = np.triu(mu, 1)
    mu = mu + mu.T
    inst = validate_instance({"kind": "roommate", "n": 4,
                              "room_valuations": np.zeros((4, 2)),
                              "mutual_utilities": mu})
    alloc = opt_roommate_bruteforce(inst)
    best_mu = opt_general_perfect(_gen(mu), [1, 2, 3, 4]).weight
    assert alloc.utility == pytest.approx(best_mu, abs=1e-9)

    rv = np.round(rng.random((4, 2)), 6)
    inst2 = validate_instance({"kind": "roommate", "n": 4,
                               "room_valuations": rv,
                               "mutual_utilities": np.zeros((4, 4))})
    alloc2 = opt_roommate_bruteforce(inst2)
    best_rv = opt_bipartite_capacitated(
        _bip([2, 2], rv.T), [1, 2, 3, 4]).weight
    assert alloc2.utility == pytest.approx(best_rv, abs=1e-9)


def test_roommate_upper_bound_dominates_bruteforce():
    rng = np.random.default_rng(5)
    for s in range(5):
        rv = np.round(rng.random((6, 3)), 6)
        mu = np.triu(np.round(rng.random((6, 6)), 6), 1)
        mu = mu + mu.T
        inst = validate_instance({"kind": "roommate", "n": 6,
                                  "room_valuations": rv, "mutual_utilities": mu})
        assert opt_roommate_upper_bound(inst) >= \
            opt_roommate_bruteforce(inst).utility - 1e-9


def test_roommate_size_cap():
    inst = validate_instance({"kind": "roommate", "n": 14,
                              "room_valuations": np.zeros((14, 7)),
                              "mutual_utilities": np.zeros((14, 14))})
    with pytest.raises(SizeLimitExceeded):
        opt_roommate_bruteforce(inst)


def test_brute_force_size_cap(gen_small):
    with pytest.raises(SizeLimitExceeded):
        brute_force_matching(gen_small, range(1, 13))


@pytest.mark.parametrize("kind", ["bipartite1", "bipartite2", "general"])
def test_oracle_equivalence_random(kind):
    # 40 random instances per kind here; the full 200-per-kind sweep runs in
    # the acceptance gate
    rng = np.random.default_rng(hash(kind) % 2**32)
    for trial in range(40):
        if kind == "general":
            n = int(rng.integers(1, 5)) * 2
            w = np.round(rng.random((n, n)), 4)
            w = np.triu(w, 1)
            w = w + w.T
            inst = _gen(w)
            subset = list(range(1, n + 1))
            fast = opt_general_perfect(inst, subset).weight
        else:
            cap = 1 if kind == "bipartite1" else 2
            n_off = int(rng.integers(1, 5 if cap == 1 else 4))
            n = n_off * cap
            w = np.round(rng.random((n_off, n)), 4)
            inst = _bip([cap] * n_off, w)
            subset = list(range(1, int(rng.integers(1, n + 1)) + 1))
            fast = opt_bipartite_capacitated(inst, subset).weight
        if kind == "general":
            ref = brute_force_matching(inst, subset)
        else:
            ref = brute_force_matching(inst, subset)
        assert fast == pytest.approx(ref, abs=1e-9), (kind, trial)


def test_determinism_across_calls(gen_small, bip2_small):
    sub = [3, 1, 7, 12, 5, 9]
    a = opt_general_perfect(gen_small, sub)
    _ = opt_general_perfect(gen_small, range(1, 15))
    b = opt_general_perfect(gen_small, sub)
    assert a.edges == b.edges
    c = opt_bipartite_capacitated(bip2_small, sub)
    _ = opt_bipartite_capacitated(bip2_small, range(1, 9))
    d = opt_bipartite_capacitated(bip2_small, sub)
    assert c.edges == d.edges
    # order of the subset iterable is irrelevant
    e = opt_general_perfect(gen_small, list(reversed(sub)))
    assert a.edges == e.edges


def test_perfectness(gen_small, bip1_small):
    sub = [2, 4, 6, 8, 10, 12]
    m = opt_general_perfect(gen_small, sub)
    assert sorted(v for e in m.edges for v in e) == sub
    mb = opt_bipartite_capacitated(bip1_small, sub)
    assert sorted(v for _u, v in mb.edges) == sub


def test_monotonicity_in_subset(bip2_small):
    prev = 0.0
    for hi in range(1, bip2_small.n_online + 1):
        w = opt_bipartite_capacitated(bip2_small, range(1, hi + 1)).weight
        assert w >= prev - 1e-12
        prev = w


def test_matching_weight_consistency(gen_small):
    m = opt_general_perfect(gen_small, range(1, 21))
    m.check_general(gen_small)
    recomputed = sum(gen_small.weights[a - 1, b - 1] for a, b in m.edges)
    assert m.weight == pytest.approx(recomputed, abs=1e-9)
