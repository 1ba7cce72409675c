import pytest

from coopdss.codes import make_scheme
from coopdss.codes.base import ParameterError, SchemeParams

from scheme_utils import check_faithful, leakage_of, sweep_reconstruct, sweep_repair


def scheme_for(n, k, d, t, l1=0, l2=0):
    return make_scheme(SchemeParams(n=n, k=k, d=d, t=t, l1=l1, l2=l2,
                                    scheme="mbcr-bivariate"))


def test_sizes_and_field():
    s = scheme_for(5, 2, 2, 2, l1=1)
    assert s.field.p == 7  # smallest prime > n
    assert s.file_size == 8 and s.alpha == 5
    assert s.secure_size == 3 and s.n_random == 5
    assert len(s.r_support) == 5 and len(s.u_support) == 3


def test_node_stores_row_and_column_evaluations():
    s = scheme_for(5, 2, 2, 2)
    u, r = s.random_inputs(1)
    nodes = s.encode(u, r)
    assert all(len(c.segment("row")) == 4 and len(c.segment("col")) == 1 for c in nodes)


def test_requires_n_at_least_d_plus_t():
    with pytest.raises(ParameterError):
        scheme_for(4, 2, 3, 2)


def test_random_coefficient_split():
    # randomness is exactly the coefficients with X-degree < l or Y-degree < l
    s = scheme_for(5, 2, 2, 2, l1=1)
    assert all(i < 1 or j < 1 for (i, j) in s.r_support)
    assert all(i >= 1 and j >= 1 for (i, j) in s.u_support)


def test_reconstruct_all_collectors():
    for (n, k, d, t) in [(5, 2, 2, 2), (6, 2, 3, 2), (7, 3, 3, 2)]:
        s = scheme_for(n, k, d, t, l1=1)
        u, r = s.random_inputs(3)
        sweep_reconstruct(s, s.encode(u, r), u)


def test_repair_all_failure_sets():
    for (n, k, d, t) in [(5, 2, 2, 2), (6, 2, 3, 2), (6, 2, 2, 3)]:
        s = scheme_for(n, k, d, t)
        u, r = s.random_inputs(4)
        sweep_repair(s, s.encode(u, r))


def test_repair_with_nondefault_helpers():
    s = scheme_for(6, 2, 3, 2)
    u, r = s.random_inputs(8)
    nodes = s.encode(u, r)
    survivors = {c.node_id: c for c in nodes if c.node_id not in (1, 2)}
    tr = s.cooperative_repair({1, 2}, survivors, helpers=(4, 5, 6))
    assert all(res == nodes[res.node_id - 1] for res in tr.results)


def test_secrecy_every_single_node():
    for (n, k, d, t) in [(5, 2, 2, 2), (6, 2, 3, 2)]:
        s = scheme_for(n, k, d, t, l1=1)
        for e in range(1, n + 1):
            v = leakage_of(s, [e])
            assert v.leakage_qunits == 0
            assert v.lemma_cond_entropy_ok and v.lemma_recoverable_ok
            obs = s.observation_matrix([e], [])
            # the dependency count of the observed-symbol table:
            # rank = l1*alpha - l1(l1-1) with l1 = 1
            assert obs.joint().rank() == s.alpha == s.n_random


def test_e2_fold_and_downloads():
    s = scheme_for(5, 2, 2, 2, l1=0, l2=1)
    assert s.secure_size == 3
    u, r = s.random_inputs(6)
    nodes = s.encode(u, r)
    survivors = {c.node_id: c for c in nodes if c.node_id not in (1, 2)}
    tr = s.cooperative_repair({1, 2}, survivors)
    v = leakage_of(s, [], [1], [tr])
    assert v.leakage_qunits == 0
    check_faithful(s, u, r, [], [1], [tr])


def test_observation_faithfulness():
    s = scheme_for(6, 2, 3, 2, l1=1)
    for seed in range(5):
        u, r = s.random_inputs(seed)
        check_faithful(s, u, r, e1=[4])


def test_achieved_size_matches_proposition():
    for (n, k, d, t) in [(5, 2, 2, 2), (6, 2, 3, 2), (8, 3, 4, 2)]:
        for l1 in range(min(k, 2)):
            s = scheme_for(n, k, d, t, l1=l1)
            assert s.secure_size == k * (2 * d - k + t) - l1 * (2 * d - l1 + t)
