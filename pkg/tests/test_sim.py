import dataclasses

import pytest

from coopdss import sim as sim_mod
from coopdss.codes.base import ParameterError, SchemeParams
from coopdss.secrecy import rank_leakage


def config_for(scheme="mbcr-exact", n=4, k=2, d=2, t=2, l1=0, l2=0, **kw):
    params = SchemeParams(n=n, k=k, d=d, t=t, l1=l1, l2=l2, scheme=scheme)
    return sim_mod.SimConfig(params=params, **kw)


def test_zero_rounds():
    cfg = config_for(l1=1, rounds=0, failure_plan=(), e1=(3,))
    trace = sim_mod.run(cfg)
    assert trace.transcripts == () and trace.final == trace.initial
    obs = sim_mod.observation(trace)
    assert obs.n_rows == 5  # stored rows only
    assert rank_leakage(obs).leakage_qunits == 0


def test_single_round_e1():
    cfg = config_for(l1=1, rounds=1, failure_plan=(frozenset({1, 2}),), e1=(3,))
    trace = sim_mod.run(cfg)
    assert trace.bandwidth == (2 * 5,)  # t * gamma
    assert rank_leakage(sim_mod.observation(trace)).leakage_qunits == 0


def test_e2_must_fail_somewhere():
    cfg = config_for(scheme="mscr-dk", l2=1, rounds=1,
                     failure_plan=(frozenset({2, 3}),), e2=(1,))
    with pytest.raises(ParameterError):
        sim_mod.run(cfg)


def test_e2_download_rows_counted():
    cfg = config_for(scheme="mscr-dk", l2=1, rounds=1,
                     failure_plan=(frozenset({1, 2}),), e2=(1,))
    trace = sim_mod.run(cfg)
    obs = sim_mod.observation(trace)
    scheme_alpha = 2
    k, t = 2, 2
    assert obs.n_rows == scheme_alpha + k + (t - 1)
    assert rank_leakage(obs).leakage_qunits == 0


def test_exact_repair_closure_multi_round():
    cfg = config_for(l1=1, rounds=3,
                     failure_plan=(frozenset({1, 2}), frozenset({3, 4}), frozenset({2, 3})),
                     e1=(1,))
    trace = sim_mod.run(cfg)
    assert trace.final == trace.initial
    ok, diffs = sim_mod.replay_check(trace)
    assert ok, diffs


def test_determinism():
    cfg = config_for(l1=1, rounds=2, seed=77, e1=(3,))
    t1 = sim_mod.run(cfg)
    t2 = sim_mod.run(cfg)
    assert t1 == t2
    assert sim_mod.trace_to_text(t1) == sim_mod.trace_to_text(t2)


def test_random_plan_and_helpers_mode():
    cfg = config_for(scheme="mscr-dk", n=6, k=2, d=2, t=2, rounds=4, seed=5,
                     helper_mode="random")
    trace = sim_mod.run(cfg)
    assert trace.final == trace.initial
    assert all(bw == 2 * 3 for bw in trace.bandwidth)
    ok, _ = sim_mod.replay_check(trace)
    assert ok


def test_replay_check_flags_flipped_symbol():
    cfg = config_for(l1=1, rounds=1, failure_plan=(frozenset({1, 2}),), e1=(3,))
    trace = sim_mod.run(cfg)
    tr = trace.transcripts[0]
    (key, vals) = next(iter(tr.live_transfers.items()))
    f = __import__("coopdss.codes", fromlist=["make_scheme"]).make_scheme(cfg.params).field
    tampered_vals = (f.add(vals[0], f.one),) + vals[1:]
    tampered_transfers = dict(tr.live_transfers)
    tampered_transfers[key] = tampered_vals
    bad_tr = dataclasses.replace(tr, live_transfers=tampered_transfers)
    bad_trace = dataclasses.replace(trace, transcripts=(bad_tr,))
    ok, diffs = sim_mod.replay_check(bad_trace)
    assert not ok
    assert any("live transfer" in d for d in diffs)


def test_lifetime_cumulative_secrecy_mscr_dk():
    # 3 rounds, E2 node kept at a stable sorted position in every failure set
    params = SchemeParams(n=4, k=2, d=2, t=2, l1=0, l2=1, scheme="mscr-dk")
    cfg = sim_mod.SimConfig(params=params, rounds=3,
                            failure_plan=(frozenset({1, 2}), frozenset({1, 3}),
                                          frozenset({1, 4})),
                            e2=(1,))
    trace = sim_mod.run(cfg)
    obs = sim_mod.observation(trace)
    assert obs.n_rows == 2 + 3 * (2 + 1)
    assert rank_leakage(obs).leakage_qunits == 0
    assert trace.final == trace.initial


def test_trace_text_roundtrip():
    cfg = config_for(scheme="mscr-dk", l2=1, rounds=2, seed=3,
                     failure_plan=(frozenset({1, 2}), frozenset({1, 3})), e2=(1,))
    trace = sim_mod.run(cfg)
    text = sim_mod.trace_to_text(trace)
    header, transfers = sim_mod.trace_transfers_from_text(text)
    assert header["scheme"] == "mscr-dk" and header["n"] == 4
    assert len(transfers) == sum(
        len(tr.live_transfers) + len(tr.coop_transfers) for tr in trace.transcripts)
    # symbols in the text match the transcripts
    f = __import__("coopdss.codes", fromlist=["make_scheme"]).make_scheme(cfg.params).field
    for round_idx, src, dst, kind, hexvals in transfers:
        tr = trace.transcripts[round_idx]
        table = tr.live_transfers if kind == "live" else tr.coop_transfers
        vals = tuple(f.symbol_from_bytes(bytes.fromhex(h)) for h in hexvals.split(":"))
        assert table[(src, dst)] == vals
