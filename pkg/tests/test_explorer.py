from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcgd.embed import builtin, subdivide
from lcgd.explorer import (
    THEOREMS,
    FuzzSpec,
    StarvationError,
    fuzz,
    instance_from_json,
    instance_to_json,
    lc_seq,
    minimize,
    ordered_family,
    replay,
    scan_partials,
    search_nontransitivity,
    small_sequences,
    standard_scan_graphs,
)
from lcgd.io import seq_from_json
from lcgd.seqcore import in_tLC, interlocked, is_log_concave, ratio_dominates, synchronized

from conftest import S, max_ratio_sequence

# ---------------------------------------------------------------------------
# Fuzzing harness
# ---------------------------------------------------------------------------


def test_spec_validation():
    with pytest.raises(ValueError):
        FuzzSpec("no-such-theorem")
    with pytest.raises(ValueError):
        FuzzSpec("convo-sync", trials=0)
    with pytest.raises(ValueError):
        FuzzSpec("convo-sync", seed=-1)


def test_known_theorem_ids():
    assert set(THEOREMS) == {
        "convo-sync", "pwconvo", "lincomb", "sumls", "simls", "sumclvls",
        "ac-bc", "ac-bd", "offset-laws", "bc-ac+", "lx",
    }


def test_convo_sync_clean():
    r = fuzz(FuzzSpec("convo-sync", trials=10_000, max_len=5, max_entry=30))
    assert r.examined == 10_000 and r.clean


def test_sumclvls_clean():
    r = fuzz(FuzzSpec("sumclvls", trials=1000))
    assert r.examined == 1000 and r.clean


@pytest.mark.parametrize("theorem", sorted(THEOREMS))
def test_every_suite_runs_clean_briefly(theorem):
    r = fuzz(FuzzSpec(theorem, trials=300, seed=7))
    assert r.examined == 300 and r.clean, r.violations[:1]


def test_reproducible():
    spec = FuzzSpec("ac-bd", trials=600, seed=3)
    assert fuzz(spec).to_json() == fuzz(spec).to_json()


def test_seed_changes_the_draw():
    a = fuzz(FuzzSpec("convo-sync", trials=200, seed=1, negate=True))
    b = fuzz(FuzzSpec("convo-sync", trials=200, seed=2, negate=True))
    assert a.violations != b.violations


def test_jobs_do_not_change_the_report():
    spec = FuzzSpec("convo-sync", trials=1000, seed=5, negate=True)
    assert fuzz(spec, jobs=1).to_json() == fuzz(spec, jobs=2).to_json()


def test_negated_premise_finds_violations():
    r = fuzz(FuzzSpec("convo-sync", trials=500, negate=True))
    assert not r.clean
    for v in r.violations:
        for key in ("instance", "minimized"):
            x = instance_from_json(v[key])
            verdict = replay("convo-sync", x, negate=True)
            assert verdict is not None and not verdict.holds
            assert not synchronized(x["A"], x["B"])


def test_minimize_shrinks():
    x = {"A": S(3, 5, 2), "B": S(0, 0, 4, 9), "C": S(2, 2)}
    assert replay("convo-sync", x, negate=True) is not None
    small = minimize("convo-sync", x, negate=True)
    verdict = replay("convo-sync", small, negate=True)
    assert verdict is not None and not verdict.holds
    size = lambda y: sum(s.total() + len(s) for s in y.values())
    assert size(small) <= size(x)


def test_replay_skips_unmet_premise():
    x = {"A": S(1, 1), "B": S(0, 0, 1), "C": S(1)}
    assert replay("convo-sync", x) is None


def test_instance_json_round_trip():
    x = {"As": (S(1, 2), S(0, 3)), "B": S(2, 1, offset=1), "w": (1, 4)}
    assert instance_from_json(instance_to_json(x)) == x


def test_starvation(monkeypatch):
    import lcgd.explorer as ex

    monkeypatch.setattr(ex, "BUDGET", 1)
    with pytest.raises(StarvationError) as exc:
        fuzz(FuzzSpec("ac-bd", trials=200))
    assert exc.value.attempts == 200 and exc.value.accepted < 200


@given(st.integers(0, 2**32))
def test_ordered_family_often_ordered(seed):
    rng = random.Random(seed)
    spec = FuzzSpec("ac-bd")
    fam = ordered_family(rng, spec, 3)
    assert len(fam) == 3 and all(len(s) <= spec.max_len for s in fam)


# ---------------------------------------------------------------------------
# Equivalence of synchronicity with a common dominating sequence
# ---------------------------------------------------------------------------


def test_max_ratio_sequence_example():
    a, b = S(1, 3, 2), S(2, 3, 1)
    B = max_ratio_sequence([a, b])
    # ratios 3, 2/3 and 3/2, 1/3 give the maxima 3, 2/3
    assert B == S(1, 3, 2)
    assert ratio_dominates(a, B) and ratio_dominates(b, B)


@settings(max_examples=500)
@given(st.integers(0, 2**32), st.integers(1, 4))
def test_tLC_iff_max_ratio_dominates(seed, n):
    rng = random.Random(seed)
    spec = FuzzSpec("ac-bd", max_len=5, max_entry=30)
    xs = ordered_family(rng, spec, n) if rng.random() < 0.5 else tuple(lc_seq(rng, spec) for _ in range(n))
    if not interlocked(xs):
        return
    B = max_ratio_sequence(xs)
    assert bool(in_tLC(xs)) == all(ratio_dominates(x, B) for x in xs)


# ---------------------------------------------------------------------------
# Literal statements on degenerate inputs
# ---------------------------------------------------------------------------


def test_pairwise_convolution_needs_interlocked_supports():
    # A ≲ B and C ≲ D hold because every cross product vanishes, yet the
    # supports of A*D and B*C end up two places apart
    from lcgd.seqcore import convolve

    a, b, c, d = S(1), S(1, offset=3), S(1), S(1, offset=1)
    assert ratio_dominates(a, b) and ratio_dominates(c, d)
    assert not synchronized(convolve(a, d), convolve(b, c))
    assert not interlocked([a, b])


def test_sum_needs_nonzero_members():
    # the zero sequence is dominated by everything, but the sum on the
    # right need not be log-concave
    from lcgd.seqcore import combine

    zero, one, flat = S(), S(1), S(3, 3, 3)
    assert ratio_dominates(zero, one) and ratio_dominates(zero, flat)
    assert not ratio_dominates(combine([1], [zero]), combine([1, 1], [one, flat]))


def test_offset_law_needs_adjacent_supports():
    a, b = S(1, offset=2), S(1)
    assert not ratio_dominates(a, b)
    assert ratio_dominates(b, a.shift(1))
    assert not interlocked([a, b])


# ---------------------------------------------------------------------------
# Graph scans
# ---------------------------------------------------------------------------


def test_standard_scan_clean():
    r = scan_partials(standard_scan_graphs())
    assert r.examined == 11 and r.clean
    first_four = r.notes[:4]
    assert all("D≲S holds" in n for n in first_four)


def test_dipole_scan():
    g, w = subdivide(builtin("dipole(3)"), 0)
    r = scan_partials([g.with_roots([w])])
    assert r.clean and "D=(2), S=(0,2)" in r.notes[0]


def test_scan_skips_over_cap():
    r = scan_partials(standard_scan_graphs()[:2], cap=100)
    assert r.examined == 1 and any("skipped" in n for n in r.notes)


def test_scan_reports_gapped_partials(monkeypatch):
    import lcgd.explorer as ex
    from lcgd.chains import SingleRootPGD

    monkeypatch.setattr(ex, "_root_partials", lambda g, cap: ("vertex", 0, SingleRootPGD(S(1, 0, 1), S(0, 1))))
    r = scan_partials(standard_scan_graphs()[:1])
    assert not r.clean
    assert r.violations[0]["failures"][0]["property"] == "no internal zeros"


# ---------------------------------------------------------------------------
# Non-transitivity search
# ---------------------------------------------------------------------------


def test_small_sequences():
    seqs = small_sequences(2, 2)
    assert all(is_log_concave(s) and not s.is_zero() for s in seqs)
    assert S(1) in seqs and S(2, 1) in seqs and S(0, 1) in seqs


def test_nontrans_length_one_has_no_witness():
    r = search_nontransitivity(max_len=1, max_entry=6)
    assert r.clean and r.examined > 0


@pytest.mark.parametrize("interlocked_only", [False, True])
def test_nontrans_witness_reverifies(interlocked_only):
    r = search_nontransitivity(max_len=4, max_entry=6, interlocked_only=interlocked_only)
    assert len(r.violations) == 1
    w = r.violations[0]
    a, b, c = (seq_from_json(w[k]) for k in "ABC")
    assert synchronized(a, b) and synchronized(b, c) and not synchronized(a, c)
    if interlocked_only:
        assert interlocked([a, b, c])
        assert (a, b, c) == (S(1, 1), S(0, 1), S(0, 0, 1))
    else:
        assert (a, b, c) == (S(1), S(0, 1), S(0, 0, 1))


def test_nontrans_bounds_positive():
    with pytest.raises(ValueError):
        search_nontransitivity(max_len=0)
