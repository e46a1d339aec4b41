from __future__ import annotations

import json
import random

import pytest

from superdual import coxeter_kl as kl
from superdual.coxeter_kl import LaurentPoly, SignedPerm
from superdual.errors import DomainError, SingularBlockError
from superdual.rootdata import DominantTuple, RootSystemSpec

ONE = LaurentPoly.monomial(0)


def test_lengths():
    assert kl.length(SignedPerm.identity(3)) == 0
    assert kl.length(SignedPerm.longest(2, "B")) == 4
    assert max(kl.length(w) for w in kl.elements("B", 2)) == 4
    assert len(kl.elements("B", 3)) == 48 and len(kl.elements("D", 4)) == 192


def test_reduced_word_round_trip():
    for w in kl.elements("D", 3):
        word = kl.reduced_word(w)
        assert len(word) == kl.length(w)
        assert SignedPerm.from_word(word, 3, "D") == w


def test_bruhat_basics():
    els = kl.elements("B", 2)
    e, w0 = SignedPerm.identity(2), SignedPerm.longest(2)
    assert all(kl.bruhat_leq(x, x) and kl.bruhat_leq(e, x) and kl.bruhat_leq(x, w0) for x in els)


def test_mixed_types_rejected():
    with pytest.raises(DomainError):
        kl.bruhat_leq(SignedPerm.identity(2, "B"), SignedPerm.identity(2, "D"))
    with pytest.raises(DomainError):
        SignedPerm((-1, 2, 3), "D")


def test_kl_axioms_rank2():
    els = kl.elements("B", 2)
    for x in els:
        for w in els:
            p = kl.kl_polynomial("B", 2, x, w)
            if x == w:
                assert p == ONE
            elif not kl.bruhat_leq(x, w):
                assert not p
            else:
                assert p == ONE


def test_b3_regression_pair():
    x, w = SignedPerm.identity(3), SignedPerm((3, -2, 1))
    assert kl.reduced_word(w) == [1, 2, 0, 1]
    assert kl.kl_polynomial("B", 3, x, w) == LaurentPoly.from_list([1, 1])


def test_degree_bound_and_oracle_d3():
    oracle = kl.RPolynomialOracle("D", 3)
    els = kl.elements("D", 3)
    for x in els:
        for w in els:
            p = kl.kl_polynomial("D", 3, x, w)
            assert p == oracle.p(x.window, w.window)
            if p and x != w:
                assert 2 * p.degree <= kl.length(w) - kl.length(x) - 1


def test_parabolic_empty_J_and_diagonal():
    els = kl.elements("C", 2)
    for x in els:
        for w in els:
            assert kl.parabolic_kl("C", 2, (), x, w) == kl.kl_polynomial("C", 2, x, w)
    eng = kl.engine("B", 3, (1,), "sign")
    for w in kl.elements("B", 3):
        if eng.is_minimal(w.window):
            assert kl.parabolic_kl("B", 3, (1,), w, w) == ONE


def test_parabolic_alternating_sum():
    tag, n, J = "B", 2, (0,)
    wj = kl.parabolic_subgroup(tag, n, J)
    eng = kl.engine(tag, n, J, "sign")
    mins = [w for w in kl.elements(tag, n) if eng.is_minimal(w.window)]
    for x in mins:
        for w in mins:
            alt = LaurentPoly()
            for z in wj:
                alt = alt + kl.kl_polynomial(tag, n, z * x, w) * (-1) ** kl.length(z)
            assert alt == kl.parabolic_kl(tag, n, J, x, w)


def test_parabolic_rejects_non_minimal():
    with pytest.raises(DomainError):
        kl.parabolic_kl("B", 2, (0,), SignedPerm.from_word([0], 2), SignedPerm.longest(2))


def test_linkage_rank_one():
    spec = RootSystemSpec("c", 0, "even", 1)
    got = [e.tuple for e in kl.linkage(DominantTuple([], (1,), 1), spec, 1, 6)]
    assert got == [DominantTuple([], (1,), 1), DominantTuple([], (3,), 1)]
    assert [e.tuple for e in kl.linkage(DominantTuple([], (1,), 1), spec, 1, 0)] == [DominantTuple([], (1,), 1)]


def test_transition_rank_one():
    spec = RootSystemSpec("c", 0, "even", 1)
    tm = kl.transition_matrix(DominantTuple([], (1,), 1), spec, 1, 6)
    assert sorted(tm.nonzero().values()) == [-1, 1]
    assert tm.is_unitriangular()


def test_singular_block_rejected():
    spec = RootSystemSpec("c", 0, "even", 1)
    with pytest.raises(SingularBlockError):
        kl.transition_matrix(DominantTuple([], (1,), 0), spec, 1, 4)


def test_linkage_stable_in_rank():
    spec = RootSystemSpec("c", 1, "even", 1)
    t = DominantTuple([-1], (2, 1), 1)
    base = kl.stable_rank(t, 4)
    sets = [{e.tuple for e in kl.linkage(t, spec, N, 4)} for N in (base, base + 1, base + 2)]
    assert sets[0] == sets[1] == sets[2]


def test_cache_round_trip(tmp_path):
    kl.set_cache_dir(tmp_path)
    eng = kl.engine("B", 2)
    w0 = SignedPerm.longest(2).window
    first = eng.polynomial(SignedPerm.identity(2).window, w0)
    kl.flush_caches()
    assert any(tmp_path.iterdir())
    kl.set_cache_dir(tmp_path)
    eng2 = kl.engine("B", 2)
    assert eng2.polynomial(SignedPerm.identity(2).window, w0) == first


def test_stale_cache_is_set_aside(tmp_path):
    kl.set_cache_dir(tmp_path)
    eng = kl.engine("B", 2)
    eng.polynomial(SignedPerm.identity(2).window, SignedPerm.longest(2).window)
    kl.flush_caches()
    files = list(tmp_path.glob("*.jsonl"))
    assert files
    files[0].write_text(json.dumps({"format": "other", "version": 99}) + "\n")
    kl.set_cache_dir(tmp_path)
    kl.engine("B", 2).polynomial(SignedPerm.identity(2).window, SignedPerm.longest(2).window)
    assert list(tmp_path.glob("*.stale"))


def test_random_d4_against_oracle():
    rng = random.Random(3)
    oracle = kl.RPolynomialOracle("D", 4)
    els = kl.elements("D", 4)
    for _ in range(60):
        x, w = rng.choice(els), rng.choice(els)
        assert kl.kl_polynomial("D", 4, x, w) == oracle.p(x.window, w.window)
