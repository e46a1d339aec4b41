from __future__ import annotations

import random

import pytest

from superdual.errors import DomainError, UncoveredVariantError
from superdual.extremal import (BorelSequence, block_frobenius, extremal_weight, extremal_weight_B,
                                is_finite_dimensional, parse_algebra, pipe_variant, parse_borel, random_borel, random_hook,
                                reflection_walk, superdual_highest_weight)
from superdual.partitions import Partition, is_hook, partitions_up_to, sharp
from superdual.rootdata import Weight

EXAMPLE_BOREL = "δ2+, δ1−, ε1−, ε2+, δ3+, δ4+, ε4+, ε3+, δ5−"
EXAMPLE_LAMBDA = (14, 11, 8, 8, 7, 4, 3, 2)


def test_example_block_frobenius_and_weight():
    seq = parse_borel(EXAMPLE_BOREL)
    assert (seq.n, seq.m) == (5, 4)
    assert seq.blocks == ((2, 2, 1), (2, 2, 0))
    fr = block_frobenius(EXAMPLE_LAMBDA, seq)
    assert fr.p == (14, 11, 6, 6, 3) and fr.q == (6, 6, 3, 2)
    w = extremal_weight_B(EXAMPLE_LAMBDA, seq)
    assert w.delta == (-11, 14, 6, 6, -3) and w.eps == (-6, 6, 2, 3)
    assert str(w) == "-11δ1 + 14δ2 + 6δ3 + 6δ4 - 3δ5 - 6ε1 + 6ε2 + 2ε3 + 3ε4"


def test_example_matches_reflection_walk():
    seq = parse_borel(EXAMPLE_BOREL)
    walk = reflection_walk(EXAMPLE_LAMBDA, seq)
    assert walk.borel_matches
    assert walk.weight == extremal_weight_B(EXAMPLE_LAMBDA, seq).to_epsilon()


def test_parse_forms():
    assert parse_borel("d2+,d1-,e1-,e2+,d3+,d4+,e4+,e3+,d5-") == parse_borel(EXAMPLE_BOREL)
    assert parse_algebra("osp(9|10)") == ("odd", 5, 4)
    assert parse_algebra("osp(8|10)") == ("even", 5, 4)
    with pytest.raises(DomainError):
        parse_borel("d1+,d1+")


def test_not_hook_rejected():
    with pytest.raises(DomainError):
        extremal_weight((2, 2), BorelSequence.standard(1, 1, "odd"))


def test_standard_borel_gives_sharp():
    for n in range(1, 4):
        for m in range(1, 4):
            seq = BorelSequence.standard(n, m, "odd")
            for lam in partitions_up_to(8):
                if is_hook(lam, n, m):
                    w = extremal_weight(lam, seq)
                    assert tuple(w.delta) + tuple(w.eps) == sharp(lam, n, m)


def test_superdual_osp_5_2():
    # osp(5|2): one delta, two eps; lambda = (3, 1) lands on -eps_{-1} - 3 eps_{1/2}
    w = superdual_highest_weight((3, 1), 1, 2)
    assert w == Weight.make({-2: -1, 1: -3})
    assert w == extremal_weight((3, 1), BorelSequence.opposite(1, 2)).to_epsilon()


@pytest.mark.parametrize("family", ["odd", "even", "gl"])
def test_random_round_trip_against_walk(family):
    rng = random.Random(17)
    cases = 0
    while cases < 80:
        n, m = rng.randint(1, 4), rng.randint(1, 4)
        seq = random_borel(n, m, family, rng)
        lam = random_hook(n, m, 10, rng)
        for variant in (("plus", "minus") if family == "even" else ("plus",)):
            try:
                w = extremal_weight(lam, seq, variant)
            except UncoveredVariantError:
                assert seq.shape == "pipe"
                continue
            walk = reflection_walk(lam, seq, variant)
            assert walk.borel_matches and walk.weight == w.to_epsilon()
            rec = is_finite_dimensional(w, seq)
            assert rec and rec.partition == Partition(lam)
            cases += 1


def test_round_trip_exhaustive_small():
    for n in (1, 2):
        for m in (1, 2):
            for lam in partitions_up_to(6):
                if not is_hook(lam, n, m):
                    continue
                sd = superdual_highest_weight(lam, n, m, "odd")
                rec = is_finite_dimensional(sd, n=n, m=m, family="odd")
                assert rec and rec.partition == lam


def test_not_finite_dimensional():
    seq = BorelSequence.standard(1, 1, "odd")
    w = extremal_weight((1,), seq)
    bad = type(w)(delta=(w.delta[0],), eps=(-1,))
    assert not is_finite_dimensional(bad, seq)


def test_pipe_variant_mismatch_raises():
    seq = parse_borel("e1+,d1+", family="even")
    assert seq.shape == "pipe"
    mismatched = "minus" if pipe_variant(seq) == "plus" else "plus"
    extremal_weight((1,), seq, pipe_variant(seq))
    with pytest.raises(UncoveredVariantError):
        extremal_weight((1,), seq, mismatched)
