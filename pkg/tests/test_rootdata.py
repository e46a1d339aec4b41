from __future__ import annotations

from fractions import Fraction

import pytest

from superdual.errors import DomainError
from superdual.rootdata import (DominantTuple, RootSystemSpec, Weight, coroot_pairing, inner, iter_specs,
                                make_weight, make_weight_g, make_weight_gbar, make_weight_gtilde,
                                parse_tuple, positive_roots, simple_roots)


def labels(ws):
    return sorted(str(w) for w in ws)


def test_form_signs():
    assert inner(Weight.eps(2), Weight.eps(2)) == 1
    assert inner(Weight.eps(1), Weight.eps(1)) == -1
    assert inner(Weight.eps(-2), Weight.eps(-2)) == 1


def test_b1_even1_has_four_positive_roots():
    assert len(positive_roots(RootSystemSpec("b", 1, "even", 1))) == 4


def test_c_m0_positive_roots():
    assert labels(positive_roots(RootSystemSpec("c", 0, "even", 1))) == ["-2*e(1)"]


def test_c1_even2_simple_roots():
    got = [str(a) for a in simple_roots(RootSystemSpec("c", 1, "even", 2))]
    assert got == ["-2*e(-1)", "e(-1) - e(1)", "e(1) - e(2)"]


def test_weight_maps_for_3_1():
    t = parse_tuple("|3,1")
    assert make_weight_g(t) == Weight.make({2: 3, 4: 1})
    assert make_weight_gbar(t) == Weight.make({1: 2, 3: 1, 5: 1})
    assert make_weight_gtilde(t) == Weight.make({1: 2, 2: 2})


def test_coroot_pairing_values():
    w = Weight.make({-2: 2, 2: 6})
    assert coroot_pairing(w, Weight.make({-2: 1, 2: -1})) == -4
    # isotropic roots pair through the form itself
    assert coroot_pairing(Weight.make({1: 1}), Weight.make({1: 1, 2: -1})) == -1


def test_weight_json_round_trip():
    w = Weight.make({-4: Fraction(1, 2), 3: -2}, level=3)
    assert Weight.from_json(w.to_json()) == w


def test_bad_spec_rejected():
    with pytest.raises(DomainError):
        RootSystemSpec("x", 1, "even", 1)
    with pytest.raises(DomainError):
        RootSystemSpec("c", 0, "super", 0)


def test_rank_too_small():
    with pytest.raises(DomainError):
        make_weight(RootSystemSpec("c", 0, "even", 1), parse_tuple("|1,1"))


@pytest.mark.parametrize("spec", list(iter_specs(ms=(0, 1, 2), tail="full", ns=(2,))) +
                         list(iter_specs(ms=(0, 1, 2), tail="even", ns=(2,))), ids=lambda s: s.describe())
def test_positive_roots_in_simple_cone(spec):
    simple = simple_roots(spec)
    for beta in positive_roots(spec):
        coeffs = spec.simple_coordinates(beta)
        assert spec.in_root_cone(beta)
        total = Weight()
        for a, c in zip(simple, coeffs):
            total = total + a * c
        assert total == beta
    for a in simple:
        assert sum(spec.simple_coordinates(a)) == 1


def test_dominance_check():
    spec = RootSystemSpec("c", 2, "even", 1, {"alpha_-2"})
    for head in ([-1, 1], [0, 1], [1, 0]):
        t = DominantTuple(head, ())
        try:
            t.check(spec)
        except DomainError:
            assert coroot_pairing(t.head_weight(), spec.head_simple["alpha_-2"]) < 0
        else:
            assert coroot_pairing(t.head_weight(), spec.head_simple["alpha_-2"]) >= 0
