from __future__ import annotations

import pytest

from superdual.errors import DomainError
from superdual.oddreflect import (BorelState, alpha_half, apply_sequence, btilde_c_sequence, btilde_s_sequence,
                                  nilradical_preserved, odd_reflect, real_reflect, trace_sequence,
                                  update_highest_weight)
from superdual.partitions import partitions_up_to
from superdual.rootdata import (DominantTuple, RootSystemSpec, Weight, make_weight_g, make_weight_gbar,
                                make_weight_gtilde)


def test_btilde_c_two():
    a = alpha_half
    assert btilde_c_sequence(2) == [a(1), a(3), a(1) + a(2) + a(3)]


def test_sequence_lengths():
    for n in range(1, 6):
        assert len(btilde_c_sequence(n)) == len(btilde_s_sequence(n)) == n * (n + 1) // 2


def test_update_rule():
    alpha = alpha_half(1)
    # theta of (1) is eps_{1/2}; one reflection lands on eps_1
    assert update_highest_weight(Weight.make({1: 1}), alpha) == Weight.make({2: 1})
    assert update_highest_weight(Weight(), alpha) == Weight()


def test_odd_reflect_swaps_one_root():
    spec = RootSystemSpec("c", 0, "full", 2)
    state = BorelState.initial(spec)
    alpha = alpha_half(1)
    new = odd_reflect(state, alpha)
    assert -alpha in new.simple_roots
    assert new.positive == (state.positive - {alpha}) | {-alpha}
    assert new.is_positive_system()


def test_odd_reflect_rejects_even_and_non_simple():
    spec = RootSystemSpec("c", 0, "full", 2)
    state = BorelState.initial(spec)
    with pytest.raises(DomainError):
        odd_reflect(state, Weight.make({1: 1, 3: -1}))
    with pytest.raises(DomainError):
        odd_reflect(state, alpha_half(1) + alpha_half(2))


def test_real_reflect_rejects_isotropic():
    spec = RootSystemSpec("c", 0, "full", 2)
    with pytest.raises(DomainError):
        real_reflect(BorelState.initial(spec), alpha_half(1))


@pytest.mark.parametrize("head,m", [("b", 1), ("c", 1), ("d", 2), ("b_bullet", 0), ("c", 0)])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_sequences_transfer_weights(head, m, n):
    spec = RootSystemSpec(head, m, "full", n + 1)
    for lam in partitions_up_to(6):
        t = DominantTuple([0] * m, lam, 0)
        start = make_weight_gtilde(t)
        if len(lam) <= n:
            tr = trace_sequence(spec, start, btilde_c_sequence(n))
            assert tr.result == make_weight_g(t)
            assert tr.state.is_positive_system() and nilradical_preserved(tr.state)
        if lam[0] <= n:
            assert apply_sequence(spec, start, btilde_s_sequence(n)) == make_weight_gbar(t)


def test_apply_sequence_requires_full_tail():
    with pytest.raises(DomainError):
        apply_sequence(RootSystemSpec("c", 0, "even", 2), Weight(), btilde_c_sequence(1))
