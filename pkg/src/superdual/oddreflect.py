"""Odd and real reflections of Borel subalgebras and highest-weight tracking."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .errors import DomainError
from .rootdata import RootSystemSpec, Weight, coroot_pairing, inner


@dataclass(frozen=True)
class BorelState:
    """Current simple roots (in diagram order) and positive system."""

    spec: RootSystemSpec
    simple_roots: tuple[Weight, ...]
    positive: frozenset[Weight]
    history: tuple[Weight, ...] = ()

    @classmethod
    def initial(cls, spec: RootSystemSpec) -> BorelState:
        return cls(spec, spec.simple_roots, frozenset(spec.positive_roots))

    def is_odd(self, alpha: Weight) -> bool:
        return self.spec.parity(alpha) == 1

    def is_positive_system(self) -> bool:
        """Exactly one of each pair +-gamma is positive."""
        every = set(self.spec.positive_roots) | {-a for a in self.spec.positive_roots}
        if not self.positive <= every:
            return False
        return all((g in self.positive) != (-g in self.positive) for g in every)


def _check_odd_isotropic(state: BorelState, alpha: Weight) -> None:
    if alpha not in state.simple_roots:
        raise DomainError("not-simple", f"{alpha} is not a simple root of the current Borel")
    if not state.is_odd(alpha):
        raise DomainError("not-odd", f"{alpha} is even")
    if inner(alpha, alpha) != 0:
        raise DomainError("not-isotropic", f"{alpha} is odd non-isotropic")


def odd_reflect(state: BorelState, alpha: Weight) -> BorelState:
    """Reflect at an isotropic odd simple root."""
    _check_odd_isotropic(state, alpha)
    new = []
    for beta in state.simple_roots:
        if beta == alpha:
            new.append(-alpha)
        elif coroot_pairing(beta, alpha) == 0:
            new.append(beta)
        else:
            new.append(beta + alpha)
    positive = (state.positive - {alpha}) | {-alpha}
    return BorelState(state.spec, tuple(new), positive, state.history + (alpha,))


def reflect_weight(w: Weight, alpha: Weight) -> Weight:
    """The ordinary reflection s_alpha for a non-isotropic alpha."""
    return w - alpha * coroot_pairing(w, alpha)


def real_reflect(state: BorelState, alpha: Weight) -> BorelState:
    """Reflect at an even (or odd non-isotropic) simple root by s_alpha."""
    if alpha not in state.simple_roots:
        raise DomainError("not-simple", f"{alpha} is not a simple root of the current Borel")
    if inner(alpha, alpha) == 0:
        raise DomainError("isotropic", f"{alpha} is isotropic; use odd_reflect")
    simple = tuple(reflect_weight(b, alpha) for b in state.simple_roots)
    positive = frozenset(reflect_weight(g, alpha) for g in state.positive)
    return BorelState(state.spec, simple, positive, state.history + (alpha,))


def update_highest_weight(lam: Weight, alpha: Weight) -> Weight:
    """Highest weight after an odd reflection at alpha."""
    return lam if coroot_pairing(lam, alpha) == 0 else lam - alpha


def alpha_half(k: int) -> Weight:
    """alpha_{k/2} = eps_{k/2} - eps_{(k+1)/2} for doubled k >= 1."""
    return Weight.make({k: 1, k + 1: -1})


def _chain(lo: int, hi: int) -> Weight:
    """Sum of alpha_{i/2} for doubled i from lo to hi inclusive."""
    return Weight.make({lo: 1, hi + 1: -1})


def btilde_c_sequence(n: int) -> list[Weight]:
    """n(n+1)/2 odd reflections; batch k ends with eps_{1/2} - eps_k."""
    if n < 1:
        raise DomainError("bad-rank", "sequence length n must be >= 1")
    out = []
    for k in range(1, n + 1):
        for j in range(k, 0, -1):
            out.append(_chain(2 * j - 1, 2 * k - 1))
    return out


def btilde_s_sequence(n: int) -> list[Weight]:
    """n(n+1)/2 odd reflections; batch k ends with eps_1 - eps_{k+1/2}."""
    if n < 1:
        raise DomainError("bad-rank", "sequence length n must be >= 1")
    out = []
    for k in range(1, n + 1):
        for j in range(k, 0, -1):
            out.append(_chain(2 * j, 2 * k))
    return out


def named_sequence(name: str, n: int) -> list[Weight]:
    table = {"btilde-c": btilde_c_sequence, "btilde-s": btilde_s_sequence}
    if name not in table:
        raise DomainError("bad-sequence", f"unknown sequence {name!r}")
    return table[name](n)


@dataclass(frozen=True)
class Trace:
    weights: tuple[Weight, ...]
    state: BorelState

    @property
    def result(self) -> Weight:
        return self.weights[-1]


def trace_sequence(spec: RootSystemSpec, lam: Weight, seq: Iterable[Weight],
                   state: BorelState | None = None) -> Trace:
    """Fold the highest-weight update along ``seq``, reflecting the Borel as we go."""
    state = BorelState.initial(spec) if state is None else state
    weights = [lam]
    for step, alpha in enumerate(seq):
        try:
            _check_odd_isotropic(state, alpha)
        except DomainError as exc:
            raise DomainError(exc.reason, f"step {step}: {exc.detail}") from exc
        weights.append(update_highest_weight(weights[-1], alpha))
        state = odd_reflect(state, alpha)
    return Trace(tuple(weights), state)


def apply_sequence(spec: RootSystemSpec, lam_theta: Weight, seq: Sequence[Weight]) -> Weight:
    if spec.tail != "full":
        raise DomainError("bad-spec", "odd reflection sequences act on the full tail")
    return trace_sequence(spec, lam_theta, seq).result


def nilradical_preserved(state: BorelState) -> bool:
    """All roots of the nilradical u of the starting parabolic remain positive."""
    u = {-g for g in state.spec.nilradical_negative}
    return u <= state.positive and not ({-g for g in u} & state.positive)
