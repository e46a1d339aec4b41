"""Borel subalgebras of finite osp algebras as signed delta/eps sequences.

A Borel of osp(2m+1|2n) or osp(2m|2n) is read from its type A end as an
ordered list of signed basis vectors a_1..a_N (N = n + m).  The simple
roots are a_k - a_{k+1} together with a_N (odd family), 2a_N when a_N is
a delta (even family, pipe shape) or a_{N-1} + a_N (even family, Y shape).
Delta i is matched with eps_{n-i+1/2} and eps j with eps_{-j} when a
weight is written in the eps_r coordinates of the super duality setup.
"""

from __future__ import annotations

import random
import re
from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, UncoveredVariantError
from .oddreflect import reflect_weight, update_highest_weight
from .partitions import Partition, as_partition, conjugate, is_hook
from .rootdata import Weight, inner

DELTA, EPS = "delta", "eps"
FAMILIES = ("odd", "even", "gl")
VARIANTS = ("plus", "minus")

_TOKEN = re.compile(r"^\s*([dDeEδε])\s*(\d+)\s*([+\-−])\s*$")


@dataclass(frozen=True)
class Entry:
    kind: str
    index: int
    sign: int

    def __str__(self) -> str:
        return f"{'d' if self.kind == DELTA else 'e'}{self.index}{'+' if self.sign > 0 else '-'}"


def _negatives(entries: Sequence[Entry]) -> int:
    return sum(1 for e in entries if e.kind == EPS and e.sign < 0)


def _ends_in_delta(entries: Sequence[Entry]) -> bool:
    return bool(entries) and entries[-1].kind == DELTA


def _normalize_y(entries: Sequence[Entry]) -> tuple[Entry, ...]:
    """Fix the free sign of the last eps in a Y-shaped diagram (even negatives)."""
    entries = tuple(entries)
    if entries and entries[-1].kind == EPS and _negatives(entries) % 2:
        last = entries[-1]
        entries = entries[:-1] + (Entry(EPS, last.index, -last.sign),)
    return entries


@dataclass(frozen=True)
class BorelSequence:
    entries: tuple[Entry, ...]
    m: int
    n: int
    family: str = "odd"

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise DomainError("bad-borel", f"unknown family {self.family!r}")
        deltas = sorted(e.index for e in self.entries if e.kind == DELTA)
        epses = sorted(e.index for e in self.entries if e.kind == EPS)
        if deltas != list(range(1, self.n + 1)):
            raise DomainError("bad-borel", f"delta indices {deltas} are not a permutation of 1..{self.n}")
        if epses != list(range(1, self.m + 1)):
            raise DomainError("bad-borel", f"eps indices {epses} are not a permutation of 1..{self.m}")
        if any(e.sign not in (1, -1) for e in self.entries):
            raise DomainError("bad-borel", "signs must be +1 or -1")
        if self.family == "gl" and any(e.sign < 0 for e in self.entries):
            raise DomainError("bad-borel", "gl sequences carry only + signs")
        if self.family == "even" and self.shape == "Y" and _negatives(self.entries) % 2:
            raise DomainError("bad-borel", "a Y-shaped sequence needs an even number of negative eps signs")

    @classmethod
    def build(cls, entries: Sequence[Entry], m: int, n: int, family: str = "odd",
              normalize: bool = False) -> BorelSequence:
        entries = tuple(entries)
        if normalize and family == "even" and not _ends_in_delta(entries):
            entries = _normalize_y(entries)
        return cls(entries, m, n, family)

    @classmethod
    def standard(cls, n: int, m: int, family: str = "odd") -> BorelSequence:
        entries = [Entry(DELTA, i, 1) for i in range(1, n + 1)] + [Entry(EPS, j, 1) for j in range(1, m + 1)]
        return cls(tuple(entries), m, n, family)

    @classmethod
    def opposite(cls, n: int, m: int, family: str = "odd") -> BorelSequence:
        """The Borel opposite to the standard one: every simple root negated."""
        if family == "gl":
            raise DomainError("bad-borel", "the opposite gl Borel is not an all-plus sequence")
        entries = [Entry(DELTA, i, -1) for i in range(1, n + 1)] + [Entry(EPS, j, -1) for j in range(1, m + 1)]
        return cls.build(entries, m, n, family, normalize=True)

    @property
    def shape(self) -> str:
        return "pipe" if _ends_in_delta(self.entries) else "Y"

    def _of_kind(self, kind: str) -> tuple[Entry, ...]:
        return tuple(e for e in self.entries if e.kind == kind)

    @property
    def xi(self) -> tuple[int, ...]:
        return tuple(e.sign for e in self._of_kind(DELTA))

    @property
    def eta(self) -> tuple[int, ...]:
        return tuple(e.sign for e in self._of_kind(EPS))

    @property
    def s(self) -> tuple[int, ...]:
        return tuple(e.index for e in self._of_kind(DELTA))

    @property
    def t(self) -> tuple[int, ...]:
        return tuple(e.index for e in self._of_kind(EPS))

    @property
    def blocks(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Run lengths (d_1..d_r), (e_1..e_r); d_1 or e_r may be 0."""
        d: list[int] = []
        e: list[int] = []
        runs: list[list] = []
        for entry in self.entries:
            if runs and runs[-1][0] == entry.kind:
                runs[-1][1] += 1
            else:
                runs.append([entry.kind, 1])
        if not runs or runs[0][0] == EPS:
            d.append(0)
        for kind, length in runs:
            (d if kind == DELTA else e).append(length)
        if len(e) < len(d):
            e.append(0)
        return tuple(d), tuple(e)

    @property
    def partial_sums(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """(dd_0..dd_r), (ee_0..ee_r) with dd_0 = ee_0 = 0."""
        d, e = self.blocks
        dd, ee = [0], [0]
        for x in d:
            dd.append(dd[-1] + x)
        for x in e:
            ee.append(ee[-1] + x)
        return tuple(dd), tuple(ee)

    @property
    def sign_product(self) -> int:
        """s(B): the sign of the product of all eta."""
        out = 1
        for x in self.eta:
            out *= x
        return out

    def vector(self, entry: Entry) -> Weight:
        return basis_vector(entry.kind, entry.index, self.n) * entry.sign

    def vectors(self) -> tuple[Weight, ...]:
        return tuple(self.vector(e) for e in self.entries)

    def simple_roots(self) -> tuple[Weight, ...]:
        a = self.vectors()
        out = [a[k] - a[k + 1] for k in range(len(a) - 1)]
        if not a or self.family == "gl":
            return tuple(out)
        if self.family == "odd":
            out.append(a[-1])
        elif self.shape == "pipe":
            out.append(a[-1] * 2)
        elif len(a) >= 2:
            out.append(a[-2] + a[-1])
        return tuple(out)

    def positive_roots(self) -> frozenset[Weight]:
        return _positive_roots(self.vectors(), tuple(e.kind for e in self.entries), self.family)

    def __str__(self) -> str:
        return ",".join(str(e) for e in self.entries)

    def to_json(self) -> dict:
        d, e = self.blocks
        return {"sequence": str(self), "n": self.n, "m": self.m, "family": self.family,
                "shape": self.shape, "d": list(d), "e": list(e),
                "xi": list(self.xi), "eta": list(self.eta), "s": list(self.s), "t": list(self.t)}


def basis_vector(kind: str, index: int, n: int) -> Weight:
    """delta_i -> eps_{n-i+1/2}, eps_j -> eps_{-j} (doubled indices)."""
    return Weight.eps(2 * (n - index) + 1 if kind == DELTA else -2 * index)


def _positive_roots(a: Sequence[Weight], kinds: Sequence[str], family: str) -> frozenset[Weight]:
    out = set()
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            out.add(a[i] - a[j])
            if family != "gl":
                out.add(a[i] + a[j])
        if family == "odd":
            out.add(a[i])
        if family != "gl" and kinds[i] == DELTA:
            out.add(a[i] * 2)
    return frozenset(out)


def parse_borel(text: str, family: str = "odd", n: int | None = None, m: int | None = None) -> BorelSequence:
    """Parse comma-separated tokens such as ``d2+`` or ``ε1−``."""
    entries = []
    for token in filter(None, (t.strip() for t in text.split(","))):
        match = _TOKEN.match(token)
        if not match:
            raise DomainError("bad-borel", f"cannot parse token {token!r}")
        letter, index, sign = match.groups()
        kind = DELTA if letter in "dDδ" else EPS
        entries.append(Entry(kind, int(index), 1 if sign == "+" else -1))
    nn = sum(1 for e in entries if e.kind == DELTA)
    mm = len(entries) - nn
    if (n is not None and n != nn) or (m is not None and m != mm):
        raise DomainError("bad-borel", f"expected {n} delta and {m} eps entries, got {nn} and {mm}")
    return BorelSequence(tuple(entries), mm, nn, family)


def shape_of(seq: BorelSequence) -> str:
    return seq.shape


_ALGEBRA = re.compile(r"^\s*(osp|gl)\s*\(\s*(\d+)\s*\|\s*(\d+)\s*\)\s*$")


def parse_algebra(text: str) -> tuple[str, int, int]:
    """``osp(2m+1|2n)``, ``osp(2m|2n)`` or ``gl(n|m)`` -> (family, n, m)."""
    match = _ALGEBRA.match(text)
    if not match:
        raise DomainError("bad-algebra", f"cannot parse algebra {text!r}")
    name, first, second = match.group(1), int(match.group(2)), int(match.group(3))
    if name == "gl":
        return "gl", first, second
    if second % 2:
        raise DomainError("bad-algebra", f"osp({first}|{second}) needs an even symplectic part")
    return ("odd" if first % 2 else "even"), second // 2, first // 2


@dataclass(frozen=True)
class BlockFrobenius:
    p: tuple[int, ...]
    q: tuple[int, ...]

    def to_json(self) -> dict:
        return {"p": list(self.p), "q": list(self.q)}


def _require_hook(lam: Partition, n: int, m: int) -> None:
    if not is_hook(lam, n, m):
        raise DomainError("not-hook", f"{list(lam.parts)} is not an ({n}|{m})-hook partition")


def _block_of(position: int, sums: Sequence[int]) -> int:
    """u with sums[u] < position <= sums[u+1]."""
    for u in range(len(sums) - 1):
        if sums[u] < position <= sums[u + 1]:
            return u
    raise DomainError("bad-borel", f"position {position} lies in no block")


def block_frobenius(lam: Partition | Sequence[int], seq: BorelSequence) -> BlockFrobenius:
    lam = as_partition(lam)
    _require_hook(lam, seq.n, seq.m)
    lamc = conjugate(lam)
    dd, ee = seq.partial_sums
    p = []
    for i in range(1, seq.n + 1):
        u = _block_of(i, dd)
        p.append(max(lam[i - 1] - ee[u], 0))
    q = []
    for j in range(1, seq.m + 1):
        u = _block_of(j, ee)
        q.append(max(lamc[j - 1] - dd[u + 1], 0))
    return BlockFrobenius(tuple(p), tuple(q))


@dataclass(frozen=True)
class SignedWeight:
    """Coordinates along delta_1..delta_n and eps_1..eps_m."""

    delta: tuple[int, ...]
    eps: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.delta)

    @property
    def m(self) -> int:
        return len(self.eps)

    def to_epsilon(self) -> Weight:
        coeffs = {}
        for i, c in enumerate(self.delta, start=1):
            coeffs[2 * (self.n - i) + 1] = c
        for j, c in enumerate(self.eps, start=1):
            coeffs[-2 * j] = c
        return Weight.make(coeffs)

    @classmethod
    def from_epsilon(cls, w: Weight, n: int, m: int) -> SignedWeight:
        allowed = {2 * (n - i) + 1 for i in range(1, n + 1)} | {-2 * j for j in range(1, m + 1)}
        if set(w.support) - allowed or w.level:
            raise DomainError("bad-weight", f"{w} is not supported on the osp({2 * m}|{2 * n}) coordinates")
        if not w.is_integral():
            raise DomainError("non-integral", f"{w} is not integral")
        return cls(tuple(w[2 * (n - i) + 1] for i in range(1, n + 1)),
                   tuple(w[-2 * j] for j in range(1, m + 1)))

    def __str__(self) -> str:
        terms = [(c, f"δ{i}") for i, c in enumerate(self.delta, start=1)]
        terms += [(c, f"ε{j}") for j, c in enumerate(self.eps, start=1)]
        out = ""
        for c, name in terms:
            if not c:
                continue
            mag = "" if abs(c) == 1 else str(abs(c))
            if out:
                out += (" + " if c > 0 else " - ") + mag + name
            else:
                out = ("" if c > 0 else "-") + mag + name
        return out or "0"

    def to_json(self) -> dict:
        return {"delta": list(self.delta), "eps": list(self.eps), "text": str(self),
                "epsilon_r": self.to_epsilon().to_json()}


def _signed(seq: BorelSequence, frob: BlockFrobenius, flip_last_eta: bool = False) -> SignedWeight:
    delta = [0] * seq.n
    eps = [0] * seq.m
    for xi, p, s in zip(seq.xi, frob.p, seq.s):
        delta[s - 1] = xi * p
    eta = list(seq.eta)
    if flip_last_eta and eta:
        eta[-1] = -eta[-1]
    for et, q, t in zip(eta, frob.q, seq.t):
        eps[t - 1] = et * q
    return SignedWeight(tuple(delta), tuple(eps))


def extremal_weight_B(lam: Partition | Sequence[int], seq: BorelSequence) -> SignedWeight:
    """lambda^B for osp(2m+1|2n)."""
    if seq.family != "odd":
        raise DomainError("bad-family", "extremal_weight_B needs an osp(2m+1|2n) sequence")
    return _signed(seq, block_frobenius(lam, seq))


def pipe_variant(seq: BorelSequence) -> str:
    """The module whose extremal weight a pipe-shaped Borel describes."""
    return "plus" if seq.sign_product > 0 else "minus"


def extremal_weight_D(lam: Partition | Sequence[int], seq: BorelSequence, variant: str = "plus") -> SignedWeight:
    """Extremal weight of L'(lambda^#) (plus) or L'(lambda^#_-) (minus) for osp(2m|2n)."""
    if seq.family != "even":
        raise DomainError("bad-family", "extremal_weight_D needs an osp(2m|2n) sequence")
    if variant not in VARIANTS:
        raise DomainError("bad-variant", f"variant must be one of {VARIANTS}")
    frob = block_frobenius(lam, seq)
    if seq.shape == "pipe":
        if variant != pipe_variant(seq):
            raise UncoveredVariantError(
                f"pipe-shaped Borel with s(B)={'+' if seq.sign_product > 0 else '-'} "
                f"has no closed form for the {variant} module")
        return _signed(seq, frob)
    return _signed(seq, frob, flip_last_eta=variant == "minus")


def extremal_weight_gl(lam: Partition | Sequence[int], seq: BorelSequence) -> SignedWeight:
    """Highest weight of the polynomial gl(n|m)-module lambda with respect to seq."""
    if any(e.sign < 0 for e in seq.entries):
        raise DomainError("bad-borel", "gl sequences carry only + signs")
    return _signed(seq, block_frobenius(lam, seq))


def extremal_weight(lam: Partition | Sequence[int], seq: BorelSequence, variant: str = "plus") -> SignedWeight:
    if seq.family == "odd":
        return extremal_weight_B(lam, seq)
    if seq.family == "even":
        return extremal_weight_D(lam, seq, variant)
    return extremal_weight_gl(lam, seq)


def superdual_highest_weight(lam: Partition | Sequence[int], n: int, m: int, family: str = "odd",
                             variant: str = "plus") -> Weight:
    """Highest weight in eps_r coordinates for the super duality Borel.

    For the even family ``variant`` names the module (L'(lambda^#) or
    L'(lambda^#_-)); the sign on eps_{-m} then depends on the parity of m.
    """
    lam = as_partition(lam)
    _require_hook(lam, n, m)
    lamc = conjugate(lam)
    coeffs = {-2 * j: -max(lamc[j - 1] - n, 0) for j in range(1, m + 1)}
    for i in range(1, n + 1):
        coeffs[2 * i - 1] = -lam[n - i]
    if family == "even" and m:
        if variant not in VARIANTS:
            raise DomainError("bad-variant", f"variant must be one of {VARIANTS}")
        if (variant == "plus") != (m % 2 == 0):
            coeffs[-2 * m] = -coeffs[-2 * m]
    elif family not in ("odd", "even"):
        raise DomainError("bad-family", f"no super duality Borel for family {family!r}")
    return Weight.make(coeffs)


@dataclass(frozen=True)
class Recovered:
    partition: Partition
    variant: str | None = None


def _recover(p: Sequence[int], q: Sequence[int], seq: BorelSequence) -> Partition | None:
    dd, ee = seq.partial_sums

    @lru_cache(maxsize=None)
    def row(i: int) -> int:
        u = _block_of(i, dd)
        if p[i - 1] > 0:
            return p[i - 1] + ee[u]
        return sum(1 for j in range(1, ee[u] + 1) if col(j) >= i)

    @lru_cache(maxsize=None)
    def col(j: int) -> int:
        u = _block_of(j, ee)
        if q[j - 1] > 0:
            return q[j - 1] + dd[u + 1]
        return sum(1 for i in range(1, dd[u + 1] + 1) if row(i) >= j)

    rows = [row(i) for i in range(1, seq.n + 1)]
    cols = [col(j) for j in range(1, seq.m + 1)]
    tallest = max(cols, default=0)
    rows += [sum(1 for c in cols if c >= i) for i in range(seq.n + 1, tallest + 1)]
    try:
        return Partition(rows)
    except ValueError:
        return None


def is_finite_dimensional(weight: SignedWeight | Weight, seq: BorelSequence | None = None, *,
                          n: int | None = None, m: int | None = None,
                          family: str = "odd") -> Recovered | None:
    """Recover (lambda, variant) when ``weight`` is an extremal weight of a finite dimensional module.

    With ``seq`` the weight is read in delta/eps coordinates for that Borel.
    Without it the weight is an eps_r weight for the super duality Borel of
    the given rank.
    """
    if seq is None:
        if n is None or m is None:
            raise DomainError("bad-arguments", "give a Borel sequence or the ranks n and m")
        seq = BorelSequence.opposite(n, m, family)
        if isinstance(weight, Weight):
            try:
                weight = SignedWeight.from_epsilon(weight, n, m)
            except DomainError:
                return None
    if (weight.n, weight.m) != (seq.n, seq.m):
        return None
    if seq.family == "odd":
        variants: tuple[str | None, ...] = (None,)
    elif seq.family == "gl":
        variants = ("plus",)
    elif seq.shape == "pipe":
        variants = (pipe_variant(seq),)
    else:
        variants = VARIANTS
    for variant in variants:
        eta = list(seq.eta)
        if variant == "minus" and seq.shape == "Y" and eta:
            eta[-1] = -eta[-1]
        p = [xi * weight.delta[s - 1] for xi, s in zip(seq.xi, seq.s)]
        q = [et * weight.eps[t - 1] for et, t in zip(eta, seq.t)]
        if min(p + q, default=0) < 0:
            continue
        lam = _recover(p, q, seq)
        if lam is None or not is_hook(lam, seq.n, seq.m):
            continue
        if extremal_weight(lam, seq, variant or "plus") == weight:
            return Recovered(lam, variant)
    return None


# Reflection walk: an independent route to the extremal weight.

@dataclass(frozen=True)
class WalkResult:
    weight: Weight
    odd_steps: int
    real_steps: int
    borel_matches: bool


def _pattern_positions(target: BorelSequence) -> list[int]:
    return [k for k, e in enumerate(target.entries) if e.kind == DELTA]


def reflection_walk(lam: Partition | Sequence[int], target: BorelSequence, variant: str = "plus") -> WalkResult:
    """Fold highest-weight updates from the standard Borel to ``target``.

    Odd reflections move the deltas into the target's kind pattern; a
    signed permutation of the even Weyl group, applied as a product of
    reflections, then fixes indices and signs.  Every odd step checks that
    the reflected root is simple and that the positive system changes by
    exactly that root.
    """
    lam = as_partition(lam)
    n, m, family = target.n, target.m, target.family
    start = BorelSequence.standard(n, m, family)
    frob0 = block_frobenius(lam, start)
    if family == "even":
        mu = _signed(start, frob0, flip_last_eta=variant == "minus").to_epsilon()
    else:
        mu = _signed(start, frob0).to_epsilon()
    cur = list(start.entries)
    odd_steps = real_steps = 0
    want_negative = family == "even" and target.shape == "pipe" and target.sign_product < 0

    def positives(entries: Sequence[Entry]) -> frozenset[Weight]:
        vecs = [basis_vector(e.kind, e.index, n) * e.sign for e in entries]
        return _positive_roots(vecs, [e.kind for e in entries], family)

    def simple(entries: Sequence[Entry]) -> tuple[Weight, ...]:
        return BorelSequence(tuple(entries), m, n, family).simple_roots() if _ok(entries) else ()

    def _ok(entries: Sequence[Entry]) -> bool:
        return not (family == "even" and not _ends_in_delta(entries) and _negatives(entries) % 2)

    for k_target, idx in zip(reversed(_pattern_positions(target)), range(n, 0, -1)):
        k = next(pos for pos, e in enumerate(cur) if e.kind == DELTA and e.index == idx)
        while k < k_target:
            a, b = cur[k], cur[k + 1]
            va = basis_vector(a.kind, a.index, n) * a.sign
            vb = basis_vector(b.kind, b.index, n) * b.sign
            last_pair = k + 1 == len(cur) - 1
            if want_negative and last_pair and family == "even":
                alpha = va + vb
                new = cur[:k] + [Entry(b.kind, b.index, -b.sign), a]
                want_negative = False
            else:
                alpha = va - vb
                new = cur[:k] + [b, a] + cur[k + 2:]
            if inner(alpha, alpha) != 0 or alpha not in simple(_normal(cur, family)):
                raise DomainError("walk-failed", f"{alpha} is not a simple isotropic root")
            before, after = positives(cur), positives(new)
            if after != (before - {alpha}) | {-alpha}:
                raise DomainError("walk-failed", f"odd reflection at {alpha} changed more than one root")
            mu = update_highest_weight(mu, alpha)
            odd_steps += 1
            cur = new
            k += 1

    # Signed permutation taking cur to target, kind by kind.
    goal = list(target.entries)
    if family == "even" and target.shape == "Y":
        flips = sum(1 for a, b in zip(cur, goal) if a.kind == EPS and a.sign != b.sign)
        if flips % 2:
            last = cur[-1]
            cur[-1] = Entry(EPS, last.index, -last.sign)
    reflections: list[Weight] = []
    for kind in (DELTA, EPS):
        pairs = [(a, b) for a, b in zip(cur, goal) if a.kind == kind]
        flipped = [a.index for a, b in pairs if a.sign != b.sign]
        if flipped and (family == "gl"):
            raise DomainError("walk-failed", "gl Borels admit no sign changes")
        if kind == EPS and family == "even":
            if len(flipped) % 2:
                raise DomainError("walk-failed", "odd number of eps sign changes in type D")
            for i, j in zip(flipped[::2], flipped[1::2]):
                ei, ej = basis_vector(EPS, i, n), basis_vector(EPS, j, n)
                reflections += [ei - ej, ei + ej]
        else:
            reflections += [basis_vector(kind, i, n) for i in flipped]
        slot = {a.index: a.index for a, _ in pairs}
        where = {a.index: b.index for a, b in pairs}
        occupant = {v: k for k, v in slot.items()}
        for i in sorted(where):
            if slot[i] != where[i]:
                other = occupant[where[i]]
                x, y = slot[i], where[i]
                reflections.append(basis_vector(kind, x, n) - basis_vector(kind, y, n))
                slot[i], slot[other] = y, x
                occupant[y], occupant[x] = i, other
    moved = set(positives(cur))
    for alpha in reflections:
        mu = reflect_weight(mu, alpha)
        moved = {reflect_weight(g, alpha) for g in moved}
        real_steps += 1
    return WalkResult(mu, odd_steps, real_steps, frozenset(moved) == target.positive_roots())


def _normal(entries: Sequence[Entry], family: str) -> list[Entry]:
    if family == "even" and not _ends_in_delta(entries):
        return list(_normalize_y(entries))
    return list(entries)


def random_hook(n: int, m: int, max_size: int, rng: random.Random) -> Partition:
    """A random (n|m)-hook partition of size at most max_size."""
    total = rng.randint(0, max_size)
    rows: list[int] = []
    cap = None
    while total > 0:
        limit = total if cap is None else min(total, cap)
        if len(rows) >= n:
            limit = min(limit, m)
        if limit <= 0:
            break
        part = rng.randint(1, limit)
        rows.append(part)
        total -= part
        cap = part
    return Partition(rows)


def random_borel(n: int, m: int, family: str, rng: random.Random) -> BorelSequence:
    kinds = [DELTA] * n + [EPS] * m
    rng.shuffle(kinds)
    deltas = rng.sample(range(1, n + 1), n)
    epses = rng.sample(range(1, m + 1), m)
    entries = []
    for kind in kinds:
        index = deltas.pop() if kind == DELTA else epses.pop()
        sign = 1 if family == "gl" else rng.choice((1, -1))
        entries.append(Entry(kind, index, sign))
    return BorelSequence.build(entries, m, n, family, normalize=True)
